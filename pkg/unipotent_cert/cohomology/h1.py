"""H^1(L, G) = L / P(L x ... x L) for L = k((t)).

Exclusion certificates record the valuation argument that keeps a target
with -p < v(target) < 0 out of the image of P; solvers produce explicit
preimages for the targets that are in it.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

from ..algebra.isotropy import (
    AnisotropyVerdict,
    SplitCertificate,
    decide_equal_height,
    valuation_separation,
)
from ..algebra.ppoly import (
    DiagonalForm,
    PPolynomial,
    Substitution,
    evaluate,
    is_separable,
    principal_part,
    substitute,
)
from ..errors import (
    NoLinearTerm,
    NotSeparable,
    PrecisionExceeded,
    PrincipalPartNotCertified,
    TargetValuationOutOfRange,
)
from ..fields.laurent import LaurentSeries

logger = logging.getLogger(__name__)


def certify_anisotropic(form: DiagonalForm) -> AnisotropyVerdict:
    """Anisotropy evidence usable by an exclusion: exact or valuation-based."""
    if form.common_height() is not None:
        return decide_equal_height(form)
    return valuation_separation(form)


@dataclass(frozen=True)
class ExclusionCertificate:
    """Proof that ``target`` is not in P(L^r), i.e. [target] != 0 in H^1.

    ``presentation`` is the polynomial whose principal part carries the
    anisotropy evidence. When ``chain`` is nonempty it is the input reduced
    by those invertible substitutions, which leave the image of P unchanged.
    """

    target: LaurentSeries
    presentation: PPolynomial
    evidence: AnisotropyVerdict
    m_bound: int
    target_valuation: int
    argument: tuple[str, ...]
    chain: tuple[Substitution, ...] = ()
    coordinate: int | None = None
    rank: int | None = None

    @property
    def form(self) -> DiagonalForm:
        return self.evidence.form

    @property
    def residue_form(self) -> str:
        return " + ".join(
            f"({e.coeff})*a{e.var}^{self.presentation.p**e.height}"
            for e in self.form.entries
        )


def _window_check(P: PPolynomial, target: LaurentSeries) -> int:
    v = target.valuation()
    if v is None or not -P.p < v < 0:
        raise TargetValuationOutOfRange(
            f"exclusion needs -{P.p} < v(target) < 0, got v = {v} for {target}"
        )
    return v


def exclude_target(
    P: PPolynomial,
    target: LaurentSeries,
    chain: Sequence[Substitution] = (),
) -> ExclusionCertificate:
    """Certify target not in the image of P over k((t)).

    Args:
        P: Separable p-polynomial
        target: Series with -p < v(target) < 0
        chain: Invertible substitutions; the argument then runs on the
            reduced presentation obtained by replaying them on P

    Returns:
        The exclusion certificate with its valuation argument

    Raises:
        TargetValuationOutOfRange: If v(target) is outside (-p, 0)
        PrincipalPartNotCertified: If the principal part has a linear
            variable or is not certified anisotropic
    """
    if not is_separable(P):
        raise NotSeparable(f"{P} has no monomial of degree 1")
    v = _window_check(P, target)
    Q = P
    for sigma in chain:
        if not sigma.invertible:
            raise PrincipalPartNotCertified(
                "exclusion chain contains a non-invertible substitution"
            )
        Q = substitute(Q, sigma)
    form = principal_part(Q)
    if min(form.heights) < 1:
        raise PrincipalPartNotCertified(
            f"principal part of {Q} has a linear variable; P is surjective on L^r"
        )
    evidence = certify_anisotropic(form)
    if not evidence.is_anisotropic:
        raise PrincipalPartNotCertified(
            f"principal part {form} not certified anisotropic"
        )
    p = Q.p
    m_bound = -(p ** min(form.heights))
    argument = (
        f"suppose P(alpha) = target with v(target) = {v}",
        "if v(alpha_i) >= 0 for all i then v(P(alpha)) >= 0, so some v(alpha_i) <= -1",
        "m = min_i v(alpha_i^(p^m_i)) satisfies m <= "
        f"{m_bound} and every lower-height term has valuation > m",
        "I = {i : v(alpha_i^(p^m_i)) = m}; "
        "a_i = leading coefficient of alpha_i for i in I",
        f"coefficient of t^m in P(alpha) is {evidence.form} at (a_i), i in I",
        f"anisotropy ({evidence.method}) makes it nonzero, so v(P(alpha)) = m < {v}",
        "contradiction: target is not in P(L^r) and its class in H^1 is nontrivial",
    )
    logger.debug("exclusion of %s for %s via %s", target, Q, evidence.method)
    return ExclusionCertificate(
        target=target,
        presentation=Q,
        evidence=evidence,
        m_bound=m_bound,
        target_valuation=v,
        argument=argument,
        chain=tuple(chain),
    )


def replay_exclusion(cert: ExclusionCertificate, P: PPolynomial) -> list[str]:
    """Recompute every step of the certificate from P; empty means valid."""
    problems: list[str] = []
    if not is_separable(P):
        problems.append("input is not separable")
    Q = P
    for n, sigma in enumerate(cert.chain):
        if not sigma.invertible:
            problems.append(f"substitution {n} has no inverse chain")
        try:
            Q = substitute(Q, sigma)
        except ValueError as exc:
            problems.append(f"substitution {n} does not apply: {exc}")
            return problems
    if Q != cert.presentation:
        problems.append("replayed presentation differs from the recorded one")
        return problems
    v = cert.target.valuation()
    if v != cert.target_valuation:
        problems.append(
            f"target valuation is {v}, certificate records {cert.target_valuation}"
        )
    if v is None or not -Q.p < v < 0:
        problems.append(f"target valuation {v} outside (-{Q.p}, 0)")
    form = principal_part(Q)
    if form != cert.form:
        problems.append("recorded form is not the principal part")
    if min(form.heights) < 1:
        problems.append("principal part has a linear variable")
        return problems
    evidence = certify_anisotropic(form)
    if not evidence.is_anisotropic:
        problems.append(f"anisotropy of {form} does not recompute")
    if cert.m_bound != -(Q.p ** min(form.heights)):
        problems.append(f"m bound {cert.m_bound} does not match the heights")
    return problems


def _linear_variable(P: PPolynomial) -> int:
    for i in range(P.r):
        if (i, 0) in P.terms:
            return i
    raise NoLinearTerm(f"{P} has no height-0 term")


def solve_positive_valuation(
    P: PPolynomial, target: LaurentSeries
) -> list[LaurentSeries] | None:
    """Preimage of a target with v >= 1 by t-adic contraction.

    Iterates x <- c0^-1 (target - sum_{j >= 1} c_j x^(p^j)) on the first
    variable with a linear term, other variables fixed at zero. Each pass
    fixes at least one more coefficient, so the window size bounds the
    number of passes.

    Args:
        P: Separable p-polynomial
        target: Series with v(target) >= 1, or zero

    Returns:
        A verified preimage, or None if the iteration does not settle
    """
    if not is_separable(P):
        raise NotSeparable(f"{P} has no monomial of degree 1")
    i0 = _linear_variable(P)
    zero = LaurentSeries.zero(P.field, target.precision, target.anchor)
    if target.is_zero():
        return [zero] * P.r
    v = target.valuation()
    assert v is not None
    if v < 1:
        raise TargetValuationOutOfRange(f"contraction needs v(target) >= 1, got {v}")
    c0_inv = P.terms[(i0, 0)].inverse()
    higher = [(j, c) for (i, j), c in P.terms.items() if i == i0 and j >= 1]
    x = zero
    for step in range(target.precision + 1):
        rest = zero
        for j, c in higher:
            rest = rest + x.frobenius(j).scale(c)
        nxt = (target - rest).scale(c0_inv)
        if nxt == x:
            break
        x = nxt
    else:
        logger.debug(
            "contraction did not settle within %d passes", target.precision + 1
        )
        return None
    alpha = [zero] * P.r
    alpha[i0] = x
    if not (evaluate(P, alpha) - target).is_zero():
        return None
    logger.debug("contraction converged after %d passes", step)
    return alpha


def solve_split(
    P: PPolynomial, cert: SplitCertificate, target: LaurentSeries
) -> list[LaurentSeries]:
    """Preimage of any target for a split presentation.

    The reduced presentation Q has a variable occurring only as c T; setting
    it to target / c and the rest to zero solves Q, and the chain carries
    that solution back to P.
    """
    Q = cert.replay(P)[-1]
    e = cert.elimination[0]
    c = Q.terms.get((e, 0))
    if c is None or Q.heights(e) != [0]:
        raise NoLinearTerm(f"variable {Q.variables[e]} is not linear-only in {Q}")
    zero = LaurentSeries.zero(P.field, target.precision, target.anchor)
    beta = [zero] * P.r
    beta[e] = target.scale(c.inverse())
    alpha = beta
    for sigma in reversed(cert.chain):
        alpha = sigma.apply(alpha)
    if not (evaluate(P, alpha) - target).is_zero():
        raise PrecisionExceeded(f"split solution for {target} lost precision")
    return alpha


@dataclass(frozen=True)
class H1Class:
    """The class of ``representative`` in L / P(L^r).

    Equality of classes is only semi-decided: a found preimage proves
    triviality, an exclusion certificate proves nontriviality, anything
    else stays None.
    """

    representative: LaurentSeries
    presentation: PPolynomial
    split: SplitCertificate | None = field(default=None, compare=False)

    def preimage(self) -> list[LaurentSeries] | None:
        """An explicit beta with P(beta) = representative, when one is found."""
        P, a = self.presentation, self.representative
        if self.split is not None:
            return solve_split(P, self.split, a)
        v = a.valuation()
        if v is None or v >= 1:
            return solve_positive_valuation(P, a)
        return None

    def exclusion(self) -> ExclusionCertificate | None:
        v = self.representative.valuation()
        if self.split is not None or v is None or not -self.presentation.p < v < 0:
            return None
        try:
            return exclude_target(self.presentation, self.representative)
        except PrincipalPartNotCertified:
            return None

    def is_trivial(self) -> bool | None:
        if self.preimage() is not None:
            return True
        if self.exclusion() is not None:
            return False
        return None

    def same_class(self, other: "H1Class") -> bool | None:
        """Semi-decide [a] == [b] through the class of a - b."""
        if self.presentation != other.presentation:
            return None
        diff = H1Class(
            self.representative - other.representative, self.presentation, self.split
        )
        return diff.is_trivial()

    def shifted(self, beta: Sequence[LaurentSeries]) -> "H1Class":
        """Same class, representative moved by P(beta)."""
        return H1Class(
            self.representative + evaluate(self.presentation, beta),
            self.presentation,
            self.split,
        )
