"""Anisotropy of principal parts and split certification.

The exact decision covers equal heights: sum c_i w_i^(p^m) = 0 has a
nonzero solution iff the c_i are linearly dependent over k^(p^m). Mixed
heights get the s-adic valuation test, then a bounded witness scan, then an
honest Unknown.
"""

import itertools
import logging
from collections.abc import Iterator
from dataclasses import dataclass
from typing import Literal

from ..errors import EmptyForm, HeightMismatch, NotSeparable
from ..fields.finite import FiniteField
from ..fields.polys import PolyS
from ..fields.ratfn import RatFn, pm_decompose
from .linalg import kernel_vector, to_matrix
from .ppoly import (
    DiagonalForm,
    ElementaryStep,
    PPolynomial,
    Substitution,
    is_separable,
    principal_part,
    substitute,
)

logger = logging.getLogger(__name__)

EQUAL_HEIGHT = "equal_height_linear_algebra"
VALUATION_SEPARATION = "valuation_separation"
BOUNDED_SEARCH = "bounded_search"

VerdictKind = Literal["anisotropic", "isotropic", "unknown"]


@dataclass(frozen=True)
class AnisotropyVerdict:
    """Anisotropic(method) | Isotropic(witness) | Unknown(bound)."""

    kind: VerdictKind
    form: DiagonalForm
    method: str | None = None
    witness: tuple[RatFn, ...] | None = None
    bound: int | None = None

    def __post_init__(self) -> None:
        if self.kind == "isotropic":
            w = self.witness
            if w is None or len(w) != self.form.r or all(x.is_zero() for x in w):
                raise ValueError("an isotropy witness must be a nonzero vector")
            if not self.form.evaluate(w).is_zero():
                raise ValueError("isotropy witness does not annihilate the form")

    @property
    def is_anisotropic(self) -> bool:
        return self.kind == "anisotropic"

    @property
    def is_isotropic(self) -> bool:
        return self.kind == "isotropic"


def decide_equal_height(form: DiagonalForm) -> AnisotropyVerdict:
    """Exact decision for a form whose heights are all equal."""
    if form.r == 0:
        raise EmptyForm("cannot decide a form in zero variables")
    m = form.common_height()
    if m is None:
        raise HeightMismatch(f"heights {form.heights} are not all equal")
    field = form.field
    if m == 0:
        rows = [list(form.coeffs)]
    else:
        # Coordinates over k^(p^m) in the basis 1, s, ..., s^(p^m - 1), pulled
        # back to k by the p^m-th root so the rank is computed over k.
        columns = []
        for c in form.coeffs:
            column = []
            for u in pm_decompose(c, m):
                root = u.p_root(m)
                assert root is not None, "pm_decompose left k^(p^m)"
                column.append(root)
            columns.append(column)
        rows = [list(row) for row in zip(*columns)]
    w = kernel_vector(to_matrix(rows), field)
    if w is None:
        return AnisotropyVerdict("anisotropic", form, method=EQUAL_HEIGHT)
    return AnisotropyVerdict("isotropic", form, method=EQUAL_HEIGHT, witness=tuple(w))


def valuation_separation(form: DiagonalForm) -> AnisotropyVerdict:
    """Sufficient anisotropy test by the s-adic valuation.

    A nontrivial zero needs two summands of equal minimal valuation, which
    forces ord_s(c_i) = ord_s(c_j) mod p^min(m_i, m_j) for some pair.
    """
    if form.r == 0:
        return AnisotropyVerdict("unknown", form, method=VALUATION_SEPARATION)
    p = form.field.p
    for a, b in itertools.combinations(form.entries, 2):
        modulus = p ** min(a.height, b.height)
        oa, ob = a.coeff.ord_s(), b.coeff.ord_s()
        assert oa is not None and ob is not None
        if (oa - ob) % modulus == 0:
            return AnisotropyVerdict("unknown", form, method=VALUATION_SEPARATION)
    return AnisotropyVerdict("anisotropic", form, method=VALUATION_SEPARATION)


def _polys_of_degree(field: FiniteField, d: int) -> Iterator[PolyS]:
    q = field.q
    for lead in range(1, q):
        for lower in itertools.product(range(q), repeat=d):
            # lower is (c_{d-1}, ..., c_0)
            yield PolyS(list(reversed(lower)) + [lead], field)


def isotropy_candidates(
    field: FiniteField, r: int, bound: int
) -> Iterator[tuple[RatFn, ...]]:
    """Nonzero tuples of polynomials of s-degree <= bound, in scan order.

    Order: total degree (sum over nonzero entries), then degree shape
    (zero entries first), then coefficient codes from the leading one down.
    """
    shapes = [
        shape
        for shape in itertools.product(range(-1, bound + 1), repeat=r)
        if any(d >= 0 for d in shape)
    ]
    shapes.sort(key=lambda shape: (sum(max(d, 0) for d in shape), shape))
    zero = RatFn.zero(field)
    for shape in shapes:
        pools = [
            [zero]
            if d < 0
            else [RatFn.from_poly(f) for f in _polys_of_degree(field, d)]
            for d in shape
        ]
        yield from itertools.product(*pools)


def search_isotropy(form: DiagonalForm, degree_bound: int) -> tuple[RatFn, ...] | None:
    """First verified nontrivial zero with polynomial entries, if any."""
    if form.r == 0:
        raise EmptyForm("cannot search a form in zero variables")
    if degree_bound < 0:
        raise ValueError("degree bound must be non-negative")
    scanned = 0
    for w in isotropy_candidates(form.field, form.r, degree_bound):
        scanned += 1
        if form.evaluate(w).is_zero():
            logger.debug("isotropy witness after %d candidates: %s", scanned, w)
            return w
    logger.debug(
        "no isotropy witness among %d candidates (D=%d)", scanned, degree_bound
    )
    return None


def analyse_form(form: DiagonalForm, degree_bound: int) -> AnisotropyVerdict:
    """Exact decision, then valuation separation, then bounded search."""
    if form.common_height() is not None:
        return decide_equal_height(form)
    verdict = valuation_separation(form)
    if verdict.is_anisotropic:
        return verdict
    witness = search_isotropy(form, degree_bound)
    if witness is not None:
        return AnisotropyVerdict(
            "isotropic", form, method=BOUNDED_SEARCH, witness=witness
        )
    return AnisotropyVerdict("unknown", form, bound=degree_bound)


@dataclass(frozen=True)
class SplitCertificate:
    """Invertible chain reducing P to a presentation with a linear-only variable.

    Replaying the chain turns P into Q where ``elimination[0]`` occurs only at
    height 0, so ker Q is the graph of a map from the other coordinates and
    ker P = ker Q is isomorphic to G_a^(r-1). ``free`` lists variables absent
    from Q (free G_a factors).
    """

    chain: tuple[Substitution, ...]
    elimination: tuple[int, ...]
    free: tuple[int, ...] = ()

    def replay(self, P: PPolynomial) -> list[PPolynomial]:
        """P and every intermediate presentation, ending at the reduced one."""
        out = [P]
        for sigma in self.chain:
            out.append(substitute(out[-1], sigma))
        return out


@dataclass(frozen=True)
class SplitAttempt:
    """Outcome of the greedy reduction, including where it stopped."""

    certificate: SplitCertificate | None
    reduced: PPolynomial
    chain: tuple[Substitution, ...]
    reason: str


def block_reduction(Q: PPolynomial) -> tuple[Substitution | None, str]:
    """Cancel the top p-power among the variables of maximal leading height.

    Those variables share one height M, so their leading terms form an
    equal-height form; a witness w with last nonzero entry w_k gives
    T_i <- T_i + (w_i / w_k) T_k, which kills the T_k^(p^M) term.
    """
    form = principal_part(Q)
    top = max(form.heights)
    block = [pos for pos, e in enumerate(form.entries) if e.height == top]
    if len(block) < 2:
        return None, "maximal-height block has a single variable"
    verdict = decide_equal_height(form.restrict(block))
    if not verdict.is_isotropic:
        return None, "maximal-height block is anisotropic"
    assert verdict.witness is not None
    w = verdict.witness
    k = max(idx for idx, x in enumerate(w) if not x.is_zero())
    pivot_var = form.entries[block[k]].var
    steps = [
        ElementaryStep(
            "transvection", form.entries[block[idx]].var, pivot_var, x / w[k]
        )
        for idx, x in enumerate(w)
        if idx != k and not x.is_zero()
    ]
    if not steps:
        # w is supported on one variable only: impossible for a nonzero coefficient.
        return None, "degenerate isotropy witness"
    return Substitution.from_steps(Q.field, Q.r, steps), "reduced"


def attempt_split(P: PPolynomial, budget: int) -> SplitAttempt:
    """Greedy split search: eliminate a linear-only variable or reduce degree."""
    if not is_separable(P):
        raise NotSeparable(f"{P} has no monomial of degree 1")
    Q = P
    chain: list[Substitution] = []
    reason = "budget exhausted"
    for step in range(budget + 1):
        linear = Q.linear_only()
        if linear:
            cert = SplitCertificate(tuple(chain), (linear[0],), tuple(Q.absent()))
            logger.debug(
                "split after %d substitutions: eliminate %s",
                step,
                Q.variables[linear[0]],
            )
            return SplitAttempt(cert, Q, tuple(chain), "split")
        if step == budget:
            break
        sigma, reason = block_reduction(Q)
        if sigma is None:
            break
        reduced = substitute(Q, sigma)
        if reduced.degree_measure() >= Q.degree_measure():  # pragma: no cover
            raise RuntimeError("block reduction did not lower the degree")
        logger.debug(
            "substitution %s: %s -> %s", sigma.describe(Q.variables), Q, reduced
        )
        chain.append(sigma)
        Q = reduced
    return SplitAttempt(None, Q, tuple(chain), reason)


def certify_split(P: PPolynomial, budget: int) -> SplitCertificate | None:
    return attempt_split(P, budget).certificate
