"""Independent re-check of a certificate against the original input."""

import logging
from dataclasses import dataclass, field

from ..algebra.ppoly import PPolynomial, Substitution, principal_part, substitute
from ..cohomology.h1 import replay_exclusion, solve_split
from ..cohomology.oracle import brute_force_image, sample_targets
from ..errors import LiteralSyntaxError, SearchSpaceTooLarge, UnipotentCertError
from ..fields.ratfn import RatFn
from .pipeline import Certificate, Verdict

logger = logging.getLogger(__name__)


@dataclass
class VerificationResult:
    ok: bool
    reasons: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def fail(self, reason: str) -> None:
        self.ok = False
        self.reasons.append(reason)


def _rebuilt(sigma: Substitution) -> Substitution | None:
    """The substitution recomputed from its recorded elementary steps."""
    if sigma.steps is None:
        return None
    return Substitution.from_steps(sigma.field, sigma.r, sigma.steps)


def _verify_split(
    cert: Certificate, P: PPolynomial, result: VerificationResult
) -> None:
    split = cert.split
    if split is None:
        result.fail("split verdict without a split chain")
        return
    Q = P
    for n, sigma in enumerate(split.chain):
        rebuilt = _rebuilt(sigma)
        if rebuilt is None:
            result.fail(f"substitution {n} has no elementary steps")
            return
        if rebuilt.images != sigma.images:
            result.fail(f"substitution {n} does not match its elementary steps")
            return
        Q = substitute(Q, rebuilt)
    if not split.elimination:
        result.fail("no eliminated variable recorded")
        return
    e = split.elimination[0]
    if not 0 <= e < Q.r or Q.heights(e) != [0]:
        result.fail(f"eliminated variable {e} is not linear-only after the chain")
        return
    if any(Q.heights(i) for i in split.free):
        result.fail("a variable recorded as free occurs in the reduced presentation")
    settings = cert.settings
    targets = sample_targets(
        P.field, settings.samples, -3, 3, 1, settings.precision, settings.seed + 2
    )
    for target in targets:
        try:
            solve_split(P, split, target)
        except UnipotentCertError as exc:
            result.fail(f"split solver failed on {target}: {exc}")
            return


def _verify_exclusion(
    cert: Certificate, P: PPolynomial, result: VerificationResult
) -> None:
    exclusion = cert.exclusion
    if exclusion is None:
        result.fail("not-split verdict without an exclusion certificate")
        return
    for problem in replay_exclusion(exclusion, P):
        result.fail(problem)
    if not result.ok:
        return
    settings = cert.settings
    vmin, vmax = settings.spot_window
    try:
        oracle = brute_force_image(
            P, exclusion.target, vmin, vmax, settings.spot_degree, settings.oracle_cap
        )
    except SearchSpaceTooLarge as exc:
        result.notes.append(f"oracle spot check skipped: {exc}")
        return
    if oracle.in_image:
        result.fail(f"oracle found a preimage of {exclusion.target}")
    else:
        result.notes.append(f"oracle: no preimage among {oracle.space} candidates")


def _verify_undecided(
    cert: Certificate, P: PPolynomial, result: VerificationResult
) -> None:
    if cert.evidence is not None:
        result.fail("undecided verdict carries decisive evidence")
        return
    summary = cert.diagnostics.get("principal_part", {})
    witness = summary.get("witness")
    if witness is None:
        return
    form = principal_part(P)
    try:
        w = [RatFn.parse(text, P.field) for text in witness]
        if form.evaluate(w).is_zero() and any(not x.is_zero() for x in w):
            return
    except (LiteralSyntaxError, ValueError) as exc:
        result.fail(f"isotropy witness does not parse: {exc}")
        return
    result.fail("recorded isotropy witness does not annihilate the principal part")


def verify(cert: Certificate, P: PPolynomial) -> VerificationResult:
    """Replay all evidence in ``cert`` for the input P.

    Nothing cached in the certificate is trusted: chains are rebuilt from
    their elementary steps, anisotropy is decided again and the oracle
    searches a small window.

    Args:
        cert: Certificate produced by ``classify`` or read back from JSON
        P: The presentation the certificate claims to be about

    Returns:
        Result with ``ok``, failure reasons and informational notes
    """
    result = VerificationResult(ok=True)
    if cert.presentation != P:
        result.fail("certificate was issued for a different presentation")
        return result
    if cert.verdict is Verdict.SPLIT_SPECIAL:
        _verify_split(cert, P, result)
    elif cert.verdict is Verdict.NOT_SPLIT_NOT_SPECIAL:
        _verify_exclusion(cert, P, result)
    else:
        _verify_undecided(cert, P, result)
    logger.debug(
        "verification of %s: ok=%s %s", cert.verdict.value, result.ok, result.reasons
    )
    return result
