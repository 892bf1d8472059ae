"""Split/special dichotomy for G = ker P.

G is special iff it is k-split, so a split chain settles one side and an
exclusion certificate for t^-1 settles the other. Anything in between is
reported as undecided together with what was tried.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .. import __version__
from ..algebra.isotropy import (
    AnisotropyVerdict,
    SplitCertificate,
    analyse_form,
    attempt_split,
)
from ..algebra.ppoly import PPolynomial, is_separable, principal_part
from ..cohomology.h1 import (
    ExclusionCertificate,
    exclude_target,
    solve_positive_valuation,
    solve_split,
)
from ..cohomology.oracle import sample_targets
from ..config import Settings
from ..errors import DichotomyViolation, NotSeparable, PrincipalPartNotCertified
from ..fields.laurent import LaurentSeries
from ..fields.ratfn import RatFn

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    SPLIT_SPECIAL = "SPLIT_SPECIAL"
    NOT_SPLIT_NOT_SPECIAL = "NOT_SPLIT_NOT_SPECIAL"
    UNDECIDED = "UNDECIDED"


@dataclass
class Certificate:
    """Verdict plus the evidence needed to re-check it from scratch."""

    verdict: Verdict
    presentation: PPolynomial
    settings: Settings
    split: SplitCertificate | None = None
    exclusion: ExclusionCertificate | None = None
    diagnostics: dict[str, Any] = field(default_factory=dict)
    version: str = __version__

    @property
    def seed(self) -> int:
        return self.settings.seed

    @property
    def evidence(self) -> SplitCertificate | ExclusionCertificate | None:
        return self.split if self.split is not None else self.exclusion

    @property
    def decided(self) -> bool:
        return self.verdict is not Verdict.UNDECIDED


def inverse_t(P: PPolynomial, precision: int) -> LaurentSeries:
    return LaurentSeries.monomial(RatFn.one(P.field), -1, precision)


def summarize_verdict(verdict: AnisotropyVerdict) -> dict[str, Any]:
    """JSON-ready view of an anisotropy verdict."""
    out: dict[str, Any] = {"form": str(verdict.form), "kind": verdict.kind}
    if verdict.method is not None:
        out["method"] = verdict.method
    if verdict.witness is not None:
        out["witness"] = [str(w) for w in verdict.witness]
    if verdict.bound is not None:
        out["bound"] = verdict.bound
    return out


def spot_check_split(
    P: PPolynomial, cert: SplitCertificate, settings: Settings
) -> dict[str, int]:
    """Solve sampled torsor targets.

    v >= 1 goes through contraction, v >= -3 through the split chain.
    """
    field_ = P.field
    positive = sample_targets(
        field_, settings.samples, 1, 3, 1, settings.precision, settings.seed
    )
    negative = sample_targets(
        field_, settings.samples, -3, 3, 1, settings.precision, settings.seed + 1
    )
    for target in positive:
        if solve_positive_valuation(P, target) is None:
            raise DichotomyViolation(f"split presentation {P} failed to solve {target}")
    for target in negative:
        solve_split(P, cert, target)
    return {"positive_valuation": len(positive), "split_solver": len(negative)}


def _exclusion_or_none(
    P: PPolynomial, target: LaurentSeries, chain=()
) -> ExclusionCertificate | None:
    try:
        return exclude_target(P, target, chain)
    except PrincipalPartNotCertified as exc:
        logger.debug("no exclusion: %s", exc)
        return None


def classify(P: PPolynomial, settings: Settings | None = None) -> Certificate:
    """Run split search, then the anisotropy pipeline, and certify the outcome.

    Args:
        P: separable p-polynomial presenting G = ker P
        settings: budgets, precision and seed

    Returns:
        Certificate with verdict, evidence and diagnostics
    """
    settings = settings or Settings()
    if not is_separable(P):
        raise NotSeparable(f"{P} has no monomial of degree 1; ker P is not smooth")
    diagnostics: dict[str, Any] = {}
    attempt = attempt_split(P, settings.budget)
    diagnostics["split_search"] = {
        "substitutions": len(attempt.chain),
        "reason": attempt.reason,
        "reduced": str(attempt.reduced),
    }
    target = inverse_t(P, settings.precision)

    if attempt.certificate is not None:
        split = attempt.certificate
        diagnostics["spot_checks"] = spot_check_split(P, split, settings)
        # A preimage of t^-1 exists, so no exclusion may be issued.
        solve_split(P, split, target)
        if _exclusion_or_none(P, target) is not None:
            raise DichotomyViolation(
                f"{P} received both a split chain and an exclusion"
            )
        logger.info("%s: split after %d substitutions", P, len(split.chain))
        return Certificate(
            Verdict.SPLIT_SPECIAL, P, settings, split=split, diagnostics=diagnostics
        )

    verdict = analyse_form(principal_part(P), settings.search_degree)
    diagnostics["principal_part"] = summarize_verdict(verdict)
    exclusion = None
    if verdict.is_anisotropic:
        exclusion = _exclusion_or_none(P, target)
    if exclusion is None and attempt.chain:
        reduced = analyse_form(principal_part(attempt.reduced), settings.search_degree)
        diagnostics["reduced_principal_part"] = summarize_verdict(reduced)
        if reduced.is_anisotropic:
            exclusion = _exclusion_or_none(P, target, attempt.chain)
    if exclusion is not None:
        logger.info("%s: t^-1 excluded via %s", P, exclusion.evidence.method)
        return Certificate(
            Verdict.NOT_SPLIT_NOT_SPECIAL,
            P,
            settings,
            exclusion=exclusion,
            diagnostics=diagnostics,
        )
    logger.info("%s: undecided (%s)", P, attempt.reason)
    return Certificate(Verdict.UNDECIDED, P, settings, diagnostics=diagnostics)
