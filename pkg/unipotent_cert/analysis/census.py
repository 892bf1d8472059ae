"""Exhaustive censuses over small presentations.

Two sweeps: the equal-height anisotropy decision against the witness scan,
and the full dichotomy pipeline against its own verifier.
"""

import itertools
import logging
from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass, field

from ..algebra.isotropy import decide_equal_height, search_isotropy
from ..algebra.ppoly import DiagonalForm, FormEntry, PPolynomial, is_separable
from ..config import Settings
from ..errors import DichotomyViolation
from ..fields.finite import FiniteField, get_field
from ..fields.polys import PolyS
from ..fields.ratfn import RatFn
from .pipeline import Verdict, classify
from .verify import verify

logger = logging.getLogger(__name__)


@dataclass
class CensusReport:
    name: str
    total: int = 0
    counts: Counter = field(default_factory=Counter)
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def polynomials(fld: FiniteField, degree: int, nonzero: bool = False) -> list[RatFn]:
    """Polynomials in s of degree <= degree, ordered by code."""
    out = []
    for digits in itertools.product(range(fld.q), repeat=degree + 1):
        f = RatFn.from_poly(PolyS(reversed(digits), fld))
        if nonzero and f.is_zero():
            continue
        out.append(f)
    return out


def anisotropy_census(
    p: int = 2, m: int = 1, coeff_degree: int = 2, search_degree: int = 3
) -> CensusReport:
    """decide_equal_height vs search_isotropy on all binary equal-height forms."""
    fld = get_field(p)
    report = CensusReport("anisotropy agreement")
    coeffs = polynomials(fld, coeff_degree, nonzero=True)
    for c1, c2 in itertools.product(coeffs, repeat=2):
        form = DiagonalForm(fld, (FormEntry(0, c1, m), FormEntry(1, c2, m)))
        verdict = decide_equal_height(form)
        witness = search_isotropy(form, search_degree)
        report.total += 1
        report.counts[verdict.kind] += 1
        if verdict.is_isotropic != (witness is not None):
            report.mismatches.append(
                f"{form}: decided {verdict.kind}, scan witness {witness}"
            )
    logger.info("anisotropy census: %d forms, %s", report.total, dict(report.counts))
    return report


def census_presentations(
    p: int = 2, max_height: int = 2, coeff_degree: int = 1, variables: int = 2
) -> Iterator[PPolynomial]:
    """Every separable p-polynomial with the given bounds, r = 1 .. variables."""
    fld = get_field(p)
    coeffs = polynomials(fld, coeff_degree)
    for r in range(1, variables + 1):
        names = ["x", "y", "z", "w"][:r] if r <= 4 else [f"x{i}" for i in range(r)]
        slots = [(i, j) for i in range(r) for j in range(max_height + 1)]
        for choice in itertools.product(coeffs, repeat=len(slots)):
            terms = {slot: c for slot, c in zip(slots, choice) if not c.is_zero()}
            P = PPolynomial(fld, names, terms)
            if is_separable(P):
                yield P


def dichotomy_census(
    settings: Settings | None = None,
    budgets: tuple[int, ...] = (0, 8),
    **bounds: int,
) -> CensusReport:
    """Classify and verify every census presentation under several budgets."""
    settings = settings or Settings()
    report = CensusReport("dichotomy coherence")
    for P in census_presentations(**bounds):
        report.total += 1
        seen: set[Verdict] = set()
        for budget in budgets:
            cert = classify(P, settings.replace(budget=budget))
            seen.add(cert.verdict)
            report.counts[cert.verdict.value] += 1
            result = verify(cert, P)
            if not result.ok:
                reasons = "; ".join(result.reasons)
                report.mismatches.append(f"{P} (budget {budget}): {reasons}")
        if {Verdict.SPLIT_SPECIAL, Verdict.NOT_SPLIT_NOT_SPECIAL} <= seen:
            raise DichotomyViolation(f"{P} received both verdicts")
    logger.info(
        "dichotomy census: %d presentations, %s", report.total, dict(report.counts)
    )
    return report
