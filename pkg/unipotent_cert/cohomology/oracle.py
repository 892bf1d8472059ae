"""Bounded brute-force membership in the image P(L^r).

Candidates are Laurent polynomials sum_{e=vmin}^{vmax} a_e t^e with a_e in
F_q[s] of degree <= D. P is additive, so the variables are split into two
halves whose values are enumerated once each and joined on the hash of the
truncated value.
"""

import logging
import random
from collections.abc import Iterator
from dataclasses import dataclass
from typing import Literal

from ..algebra.ppoly import PPolynomial, evaluate
from ..errors import SearchSpaceTooLarge
from ..fields.finite import FiniteField
from ..fields.laurent import LaurentSeries
from ..fields.polys import PolyS
from ..fields.ratfn import RatFn

logger = logging.getLogger(__name__)

DEFAULT_CAP = 200_000

# Truncated value of a partial sum: exponent -> nonzero coefficient.
Value = dict[int, RatFn]
# One variable's candidate: its coefficients at exponents vmin..vmax.
Candidate = tuple[RatFn, ...]


@dataclass(frozen=True)
class OracleResult:
    kind: Literal["in_image", "not_in_window"]
    preimage: tuple[LaurentSeries, ...] | None
    searched: int
    space: int

    @property
    def in_image(self) -> bool:
        return self.kind == "in_image"


def _coefficients(field: FiniteField, degree: int) -> list[RatFn]:
    """All polynomials of degree <= D, ordered by code (zero first)."""
    q = field.q
    out = []
    for code in range(q ** (degree + 1)):
        digits = []
        for _ in range(degree + 1):
            code, d = divmod(code, q)
            digits.append(d)
        out.append(RatFn.from_poly(PolyS(digits, field)))
    return out


def _add(a: Value, b: Value) -> Value:
    if not b:
        return a
    out = dict(a)
    for j, c in b.items():
        c = out[j] + c if j in out else c
        if c.is_zero():
            out.pop(j, None)
        else:
            out[j] = c
    return out


def _key(v: Value) -> tuple[tuple[int, RatFn], ...]:
    return tuple(sorted(v.items(), key=lambda kv: kv[0]))


def _contribution(P: PPolynomial, i: int, e: int, a: RatFn, end: int) -> Value:
    """P_i(a t^e), kept below t^end."""
    out: Value = {}
    if a.is_zero():
        return out
    for (v, j), c in P.terms.items():
        if v != i:
            continue
        exp = e * P.p**j
        if exp < end:
            out = _add(out, {exp: c * a.frobenius(j)})
    return out


def _enumerate_half(
    P: PPolynomial,
    variables: list[int],
    exponents: range,
    coeffs: list[RatFn],
    end: int,
) -> Iterator[tuple[tuple[Candidate, ...], Value]]:
    """Candidates of a block of variables with their truncated values, in scan order."""
    table = {
        (i, e): [_contribution(P, i, e, a, end) for a in coeffs]
        for i in variables
        for e in exponents
    }
    slots = [(i, e) for i in variables for e in exponents]
    # Partial products, last slot varying fastest.
    layer: list[tuple[tuple[int, ...], Value]] = [((), {})]
    for slot in slots:
        contrib = table[slot]
        layer = [
            (idx + (n,), _add(value, contrib[n]))
            for idx, value in layer
            for n in range(len(coeffs))
        ]
    width = len(exponents)
    for idx, value in layer:
        cand = tuple(
            tuple(coeffs[n] for n in idx[k * width : (k + 1) * width])
            for k in range(len(variables))
        )
        yield cand, value


def brute_force_image(
    P: PPolynomial,
    target: LaurentSeries,
    vmin: int,
    vmax: int,
    degree: int,
    cap: int = DEFAULT_CAP,
) -> OracleResult:
    """Exhaustive search for alpha with P(alpha) = target modulo t^end.

    Args:
        P: p-polynomial
        target: Series to hit
        vmin: Lowest t-exponent of candidate coefficients
        vmax: Highest t-exponent of candidate coefficients
        degree: s-degree bound D on each coefficient
        cap: Maximum number of half-candidates to enumerate

    Returns:
        A verified preimage, or the statement that the bounded space holds none

    Raises:
        SearchSpaceTooLarge: If the two halves together exceed ``cap``
    """
    if vmin > vmax:
        raise ValueError(f"empty window [{vmin}, {vmax}]")
    if degree < 0:
        raise ValueError("degree bound must be non-negative")
    coeffs = _coefficients(P.field, degree)
    exponents = range(vmin, vmax + 1)
    per_variable = len(coeffs) ** len(exponents)
    cut = (P.r + 1) // 2
    first, second = list(range(cut)), list(range(cut, P.r))
    sizes = (per_variable ** len(first), per_variable ** len(second))
    space = per_variable**P.r
    if sum(sizes) > cap:
        raise SearchSpaceTooLarge(
            f"oracle would enumerate {sum(sizes)} half-candidates "
            f"(window [{vmin}, {vmax}], D={degree}); cap is {cap}"
        )
    end = target.end
    goal = target.terms()
    logger.debug("oracle: space %d, halves %s, target %s", space, sizes, target)

    right: dict[tuple, tuple[Candidate, ...]] = {}
    for cand, value in _enumerate_half(P, second, exponents, coeffs, end):
        right.setdefault(_key(value), cand)
    searched = sizes[1]

    for cand, value in _enumerate_half(P, first, exponents, coeffs, end):
        searched += 1
        need = _add(goal, {j: -c for j, c in value.items()}) if value else goal
        match = right.get(_key(need))
        if match is None:
            continue
        alpha = _to_series(P.field, cand + match, vmin, vmax, end)
        residual = evaluate(P, list(alpha)) - target
        if not residual.is_zero():  # pragma: no cover
            raise RuntimeError(f"oracle preimage fails to verify: residual {residual}")
        return OracleResult("in_image", alpha, searched, space)
    return OracleResult("not_in_window", None, searched, space)


def _to_series(
    field: FiniteField, cands: tuple[Candidate, ...], vmin: int, vmax: int, end: int
) -> tuple[LaurentSeries, ...]:
    anchor = min(vmin, 0)
    top = max(end, vmax + 1, 1)
    return tuple(
        LaurentSeries.from_terms(
            {vmin + k: a for k, a in enumerate(cand)}, field, top - anchor, anchor
        )
        for cand in cands
    )


def sample_targets(
    field: FiniteField,
    count: int,
    vmin: int,
    vmax: int,
    degree: int,
    precision: int,
    seed: int,
) -> list[LaurentSeries]:
    """Random Laurent polynomial targets, reproducible from the seed."""
    rng = random.Random(seed)
    coeffs = _coefficients(field, degree)
    out = []
    for _ in range(count):
        terms = {e: rng.choice(coeffs) for e in range(vmin, vmax + 1)}
        out.append(LaurentSeries.from_terms(terms, field, precision))
    return out

