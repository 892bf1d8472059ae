#!/usr/bin/env python3
"""Tests for exclusion certificates, solvers and the brute-force oracle."""

import random
from dataclasses import replace

import pytest

from unipotent_cert.algebra.isotropy import EQUAL_HEIGHT, certify_split
from unipotent_cert.algebra.ppoly import (
    ElementaryStep,
    PPolynomial,
    Substitution,
    evaluate,
    substitute,
)
from unipotent_cert.cohomology.h1 import (
    H1Class,
    exclude_target,
    replay_exclusion,
    solve_positive_valuation,
    solve_split,
)
from unipotent_cert.cohomology.oracle import brute_force_image, sample_targets
from unipotent_cert.errors import (
    NotSeparable,
    PrincipalPartNotCertified,
    SearchSpaceTooLarge,
    TargetValuationOutOfRange,
)
from unipotent_cert.fields.finite import get_field
from unipotent_cert.fields.laurent import LaurentSeries
from unipotent_cert.fields.literal import parse_laurent
from unipotent_cert.fields.polys import PolyS
from unipotent_cert.fields.ratfn import RatFn

F2 = get_field(2)
ONE = RatFn.one(F2)
S = RatFn.s(F2)


def wound_pair() -> PPolynomial:
    """x^2 + x + s*y^2."""
    return PPolynomial(F2, ["x", "y"], [(0, 1, ONE), (0, 0, ONE), (1, 1, S)])


def split_line() -> PPolynomial:
    """y + x^2."""
    return PPolynomial(F2, ["x", "y"], [(1, 0, ONE), (0, 1, ONE)])


def reducible_pair() -> PPolynomial:
    """x^2 + s^2*y^2 + y."""
    return PPolynomial(F2, ["x", "y"], [(0, 1, ONE), (1, 1, S * S), (1, 0, ONE)])


def series(text: str) -> LaurentSeries:
    return parse_laurent(text, F2)


def test_exclusion_of_inverse_t():
    P = wound_pair()
    for text in ("t^-1", "t^-1 + 1 + t", "s*t^-1 + t^3"):
        cert = exclude_target(P, series(text))
        assert cert.target_valuation == -1
        assert cert.m_bound == -2
        assert cert.evidence.method == EQUAL_HEIGHT
        assert cert.presentation == P
        assert replay_exclusion(cert, P) == []
    print(cert.residue_form)
    assert "a0^2" in cert.residue_form and "a1^2" in cert.residue_form


def test_exclusion_window_and_refusals():
    P = wound_pair()
    for text in ("t", "1", "t^-2", "0"):
        with pytest.raises(TargetValuationOutOfRange):
            exclude_target(P, series(text))
    with pytest.raises(PrincipalPartNotCertified):
        exclude_target(split_line(), series("t^-1"))
    with pytest.raises(PrincipalPartNotCertified):
        exclude_target(reducible_pair(), series("t^-1"))
    with pytest.raises(NotSeparable):
        exclude_target(PPolynomial(F2, ["x"], [(0, 1, ONE)]), series("t^-1"))


def test_replay_detects_tampering():
    P = wound_pair()
    cert = exclude_target(P, series("t^-1"))
    assert replay_exclusion(replace(cert, target_valuation=-3), P)
    assert replay_exclusion(replace(cert, m_bound=-4), P)
    assert replay_exclusion(replace(cert, target=series("t")), P)
    assert replay_exclusion(cert, reducible_pair())


def test_contraction_solver():
    P = PPolynomial(F2, ["x"], [(0, 1, ONE), (0, 0, ONE)])
    alpha = solve_positive_valuation(P, series("t"))
    assert alpha is not None
    assert alpha[0].terms() == {1: ONE, 2: ONE, 4: ONE, 8: ONE}
    assert (evaluate(P, alpha) - series("t")).is_zero()

    alpha = solve_positive_valuation(wound_pair(), series("s*t^2 + t^5"))
    assert alpha is not None and alpha[1].is_zero()
    assert all(x.is_zero() for x in solve_positive_valuation(P, series("0")))
    with pytest.raises(TargetValuationOutOfRange):
        solve_positive_valuation(P, series("t^-1"))


@pytest.mark.parametrize("make", [split_line, reducible_pair])
def test_split_solver_hits_every_target(make):
    P = make()
    cert = certify_split(P, 8)
    assert cert is not None
    targets = sample_targets(F2, 20, -3, 3, 2, 16, seed=5)
    for target in targets:
        alpha = solve_split(P, cert, target)
        assert (evaluate(P, alpha) - target).is_zero(), str(target)


def test_oracle_finds_nothing_for_excluded_target():
    """x^2 + x + s*y^2 = t^-1 has no solution with v >= -2 and D <= 2."""
    result = brute_force_image(wound_pair(), series("t^-1"), -2, 2, 2)
    print(f"searched {result.searched} of {result.space}")
    assert result.kind == "not_in_window"
    assert not result.in_image
    assert result.space == 32768**2


def test_oracle_small_windows():
    P = PPolynomial(F2, ["x"], [(0, 1, ONE), (0, 0, ONE)])
    assert brute_force_image(P, series("1"), 0, 2, 1).kind == "not_in_window"

    result = brute_force_image(split_line(), series("t^-1"), -1, 1, 1)
    assert result.in_image
    x, y = result.preimage
    assert x.is_zero()
    assert y.terms() == {-1: ONE}

    target = series("t + t^2")
    result = brute_force_image(P, target, 0, 2, 0)
    assert result.in_image
    assert (evaluate(P, list(result.preimage)) - target).is_zero()


def test_oracle_refusals():
    with pytest.raises(SearchSpaceTooLarge):
        brute_force_image(wound_pair(), series("t^-1"), -2, 2, 2, cap=10)
    with pytest.raises(ValueError):
        brute_force_image(wound_pair(), series("t^-1"), 1, 0, 1)
    with pytest.raises(ValueError):
        brute_force_image(wound_pair(), series("t^-1"), 0, 1, -1)


def test_h1_class_semi_decision():
    P = wound_pair()
    nontrivial = H1Class(series("t^-1"), P)
    assert nontrivial.is_trivial() is False
    assert nontrivial.exclusion() is not None
    assert nontrivial.preimage() is None

    assert H1Class(series("t"), P).is_trivial() is True
    assert H1Class(series("0"), P).is_trivial() is True
    assert H1Class(series("1"), P).is_trivial() is None

    # t^-1 and t^-1 + t differ by t, which is in the image
    assert nontrivial.same_class(H1Class(series("t^-1 + t"), P)) is True
    assert nontrivial.same_class(H1Class(series("t"), P)) is False
    assert nontrivial.same_class(H1Class(series("t"), split_line())) is None

    moved = nontrivial.shifted([series("t^-1"), series("0")])
    # t^-1 + (t^-2 + t^-1) = t^-2, outside the exclusion window
    assert moved.representative.terms() == {-2: ONE}
    assert moved.is_trivial() is None


def test_h1_class_with_split_certificate():
    P = split_line()
    cert = certify_split(P, 8)
    cls = H1Class(series("s*t^-1"), P, cert)
    assert cls.is_trivial() is True
    assert cls.exclusion() is None


def random_laurent_poly(rng: random.Random, exponents: range) -> LaurentSeries:
    terms = {
        e: RatFn(PolyS([rng.randrange(2), rng.randrange(2)], F2)) for e in exponents
    }
    return LaurentSeries.from_terms(terms, F2)


def test_oracle_image_is_closed_under_shifts():
    """A found preimage alpha of a gives alpha + beta for a + P(beta)."""
    rng = random.Random(41)
    P = wound_pair()
    window = range(0, 2)
    for _ in range(10):
        alpha0 = [random_laurent_poly(rng, window) for _ in range(2)]
        a = evaluate(P, alpha0)
        found = brute_force_image(P, a, 0, 1, 1)
        assert found.in_image
        alpha = list(found.preimage)
        beta = [random_laurent_poly(rng, window) for _ in range(2)]
        shifted = a + evaluate(P, beta)
        moved = [x + y for x, y in zip(alpha, beta)]
        assert (evaluate(P, moved) - shifted).is_zero()
        assert brute_force_image(P, shifted, 0, 1, 1).in_image


def test_exclusion_survives_invertible_substitutions():
    rng = random.Random(43)
    P = wound_pair()
    target = series("t^-1")
    exclude_target(P, target)
    certified = 0
    for _ in range(12):
        steps = []
        for _ in range(rng.randrange(1, 3)):
            coeff = RatFn(PolyS([rng.randrange(2), rng.randrange(2)], F2)) or ONE
            kind = rng.choice(["transvection", "scale", "swap"])
            if kind == "transvection":
                source, dest = rng.sample([0, 1], 2)
                steps.append(
                    ElementaryStep(kind, dest, source, coeff, rng.randrange(2))
                )
            elif kind == "scale":
                steps.append(ElementaryStep(kind, rng.randrange(2), coeff=coeff))
            else:
                steps.append(ElementaryStep(kind, 0, 1))
        Q = substitute(P, Substitution.from_steps(F2, 2, steps))
        try:
            exclude_target(Q, target)
            certified += 1
        except PrincipalPartNotCertified:
            pass
        assert not brute_force_image(Q, target, -1, 1, 1).in_image
    print(f"{certified} of 12 substituted presentations re-certified directly")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
