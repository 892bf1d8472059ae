#!/usr/bin/env python3
"""Tests for p-polynomials, diagonal forms and substitutions."""

import random

import pytest

from unipotent_cert.algebra.ppoly import (
    ElementaryStep,
    PPolynomial,
    Substitution,
    evaluate,
    is_separable,
    principal_part,
    substitute,
)
from unipotent_cert.errors import ArityMismatch, EmptyPolynomial, FieldMismatch
from unipotent_cert.fields.finite import get_field
from unipotent_cert.fields.laurent import LaurentSeries
from unipotent_cert.fields.literal import parse_laurent
from unipotent_cert.fields.polys import PolyS
from unipotent_cert.fields.ratfn import RatFn

F2 = get_field(2)
F3 = get_field(3)
ONE = RatFn.one(F2)
S = RatFn.s(F2)


def wound_pair() -> PPolynomial:
    """x^2 + x + s*y^2."""
    return PPolynomial(F2, ["x", "y"], [(0, 1, ONE), (0, 0, ONE), (1, 1, S)])


def test_structure():
    P = wound_pair()
    assert P.r == 2 and P.p == 2
    assert P.heights(0) == [0, 1]
    assert P.leading(1) == (1, S)
    assert P.linear_only() == []
    assert P.degree_measure() == 4
    assert is_separable(P)
    assert not is_separable(PPolynomial(F2, ["x"], [(0, 1, ONE)]))
    assert str(P) == "x^2 + s*y^2 + x"


def test_terms_cancel_and_validate():
    P = PPolynomial(F2, ["x"], [(0, 1, ONE), (0, 1, ONE), (0, 0, ONE)])
    assert P.terms == {(0, 0): ONE}
    with pytest.raises(ArityMismatch):
        PPolynomial(F2, ["x"], [(1, 0, ONE)])
    with pytest.raises(FieldMismatch):
        PPolynomial(F2, ["x"], [(0, 0, RatFn.one(F3))])
    with pytest.raises(ValueError):
        PPolynomial(F2, ["x", "x"], [])


def test_evaluate_exact_and_series():
    P = wound_pair()
    # s^2 + s + s*1 = s^2
    assert evaluate(P, [S, ONE]) == S * S
    with pytest.raises(ArityMismatch):
        evaluate(P, [S])
    x = parse_laurent("t", F2)
    zero = parse_laurent("0", F2)
    value = evaluate(P, [x, zero])
    assert value.terms() == {1: ONE, 2: ONE}


def test_principal_part():
    P = PPolynomial(F2, ["x", "y"], [(0, 2, ONE), (1, 1, S * S), (0, 0, ONE)])
    form = principal_part(P)
    assert form.heights == (2, 1)
    assert form.coeffs == (ONE, S * S)
    assert form.common_height() is None
    with pytest.raises(EmptyPolynomial):
        principal_part(PPolynomial(F2, ["x"], []))


def test_substitution_cancels_top_terms():
    """x <- x + s*y turns x^2 + s^2*y^2 + y into x^2 + y."""
    P = PPolynomial(F2, ["x", "y"], [(0, 1, ONE), (1, 1, S * S), (1, 0, ONE)])
    sigma = Substitution.from_steps(F2, 2, [ElementaryStep("transvection", 0, 1, S)])
    Q = substitute(P, sigma)
    assert Q == PPolynomial(F2, ["x", "y"], [(0, 1, ONE), (1, 0, ONE)])
    assert Q.linear_only() == [1]
    assert Q.degree_measure() < P.degree_measure()
    assert sigma.describe(P.variables) == "x <- x + (s)*y"


def test_substitution_inverse_and_evaluation():
    rng = random.Random(3)
    P = wound_pair()
    steps = [
        ElementaryStep("transvection", 0, 1, S, height=1),
        ElementaryStep("scale", 1, coeff=S + ONE),
        ElementaryStep("swap", 0, 1),
    ]
    sigma = Substitution.from_steps(F2, 2, steps)
    assert sigma.invertible
    identity = sigma.compose(sigma.inverse())
    assert identity.images == Substitution.identity(F2, 2).images
    Q = substitute(P, sigma)
    for _ in range(20):
        alpha = [
            RatFn(PolyS([rng.randrange(2) for _ in range(3)], F2)) for _ in range(2)
        ]
        assert evaluate(Q, alpha) == evaluate(P, sigma.apply(alpha))


def test_substitution_errors():
    P = wound_pair()
    with pytest.raises(ArityMismatch):
        substitute(P, Substitution.identity(F2, 3))
    with pytest.raises(FieldMismatch):
        substitute(P, Substitution.identity(F3, 2))
    with pytest.raises(ValueError):
        ElementaryStep("transvection", 0, 0, S)
    with pytest.raises(ValueError):
        ElementaryStep("scale", 0, coeff=RatFn.zero(F2))


def random_coeff(rng: random.Random) -> RatFn:
    num = PolyS([rng.randrange(2) for _ in range(3)], F2)
    den = PolyS([1] + [rng.randrange(2) for _ in range(2)], F2)
    return RatFn(num, den)


def random_presentation(rng: random.Random, r: int = 2) -> PPolynomial:
    terms = [
        (rng.randrange(r), rng.randrange(3), random_coeff(rng))
        for _ in range(rng.randrange(1, 5))
    ]
    return PPolynomial(F2, ["x", "y", "z"][:r], terms)


def random_series(rng: random.Random) -> LaurentSeries:
    terms = {j: random_coeff(rng) for j in range(-2, 6) if rng.random() < 0.5}
    return LaurentSeries.from_terms(terms, F2, 10, -2)


def test_evaluate_is_additive():
    rng = random.Random(17)
    for _ in range(60):
        P = random_presentation(rng)
        alpha = [random_coeff(rng) for _ in range(2)]
        beta = [random_coeff(rng) for _ in range(2)]
        total = [a + b for a, b in zip(alpha, beta)]
        assert evaluate(P, total) == evaluate(P, alpha) + evaluate(P, beta)

        alpha_t = [random_series(rng) for _ in range(2)]
        beta_t = [random_series(rng) for _ in range(2)]
        total_t = [a + b for a, b in zip(alpha_t, beta_t)]
        lhs = evaluate(P, total_t)
        assert lhs.agrees_with(evaluate(P, alpha_t) + evaluate(P, beta_t))


def test_principal_part_is_maximal():
    rng = random.Random(29)
    for _ in range(100):
        P = random_presentation(rng, 3)
        if P.is_zero():
            continue
        form = principal_part(P)
        assert [e.var for e in form.entries] == P.occurring()
        for e in form.entries:
            assert P.terms[(e.var, e.height)] == e.coeff
            assert all(j <= e.height for (i, j) in P.terms if i == e.var)


def test_separability_survives_height_zero_substitutions():
    rng = random.Random(31)
    for _ in range(60):
        P = random_presentation(rng)
        steps = []
        for _ in range(rng.randrange(1, 4)):
            kind = rng.choice(["transvection", "scale", "swap"])
            if kind == "transvection":
                steps.append(ElementaryStep(kind, 0, 1, random_coeff(rng)))
            elif kind == "scale":
                coeff = random_coeff(rng)
                steps.append(ElementaryStep(kind, 1, coeff=coeff or ONE))
            else:
                steps.append(ElementaryStep(kind, 0, 1))
        sigma = Substitution.from_steps(F2, 2, steps)
        assert sigma.invertible
        assert is_separable(substitute(P, sigma)) == is_separable(P)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
