#!/usr/bin/env python3
"""Tests for anisotropy decisions and split certification."""

import pytest

from unipotent_cert.algebra.isotropy import (
    BOUNDED_SEARCH,
    EQUAL_HEIGHT,
    VALUATION_SEPARATION,
    AnisotropyVerdict,
    analyse_form,
    attempt_split,
    certify_split,
    decide_equal_height,
    search_isotropy,
    valuation_separation,
)
from unipotent_cert.algebra.ppoly import DiagonalForm, FormEntry, PPolynomial
from unipotent_cert.analysis.census import anisotropy_census, polynomials
from unipotent_cert.errors import EmptyForm, HeightMismatch, NotSeparable
from unipotent_cert.fields.finite import get_field
from unipotent_cert.fields.ratfn import RatFn

F2 = get_field(2)
ONE = RatFn.one(F2)
S = RatFn.s(F2)


def form(*entries: tuple[RatFn, int]) -> DiagonalForm:
    entries_ = tuple(FormEntry(i, c, m) for i, (c, m) in enumerate(entries))
    return DiagonalForm(F2, entries_)


def test_equal_height_decision():
    verdict = decide_equal_height(form((ONE, 1), (S, 1)))
    assert verdict.is_anisotropic and verdict.method == EQUAL_HEIGHT

    verdict = decide_equal_height(form((ONE, 1), (S * S, 1)))
    assert verdict.is_isotropic
    assert verdict.witness == (S, ONE)

    assert decide_equal_height(form((ONE, 1))).is_anisotropic


def test_equal_height_higher_m_and_linear():
    # {1, s, s^2, s^3} is a basis of k over k^4
    assert decide_equal_height(form((ONE, 2), (S**3, 2))).is_anisotropic
    verdict = decide_equal_height(form((S, 2), (S**5, 2)))
    assert verdict.is_isotropic
    # height 0: any two nonzero coefficients are dependent
    assert decide_equal_height(form((ONE, 0), (S, 0))).is_isotropic


def test_equal_height_errors():
    with pytest.raises(HeightMismatch):
        decide_equal_height(form((ONE, 2), (S, 1)))
    with pytest.raises(EmptyForm):
        decide_equal_height(DiagonalForm(F2, ()))


def test_valuation_separation():
    assert valuation_separation(form((ONE, 1), (S, 1))).method == VALUATION_SEPARATION
    assert valuation_separation(form((ONE, 1), (S, 1))).is_anisotropic
    assert valuation_separation(form((ONE, 1), (S * S, 1))).kind == "unknown"
    assert valuation_separation(form((ONE, 2), (S, 1))).is_anisotropic


def test_search_isotropy_scan_order():
    """The first verified hit for x^4 + s^2 y^2 with D = 1 is (s, s)."""
    witness = search_isotropy(form((ONE, 2), (S * S, 1)), 1)
    assert witness == (S, S)
    for D in range(5):
        assert search_isotropy(form((ONE, 1), (S, 1)), D) is None
    with pytest.raises(EmptyForm):
        search_isotropy(DiagonalForm(F2, ()), 2)


def test_analyse_form_layers():
    mixed = analyse_form(form((ONE, 2), (S * S, 1)), 2)
    assert mixed.is_isotropic and mixed.method == BOUNDED_SEARCH
    separated = analyse_form(form((ONE, 2), (S, 1)), 2)
    assert separated.is_anisotropic and separated.method == VALUATION_SEPARATION
    unknown = analyse_form(form((ONE, 2), (S**3 + S**2, 1)), 0)
    assert unknown.kind == "unknown" and unknown.bound == 0


def test_witness_is_reverified():
    with pytest.raises(ValueError):
        AnisotropyVerdict("isotropic", form((ONE, 1), (S, 1)), witness=(ONE, ONE))
    with pytest.raises(ValueError):
        zero = RatFn.zero(F2)
        AnisotropyVerdict("isotropic", form((ONE, 1), (S, 1)), witness=(zero, zero))


def test_census_agreement():
    """Equal-height decision and witness scan agree on all binary forms."""
    report = anisotropy_census()
    print(f"anisotropy census: {report.total} forms, {dict(report.counts)}")
    assert report.total == 49
    assert report.ok, report.mismatches
    assert report.counts["isotropic"] > 0 and report.counts["anisotropic"] > 0


def test_valuation_separation_is_sound():
    coeffs = polynomials(F2, 2, nonzero=True)
    for c1 in coeffs:
        for c2 in coeffs:
            f = form((c1, 1), (c2, 1))
            if valuation_separation(f).is_anisotropic:
                assert search_isotropy(f, 3) is None


def test_certify_split_examples():
    P = PPolynomial(F2, ["x", "y"], [(1, 0, ONE), (0, 1, ONE)])
    cert = certify_split(P, 8)
    assert cert is not None and cert.chain == () and cert.elimination == (1,)

    P = PPolynomial(F2, ["x", "y"], [(0, 1, ONE), (1, 1, S * S), (1, 0, ONE)])
    cert = certify_split(P, 8)
    assert cert is not None and len(cert.chain) == 1
    replay = cert.replay(P)
    assert replay[-1] == PPolynomial(F2, ["x", "y"], [(0, 1, ONE), (1, 0, ONE)])
    assert replay[-1].linear_only() == [1]
    assert certify_split(P, 0) is None

    wound = PPolynomial(F2, ["x", "y"], [(0, 1, ONE), (0, 0, ONE), (1, 1, S)])
    attempt = attempt_split(wound, 8)
    assert attempt.certificate is None
    assert attempt.reason == "maximal-height block is anisotropic"

    mixed = PPolynomial(F2, ["x", "y"], [(0, 2, ONE), (1, 1, S * S), (0, 0, ONE)])
    attempt = attempt_split(mixed, 8)
    assert attempt.certificate is None
    assert attempt.reason == "maximal-height block has a single variable"


def test_certify_split_free_variables_and_errors():
    P = PPolynomial(F2, ["x", "y", "z"], [(0, 0, ONE), (0, 1, S)])
    attempt = attempt_split(P, 8)
    assert attempt.certificate is None
    P = PPolynomial(F2, ["x", "y", "z"], [(0, 0, ONE), (1, 1, S)])
    cert = certify_split(P, 8)
    assert cert is not None and cert.elimination == (0,) and cert.free == (2,)
    with pytest.raises(NotSeparable):
        certify_split(PPolynomial(F2, ["x"], [(0, 1, ONE)]), 8)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
