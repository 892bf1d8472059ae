#!/usr/bin/env python3
"""End-to-end tests: classify, verify, serialize and the dichotomy census."""

import json
import random
from pathlib import Path

import pytest

from unipotent_cert.algebra.isotropy import BOUNDED_SEARCH, EQUAL_HEIGHT
from unipotent_cert.algebra.ppoly import PPolynomial
from unipotent_cert.analysis.census import census_presentations, dichotomy_census
from unipotent_cert.analysis.pipeline import Verdict, classify
from unipotent_cert.analysis.verify import verify
from unipotent_cert.config import Settings
from unipotent_cert.data.storage import (
    certificate_from_dict,
    certificate_to_dict,
    load_presentation,
    presentation_from_dict,
    presentation_to_dict,
    write_json,
)
from unipotent_cert.errors import InvalidInput, NotSeparable
from unipotent_cert.fields.finite import get_field
from unipotent_cert.fields.polys import PolyS
from unipotent_cert.fields.ratfn import RatFn

SAMPLES = Path(__file__).parent / "samples"

EXPECTED = {
    "wound_pair.json": Verdict.NOT_SPLIT_NOT_SPECIAL,
    "split_line.json": Verdict.SPLIT_SPECIAL,
    "reducible_pair.json": Verdict.SPLIT_SPECIAL,
    "mixed_heights.json": Verdict.UNDECIDED,
    "artin_schreier_f4.json": Verdict.NOT_SPLIT_NOT_SPECIAL,
}


@pytest.mark.parametrize("name,expected", sorted(EXPECTED.items()))
def test_sample_verdicts(name, expected):
    P = load_presentation(SAMPLES / name)
    cert = classify(P)
    print(f"{name}: {cert.verdict.value}")
    assert cert.verdict is expected
    result = verify(cert, P)
    assert result.ok, result.reasons


def test_split_certificate_details():
    P = load_presentation(SAMPLES / "reducible_pair.json")
    cert = classify(P)
    assert cert.split is not None and cert.exclusion is None
    assert len(cert.split.chain) == 1
    checks = cert.diagnostics["spot_checks"]
    assert checks == {"positive_valuation": 4, "split_solver": 4}
    # no room for the one substitution it needs
    assert classify(P, Settings(budget=0)).verdict is Verdict.UNDECIDED


def test_exclusion_certificate_details():
    P = load_presentation(SAMPLES / "wound_pair.json")
    cert = classify(P)
    assert cert.exclusion is not None
    assert cert.exclusion.evidence.method == EQUAL_HEIGHT
    assert cert.exclusion.target.terms() == {-1: RatFn.one(P.field)}
    assert cert.diagnostics["principal_part"]["kind"] == "anisotropic"
    reason = cert.diagnostics["split_search"]["reason"]
    assert reason == "maximal-height block is anisotropic"
    result = verify(cert, P)
    assert any("oracle: no preimage" in note for note in result.notes)


def test_undecided_records_what_was_tried():
    P = load_presentation(SAMPLES / "mixed_heights.json")
    cert = classify(P)
    assert not cert.decided and cert.evidence is None
    summary = cert.diagnostics["principal_part"]
    assert summary["kind"] == "isotropic" and summary["method"] == BOUNDED_SEARCH
    assert summary["witness"] == ["s", "s"]

    cert.diagnostics["principal_part"]["witness"] = ["1", "1"]
    assert not verify(cert, P).ok


def test_certificate_json_round_trip():
    for name in EXPECTED:
        P = load_presentation(SAMPLES / name)
        cert = classify(P)
        doc = json.loads(write_json(certificate_to_dict(cert)))
        restored = certificate_from_dict(doc)
        assert restored.verdict is cert.verdict
        assert restored.presentation == P
        assert restored.settings == cert.settings
        assert verify(restored, P).ok


def test_tampered_certificates_fail():
    P = load_presentation(SAMPLES / "wound_pair.json")
    doc = certificate_to_dict(classify(P))
    doc["evidence"]["m_bound"] = -4
    assert not verify(certificate_from_dict(doc), P).ok

    doc = certificate_to_dict(classify(P))
    doc["evidence"]["target"]["expr"] = "t"
    assert not verify(certificate_from_dict(doc), P).ok

    S = load_presentation(SAMPLES / "reducible_pair.json")
    doc = certificate_to_dict(classify(S))
    doc["evidence"]["chain"] = []
    assert not verify(certificate_from_dict(doc), S).ok

    # right certificate, wrong input
    assert not verify(classify(P), S).ok


def test_presentation_input_errors():
    doc = presentation_to_dict(load_presentation(SAMPLES / "wound_pair.json"))
    assert presentation_from_dict(doc) == load_presentation(SAMPLES / "wound_pair.json")
    for broken in (
        {**doc, "variables": ["x", "x"]},
        {**doc, "terms": [{"var": "z", "height": 0, "coeff": "1"}]},
        {**doc, "terms": [{"var": "x", "height": -1, "coeff": "1"}]},
        {**doc, "terms": [{"var": "x", "height": 0, "coeff": "s +"}]},
        {**doc, "q": 6},
        {key: v for key, v in doc.items() if key != "p"},
    ):
        with pytest.raises(InvalidInput):
            presentation_from_dict(broken)
    inseparable = {**doc, "terms": [{"var": "x", "height": 1, "coeff": "1"}]}
    with pytest.raises(NotSeparable):
        classify(presentation_from_dict(inseparable))


def test_dichotomy_census_single_variable():
    bounds = {"max_height": 1, "coeff_degree": 1, "variables": 1}
    assert len(list(census_presentations(**bounds))) == 12
    report = dichotomy_census(Settings(samples=1), **bounds)
    print(f"dichotomy census: {dict(report.counts)}")
    assert report.ok, report.mismatches
    assert report.total == 12
    assert report.counts["UNDECIDED"] == 0
    assert report.counts["SPLIT_SPECIAL"] == 2 * 3
    assert report.counts["NOT_SPLIT_NOT_SPECIAL"] == 2 * 9


@pytest.mark.parametrize("seed", [0, 7])
def test_certificates_are_deterministic(seed):
    settings = Settings(seed=seed)
    for name in EXPECTED:
        runs = [
            write_json(certificate_to_dict(classify(load_presentation(path), settings)))
            for path in (SAMPLES / name, SAMPLES / name)
        ]
        assert runs[0] == runs[1], name


def test_presentation_round_trip():
    rng = random.Random(5)
    fields = [get_field(2), get_field(3), get_field(2, [1, 1, 1])]
    for _ in range(60):
        fld = rng.choice(fields)
        names = ["x", "y", "z"][: rng.randrange(1, 4)]
        terms = []
        for _ in range(rng.randrange(1, 6)):
            num = PolyS([rng.randrange(fld.q) for _ in range(3)], fld)
            den = PolyS([1] + [rng.randrange(fld.q) for _ in range(2)], fld)
            var, height = rng.randrange(len(names)), rng.randrange(3)
            terms.append((var, height, RatFn(num, den)))
        P = PPolynomial(fld, names, terms)
        doc = json.loads(write_json(presentation_to_dict(P)))
        assert presentation_from_dict(doc) == P
    for P in census_presentations(max_height=1, coeff_degree=1, variables=2):
        assert presentation_from_dict(presentation_to_dict(P)) == P


def test_dichotomy_census_full():
    """Heights <= 2, coefficient degree <= 1, up to two variables."""
    report = dichotomy_census(Settings(samples=1))
    print(f"dichotomy census: {report.total} inputs, {dict(report.counts)}")
    assert report.ok, report.mismatches
    assert report.total == 3888
    assert sum(report.counts.values()) == 2 * report.total
    assert report.counts["SPLIT_SPECIAL"] == 936
    assert report.counts["NOT_SPLIT_NOT_SPECIAL"] == 4575
    assert report.counts["UNDECIDED"] == 2265


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
