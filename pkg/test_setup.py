#!/usr/bin/env python3
"""Quick test script to validate basic setup."""

import sys


def test_imports():
    """Test that all modules can be imported."""
    print("Testing imports...")

    from unipotent_cert import __version__

    print(f"✓ unipotent_cert version: {__version__}")

    from unipotent_cert.fields.finite import get_field
    from unipotent_cert.fields.laurent import LaurentSeries
    from unipotent_cert.fields.ratfn import RatFn

    print("✓ Field tower imports successful")

    from unipotent_cert.algebra.isotropy import certify_split, decide_equal_height
    from unipotent_cert.algebra.ppoly import PPolynomial

    print("✓ p-polynomial and isotropy imports successful")

    from unipotent_cert.cohomology.h1 import exclude_target
    from unipotent_cert.cohomology.oracle import brute_force_image

    print("✓ Cohomology imports successful")

    from unipotent_cert.groups.frattini import frattini_subgroup

    print("✓ Frattini imports successful")

    from unipotent_cert.analysis.pipeline import classify
    from unipotent_cert.data.storage import load_presentation

    print("✓ Pipeline and storage imports successful")

    assert __version__
    assert all(
        callable(f)
        for f in (
            get_field,
            certify_split,
            decide_equal_height,
            exclude_target,
            brute_force_image,
            frattini_subgroup,
            classify,
            load_presentation,
        )
    )
    assert LaurentSeries and RatFn and PPolynomial


def test_quick_classification():
    """Classify the smallest wound-style pair end to end."""
    print("\nTesting classification...")
    from unipotent_cert.analysis.pipeline import Verdict, classify
    from unipotent_cert.algebra.ppoly import PPolynomial
    from unipotent_cert.fields.finite import get_field
    from unipotent_cert.fields.ratfn import RatFn

    F2 = get_field(2)
    one, s = RatFn.one(F2), RatFn.s(F2)
    P = PPolynomial(F2, ["x", "y"], [(0, 1, one), (0, 0, one), (1, 1, s)])
    cert = classify(P)
    print(f"✓ {P}: {cert.verdict.value}")
    assert cert.verdict is Verdict.NOT_SPLIT_NOT_SPECIAL


def test_entry_points_document_arguments():
    """Public entry points carry Args/Returns sections."""
    print("\nChecking entry-point docstrings...")
    from unipotent_cert.analysis.verify import verify
    from unipotent_cert.cohomology.h1 import exclude_target, solve_positive_valuation
    from unipotent_cert.cohomology.oracle import brute_force_image
    from unipotent_cert.data import storage
    from unipotent_cert.groups.frattini import frattini_subgroup

    documented = (
        storage.read_json,
        storage.write_json,
        storage.load_presentation,
        storage.load_group,
        storage.load_certificate,
        storage.certificate_to_dict,
        exclude_target,
        solve_positive_valuation,
        brute_force_image,
        frattini_subgroup,
        verify,
    )
    for f in documented:
        doc = f.__doc__ or ""
        assert "Args:" in doc and "Returns:" in doc, f.__name__
    print(f"✓ {len(documented)} entry points documented")


if __name__ == "__main__":
    print("🧪 unipotent-cert Setup Test\n")

    failures = 0
    for test in (
        test_imports,
        test_quick_classification,
        test_entry_points_document_arguments,
    ):
        try:
            test()
        except Exception as e:
            print(f"❌ {test.__name__}: {e}")
            failures += 1

    if failures:
        print("❌ Some tests failed. Check the errors above.")
        sys.exit(1)
    print("🎉 Setup appears to be working correctly!")
    print("\nNext steps:")
    print("1. Run: unipotent-cert classify samples/wound_pair.json")
    print("2. Run: unipotent-cert frattini samples/d4.json")
