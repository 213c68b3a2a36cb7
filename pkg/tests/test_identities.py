"""Registry completeness, spot evaluations, and the sweep engine's
contracts: exhaustive mismatch reporting, canonical rational comparison,
and parallel determinism."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catalan_triangles import identities
from catalan_triangles.errors import DomainError, EmptyDomainError, UnknownIdentityError
from catalan_triangles.identities import (
    IdentityDescriptor,
    evaluate_sides,
    get_identity,
    list_identities,
    verify_identity,
)

REQUIRED_IDS = [
    "prop-recurrence",
    "rec-B",
    "rec-A",
    "thm-linear-sum",
    "thm-alt-sum",
    "cor-alt-B",
    "cor-alt-A",
    "eq-linear-B",
    "eq-linear-A",
    "eq-square-B",
    "eq-square-A",
    "eq-convolution",
    "thm-square-sum",
    "thm-alt-square-sum",
    "cor-square-i",
    "cor-square-ii",
    "cor-square-iii",
    "cor-square-iv",
    "thm-square-decomp-i",
    "thm-square-decomp-ii",
    "thm-square-decomp-remark",
    "eq-vandermonde",
    "eq-alt-square",
    "eq-amm",
    "thm-cube-sum",
    "thm-alt-cube-sum",
    "cor-cube-B",
    "cor-cube-A",
    "cor-alt-cube-A",
    "eq-dixon",
    "thm-b-cube",
    "rem-b-cube-factored",
    "rem-a-cube-factored",
    "thm-harmonic",
    "cor-harmonic-C",
    "cor-harmonic-B",
    "cor-harmonic-A",
    "rem-ps13",
    "rel-gen-catalan",
]


def test_registry_contains_every_required_id():
    registered = {ident.id for ident in list_identities()}
    missing = set(REQUIRED_IDS) - registered
    assert not missing


def test_descriptors_are_well_formed():
    for ident in list_identities():
        assert ident.statement
        assert ident.parameters
        assert ident.default_cap in (40, 100)
        assert callable(ident.lhs) and callable(ident.rhs)


def test_evaluate_sides_spot_values():
    assert evaluate_sides("thm-linear-sum", {"m": 6, "n": 3}) == (10, 10)
    assert evaluate_sides("cor-alt-B", {"n": 3}) == (-2, -2)
    assert evaluate_sides("thm-b-cube", {"n": 2}) == (9, 9)
    assert evaluate_sides("eq-convolution", {"n": 2, "i": 1}) == (6, 6)


def test_evaluate_sides_returns_exact_rationals():
    lhs, rhs = evaluate_sides("eq-linear-B", {"n": 2})
    assert isinstance(lhs, Fraction) and isinstance(rhs, Fraction)
    assert lhs == rhs == 3


def test_unknown_identity_is_reported_distinctly():
    with pytest.raises(UnknownIdentityError) as caught:
        evaluate_sides("no-such-identity", {"n": 1})
    assert "prop-recurrence" in str(caught.value)


def test_constraint_violation_is_reported_distinctly():
    with pytest.raises(DomainError):
        evaluate_sides("eq-convolution", {"n": 2, "i": 3})  # needs i <= n
    with pytest.raises(DomainError):
        evaluate_sides("thm-linear-sum", {"m": 1, "n": 1})  # needs m >= 2
    with pytest.raises(DomainError):
        evaluate_sides("thm-b-cube", {"m": 2})  # wrong parameter name


def test_verify_recurrence_box():
    report = verify_identity("prop-recurrence", {"m": (1, 50), "k": (2, 50)})
    assert report.passed
    assert report.cells == 50 * 49
    assert report.domain == {"m": (1, 50), "k": (2, 50)}


def test_verify_convolution_triangle_domain():
    report = verify_identity("eq-convolution", {"n": (1, 30)})
    assert report.passed
    # i defaults to 1..cap but only cells with i <= n are admissible
    assert report.cells == 30 * 31 // 2


def test_verify_empty_range_is_usage_error():
    with pytest.raises(EmptyDomainError):
        verify_identity("thm-square-sum", {"m": (1, 0)})


def test_verify_range_below_minimum_is_usage_error():
    # the linear-sum theorem needs m >= 2, so m = 1..1 clips to nothing
    with pytest.raises(EmptyDomainError):
        verify_identity("thm-linear-sum", {"m": (1, 1)})


def test_every_identity_passes_on_a_small_box():
    for ident in list_identities():
        report = verify_identity(ident.id, cap=15)
        assert report.passed, (ident.id, report.mismatches[:2])


def _swapped(ident):
    return IdentityDescriptor(
        id=ident.id + "-swapped",
        statement=ident.statement,
        parameters=ident.parameters,
        lhs=ident.rhs,
        rhs=ident.lhs,
        constraint=ident.constraint,
        default_cap=ident.default_cap,
    )


def test_swapping_sides_never_changes_the_outcome():
    for ident in list_identities():
        original = verify_identity(ident, cap=8)
        swapped = verify_identity(_swapped(ident), cap=8)
        assert original.status == swapped.status == "PASS"


def _perturbed(ident, cap=100):
    rhs = ident.rhs
    return IdentityDescriptor(
        id=ident.id + "-perturbed",
        statement=ident.statement + " + 1",
        parameters=ident.parameters,
        lhs=ident.lhs,
        rhs=lambda **kw: Fraction(rhs(**kw)) + 1,
        constraint=ident.constraint,
        default_cap=cap,
    )


def test_perturbed_identity_fails_everywhere():
    # the engine cannot silently pass: off-by-one on the right side must be
    # flagged on every admissible cell
    ident = _perturbed(get_identity("eq-linear-B"))
    report = verify_identity(ident, {"n": (1, 15)})
    assert report.status == "FAIL"
    assert len(report.mismatches) == report.cells == 15


def test_perturbed_swapped_still_fails():
    ident = _swapped(_perturbed(get_identity("eq-linear-A")))
    report = verify_identity(ident, {"n": (1, 10)})
    assert not report.passed
    assert len(report.mismatches) == 10


def test_mismatch_records_both_sides_verbatim():
    ident = _perturbed(get_identity("eq-linear-B"))
    report = verify_identity(ident, {"n": (2, 2)})
    (mismatch,) = report.mismatches
    assert mismatch.assignment == (("n", 2),)
    assert mismatch.lhs == 3
    assert mismatch.rhs == 4
    doc = mismatch.to_dict()
    assert doc == {"assignment": {"n": 2}, "lhs": "3", "rhs": "4"}


def test_mismatches_are_canonically_sorted():
    ident = _perturbed(get_identity("thm-square-sum"))
    report = verify_identity(ident, {"m": (1, 4), "n": (1, 3)}, parallelism=3)
    cells = [tuple(v for _, v in m.assignment) for m in report.mismatches]
    assert cells == sorted(cells)
    assert len(cells) == 12


def test_parallel_report_equals_serial_report():
    for jobs in (2, 4, 8):
        serial = verify_identity("thm-square-sum", {"m": (1, 20), "n": (1, 20)}, parallelism=1)
        parallel = verify_identity("thm-square-sum", {"m": (1, 20), "n": (1, 20)}, parallelism=jobs)
        assert serial.to_dict(include_timing=False) == parallel.to_dict(include_timing=False)


def test_fail_fast_stops_at_first_mismatch():
    ident = _perturbed(get_identity("eq-linear-B"))
    report = verify_identity(ident, {"n": (1, 50)}, fail_fast=True)
    assert len(report.mismatches) == 1
    assert report.cells < 50


def test_allow_outside_domain_explores_beyond_constraints():
    # the alternating-sum identity is stated for n <= m-1 but its
    # zero-extended reading happens to hold beyond; exploration must at
    # least run those extra cells rather than filtering them away
    constrained = verify_identity("thm-alt-sum", {"m": (2, 10), "n": (1, 10)})
    explored = verify_identity("thm-alt-sum", {"m": (2, 10), "n": (1, 10)}, allow_outside_domain=True)
    assert constrained.cells < explored.cells == 90


def test_report_dict_schema():
    report = verify_identity("thm-b-cube", {"n": (1, 12)})
    doc = report.to_dict()
    assert set(doc) == {"identity", "domain", "cells", "status", "mismatches", "elapsed_ms"}
    assert doc["identity"] == "thm-b-cube"
    assert doc["domain"] == {"n": [1, 12]}
    assert doc["cells"] == 12
    assert doc["status"] == "PASS"
    assert doc["mismatches"] == []
    assert set(report.to_dict(include_timing=False)) == {
        "identity", "domain", "cells", "status", "mismatches",
    }


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_random_admissible_cells_balance(data):
    ident = data.draw(st.sampled_from(list_identities()))
    assignment = {}
    for parameter in ident.parameters:
        assignment[parameter.name] = data.draw(
            st.integers(parameter.minimum, parameter.minimum + 25), label=parameter.name
        )
    if ident.constraint is not None and not ident.constraint(**assignment):
        return
    lhs, rhs = evaluate_sides(ident, assignment)
    assert lhs == rhs
