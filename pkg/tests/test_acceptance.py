"""Acceptance suite: one test per criterion, each at exact (zero-tolerance)
equality, printing one pass line when it holds.

Run as `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines alongside pytest's own pass/fail report.
"""

import json
import math
import time
from fractions import Fraction

from catalan_triangles.conjectures import (
    DivisibilityClaim,
    divisibility_claim,
    check_mixed_cube,
    load_checkpoint,
    save_checkpoint,
    scan_divisibility,
    scan_mixed,
)
from catalan_triangles.exact import harmonic
from catalan_triangles.identities import list_identities, verify_identity
from catalan_triangles.triangles import (
    a_number,
    a_row,
    b_number,
    b_row,
    c_row,
    catalan,
    seq_a,
    seq_b,
)

C_ROWS_1_TO_10 = {
    1: [1, -1],
    2: [1, 0, -1],
    3: [1, 1, -1, -1],
    4: [1, 2, 0, -2, -1],
    5: [1, 3, 2, -2, -3, -1],
    6: [1, 4, 5, 0, -5, -4, -1],
    7: [1, 5, 9, 5, -5, -9, -5, -1],
    8: [1, 6, 14, 14, 0, -14, -14, -6, -1],
    9: [1, 7, 20, 28, 14, -14, -28, -20, -7, -1],
    10: [1, 8, 27, 48, 42, 0, -42, -48, -27, -8, -1],
}

B_ROWS_1_TO_6 = {
    1: [1],
    2: [2, 1],
    3: [5, 4, 1],
    4: [14, 14, 6, 1],
    5: [42, 48, 27, 8, 1],
    6: [132, 165, 110, 44, 10, 1],
}

A_ROWS_1_TO_6 = {
    1: [1, 1],
    2: [2, 3, 1],
    3: [5, 9, 5, 1],
    4: [14, 28, 20, 7, 1],
    5: [42, 90, 75, 35, 9, 1],
    6: [132, 297, 275, 154, 54, 11, 1],
}


def comb_or_zero(u, v):
    if v < 0 or v > u:
        return 0
    return math.comb(u, v)


def a_oracle(n):
    return sum(math.comb(n + k, n) ** 2 for k in range(n + 1))


def b_oracle(n):
    total = sum(k * comb_or_zero(2 * n - k - 1, n - 1) ** 2 for k in range(n + 1))
    assert total % n == 0
    return total // n


def passed(line):
    print("[acceptance] %s: PASS" % line, flush=True)


def test_criterion_1_table_reproduction():
    started = time.perf_counter()
    for m, expected in C_ROWS_1_TO_10.items():
        assert list(c_row(m)) == expected
    for n, expected in B_ROWS_1_TO_6.items():
        assert list(b_row(n)) == expected
    for n, expected in A_ROWS_1_TO_6.items():
        assert list(a_row(n)) == expected
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    passed("criterion 1 (triangle tables, %.3fs)" % elapsed)


def test_criterion_2_full_registry_sweep():
    idents = list_identities()
    assert len(idents) >= 39
    started = time.perf_counter()
    for ident in idents:
        report = verify_identity(ident.id)  # minimum..default_cap on every parameter
        assert report.passed, (ident.id, report.mismatches[:3])
        assert report.cells > 0
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0
    passed("criterion 2 (registry sweep, %d identities, %.1fs)" % (len(idents), elapsed))


def test_criterion_3_cube_sum_closed_forms():
    for n in range(1, 41):
        b_cubes = sum(b_number(n, k) ** 3 for k in range(1, n + 1))
        assert b_cubes == Fraction(n + 1, 2) * catalan(n) * b_oracle(n)
        a_cubes = sum(a_number(n, k) ** 3 for k in range(1, n + 2))
        assert a_cubes == (n + 1) * catalan(n) * ((2 * (n + 1) * catalan(n)) ** 2 - 3 * a_oracle(n))
    passed("criterion 3 (cube-sum closed forms, n <= 40)")


def test_criterion_4_oeis_sequences():
    # A112029: defining sum, first five terms 1, 5, 46, 517, 6376
    expected_a = [1, 5, 46, 517, 6376, 82994, 1119210, 15475205, 217994860, 3115374880]
    assert [seq_a(n) for n in range(10)] == expected_a
    assert expected_a == [a_oracle(n) for n in range(10)]
    assert expected_a[:5] == [1, 5, 46, 517, 6376]
    # A183069: defining sum; the fifth term is 1626 (both displayed forms and
    # the factorization sum(b(5,k)^3) == 126 * 1626 force it)
    expected_b = [1, 3, 19, 163, 1626, 17769, 206487, 2508195, 31504240, 406214878]
    assert [seq_b(n) for n in range(1, 11)] == expected_b
    assert expected_b == [b_oracle(n) for n in range(1, 11)]
    assert expected_b[:4] == [1, 3, 19, 163]
    assert sum(b_number(5, k) ** 3 for k in range(1, 6)) == 126 * expected_b[4]
    passed("criterion 4 (OEIS sequence agreement, 10 terms each)")


def test_criterion_5_conjecture_scans():
    started = time.perf_counter()
    state_b = scan_divisibility("b", 5, n_range=(1, 30))
    assert state_b.processed == 30 and not state_b.counterexamples
    state_a = scan_divisibility("a", 5, n_range=(1, 30))
    assert state_a.processed == 30 and not state_a.counterexamples
    for p in (5, 7):
        state_c = scan_divisibility("c", p, m_range=(2, 40))
        assert state_c.processed == 780 and not state_c.counterexamples
        assert state_c.skipped_zero_divisor == 0

    # the scanner must be able to fail: nudge every divisor by one
    def falsified(cell):
        claim = divisibility_claim("c", 5, cell)
        return DivisibilityClaim(claim.dividend, claim.divisor + 1, claim.parameters)

    broken = scan_divisibility("c", 5, m_range=(2, 20), claim_fn=falsified)
    assert broken.counterexamples
    elapsed = time.perf_counter() - started
    assert elapsed < 300.0
    passed("criterion 5 (conjecture scans clean, falsified divisor caught, %.1fs)" % elapsed)


def test_criterion_6_mixed_cube_conjecture():
    for n in range(1, 13):
        for m in range(1, 13):
            r, s = min(n, m), max(n, m)
            lhs_oracle = Fraction(
                sum(b_number(n, k) ** 2 * b_number(m, k) for k in range(1, r + 1))
            )
            inner = sum(math.comb(s + j, s) * math.comb(n + j, n - 1) for j in range(r))
            rhs_oracle = Fraction(math.comb(2 * n, n) ** 2 * math.comb(2 * m, m), 2) * (
                1 - Fraction(n + 2 * m, r) * Fraction(inner, math.comb(n + m, n) * math.comb(n + r, n))
            )
            lhs, rhs, equal = check_mixed_cube(n, m)
            assert (lhs, rhs) == (lhs_oracle, rhs_oracle)
            assert equal
            if n == m:
                assert lhs == sum(b_number(n, k) ** 3 for k in range(1, n + 1))
    assert not scan_mixed((1, 12), (1, 12)).counterexamples
    passed("criterion 6 (mixed-cube evaluator vs brute force, 1 <= n,m <= 12)")


def test_criterion_7_harmonic_identities():
    for identity_id in ("thm-harmonic", "cor-harmonic-C", "cor-harmonic-B", "cor-harmonic-A"):
        report = verify_identity(identity_id)  # all admissible (m, n) <= 100
        assert report.passed, (identity_id, report.mismatches[:3])
    spot = sum(a_number(2, k) * harmonic(3 - k) for k in range(1, 3))
    assert spot == 6 == 2 * Fraction(3, 2) + 3 * 1
    passed("criterion 7 (harmonic identities <= 100, spot value 6)")


def test_criterion_8_parallel_determinism():
    sweep = [
        verify_identity("thm-square-sum", {"m": (1, 40), "n": (1, 40)}, parallelism=jobs)
        for jobs in (1, 8)
    ]
    assert (
        json.dumps(sweep[0].to_dict(include_timing=False))
        == json.dumps(sweep[1].to_dict(include_timing=False))
    )
    scans = [scan_divisibility("c", 5, m_range=(2, 25), jobs=jobs) for jobs in (1, 8)]
    assert scans[0] == scans[1]
    assert (
        json.dumps(scans[0].to_dict(include_timing=False))
        == json.dumps(scans[1].to_dict(include_timing=False))
    )
    passed("criterion 8 (parallelism 1 vs 8, identical JSON)")


def test_criterion_9_checkpoint_resume(tmp_path):
    uninterrupted = scan_divisibility("c", 5, m_range=(2, 30))
    for cut in (17, uninterrupted.processed // 2, uninterrupted.processed - 1):
        partial = scan_divisibility("c", 5, m_range=(2, 30), max_cells=cut)
        path = tmp_path / ("resume-%d.json" % cut)
        save_checkpoint(partial, path)
        resumed = scan_divisibility("c", 5, m_range=(2, 30), checkpoint=load_checkpoint(path))
        assert resumed == uninterrupted
        assert (
            json.dumps(resumed.to_dict(include_timing=False))
            == json.dumps(uninterrupted.to_dict(include_timing=False))
        )
    passed("criterion 9 (checkpoint resume equals uninterrupted run)")
