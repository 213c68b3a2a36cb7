"""Counterexample scans for the two open conjectures, with resumable state.

Conjecture one: for m > n >= 1 and odd p, binomial(m-1, n) divides the sum
of c(m,k)^p over k = 0..n; specialized to the b and a triangles the claimed
factors are (n+1)/2 * catalan(n) and (n+1) * catalan(n).  Conjecture two is
an exact closed form for sum(b(n,k)^2 * b(m,k), k=1..min(n,m)).

Scans are evidence, not proof: a clean state means "no counterexample in the
scanned domain", nothing more.  Every cell is checked in exact arithmetic;
cells whose divisor is zero are counted separately, never silently skipped.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import DomainError, IntegrityError, UsageError
from .exact import binomial, exact_div
from .triangles import _a_ext, _b_ext, _c_ext, catalan

CHECKPOINT_VERSION = 1

Cell = tuple[int, ...]


@dataclass(frozen=True)
class DivisibilityClaim:
    """One cell of conjecture one: divisor should divide dividend exactly."""

    dividend: int
    divisor: int
    parameters: tuple[tuple[str, int], ...]

    @property
    def holds(self) -> bool:
        return self.divisor != 0 and self.dividend % self.divisor == 0


@dataclass
class ScanState:
    """Resumable progress of one scan over a fixed, totally ordered cell set.

    frontier is the next unprocessed cell (None once the domain is spent);
    counterexamples are JSON-ready dicts with big integers as decimal
    strings.  elapsed_ms accumulates across resumed legs and is excluded
    from equality.
    """

    conjecture: str
    p: int | None
    frontier: Cell | None
    processed: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    skipped_zero_divisor: int = 0
    elapsed_ms: float = field(default=0.0, compare=False)

    def to_dict(self, include_timing: bool = True) -> dict:
        doc = {
            "version": CHECKPOINT_VERSION,
            "conjecture": self.conjecture,
            "p": self.p,
            "frontier": list(self.frontier) if self.frontier is not None else None,
            "processed": self.processed,
            "counterexamples": self.counterexamples,
            "skipped_zero_divisor": self.skipped_zero_divisor,
        }
        if include_timing:
            doc["elapsed_ms"] = round(self.elapsed_ms, 3)
        return doc


_VARIANTS = ("c", "b", "a")


def _cell_names(variant: str) -> tuple[str, ...]:
    return ("m", "n") if variant == "c" else ("n",)


def divisibility_claim(variant: str, p: int, cell: Cell) -> DivisibilityClaim:
    """Dividend and claimed divisor at one cell of the chosen variant."""
    if variant == "c":
        m, n = cell
        dividend = sum(_c_ext(m, k) ** p for k in range(n + 1))
        divisor = binomial(m - 1, n)
        return DivisibilityClaim(dividend, divisor, (("m", m), ("n", n)))
    if variant == "b":
        (n,) = cell
        dividend = sum(_b_ext(n, k) ** p for k in range(1, n + 1))
        divisor = exact_div((n + 1) * catalan(n), 2)
        return DivisibilityClaim(dividend, divisor, (("n", n),))
    if variant == "a":
        (n,) = cell
        dividend = sum(_a_ext(n, k) ** p for k in range(1, n + 2))
        divisor = (n + 1) * catalan(n)
        return DivisibilityClaim(dividend, divisor, (("n", n),))
    raise UsageError("unknown divisibility variant %r (expected one of %s)" % (variant, _VARIANTS))


def check_mixed_cube(n: int, m: int) -> tuple[Fraction, Fraction, bool]:
    """Both sides of the mixed-cube identity at (n, m), and their equality."""
    if n < 1 or m < 1:
        raise DomainError("check_mixed_cube: n and m must be >= 1, got n=%d, m=%d" % (n, m))
    r, s = min(n, m), max(n, m)
    lhs = Fraction(sum(_b_ext(n, k) ** 2 * _b_ext(m, k) for k in range(1, r + 1)))
    inner = sum(binomial(s + j, s) * binomial(n + j, n - 1) for j in range(r))
    bracket = 1 - Fraction((n + 2 * m) * inner, r) / (binomial(n + m, n) * binomial(n + r, n))
    rhs = Fraction(binomial(2 * n, n) ** 2 * binomial(2 * m, m), 2) * bracket
    return lhs, rhs, lhs == rhs


def _span(bounds: tuple[int, int], minimum: int) -> range:
    lo, hi = bounds
    return range(max(lo, minimum), hi + 1)


def _divisibility_cells(variant: str, m_range, n_range) -> list[Cell]:
    if variant == "c":
        if m_range is None:
            raise UsageError("variant c needs an m range")
        cells = []
        for m in _span(m_range, 2):
            n_hi = m - 1 if n_range is None else min(n_range[1], m - 1)
            n_lo = 1 if n_range is None else max(n_range[0], 1)
            cells.extend((m, n) for n in range(n_lo, n_hi + 1))
        return cells
    if n_range is None:
        raise UsageError("variant %s needs an n range" % variant)
    return [(n,) for n in _span(n_range, 1)]


def _resume_index(cells: list[Cell], state: ScanState | None) -> int:
    if state is None:
        return 0
    if state.frontier is None:
        return len(cells)
    try:
        return cells.index(state.frontier)
    except ValueError:
        raise IntegrityError(
            "checkpoint frontier %r does not belong to the scan domain" % (state.frontier,)
        ) from None


def _merge_chunks(pool_size: int, cells: list[Cell], check: Callable[[Cell], tuple[dict | None, bool]]):
    """Run check over cells, chunked contiguously, merging results in order."""

    def run(chunk):
        found = []
        zeros = 0
        for cell in chunk:
            record, zero_divisor = check(cell)
            if zero_divisor:
                zeros += 1
            elif record is not None:
                found.append(record)
        return found, zeros

    if pool_size <= 1 or len(cells) < 2:
        return run(cells)
    size = (len(cells) + pool_size - 1) // pool_size
    chunks = [cells[i : i + size] for i in range(0, len(cells), size)]
    found: list[dict] = []
    zeros = 0
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        for chunk_found, chunk_zeros in pool.map(run, chunks):
            found.extend(chunk_found)
            zeros += chunk_zeros
    return found, zeros


def _run_scan(conjecture, p, cells, checkpoint, jobs, max_cells, check) -> ScanState:
    if checkpoint is not None:
        if checkpoint.conjecture != conjecture or checkpoint.p != p:
            raise IntegrityError(
                "checkpoint is for %r (p=%r), not %r (p=%r)"
                % (checkpoint.conjecture, checkpoint.p, conjecture, p)
            )
    start_index = _resume_index(cells, checkpoint)
    stop_index = len(cells) if max_cells is None else min(len(cells), start_index + max_cells)
    started = time.perf_counter()
    found, zeros = _merge_chunks(jobs, cells[start_index:stop_index], check)
    elapsed_ms = (time.perf_counter() - started) * 1000.0

    previous = checkpoint or ScanState(conjecture, p, frontier=None)
    return ScanState(
        conjecture=conjecture,
        p=p,
        frontier=cells[stop_index] if stop_index < len(cells) else None,
        processed=previous.processed + (stop_index - start_index),
        counterexamples=list(previous.counterexamples) + found,
        skipped_zero_divisor=previous.skipped_zero_divisor + zeros,
        elapsed_ms=previous.elapsed_ms + elapsed_ms,
    )


def scan_divisibility(
    variant: str,
    p: int,
    n_range: tuple[int, int] | None = None,
    m_range: tuple[int, int] | None = None,
    checkpoint: ScanState | None = None,
    jobs: int = 1,
    max_cells: int | None = None,
    claim_fn: Callable[[Cell], DivisibilityClaim] | None = None,
) -> ScanState:
    """Exhaustively test the divisibility claim on every cell of the domain.

    Cells are ordered lexicographically ((m, n) ascending for variant c,
    plain n for b and a), which is also the checkpoint frontier order.
    claim_fn substitutes the per-cell claim builder; the engine itself
    never assumes the claim is true.
    """
    variant = variant.lower()
    if variant not in _VARIANTS:
        raise UsageError("unknown divisibility variant %r (expected one of %s)" % (variant, _VARIANTS))
    if p < 1 or p % 2 == 0:
        raise UsageError("exponent p must be an odd integer >= 1, got %r" % p)
    cells = _divisibility_cells(variant, m_range, n_range)
    build = claim_fn or (lambda cell: divisibility_claim(variant, p, cell))

    def check(cell):
        claim = build(cell)
        if claim.divisor == 0:
            return None, True
        if claim.dividend % claim.divisor == 0:
            return None, False
        return {
            "assignment": dict(claim.parameters),
            "dividend": str(claim.dividend),
            "divisor": str(claim.divisor),
            "remainder": str(claim.dividend % claim.divisor),
        }, False

    return _run_scan("divisibility-" + variant, p, cells, checkpoint, jobs, max_cells, check)


def scan_mixed(
    n_range: tuple[int, int],
    m_range: tuple[int, int],
    checkpoint: ScanState | None = None,
    jobs: int = 1,
    max_cells: int | None = None,
) -> ScanState:
    """Test the mixed-cube identity on every (n, m) cell, in (n, m) order."""
    cells: list[Cell] = [(n, m) for n in _span(n_range, 1) for m in _span(m_range, 1)]

    def check(cell):
        n, m = cell
        lhs, rhs, equal = check_mixed_cube(n, m)
        if equal:
            return None, False
        return {"assignment": {"n": n, "m": m}, "lhs": str(lhs), "rhs": str(rhs)}, False

    return _run_scan("mixed-cube", None, cells, checkpoint, jobs, max_cells, check)


def reverify(state: ScanState, claim_fn: Callable[[Cell], DivisibilityClaim] | None = None) -> bool:
    """Recompute every recorded counterexample; True iff all still hold up."""
    if state.conjecture.startswith("divisibility-"):
        variant = state.conjecture.removeprefix("divisibility-")
        for record in state.counterexamples:
            cell = tuple(record["assignment"][name] for name in _cell_names(variant))
            claim = (claim_fn or (lambda c: divisibility_claim(variant, state.p, c)))(cell)
            if claim.holds:
                return False
            if (str(claim.dividend), str(claim.divisor)) != (record["dividend"], record["divisor"]):
                return False
            if str(claim.dividend % claim.divisor) != record["remainder"]:
                return False
        return True
    if state.conjecture == "mixed-cube":
        for record in state.counterexamples:
            lhs, rhs, equal = check_mixed_cube(record["assignment"]["n"], record["assignment"]["m"])
            if equal or (str(lhs), str(rhs)) != (record["lhs"], record["rhs"]):
                return False
        return True
    raise UsageError("cannot reverify unknown conjecture %r" % state.conjecture)


def save_checkpoint(state: ScanState, destination: str | os.PathLike) -> None:
    """Atomically persist state as versioned JSON (write temp, then rename)."""
    doc = state.to_dict()
    tmp = str(destination) + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    os.replace(tmp, destination)


def load_checkpoint(source: str | os.PathLike) -> ScanState:
    """Load a checkpoint written by save_checkpoint; validate its version."""
    try:
        with open(source, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise IntegrityError("unreadable checkpoint %s: %s" % (source, exc)) from exc
    if not isinstance(doc, dict) or doc.get("version") != CHECKPOINT_VERSION:
        raise IntegrityError(
            "checkpoint version %r does not match supported version %r"
            % (doc.get("version") if isinstance(doc, dict) else None, CHECKPOINT_VERSION)
        )
    try:
        frontier = doc["frontier"]
        return ScanState(
            conjecture=doc["conjecture"],
            p=doc["p"],
            frontier=tuple(frontier) if frontier is not None else None,
            processed=doc["processed"],
            counterexamples=doc["counterexamples"],
            skipped_zero_divisor=doc.get("skipped_zero_divisor", 0),
            elapsed_ms=doc.get("elapsed_ms", 0.0),
        )
    except KeyError as exc:
        raise IntegrityError("checkpoint %s is missing field %s" % (source, exc)) from exc
