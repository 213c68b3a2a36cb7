"""Exact integer and rational primitives.

Arbitrary precision comes from Python's native int and fractions.Fraction
(always in lowest terms, positive denominator), so every operation here is
exact by construction; there is deliberately no floating-point fast path.
"""

from __future__ import annotations

import threading
from collections import OrderedDict
from fractions import Fraction
from typing import Callable

from .errors import DomainError, IntegrityError

Rational = Fraction

# Rows with index above this are computed multiplicatively and never cached;
# building a full Pascal row only pays off when nearby entries get re-read,
# and a single low-index entry of a long row is far cheaper directly.
ROW_CACHE_MAX_INDEX = 512
DEFAULT_ROW_CACHE_BUDGET = 64 * 1024 * 1024


class RowCache:
    """LRU cache of whole rows keyed by row index, bounded by a byte budget.

    Rows are built outside the lock and inserted complete, so concurrent
    readers never observe a partially built row.
    """

    def __init__(self, build: Callable[[int], tuple], budget: int = DEFAULT_ROW_CACHE_BUDGET):
        self._build = build
        self._budget = budget
        self._rows: OrderedDict[int, tuple] = OrderedDict()
        self._sizes: dict[int, int] = {}
        self._bytes = 0
        self._lock = threading.Lock()

    def row(self, index: int) -> tuple:
        with self._lock:
            row = self._rows.get(index)
            if row is not None:
                self._rows.move_to_end(index)
                return row
        row = self._build(index)
        size = sum(entry.bit_length() // 8 + 1 for entry in row)
        with self._lock:
            if index not in self._rows:
                self._rows[index] = row
                self._sizes[index] = size
                self._bytes += size
                while self._bytes > self._budget and len(self._rows) > 1:
                    oldest, _ = self._rows.popitem(last=False)
                    self._bytes -= self._sizes.pop(oldest)
            return self._rows[index]

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def byte_size(self) -> int:
        return self._bytes


def _pascal_row(u: int) -> tuple[int, ...]:
    row = [1] * (u + 1)
    entry = 1
    for k in range(u):
        entry = entry * (u - k) // (k + 1)  # exact at every step
        row[k + 1] = entry
    return tuple(row)


pascal_rows = RowCache(_pascal_row)


def binomial(u: int, v: int) -> int:
    """Binomial coefficient C(u, v), zero whenever v < 0 or v > u."""
    if u < 0:
        raise DomainError("binomial: u must be >= 0, got %d" % u)
    if v < 0 or v > u:
        return 0
    if u <= ROW_CACHE_MAX_INDEX:
        return pascal_rows.row(u)[v]
    v = min(v, u - v)
    result = 1
    for i in range(v):
        result = result * (u - i) // (i + 1)
    return result


def exact_div(a: int, b: int) -> int:
    """Division that must leave no remainder; anything else is a bug upstream."""
    if b == 0:
        raise IntegrityError("exact_div: zero divisor")
    quotient, remainder = divmod(a, b)
    if remainder:
        raise IntegrityError("exact_div: %d is not divisible by %d" % (a, b))
    return quotient


_harmonic_lock = threading.Lock()
_harmonic_cache: list[Fraction] = [Fraction(0)]  # index 0 is a sentinel, never returned


def harmonic(n: int) -> Fraction:
    """Exact n-th harmonic number 1 + 1/2 + ... + 1/n, in lowest terms."""
    if n < 1:
        raise DomainError("harmonic: n must be >= 1, got %d" % n)
    if n >= len(_harmonic_cache):
        with _harmonic_lock:
            while len(_harmonic_cache) <= n:
                k = len(_harmonic_cache)
                _harmonic_cache.append(_harmonic_cache[-1] + Fraction(1, k))
    return _harmonic_cache[n]
