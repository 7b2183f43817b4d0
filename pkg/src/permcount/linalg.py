"""Exact integer matrix arithmetic.

Everything here works on Python ints, so nothing overflows: permanents and
matching counts grow exponentially with the matrix size.

Minor convention used across the package: ``A^{i1..ik}_{o1..ok}`` deletes the
*columns* i (gadget inputs) and the *rows* o (gadget outputs).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    BadModulus,
    DimensionTooLarge,
    IndexOutOfRange,
    NotPerfectSquare,
    UnequalRemovalCounts,
)

NAIVE_LIMIT = 12
RYSER_LIMIT = 32


class IntMatrix:
    """Immutable dense square matrix of arbitrary-precision integers."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        n = len(data)
        if n == 0:
            raise ValueError("matrix must have dim >= 1")
        if any(len(r) != n for r in data):
            raise ValueError("matrix must be square")
        self._rows = data

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def ones(cls, n: int) -> "IntMatrix":
        return cls([[1] * n for _ in range(n)])

    @classmethod
    def zeros(cls, n: int) -> "IntMatrix":
        return cls([[0] * n for _ in range(n)])

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        n = self.dim
        if not (0 <= i < n and 0 <= j < n):
            raise IndexOutOfRange(f"entry ({i},{j}) outside {n}x{n}")
        return self._rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self._rows))

    def is_zero_one(self) -> bool:
        return all(x in (0, 1) for r in self._rows for x in r)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntMatrix) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})"


def as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix(m)


@dataclass(frozen=True)
class MinorSpec:
    """Columns (inputs) and rows (outputs) to delete, each strictly increasing."""

    removed_cols: tuple[int, ...] = ()
    removed_rows: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "removed_cols", tuple(self.removed_cols))
        object.__setattr__(self, "removed_rows", tuple(self.removed_rows))

    @classmethod
    def of(cls, cols: Iterable[int], rows: Iterable[int]) -> "MinorSpec":
        """Build a spec from unordered index collections (sorted for you)."""
        return cls(tuple(sorted(cols)), tuple(sorted(rows)))


def permanent_naive(m) -> int:
    """Permanent by expansion over all permutations (the oracle, dim <= 12)."""
    m = as_matrix(m)
    n = m.dim
    if n > NAIVE_LIMIT:
        raise DimensionTooLarge(f"permanent_naive limited to dim {NAIVE_LIMIT}, got {n}")
    rows = m.rows
    total = 0
    for sigma in itertools.permutations(range(n)):
        prod = 1
        for i, j in enumerate(sigma):
            a = rows[i][j]
            if a == 0:
                prod = 0
                break
            prod *= a
        total += prod
    return total


def permanent_ryser(m) -> int:
    """Ryser's inclusion-exclusion formula, Gray-code ordered: O(n 2^n)."""
    m = as_matrix(m)
    n = m.dim
    if n > RYSER_LIMIT:
        raise DimensionTooLarge(f"permanent_ryser limited to dim {RYSER_LIMIT}, got {n}")
    cols = list(zip(*m.rows))
    rowsum = [0] * n
    total = 0
    size = 0
    gray = 0
    for k in range(1, 1 << n):
        # column flipped between consecutive Gray codes
        j = (k & -k).bit_length() - 1
        gray ^= 1 << j
        col = cols[j]
        if gray >> j & 1:
            size += 1
            for i in range(n):
                rowsum[i] += col[i]
        else:
            size -= 1
            for i in range(n):
                rowsum[i] -= col[i]
        prod = 1
        for s in rowsum:
            if s == 0:
                prod = 0
                break
            prod *= s
        if prod:
            # sign (-1)^(n - |S|)
            total += prod if (n - size) % 2 == 0 else -prod
    return total


def permanent(m) -> int:
    """Default permanent routine: Ryser."""
    return permanent_ryser(m)


def determinant(m) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    m = as_matrix(m)
    a = m.tolist()
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def _check_indices(idx: Sequence[int], n: int, what: str) -> None:
    for a, b in zip(idx, idx[1:]):
        if a >= b:
            raise IndexOutOfRange(f"removed {what} must be strictly increasing: {list(idx)}")
    for x in idx:
        if not 0 <= x < n:
            raise IndexOutOfRange(f"{what} index {x} outside [0,{n})")


def minor(m, spec: MinorSpec) -> IntMatrix:
    """Delete ``spec.removed_cols`` and ``spec.removed_rows`` from ``m``."""
    m = as_matrix(m)
    n = m.dim
    cols, rows = spec.removed_cols, spec.removed_rows
    if len(cols) != len(rows):
        raise UnequalRemovalCounts(f"{len(cols)} columns vs {len(rows)} rows")
    _check_indices(cols, n, "column")
    _check_indices(rows, n, "row")
    if len(cols) >= n:
        raise UnequalRemovalCounts("cannot remove every row and column")
    keep_c = [j for j in range(n) if j not in cols]
    keep_r = [i for i in range(n) if i not in rows]
    src = m.rows
    return IntMatrix([[src[i][j] for j in keep_c] for i in keep_r])


def integer_sqrt(n: int) -> int:
    """Exact square root; raises NotPerfectSquare otherwise."""
    if n < 0:
        raise NotPerfectSquare(f"negative input {n}")
    r = math.isqrt(n)
    if r * r != n:
        raise NotPerfectSquare(f"{n} is not a perfect square")
    return r


def mod_reduce(x: int, p: int) -> int:
    if p < 2:
        raise BadModulus(f"modulus must be >= 2, got {p}")
    return x % p
