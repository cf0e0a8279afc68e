"""Exact rational scalars and small dense matrices.

Every scalar in this package is a ``fractions.Fraction`` (arbitrary
precision, always in lowest terms, positive denominator) or a plain
``int``. Floats are rejected at the boundary so no rounding can creep
in anywhere. Matrix routines use fraction-free (Bareiss) elimination on
denominator-cleared integer rows, which keeps intermediate integers at
determinant scale. Everything is desk-scale (a few dozen rows); there
is deliberately no sparse machinery.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "QMatrix",
    "SingularMatrixError",
    "NonSymmetricError",
    "as_rational",
    "rational_to_string",
    "solve_linear",
    "determinant",
    "is_negative_definite",
    "matrix_rank",
]


class SingularMatrixError(ValueError):
    """Raised when a linear solve meets a non-invertible matrix."""


class NonSymmetricError(ValueError):
    """Raised when an operation requires a symmetric matrix."""


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to Fraction; reject floats."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r} (floats are not allowed)")


def rational_to_string(x) -> str:
    """Serialize as "p/q", or "p" when the denominator is 1."""
    return str(as_rational(x))


class QMatrix:
    """Dense rectangular matrix over the rationals.

    Rows are stored as lists of Fractions. The empty 0x0 matrix is
    allowed (it shows up as the intersection form of a model with no
    exceptional curves).
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, entries: Sequence[Sequence]):
        data = [[as_rational(x) for x in row] for row in entries]
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        if any(len(row) != self.cols for row in data):
            raise ValueError("ragged rows in matrix")
        self.data = data

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def entry(self, i: int, j: int) -> Fraction:
        return self.data[i][j]

    def row(self, i: int) -> list[Fraction]:
        return list(self.data[i])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        return all(
            self.data[i][j] == self.data[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def leading_submatrix(self, k: int) -> "QMatrix":
        return QMatrix([row[:k] for row in self.data[:k]])

    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and self.data == other.data

    def __repr__(self) -> str:
        return f"QMatrix({[[str(x) for x in row] for row in self.data]})"


def _integer_rows(rows: list[list[Fraction]]) -> tuple[list[list[int]], list[int]]:
    """Scale each row by the lcm of its denominators; return rows and scales."""
    out, scales = [], []
    for row in rows:
        s = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * s) for x in row])
        scales.append(s)
    return out, scales


def solve_linear(m: QMatrix, rhs: Sequence) -> list[Fraction]:
    """Solve m.x = rhs exactly.

    Fraction-free Bareiss elimination on the denominator-cleared
    augmented matrix, then back substitution over the rationals. The
    solution is re-verified against the original system before return.
    """
    if not m.is_square():
        raise ValueError("solve_linear needs a square matrix")
    n = m.rows
    rhs_q = [as_rational(x) for x in rhs]
    if len(rhs_q) != n:
        raise ValueError("right-hand side length does not match matrix")
    if n == 0:
        return []

    aug, _ = _integer_rows([m.row(i) + [rhs_q[i]] for i in range(n)])
    prev = 1
    for k in range(n):
        pivot = next((r for r in range(k, n) if aug[r][k] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        if pivot != k:
            aug[k], aug[pivot] = aug[pivot], aug[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                aug[i][j] = (aug[k][k] * aug[i][j] - aug[i][k] * aug[k][j]) // prev
            aug[i][k] = 0
        prev = aug[k][k]

    x: list[Fraction] = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(aug[i][n])
        for j in range(i + 1, n):
            acc -= aug[i][j] * x[j]
        x[i] = acc / aug[i][i]

    for i in range(n):
        if sum((m.entry(i, j) * x[j] for j in range(n)), Fraction(0)) != rhs_q[i]:
            raise AssertionError("exact solve failed to re-verify")
    return x


def determinant(m: QMatrix) -> Fraction:
    """Exact determinant by Bareiss elimination (1 for the 0x0 matrix)."""
    if not m.is_square():
        raise ValueError("determinant needs a square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    a, scales = _integer_rows([m.row(i) for i in range(n)])
    sign = 1
    prev = 1
    for k in range(n - 1):
        pivot = next((r for r in range(k, n) if a[r][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    scale = 1
    for s in scales:
        scale *= s
    return Fraction(sign * a[n - 1][n - 1], scale)


def is_negative_definite(m: QMatrix) -> bool:
    """Sylvester test: leading principal minors alternate in sign, starting negative."""
    if not m.is_square():
        raise ValueError("definiteness needs a square matrix")
    if not m.is_symmetric():
        raise NonSymmetricError("definiteness test needs a symmetric matrix")
    for k in range(1, m.rows + 1):
        d = determinant(m.leading_submatrix(k))
        if d == 0:
            return False
        if (d > 0) != (k % 2 == 0):
            return False
    return True


def matrix_rank(vectors: Sequence[Sequence]) -> int:
    """Rank of the span of the given vectors, by exact Gaussian elimination."""
    rows = [[as_rational(x) for x in v] for v in vectors]
    rank = 0
    col = 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col] != 0:
                f = rows[r][col] / inv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank
