"""Exact linear algebra over the integers and rationals.

Matrices are immutable and arbitrary precision: entries are Python ints or
``fractions.Fraction`` values (kept in lowest terms with positive denominator
by the Fraction type itself).  No operation in this module ever touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class NonSquareError(ValueError):
    """The operation needs a square matrix."""


class SingularMatrixError(ValueError):
    """The matrix has no inverse over the rationals."""


def _check_int(x):
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError("integer entry expected, got %r" % (x,))
    return x


def _check_rational(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError("exact rational entry expected, got %r" % (x,))


class IntMatrix:
    """Immutable integer matrix, stored row-major."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Sequence[int]):
        self.rows = rows
        self.cols = cols
        self.entries = tuple(_check_int(x) for x in entries)
        if rows < 0 or cols < 0 or len(self.entries) != rows * cols:
            raise ValueError("entry count does not match shape %dx%d" % (rows, cols))
        self._hash = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [tuple(r) for r in rows]
        if not rows:
            raise ValueError("from_rows needs at least one row; use IntMatrix(0, n, ())")
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         [self.at(i, j) for j in range(self.cols) for i in range(self.rows)])

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum(ri[k] * other.at(k, j) for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, out)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix times column vector; accepts int or Fraction coordinates."""
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(self.at(i, k) * vec[k] for k in range(self.cols))
                     for i in range(self.rows))

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [k * x for x in self.entries])

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols,
                         [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + other.scale(-1)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def to_rational(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, [Fraction(x) for x in self.entries])

    def __eq__(self, other) -> bool:
        return (isinstance(other, IntMatrix)
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __repr__(self) -> str:
        return "IntMatrix(%d, %d, %r)" % (self.rows, self.cols, list(self.entries))


class RatMatrix:
    """Immutable matrix of exact rationals."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Sequence):
        self.rows = rows
        self.cols = cols
        self.entries = tuple(_check_rational(x) for x in entries)
        if rows < 0 or cols < 0 or len(self.entries) != rows * cols:
            raise ValueError("entry count does not match shape %dx%d" % (rows, cols))
        self._hash = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        rows = [tuple(r) for r in rows]
        if not rows:
            raise ValueError("from_rows needs at least one row")
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [Fraction(1 if i == j else 0)
                          for i in range(n) for j in range(n)])

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def __mul__(self, other) -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum(ri[k] * other.at(k, j) for k in range(self.cols)))
        return RatMatrix(self.rows, other.cols, out)

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(self.at(i, k) * vec[k] for k in range(self.cols))
                     for i in range(self.rows))

    def scale(self, k) -> "RatMatrix":
        k = _check_rational(k)
        return RatMatrix(self.rows, self.cols, [k * x for x in self.entries])

    def __eq__(self, other) -> bool:
        return (isinstance(other, RatMatrix)
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __repr__(self) -> str:
        return "RatMatrix(%d, %d, %r)" % (self.rows, self.cols, list(self.entries))


@dataclass(frozen=True)
class SmithDecomposition:
    """Unimodular U, V and diagonal D with U * M * V = D.

    The nonzero diagonal entries are the invariant factors: positive, each
    dividing the next, with zero diagonal entries (if any) coming last.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    invariant_factors: tuple


def smith_normal_form(mat: IntMatrix) -> SmithDecomposition:
    """Smith normal form by exact integer row/column reduction.

    Pivot choice: the nonzero entry of minimal absolute value in the
    remaining block, ties broken by lowest (row, col).  This makes the
    output deterministic for a fixed input.
    """
    m, n = mat.rows, mat.cols
    a = mat.to_rows()
    u = IntMatrix.identity(m).to_rows()
    v = IntMatrix.identity(n).to_rows()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in range(m):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(n):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def add_row(src, dst, k):
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        for r in range(m):
            a[r][dst] += k * a[r][src]
        for r in range(n):
            v[r][dst] += k * v[r][src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            dirty = False
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    if q:
                        add_row(t, i, -q)
                    if a[i][t] != 0:
                        # remainder is smaller than the pivot; promote it
                        swap_rows(t, i)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    if q:
                        add_col(t, j, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
                        break
            if dirty:
                continue
            if any(a[i][t] for i in range(t + 1, m)) or any(a[t][j] for j in range(t + 1, n)):
                continue
            # the pivot must divide the remaining block for d_i | d_{i+1}
            bad = None
            piv = a[t][t]
            for i in range(t + 1, m):
                if any(x % piv for x in a[i][t + 1:]):
                    bad = i
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        t += 1

    for i in range(min(m, n)):
        if a[i][i] < 0:
            negate_row(i)

    diag = [a[i][i] for i in range(min(m, n))]
    factors = tuple(d for d in diag if d != 0)
    # nonzero entries come first; anything else is a bug in the loop above
    assert all(d == 0 for d in diag[len(factors):])
    flat_a = [x for row in a for x in row]
    return SmithDecomposition(
        U=IntMatrix(m, m, [x for row in u for x in row]),
        D=IntMatrix(m, n, flat_a),
        V=IntMatrix(n, n, [x for row in v for x in row]),
        invariant_factors=factors,
    )


def determinant(mat: IntMatrix) -> int:
    """Exact determinant (sign preserved) via Bareiss elimination."""
    if mat.rows != mat.cols:
        raise NonSquareError("determinant of a %dx%d matrix" % (mat.rows, mat.cols))
    n = mat.rows
    if n == 0:
        return 1
    a = mat.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rational_inverse(mat) -> RatMatrix:
    """Exact inverse of a square IntMatrix or RatMatrix."""
    if mat.rows != mat.cols:
        raise NonSquareError("inverse of a %dx%d matrix" % (mat.rows, mat.cols))
    n = mat.rows
    aug = [[Fraction(mat.at(i, j)) for j in range(n)]
           + [Fraction(1 if i == j else 0) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        if piv != col:
            aug[col], aug[piv] = aug[piv], aug[col]
        scale = aug[col][col]
        aug[col] = [x / scale for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return RatMatrix(n, n, [aug[i][j + n] for i in range(n) for j in range(n)])


def solve_rational(mat, target: Sequence) -> tuple:
    """Unique exact solution x of mat @ x = target.

    Requires the columns of ``mat`` to be linearly independent and the system
    to be consistent; otherwise SingularMatrixError is raised.
    """
    m, n = mat.rows, mat.cols
    if len(target) != m:
        raise ValueError("target length does not match row count")
    aug = [[Fraction(mat.at(i, j)) for j in range(n)] + [Fraction(target[i])]
           for i in range(m)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if aug[i][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("columns are not linearly independent")
        if piv != r:
            aug[r], aug[piv] = aug[piv], aug[r]
        scale = aug[r][col]
        aug[r] = [x / scale for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    if any(aug[i][n] != 0 for i in range(r, m)):
        raise SingularMatrixError("inconsistent system")
    return tuple(aug[i][n] for i in range(n))


def kernel_basis(mat: IntMatrix) -> IntMatrix:
    """Basis (as rows) of the saturated integer kernel {x : mat @ x = 0}."""
    snf = smith_normal_form(mat)
    rank = len(snf.invariant_factors)
    rows = [snf.V.column(j) for j in range(rank, mat.cols)]
    if not rows:
        return IntMatrix(0, mat.cols, ())
    return IntMatrix.from_rows(rows)
