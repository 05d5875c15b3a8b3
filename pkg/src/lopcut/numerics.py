"""Exact rational linear algebra kernels.

Everything here runs over Python's `fractions.Fraction` (or plain ints,
which Fraction arithmetic absorbs).  No floating point: rank, determinant,
linear solves and affine hulls are exact statements and are certified, not
approximated.  Matrices are plain row-major lists of lists.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = Sequence[Fraction]
Matrix = Sequence[Sequence[Fraction]]

# Above this size, determinant switches to Bareiss fraction-free
# elimination to keep intermediate entries from blowing up.
_BAREISS_THRESHOLD = 12


class ShapeError(ValueError):
    """Matrix/vector dimensions do not match the operation."""


class SingularMatrixError(ValueError):
    """A nonsingular matrix was required."""


def _check_rect(m: Matrix) -> tuple[int, int]:
    rows = len(m)
    if rows == 0:
        return 0, 0
    cols = len(m[0])
    for r in m:
        if len(r) != cols:
            raise ShapeError("ragged matrix: rows have differing lengths")
    return rows, cols


def _clear_row_denominators(row: Sequence[Fraction]) -> list[int]:
    """Scale a rational row to integers (denominators do not change rank)."""
    lcm = 1
    for v in row:
        d = Fraction(v).denominator
        lcm = lcm * d // gcd(lcm, d)
    return [int(Fraction(v) * lcm) for v in row]


def rank(m: Matrix) -> int:
    """Exact rank over the rationals.

    Clears denominators row by row, then runs fraction-free integer
    elimination; row scaling never changes rank.
    """
    rows, cols = _check_rect(m)
    if rows == 0 or cols == 0:
        return 0
    work = [_clear_row_denominators(r) for r in m]
    return _int_rank(work, rows, cols)


def _int_rank(work: list[list[int]], rows: int, cols: int) -> int:
    # Bareiss-style elimination; `prev` is the previous pivot.
    r = 0
    prev = 1
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if work[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        pivot = work[r][c]
        for i in range(r + 1, rows):
            fi = work[i][c]
            if fi == 0 and prev == 1:
                continue
            wi = work[i]
            wr = work[r]
            for j in range(c, cols):
                wi[j] = (pivot * wi[j] - fi * wr[j]) // prev
        prev = pivot
        r += 1
        if r == rows:
            break
    return r


def determinant(m: Matrix) -> Fraction:
    """Exact determinant of a square rational matrix."""
    rows, cols = _check_rect(m)
    if rows != cols:
        raise ShapeError(f"determinant needs a square matrix, got {rows}x{cols}")
    if rows == 0:
        return Fraction(1)
    if rows >= _BAREISS_THRESHOLD:
        return _det_bareiss(m, rows)
    return _det_gauss(m, rows)


def _det_gauss(m: Matrix, n: int) -> Fraction:
    work = [[Fraction(v) for v in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = None
        for i in range(c, n):
            if work[i][c] != 0:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != c:
            work[c], work[piv] = work[piv], work[c]
            det = -det
        pivot = work[c][c]
        det *= pivot
        for i in range(c + 1, n):
            f = work[i][c] / pivot
            if f == 0:
                continue
            wi = work[i]
            wc = work[c]
            for j in range(c, n):
                wi[j] -= f * wc[j]
    return det


def _det_bareiss(m: Matrix, n: int) -> Fraction:
    # Scale each row to integers, divide the scales back out at the end.
    scale = Fraction(1)
    work = []
    for row in m:
        lcm = 1
        for v in row:
            d = Fraction(v).denominator
            lcm = lcm * d // gcd(lcm, d)
        scale *= lcm
        work.append([int(Fraction(v) * lcm) for v in row])
    sign = 1
    prev = 1
    for c in range(n - 1):
        piv = None
        for i in range(c, n):
            if work[i][c] != 0:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != c:
            work[c], work[piv] = work[piv], work[c]
            sign = -sign
        pivot = work[c][c]
        for i in range(c + 1, n):
            wi = work[i]
            wc = work[c]
            fi = wi[c]
            for j in range(c, n):
                wi[j] = (pivot * wi[j] - fi * wc[j]) // prev
        prev = pivot
    return Fraction(sign * work[n - 1][n - 1]) / scale


def solve_linear(m: Matrix, rhs: Vector) -> list[Fraction]:
    """Solve m x = rhs exactly for square nonsingular m."""
    rows, cols = _check_rect(m)
    if rows != cols:
        raise ShapeError(f"solve_linear needs a square matrix, got {rows}x{cols}")
    if len(rhs) != rows:
        raise ShapeError("right-hand side length does not match matrix")
    n = rows
    work = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(m)]
    for c in range(n):
        piv = None
        for i in range(c, n):
            if work[i][c] != 0:
                piv = i
                break
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        work[c], work[piv] = work[piv], work[c]
        pivot = work[c][c]
        for i in range(n):
            if i == c:
                continue
            f = work[i][c] / pivot
            if f == 0:
                continue
            wi = work[i]
            wc = work[c]
            for j in range(c, n + 1):
                wi[j] -= f * wc[j]
    return [work[i][n] / work[i][i] for i in range(n)]


def rref(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rref_matrix, pivot_columns)."""
    rows, cols = _check_rect(m)
    work = [[Fraction(v) for v in row] for row in m]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if work[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        pivot = work[r][c]
        work[r] = [v / pivot for v in work[r]]
        for i in range(rows):
            if i == r:
                continue
            f = work[i][c]
            if f == 0:
                continue
            work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return work, pivots


def nullspace(m: Matrix) -> list[list[Fraction]]:
    """Canonical basis of {z : m z = 0}, one vector per free column of the RREF."""
    rows, cols = _check_rect(m)
    if rows == 0:
        return [[Fraction(int(i == j)) for j in range(cols)] for i in range(cols)]
    red, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * cols
        vec[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][free]
        basis.append(vec)
    return basis


def normalize_integer_vector(vec: Vector) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers, first nonzero positive.

    The zero vector maps to itself.  This makes hyperplane comparison a
    plain tuple equality.
    """
    lcm = 1
    for v in vec:
        d = Fraction(v).denominator
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(Fraction(v) * lcm) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g == 0:
        return tuple(ints)
    ints = [v // g for v in ints]
    for v in ints:
        if v != 0:
            if v < 0:
                ints = [-u for u in ints]
            break
    return tuple(ints)


class LinearEquality:
    """An affine equality a . x = b with coprime integer coefficients."""

    __slots__ = ("coeffs", "rhs")

    def __init__(self, coeffs: Sequence[Fraction], rhs: Fraction):
        norm = normalize_integer_vector(list(coeffs) + [rhs])
        self.coeffs: tuple[int, ...] = norm[:-1]
        self.rhs: int = norm[-1]
        # Sign convention is carried by the coefficient part, not the rhs.
        for v in self.coeffs:
            if v != 0:
                if v < 0:
                    self.coeffs = tuple(-u for u in self.coeffs)
                    self.rhs = -self.rhs
                break

    def evaluate(self, x: Vector) -> Fraction:
        if len(x) != len(self.coeffs):
            raise ShapeError("point dimension does not match equality")
        return sum((Fraction(c) * Fraction(v) for c, v in zip(self.coeffs, x)),
                   Fraction(0))

    def holds_at(self, x: Vector) -> bool:
        return self.evaluate(x) == self.rhs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearEquality):
            return NotImplemented
        return self.coeffs == other.coeffs and self.rhs == other.rhs

    def __hash__(self) -> int:
        return hash((self.coeffs, self.rhs))

    def __repr__(self) -> str:
        return f"LinearEquality(coeffs={self.coeffs}, rhs={self.rhs})"


def row_reduce_integer(m: Matrix) -> list[list[int]]:
    """Fraction-free (Bareiss) forward elimination of a rational matrix.

    Rows are first scaled to integers; the result is an upper-staircase
    integer matrix row-equivalent to the input up to row scaling.
    """
    rows, cols = _check_rect(m)
    work = [_clear_row_denominators(r) for r in m]
    r = 0
    prev = 1
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if work[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        pivot = work[r][c]
        for i in range(r + 1, rows):
            fi = work[i][c]
            wi, wr = work[i], work[r]
            for j in range(cols):
                wi[j] = (pivot * wi[j] - fi * wr[j]) // prev
        prev = pivot
        r += 1
        if r == rows:
            break
    return work


class IncrementalRowBasis:
    """Grows a row basis one vector at a time, tracking exact rank."""

    def __init__(self, dim: int):
        self.dim = dim
        self._reduced: list[tuple[int, list[Fraction]]] = []

    @property
    def rank(self) -> int:
        return len(self._reduced)

    def try_add(self, row: Vector) -> bool:
        """Add the row if it is independent of the basis; report success."""
        if len(row) != self.dim:
            raise ShapeError("row dimension mismatch")
        work = [Fraction(v) for v in row]
        for lead, base in self._reduced:
            f = work[lead]
            if f:
                work = [a - f * b for a, b in zip(work, base)]
        for c, v in enumerate(work):
            if v != 0:
                self._reduced.append((c, [u / v for u in work]))
                return True
        return False


def affine_hull(points: Sequence[Vector], dim: int) -> tuple[int, list[LinearEquality]]:
    """Affine hull of a point set in Q^dim.

    Returns the hull dimension together with a canonical basis of the
    affine equalities a . x = b satisfied by every point, each normalized
    to coprime integers with positive leading coefficient.
    """
    if not points:
        raise ValueError("affine_hull needs at least one point")
    for p in points:
        if len(p) != dim:
            raise ShapeError("point dimension mismatch")
    # Homogenize: (a, -b) . (x, 1) = 0 for all points.
    homog = [[Fraction(v) for v in p] + [Fraction(1)] for p in points]
    hull_dim = rank(homog) - 1
    basis = nullspace(homog)
    equalities = [LinearEquality(vec[:dim], -vec[dim]) for vec in basis]
    equalities.sort(key=lambda e: (e.coeffs, e.rhs))
    return hull_dim, equalities
