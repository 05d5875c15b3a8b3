"""The triangle LP relaxation over reduced pair variables, plus cut storage.

Variables are x_ij for i < j only; the complement pair is eliminated via
x_ji = 1 - x_ij, so the pair equality can never be violated and the
ambient dimension is n(n-1)/2.  Each unordered triple {i<j<k} contributes
a single two-sided row 0 <= x_ij + x_jk - x_ik <= 1 (all six orientations
of the original triple constraint reduce to this one row), and each
column gets a box row 0 <= x <= 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional, Sequence

from .instance import Permutation, check_permutation
from .numerics import ShapeError, normalize_integer_vector


class VarIndex:
    """Bijection between ordered pairs (i, j), i < j, and column indices."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("need n >= 2")
        self.n = n
        self._pairs: list[tuple[int, int]] = list(combinations(range(1, n + 1), 2))
        self._index = {pair: c for c, pair in enumerate(self._pairs)}

    @property
    def dim(self) -> int:
        return len(self._pairs)

    def col(self, i: int, j: int) -> int:
        if not i < j:
            raise ValueError(f"col requires i < j, got ({i}, {j})")
        return self._index[(i, j)]

    def pair(self, c: int) -> tuple[int, int]:
        return self._pairs[c]

    def pairs(self) -> Sequence[tuple[int, int]]:
        return self._pairs

    def value(self, x: Sequence[Fraction], i: int, j: int) -> Fraction:
        """x_ij for any ordered pair, resolving x_ji = 1 - x_ij."""
        if i < j:
            return Fraction(x[self._index[(i, j)]])
        return 1 - Fraction(x[self._index[(j, i)]])

    def accumulate(self, coeffs: list[Fraction], i: int, j: int,
                   weight: Fraction) -> Fraction:
        """Add weight * x_ij to a coefficient vector being built.

        Returns the constant picked up when (i, j) is a complement pair
        (weight * x_ji = weight - weight * x_ij).
        """
        if i < j:
            coeffs[self._index[(i, j)]] += weight
            return Fraction(0)
        coeffs[self._index[(j, i)]] -= weight
        return Fraction(weight)


@dataclass(frozen=True)
class LinearInequality:
    """lower <= coeffs . x <= upper; a None bound is infinite."""

    coeffs: tuple[Fraction, ...]
    lower: Optional[Fraction]
    upper: Optional[Fraction]
    origin: str = "aux"

    def __post_init__(self) -> None:
        if self.lower is None and self.upper is None:
            raise ValueError("inequality needs at least one finite bound")
        if (self.lower is not None and self.upper is not None
                and self.lower > self.upper):
            raise ValueError("lower bound exceeds upper bound")

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def evaluate(self, x: Sequence[Fraction]) -> Fraction:
        return evaluate(self, x)

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        v = self.evaluate(x)
        if self.lower is not None and v < self.lower:
            return False
        if self.upper is not None and v > self.upper:
            return False
        return True

    def tight_at(self, x: Sequence[Fraction]) -> bool:
        v = self.evaluate(x)
        return (self.lower is not None and v == self.lower) or (
            self.upper is not None and v == self.upper)

    def normalized(self) -> "LinearInequality":
        """Coprime integer coefficients, first nonzero positive.

        Flipping the sign of the coefficient vector swaps and negates the
        bounds, so normalized forms compare syntactically.
        """
        norm = normalize_integer_vector(self.coeffs)
        if all(v == 0 for v in norm):
            return replace(self, coeffs=tuple(Fraction(0) for _ in self.coeffs))
        # Recover the positive scale factor used by the normalization.
        for orig, scaled in zip(self.coeffs, norm):
            if scaled != 0:
                factor = Fraction(scaled) / Fraction(orig)
                break
        lower = None if self.lower is None else self.lower * abs(factor)
        upper = None if self.upper is None else self.upper * abs(factor)
        if factor < 0:
            lower, upper = (None if upper is None else -upper,
                            None if lower is None else -lower)
        return LinearInequality(
            coeffs=tuple(Fraction(v) for v in norm),
            lower=lower, upper=upper, origin=self.origin)

    def key(self) -> tuple:
        norm = self.normalized()
        return (norm.coeffs, norm.lower, norm.upper)


def evaluate(ineq: LinearInequality, x: Sequence[Fraction]) -> Fraction:
    if len(x) != len(ineq.coeffs):
        raise ShapeError(
            f"point has dimension {len(x)}, inequality has {len(ineq.coeffs)}")
    total = Fraction(0)
    for c, v in zip(ineq.coeffs, x):
        if c:
            total += Fraction(c) * Fraction(v)
    return total


@dataclass(frozen=True)
class ConstraintSystem:
    """Triangle + box rows of the relaxation with an appended cut pool."""

    n: int
    columns: VarIndex
    rows: tuple[LinearInequality, ...]
    cut_pool: tuple[LinearInequality, ...] = ()
    triangle_triples: tuple[tuple[int, int, int], ...] = ()

    @property
    def dim(self) -> int:
        return self.columns.dim

    @property
    def num_triangles(self) -> int:
        return len(self.triangle_triples)

    def all_rows(self) -> tuple[LinearInequality, ...]:
        return self.rows + self.cut_pool

    def box_row_index(self, col: int) -> int:
        return self.num_triangles + col

    def is_feasible(self, x: Sequence[Fraction]) -> bool:
        if len(x) != self.dim:
            return False
        return all(row.satisfied_by(x) for row in self.all_rows())

    def tight_row_indices(self, x: Sequence[Fraction]) -> list[int]:
        return [idx for idx, row in enumerate(self.all_rows()) if row.tight_at(x)]


def build_bn(n: int) -> ConstraintSystem:
    """The relaxation for n elements: C(n,3) triangle rows + box rows."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    columns = VarIndex(n)
    d = columns.dim
    rows: list[LinearInequality] = []
    triples = tuple(combinations(range(1, n + 1), 3))
    for (i, j, k) in triples:
        coeffs = [Fraction(0)] * d
        coeffs[columns.col(i, j)] = Fraction(1)
        coeffs[columns.col(j, k)] = Fraction(1)
        coeffs[columns.col(i, k)] = Fraction(-1)
        rows.append(LinearInequality(tuple(coeffs), Fraction(0), Fraction(1),
                                     origin="triangle"))
    for c in range(d):
        coeffs = [Fraction(0)] * d
        coeffs[c] = Fraction(1)
        rows.append(LinearInequality(tuple(coeffs), Fraction(0), Fraction(1),
                                     origin="bound"))
    return ConstraintSystem(n=n, columns=columns, rows=tuple(rows),
                            triangle_triples=triples)


def embed_permutation(p: Permutation, n: int) -> tuple[Fraction, ...]:
    """0/1 characteristic vector of an ordering over the i<j columns."""
    perm = check_permutation(p, n)
    pos = {v: idx for idx, v in enumerate(perm)}
    columns = VarIndex(n)
    return tuple(
        Fraction(1) if pos[i] < pos[j] else Fraction(0)
        for (i, j) in columns.pairs()
    )


def add_cut(sys: ConstraintSystem, cut: LinearInequality) -> ConstraintSystem:
    """Append a cut to the pool; degenerate or duplicate cuts are dropped."""
    if cut.dim != sys.dim:
        raise ShapeError(
            f"cut dimension {cut.dim} does not match system dimension {sys.dim}")
    norm = cut.normalized()
    if all(v == 0 for v in norm.coeffs):
        return sys
    existing = {c.key() for c in sys.cut_pool}
    if norm.key() in existing:
        return sys
    return replace(sys, cut_pool=sys.cut_pool + (norm,))


def objective_from_instance(inst) -> tuple[tuple[Fraction, ...], Fraction]:
    """Reduced objective for max sum c_ij x_ij.

    Substituting x_ji = 1 - x_ij turns the full objective into
    sum_{i<j} (c_ij - c_ji) x_ij plus the constant sum_{i<j} c_ji.
    """
    columns = VarIndex(inst.n)
    coeffs = []
    constant = Fraction(0)
    for (i, j) in columns.pairs():
        coeffs.append(Fraction(inst.cost(i, j) - inst.cost(j, i)))
        constant += inst.cost(j, i)
    return tuple(coeffs), constant
