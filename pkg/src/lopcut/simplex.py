"""Exact bounded-variable primal simplex over a ConstraintSystem.

The solver works on the computational form s = A x where the structural
variables carry the box bounds and every triangle/cut row gets a ranged
logical variable.  All tableau entries are Fractions; pivoting uses
Bland's smallest-index rule throughout, which makes the solve both
cycle-free and deterministic.  The returned solution is always a true
vertex: its tight rows have full rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .numerics import IncrementalRowBasis
from .relaxation import ConstraintSystem, LinearInequality

_PIVOT_CAP = 200_000


class InfeasibleStartError(RuntimeError):
    """The all-upper starting point violates a row; only user-supplied
    cuts with bounds excluding the identity ordering can trigger this."""


class UnboundedError(RuntimeError):
    pass


@dataclass(frozen=True)
class BasicSolution:
    x: tuple[Fraction, ...]
    objective: Fraction
    tight_rows: frozenset[int]
    basis_certificate: tuple[int, ...]

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.x)


def _split_rows(sys: ConstraintSystem) -> tuple[list[LinearInequality], list[int]]:
    """Rows that become logical variables (triangles + cuts), with their
    indices into sys.all_rows(); box rows stay as structural bounds."""
    logical: list[LinearInequality] = []
    indices: list[int] = []
    t = sys.num_triangles
    d = sys.dim
    for idx, row in enumerate(sys.all_rows()):
        if t <= idx < t + d:
            continue  # box row
        logical.append(row)
        indices.append(idx)
    return logical, indices


class _BoundedSimplex:
    def __init__(self, sys: ConstraintSystem, objective: Sequence[Fraction]):
        d = sys.dim
        logical, _ = _split_rows(sys)
        m = len(logical)
        self.d = d
        self.m = m
        self.n_vars = d + m
        self.lower: list[Optional[Fraction]] = [Fraction(0)] * d
        self.upper: list[Optional[Fraction]] = [Fraction(1)] * d
        for row in logical:
            self.lower.append(row.lower)
            self.upper.append(row.upper)
        # Tableau row i expresses logical variable d+i: s_i - A_i x = 0.
        self.T: list[list[Fraction]] = []
        for i, row in enumerate(logical):
            trow = [-Fraction(c) for c in row.coeffs] + [Fraction(0)] * m
            trow[d + i] = Fraction(1)
            self.T.append(trow)
        self.basis = [d + i for i in range(m)]
        self.in_basis = [False] * self.n_vars
        for b in self.basis:
            self.in_basis[b] = True
        self.z = [Fraction(c) for c in objective] + [Fraction(0)] * m
        # Start at the identity ordering: all structural variables at 1.
        self.val: list[Fraction] = [Fraction(1)] * d + [Fraction(0)] * m
        self.at_upper = [True] * d + [False] * m
        for i, row in enumerate(logical):
            v = sum((Fraction(c) for c in row.coeffs), Fraction(0))
            self.val[d + i] = v
            lo, up = self.lower[d + i], self.upper[d + i]
            if (lo is not None and v < lo) or (up is not None and v > up):
                raise InfeasibleStartError(
                    f"row {i} excludes the identity ordering (value {v}, "
                    f"bounds [{lo}, {up}])")

    def _choose_entering(self) -> Optional[tuple[int, int]]:
        for j in range(self.n_vars):
            if self.in_basis[j]:
                continue
            zj = self.z[j]
            if not self.at_upper[j] and zj > 0:
                return j, 1
            if self.at_upper[j] and zj < 0:
                return j, -1
        return None

    def solve(self) -> None:
        for _ in range(_PIVOT_CAP):
            choice = self._choose_entering()
            if choice is None:
                return
            q, sign = choice
            # g[i]: rate of change of basic variable i as q moves by t >= 0.
            col = [row[q] for row in self.T]
            best_t: Optional[Fraction] = None
            blockers: list[tuple[int, int, int]] = []  # (var, row, hit_upper)
            lo_q, up_q = self.lower[q], self.upper[q]
            if lo_q is not None and up_q is not None:
                best_t = up_q - lo_q
                blockers = [(q, -1, 1 if sign > 0 else 0)]
            for i in range(self.m):
                g = -col[i] * sign
                if g == 0:
                    continue
                b = self.basis[i]
                vb = self.val[b]
                if g > 0:
                    ub = self.upper[b]
                    if ub is None:
                        continue
                    t = (ub - vb) / g
                    hit_upper = 1
                else:
                    lb = self.lower[b]
                    if lb is None:
                        continue
                    t = (vb - lb) / (-g)
                    hit_upper = 0
                if best_t is None or t < best_t:
                    best_t = t
                    blockers = [(b, i, hit_upper)]
                elif t == best_t:
                    blockers.append((b, i, hit_upper))
            if best_t is None:
                raise UnboundedError("objective unbounded over the system")
            var, row_idx, hit_upper = min(blockers)
            t = best_t
            # Move the entering variable and update basic values.
            self.val[q] += sign * t
            if t != 0:
                for i in range(self.m):
                    g = -col[i] * sign
                    if g != 0:
                        self.val[self.basis[i]] += g * t
            if var == q and row_idx == -1:
                self.at_upper[q] = not self.at_upper[q]
                continue
            self._pivot(row_idx, q, hit_upper)
        raise RuntimeError("pivot cap exceeded; anti-cycling rule violated?")

    def _pivot(self, r: int, q: int, leaving_hit_upper: int) -> None:
        leaving = self.basis[r]
        piv = self.T[r][q]
        trow = self.T[r]
        inv = 1 / piv
        self.T[r] = trow = [v * inv for v in trow]
        for i, row in enumerate(self.T):
            if i == r:
                continue
            f = row[q]
            if f:
                self.T[i] = [a - f * b for a, b in zip(row, trow)]
        fz = self.z[q]
        if fz:
            self.z = [a - fz * b for a, b in zip(self.z, trow)]
        self.basis[r] = q
        self.in_basis[q] = True
        self.in_basis[leaving] = False
        self.at_upper[leaving] = bool(leaving_hit_upper)
        bound = self.upper[leaving] if leaving_hit_upper else self.lower[leaving]
        self.val[leaving] = bound  # exact snap; ratio test already enforced it


def lp_solve(sys: ConstraintSystem, objective: Sequence[Fraction],
             direction: str = "max") -> BasicSolution:
    """Optimize an exact linear objective over the system.

    Deterministic: Bland's rule picks both entering and leaving variables
    by smallest index, so identical inputs give identical bases.
    """
    if len(objective) != sys.dim:
        raise ValueError("objective dimension does not match system")
    if direction not in ("max", "min"):
        raise ValueError("direction must be 'max' or 'min'")
    obj = [Fraction(c) for c in objective]
    if direction == "min":
        obj = [-c for c in obj]
    engine = _BoundedSimplex(sys, obj)
    engine.solve()
    x = tuple(engine.val[:sys.dim])
    value = sum((Fraction(c) * v for c, v in zip(objective, x)), Fraction(0))
    tight = tight_rows(sys, x)
    cert = basis_certificate(sys, x, tight)
    return BasicSolution(x=x, objective=value,
                         tight_rows=frozenset(tight),
                         basis_certificate=cert)


def tight_rows(sys: ConstraintSystem, x: Sequence[Fraction]) -> list[int]:
    return sys.tight_row_indices(x)


def basis_certificate(sys: ConstraintSystem, x: Sequence[Fraction],
                      tight: Optional[Sequence[int]] = None) -> tuple[int, ...]:
    """Greedy lowest-index maximal independent subset of the tight rows."""
    if tight is None:
        tight = tight_rows(sys, x)
    rows = sys.all_rows()
    basis = IncrementalRowBasis(sys.dim)
    chosen = []
    for idx in tight:
        if basis.try_add(rows[idx].coeffs):
            chosen.append(idx)
            if basis.rank == sys.dim:
                break
    return tuple(chosen)


def tight_rank(sys: ConstraintSystem, x: Sequence[Fraction]) -> int:
    basis = IncrementalRowBasis(sys.dim)
    rows = sys.all_rows()
    for idx in tight_rows(sys, x):
        basis.try_add(rows[idx].coeffs)
        if basis.rank == sys.dim:
            break
    return basis.rank


def is_vertex(sys: ConstraintSystem, x: Sequence[Fraction]) -> bool:
    """True iff the rows tight at x have full rank n(n-1)/2."""
    if not sys.is_feasible(x):
        raise ValueError("point is not feasible for the system")
    return tight_rank(sys, x) == sys.dim


def common_tight_rows(sys: ConstraintSystem, u: Sequence[Fraction],
                      v: Sequence[Fraction]) -> list[int]:
    """Rows tight at u and v at the same bound (a shared facet of both)."""
    rows = sys.all_rows()
    common = []
    for idx in sys.tight_row_indices(u):
        row = rows[idx]
        if row.tight_at(v) and row.evaluate(u) == row.evaluate(v):
            common.append(idx)
    return common


def adjacent_vertex_test(sys: ConstraintSystem, u: Sequence[Fraction],
                         v: Sequence[Fraction]) -> bool:
    """Vertices are adjacent iff their common tight rows have rank dim-1."""
    if not is_vertex(sys, u) or not is_vertex(sys, v):
        raise ValueError("adjacency test requires two vertices")
    rows = sys.all_rows()
    basis = IncrementalRowBasis(sys.dim)
    for idx in common_tight_rows(sys, u, v):
        basis.try_add(rows[idx].coeffs)
    return basis.rank == sys.dim - 1
