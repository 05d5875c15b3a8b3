"""Brute-force ground truth over permutations at desk scale.

Everything downstream that claims validity or facetness of a cut is
checked here against plain enumeration; nothing in this module shares
code with the constructions it verifies.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Optional

from .instance import LopInstance, Permutation, permutation_value
from .numerics import affine_hull, LinearEquality
from .relaxation import LinearInequality, VarIndex, embed_permutation

BRUTE_FORCE_CAP = 10
EXHAUSTIVE_CAP = 8
DEFAULT_SAMPLE_BUDGET = 100_000


class ScaleError(ValueError):
    """The requested n exceeds what enumeration can handle."""


@dataclass(frozen=True)
class OracleResult:
    best_value: int
    best_permutation: Permutation
    tight_count: Optional[int] = None


@dataclass(frozen=True)
class ValidityResult:
    valid: bool
    max_lhs: Fraction
    min_lhs: Fraction
    tight_count: int
    mode: str  # "exhaustive" or "sampled"


def brute_force_opt(inst: LopInstance) -> OracleResult:
    """Exact optimum by lexicographic enumeration; first maximum wins,
    which makes the tie-break the lexicographically smallest ordering."""
    if inst.n > BRUTE_FORCE_CAP:
        raise ScaleError(f"brute force capped at n <= {BRUTE_FORCE_CAP}, got {inst.n}")
    best_value: Optional[int] = None
    best_perm: Optional[Permutation] = None
    costs = inst.costs
    n = inst.n
    for p in permutations(range(1, n + 1)):
        total = 0
        for a in range(n):
            ca = costs[p[a] - 1]
            for b in range(a + 1, n):
                total += ca[p[b] - 1]
        if best_value is None or total > best_value:
            best_value = total
            best_perm = p
    assert best_perm is not None
    return OracleResult(best_value=best_value, best_permutation=best_perm)


def _sparse_terms(ineq: LinearInequality, columns: VarIndex):
    """Nonzero (i, j, coefficient) triples of a reduced-space inequality."""
    return [
        (columns.pair(c)[0], columns.pair(c)[1], coef)
        for c, coef in enumerate(ineq.coeffs) if coef
    ]


def _evaluate_at_positions(terms, pos) -> Fraction:
    total = Fraction(0)
    for i, j, coef in terms:
        if pos[i] < pos[j]:
            total += coef
    return total


def validate_inequality(ineq: LinearInequality, n: int,
                        sample_budget: int = DEFAULT_SAMPLE_BUDGET,
                        seed: int = 0) -> ValidityResult:
    """Max/min of the inequality's lhs over orderings.

    Exhaustive for n <= 8; beyond that it switches to a seeded random
    sample and says so in `mode`.  Valid means every scanned ordering
    satisfies both bounds; tight_count counts orderings attaining the
    upper bound (the lower one when no upper bound exists).
    """
    columns = VarIndex(n)
    if len(ineq.coeffs) != columns.dim:
        raise ValueError("inequality dimension does not match n")
    terms = _sparse_terms(ineq, columns)
    max_lhs: Optional[Fraction] = None
    min_lhs: Optional[Fraction] = None
    tight_bound = ineq.upper if ineq.upper is not None else ineq.lower
    tight = 0
    if n <= EXHAUSTIVE_CAP:
        mode = "exhaustive"
        scan = permutations(range(1, n + 1))
    else:
        mode = "sampled"
        rng = random.Random(seed)
        base = list(range(1, n + 1))

        def sampled():
            for _ in range(sample_budget):
                rng.shuffle(base)
                yield tuple(base)

        scan = sampled()
    pos = [0] * (n + 1)
    for p in scan:
        for k, v in enumerate(p):
            pos[v] = k
        val = _evaluate_at_positions(terms, pos)
        if max_lhs is None or val > max_lhs:
            max_lhs = val
        if min_lhs is None or val < min_lhs:
            min_lhs = val
        if val == tight_bound:
            tight += 1
    assert max_lhs is not None and min_lhs is not None
    valid = True
    if ineq.upper is not None and max_lhs > ineq.upper:
        valid = False
    if ineq.lower is not None and min_lhs < ineq.lower:
        valid = False
    return ValidityResult(valid=valid, max_lhs=max_lhs, min_lhs=min_lhs,
                          tight_count=tight, mode=mode)


def facet_dimension(ineq: LinearInequality, n: int) -> int:
    """Affine-hull dimension of the orderings attaining the bound.

    A valid inequality is a facet iff this equals n(n-1)/2 - 1; an
    equality satisfied by every ordering comes back full-dimensional.
    """
    if n > EXHAUSTIVE_CAP:
        raise ScaleError(f"facet dimension capped at n <= {EXHAUSTIVE_CAP}")
    columns = VarIndex(n)
    if len(ineq.coeffs) != columns.dim:
        raise ValueError("inequality dimension does not match n")
    terms = _sparse_terms(ineq, columns)
    tight_bound = ineq.upper if ineq.upper is not None else ineq.lower
    tight_points = []
    pos = [0] * (n + 1)
    for p in permutations(range(1, n + 1)):
        for k, v in enumerate(p):
            pos[v] = k
        if _evaluate_at_positions(terms, pos) == tight_bound:
            tight_points.append(embed_permutation(p, n))
    if not tight_points:
        raise ValueError("no ordering attains the bound; nothing to measure")
    hull_dim, _ = affine_hull(tight_points, columns.dim)
    return hull_dim


def tight_permutations(ineq: LinearInequality, n: int) -> list[Permutation]:
    """Orderings attaining the inequality's bound (exhaustive, n <= 8)."""
    if n > EXHAUSTIVE_CAP:
        raise ScaleError(f"enumeration capped at n <= {EXHAUSTIVE_CAP}")
    columns = VarIndex(n)
    terms = _sparse_terms(ineq, columns)
    tight_bound = ineq.upper if ineq.upper is not None else ineq.lower
    out = []
    pos = [0] * (n + 1)
    for p in permutations(range(1, n + 1)):
        for k, v in enumerate(p):
            pos[v] = k
        if _evaluate_at_positions(terms, pos) == tight_bound:
            out.append(p)
    return out
