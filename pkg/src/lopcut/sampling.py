"""Seeded objective sampling aimed at fractional vertices.

Plain uniform objectives essentially never land in the normal cone of a
fractional vertex, so the sampler perturbs randomly placed fence
functionals: large enough structure to reach fractional territory, small
enough noise to wander off to neighboring vertices of all kinds.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterator, Optional

from .relaxation import ConstraintSystem, build_bn
from .simplex import BasicSolution, lp_solve


def fence_objective(sys: ConstraintSystem, i_list, j_list) -> list[Fraction]:
    """Objective equal to the fence functional: +1 on matched pairs,
    -1 on crossed pairs, expressed over reduced columns."""
    columns = sys.columns
    coeffs = [Fraction(0)] * sys.dim
    m = len(i_list)
    for l in range(m):
        for q in range(m):
            weight = Fraction(1) if l == q else Fraction(-1)
            columns.accumulate(coeffs, i_list[l], j_list[q], weight)
    return coeffs


def perturbed_fence_objectives(n: int, count: int, seed: int,
                               scale: int = 8,
                               noise: int = 2) -> Iterator[list[Fraction]]:
    """Deterministic stream of objectives near random fence functionals."""
    if n < 6:
        raise ValueError("fence-based sampling needs n >= 6")
    sysn = build_bn(n)
    rng = random.Random(seed)
    nodes = list(range(1, n + 1))
    for _ in range(count):
        sel = rng.sample(nodes, 6)
        base = fence_objective(sysn, tuple(sel[:3]), tuple(sel[3:]))
        yield [scale * b + rng.randint(-noise, noise) for b in base]


def sample_vertices(n: int, count: int, seed: int,
                    fractional_only: bool = False,
                    scale: int = 8, noise: int = 2
                    ) -> Iterator[tuple[list[Fraction], BasicSolution]]:
    """LP vertices reached by the perturbed-fence objective stream."""
    sysn = build_bn(n)
    for objective in perturbed_fence_objectives(n, count, seed, scale, noise):
        sol = lp_solve(sysn, objective, "max")
        if fractional_only and sol.is_integral():
            continue
        yield objective, sol


def uniform_objectives(dim: int, count: int, seed: int,
                       lo: int = -9, hi: int = 9) -> Iterator[list[Fraction]]:
    """Plain integer objectives, uniform per coordinate."""
    rng = random.Random(seed)
    for _ in range(count):
        yield [Fraction(rng.randint(lo, hi)) for _ in range(dim)]
