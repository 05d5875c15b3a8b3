"""Linear ordering instances: cost matrices, file I/O, random generation.

An instance is an n x n integer cost matrix; the value of an ordering is
the sum of c[i][j] over pairs with i placed before j.  Diagonal entries
are ignored and stored as zero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Permutation = tuple[int, ...]


class InstanceParseError(ValueError):
    """Malformed instance text; carries the 1-based offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class LopInstance:
    n: int
    costs: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("instance needs n >= 2")
        if len(self.costs) != self.n or any(len(r) != self.n for r in self.costs):
            raise ValueError("cost matrix shape does not match n")
        if any(self.costs[i][i] != 0 for i in range(self.n)):
            # Diagonal is meaningless for orderings; normalize it away.
            fixed = tuple(
                tuple(0 if i == j else v for j, v in enumerate(row))
                for i, row in enumerate(self.costs)
            )
            object.__setattr__(self, "costs", fixed)

    def cost(self, i: int, j: int) -> int:
        """c_ij with 1-based element labels."""
        return self.costs[i - 1][j - 1]


def parse_instance(text: str, name: str = "") -> LopInstance:
    """Parse the instance format: first non-comment line is n, then n rows.

    Lines starting with '#' are comments; a comment of the form
    '# name: X' sets the instance name (serialize_instance emits one).
    """
    parsed_name = name
    n = None
    rows: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("name:"):
                parsed_name = body[len("name:"):].strip()
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 1:
                raise InstanceParseError("expected a single integer header", lineno)
            try:
                n = int(tokens[0])
            except ValueError:
                raise InstanceParseError(f"non-numeric header {tokens[0]!r}", lineno) from None
            if n < 2:
                raise InstanceParseError(f"n >= 2 required, got {n}", lineno)
            continue
        if len(rows) >= n:
            raise InstanceParseError("extra data after final row", lineno)
        try:
            row = tuple(int(t) for t in tokens)
        except ValueError:
            raise InstanceParseError("non-numeric matrix entry", lineno) from None
        if len(row) != n:
            raise InstanceParseError(
                f"row has {len(row)} entries, expected {n}", lineno)
        rows.append(row)
    if n is None:
        raise InstanceParseError("empty input", 1)
    if len(rows) != n:
        raise InstanceParseError(f"expected {n} rows, found {len(rows)}", 1)
    return LopInstance(n=n, costs=tuple(rows), name=parsed_name)


def serialize_instance(inst: LopInstance) -> str:
    lines = []
    if inst.name:
        lines.append(f"# name: {inst.name}")
    lines.append(str(inst.n))
    for row in inst.costs:
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def random_instance(n: int, seed: int, weight_range: tuple[int, int]) -> LopInstance:
    """Deterministic random instance; off-diagonal costs uniform in the range."""
    if n < 2:
        raise ValueError("instance needs n >= 2")
    lo, hi = weight_range
    if lo > hi:
        raise ValueError(f"empty weight range [{lo}, {hi}]")
    rng = random.Random(seed)
    costs = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(0 if i == j else rng.randint(lo, hi))
        costs.append(tuple(row))
    return LopInstance(n=n, costs=tuple(costs),
                       name=f"rand-n{n}-s{seed}-r{lo}:{hi}")


def check_permutation(p: Sequence[int], n: int) -> Permutation:
    perm = tuple(p)
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"{perm} is not a permutation of 1..{n}")
    return perm


def permutation_value(inst: LopInstance, p: Sequence[int]) -> int:
    """Sum of c_ij over pairs with i before j in p."""
    perm = check_permutation(p, inst.n)
    total = 0
    for a in range(inst.n):
        ca = inst.costs[perm[a] - 1]
        for b in range(a + 1, inst.n):
            total += ca[perm[b] - 1]
    return total


def all_permutations(n: int) -> Iterable[Permutation]:
    """Lexicographic enumeration of orderings of 1..n."""
    import itertools

    return itertools.permutations(range(1, n + 1))
