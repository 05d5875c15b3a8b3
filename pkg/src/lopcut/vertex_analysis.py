"""Structural analysis of LP vertices via their pair digraph.

A point of the relaxation induces a digraph on the elements: pair values
that are exactly 0 or 1 become arcs (i -> j when i is ordered before j),
fractional pairs carry no arc.  Classification reads off the fractional
support components, the denominators, fence patterns and oriented chains.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .relaxation import ConstraintSystem, VarIndex
from .simplex import is_vertex


class LiftError(ValueError):
    """Node duplication preconditions or postconditions failed."""


@dataclass(frozen=True)
class ArcGraph:
    n: int
    arcs: frozenset[tuple[int, int]]

    def has_arc(self, i: int, j: int) -> bool:
        return (i, j) in self.arcs

    def out_neighbors(self, i: int) -> list[int]:
        return sorted(j for (a, j) in self.arcs if a == i)

    def in_neighbors(self, j: int) -> list[int]:
        return sorted(i for (i, b) in self.arcs if b == j)

    def incident(self, v: int) -> list[tuple[int, int]]:
        return sorted(arc for arc in self.arcs if v in arc)


@dataclass(frozen=True)
class OrientedChain:
    nodes: tuple[int, ...]
    dependent: bool

    @property
    def length(self) -> int:
        return len(self.nodes) - 1


@dataclass(frozen=True)
class FenceStructure:
    m: int
    i_list: tuple[int, ...]
    j_list: tuple[int, ...]

    def matched_pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.i_list, self.j_list))


@dataclass(frozen=True)
class VertexProfile:
    n: int
    x: tuple[Fraction, ...]
    arc_graph: ArcGraph
    fractional_pairs: frozenset[tuple[int, int]]
    denominators: frozenset[int]
    components: tuple[frozenset[int], ...]
    fences: tuple[FenceStructure, ...]
    chains3: tuple[OrientedChain, ...]
    tau: int
    simple: bool

    def max_denominator(self) -> int:
        return max(self.denominators, default=1)

    def is_integral(self) -> bool:
        return not self.fractional_pairs


def fence_point(i_list: Sequence[int], j_list: Sequence[int],
                n: int) -> tuple[Fraction, ...]:
    """The canonical fence configuration as a point of the relaxation.

    Crossed pairs (i_l, j_q), l != q, are fixed to "j before i"; every
    other pair sits at 1/2.  A vertex of the relaxation for m >= 3 when
    n = 2m; callers can check smaller m or larger n themselves.
    """
    m = len(i_list)
    if len(j_list) != m:
        raise ValueError("i_list and j_list must have equal length")
    nodes = list(i_list) + list(j_list)
    if len(set(nodes)) != 2 * m:
        raise ValueError("fence node lists must be disjoint and distinct")
    if any(v < 1 or v > n for v in nodes):
        raise ValueError("fence nodes out of range")
    columns = VarIndex(n)
    x = [Fraction(1, 2)] * columns.dim
    for l in range(m):
        for q in range(m):
            if l == q:
                continue
            i, j = i_list[l], j_list[q]
            if i < j:
                x[columns.col(i, j)] = Fraction(0)
            else:
                x[columns.col(j, i)] = Fraction(1)
    return tuple(x)


def profile_from_point(x: Sequence[Fraction], n: int) -> VertexProfile:
    """Build the structural profile without checking vertexhood."""
    columns = VarIndex(n)
    if len(x) != columns.dim:
        raise ValueError("point dimension does not match n")
    arcs = set()
    fractional = set()
    denominators = set()
    for c, (i, j) in enumerate(columns.pairs()):
        v = Fraction(x[c])
        if v == 1:
            arcs.add((i, j))
        elif v == 0:
            arcs.add((j, i))
        else:
            fractional.add((i, j))
            denominators.add(v.denominator)
    graph = ArcGraph(n=n, arcs=frozenset(arcs))
    components = _fractional_components(fractional)
    profile = VertexProfile(
        n=n, x=tuple(Fraction(v) for v in x), arc_graph=graph,
        fractional_pairs=frozenset(fractional),
        denominators=frozenset(denominators),
        components=components, fences=(), chains3=(), tau=0,
        simple=len(components) <= 1)
    fences = tuple(detect_fences(profile))
    chains3 = tuple(find_chains(profile, 3))
    tau = sum(1 for ch in chains3 if ch.dependent)
    return VertexProfile(
        n=n, x=profile.x, arc_graph=graph,
        fractional_pairs=profile.fractional_pairs,
        denominators=profile.denominators,
        components=components, fences=fences, chains3=chains3, tau=tau,
        simple=len(components) <= 1)


def classify_vertex(sys: ConstraintSystem, x: Sequence[Fraction]) -> VertexProfile:
    """Profile of a genuine vertex; rejects non-vertices."""
    if not is_vertex(sys, x):
        raise ValueError("point is not a vertex of the system")
    return profile_from_point(x, sys.n)


def _fractional_components(fractional: set[tuple[int, int]]) -> tuple[frozenset[int], ...]:
    parent: dict[int, int] = {}

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for (i, j) in fractional:
        parent.setdefault(i, i)
        parent.setdefault(j, j)
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    groups: dict[int, set[int]] = {}
    for v in parent:
        groups.setdefault(find(v), set()).add(v)
    return tuple(sorted((frozenset(g) for g in groups.values()), key=sorted))


def detect_fences(profile: VertexProfile) -> list[FenceStructure]:
    """All maximal fence patterns of size m >= 3.

    A fence is a family of node-disjoint half-valued matched pairs
    (i_l, j_l) whose crossed pairs are all fixed to "j before i" and
    whose remaining internal pairs all sit at 1/2.  The conditions are
    pairwise, so fences are exactly the maximal cliques of the
    compatibility graph over oriented half-pairs.
    """
    columns = VarIndex(profile.n)
    half = {p for p in profile.fractional_pairs
            if columns.value(profile.x, *p) == Fraction(1, 2)}
    oriented: list[tuple[int, int]] = []
    for (a, b) in sorted(half):
        oriented.append((a, b))
        oriented.append((b, a))
    arcs = profile.arc_graph.arcs
    halfset = half

    def compatible(p1: tuple[int, int], p2: tuple[int, int]) -> bool:
        i1, j1 = p1
        i2, j2 = p2
        if len({i1, j1, i2, j2}) != 4:
            return False
        key_i = (i1, i2) if i1 < i2 else (i2, i1)
        key_j = (j1, j2) if j1 < j2 else (j2, j1)
        return ((j1, i2) in arcs and (j2, i1) in arcs
                and key_i in halfset and key_j in halfset)

    idx = range(len(oriented))
    adj = {a: {b for b in idx if b != a and compatible(oriented[a], oriented[b])}
           for a in idx}
    cliques: list[frozenset[int]] = []

    def bron_kerbosch(r: set[int], p: set[int], q: set[int]) -> None:
        if not p and not q:
            if len(r) >= 3:
                cliques.append(frozenset(r))
            return
        pivot_pool = p | q
        pivot = max(pivot_pool, key=lambda v: len(adj[v] & p))
        for v in sorted(p - adj[pivot]):
            bron_kerbosch(r | {v}, p & adj[v], q & adj[v])
            p = p - {v}
            q = q | {v}

    bron_kerbosch(set(), set(idx), set())
    fences = []
    seen = set()
    for cl in cliques:
        pairs = sorted(oriented[a] for a in cl)
        key = tuple(pairs)
        if key in seen:
            continue
        seen.add(key)
        fences.append(FenceStructure(
            m=len(pairs),
            i_list=tuple(p[0] for p in pairs),
            j_list=tuple(p[1] for p in pairs)))
    fences.sort(key=lambda f: (f.m, f.i_list))
    return fences


def _pair_value(profile: VertexProfile, a: int, b: int) -> Fraction:
    columns = VarIndex(profile.n)
    return columns.value(profile.x, a, b)


def _relation(profile: VertexProfile, w: int, v: int) -> str:
    if (w, v) in profile.arc_graph.arcs:
        return "before"
    if (v, w) in profile.arc_graph.arcs:
        return "after"
    return "fractional"


def chain_is_dependent(profile: VertexProfile, nodes: Sequence[int]) -> bool:
    """Dependency of an oriented chain.

    A chain is independent when its nodes are interchangeable with any
    reordering of themselves: they must be totally ordered by arcs, and
    every node outside the chain must relate to all chain nodes the same
    way (always before, always after, or always fractional).  Anything
    that breaks interchangeability makes the chain dependent.
    """
    seq = list(nodes)
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if not profile.arc_graph.has_arc(seq[a], seq[b]):
                return True
    chain_set = set(seq)
    for w in range(1, profile.n + 1):
        if w in chain_set:
            continue
        rels = {_relation(profile, w, v) for v in seq}
        if len(rels) > 1:
            return True
    return False


def find_chains(profile: VertexProfile, length: int) -> list[OrientedChain]:
    """All directed paths of the given arc-length with distinct nodes."""
    if length not in (2, 3, 4):
        raise ValueError("chain search supports lengths 2, 3 and 4")
    out_map: dict[int, list[int]] = {}
    for (a, b) in profile.arc_graph.arcs:
        out_map.setdefault(a, []).append(b)
    for v in out_map:
        out_map[v].sort()
    chains = []

    def extend(path: list[int]) -> None:
        if len(path) == length + 1:
            chains.append(OrientedChain(
                nodes=tuple(path),
                dependent=chain_is_dependent(profile, path)))
            return
        for nxt in out_map.get(path[-1], ()):
            if nxt not in path:
                path.append(nxt)
                extend(path)
                path.pop()

    for start in range(1, profile.n + 1):
        extend([start])
    chains.sort(key=lambda ch: ch.nodes)
    return chains


def check_no_dependent_chain4(profile: VertexProfile) -> bool:
    return not any(ch.dependent for ch in find_chains(profile, 4))


def lift_duplicate(sys: ConstraintSystem, x: Sequence[Fraction], node: int,
                   copies: int, copy_order: Sequence[int]) -> tuple[Fraction, ...]:
    """Duplicate a node whose arcs all point one way.

    Each copy replicates the node's values against every other element;
    the original and its copies (labelled n+1..n+copies) are totally
    ordered by copy_order, a permutation of 0..copies where 0 stands for
    the original.  The lifted point must again be a vertex, which is
    checked and enforced.
    """
    from .relaxation import build_bn

    if copies < 0:
        raise ValueError("copies must be >= 0")
    if not is_vertex(sys, x):
        raise LiftError("input point is not a vertex")
    if copies == 0:
        return tuple(Fraction(v) for v in x)
    if sorted(copy_order) != list(range(copies + 1)):
        raise ValueError("copy_order must be a permutation of 0..copies")
    n = sys.n
    if not 1 <= node <= n:
        raise ValueError(f"node {node} out of range")
    profile = profile_from_point(x, n)
    incident = profile.arc_graph.incident(node)
    outgoing = [a for a in incident if a[0] == node]
    incoming = [a for a in incident if a[1] == node]
    if outgoing and incoming:
        raise LiftError(
            f"node {node} has both incoming and outgoing arcs; "
            "duplication needs a pure source or sink")
    new_n = n + copies
    old_cols = sys.columns
    new_cols = VarIndex(new_n)
    group = [node] + [n + k for k in range(1, copies + 1)]
    rank_of = {member: copy_order.index(k) for k, member in enumerate(group)}
    group_set = set(group)

    def old_value(a: int, b: int) -> Fraction:
        return old_cols.value(x, a, b)

    new_x = []
    for (a, b) in new_cols.pairs():
        a_in = a in group_set
        b_in = b in group_set
        if a_in and b_in:
            new_x.append(Fraction(1) if rank_of[a] < rank_of[b] else Fraction(0))
        elif a_in:
            new_x.append(old_value(node, b))
        elif b_in:
            new_x.append(old_value(a, node))
        else:
            new_x.append(old_value(a, b))
    lifted = tuple(new_x)
    target = build_bn(new_n)
    if not target.is_feasible(lifted) or not is_vertex(target, lifted):
        raise LiftError("lifted point failed the vertex test")
    return lifted


def profile_to_json(profile: VertexProfile) -> dict:
    """JSON-friendly rendering used by the CLI analyze command."""
    columns = VarIndex(profile.n)
    fracs = sorted(profile.fractional_pairs)
    return {
        "n": profile.n,
        "arcs": [list(a) for a in sorted(profile.arc_graph.arcs)],
        "fractional_pairs": [
            {"pair": [i, j],
             "value": _frac_json(columns.value(profile.x, i, j))}
            for (i, j) in fracs
        ],
        "denominators": sorted(profile.denominators),
        "components": [sorted(c) for c in profile.components],
        "fences": [
            {"m": f.m, "i_list": list(f.i_list), "j_list": list(f.j_list)}
            for f in profile.fences
        ],
        "chains3": [
            {"nodes": list(ch.nodes), "dependent": ch.dependent}
            for ch in profile.chains3
        ],
        "tau": profile.tau,
        "simple": profile.simple,
        "integral": profile.is_integral(),
    }


def _frac_json(v: Fraction) -> dict:
    return {"num": v.numerator, "den": v.denominator}
