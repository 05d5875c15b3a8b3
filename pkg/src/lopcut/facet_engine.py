"""Cut generation: fence facets, hyperplanes through adjacent integer
vertices, standard-matrix recognition, and denominator reduction.

Every cut produced here is meant to be validated against the enumeration
oracle before anyone trusts it; facet_cuts_for_vertex wires that in and
refuses to return a cut that fails validation or does not separate its
source vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Optional, Sequence, Union

from .instance import Permutation
from .numerics import (IncrementalRowBasis, LinearEquality, _int_rank,
                       affine_hull, determinant, nullspace,
                       normalize_integer_vector, rank, row_reduce_integer)
from .oracle import (EXHAUSTIVE_CAP, DEFAULT_SAMPLE_BUDGET, ScaleError,
                     validate_inequality, facet_dimension)
from .relaxation import (ConstraintSystem, LinearInequality, VarIndex,
                         build_bn, embed_permutation, evaluate)
from .simplex import basis_certificate, is_vertex, tight_rows
from .vertex_analysis import VertexProfile, profile_from_point


class NotSeparatedError(RuntimeError):
    """No verified cut separates the vertex; callers fall back to the
    auxiliary problem."""

    def __init__(self, notes: Sequence[str]):
        super().__init__("no verified separating cut found")
        self.notes = tuple(notes)


class ReductionStuckError(RuntimeError):
    """No neighboring vertex lowers the maximum denominator."""

    def __init__(self, census: dict[int, int]):
        super().__init__(f"no denominator-reducing neighbor; census {census}")
        self.census = census


class NoHyperplaneError(ValueError):
    """The points affinely span the whole space and no co-planar cluster
    is big enough to determine a hyperplane."""


@dataclass(frozen=True)
class TripleExpression:
    """The expression x_ij + x_jk - x_ik for an ordered node triple."""

    i: int
    j: int
    k: int

    def __post_init__(self) -> None:
        if len({self.i, self.j, self.k}) != 3:
            raise ValueError("triple nodes must be distinct")

    def coefficients(self, n: int) -> tuple[tuple[Fraction, ...], Fraction]:
        """Reduced-variable coefficient vector plus constant offset."""
        columns = VarIndex(n)
        coeffs = [Fraction(0)] * columns.dim
        const = Fraction(0)
        const += columns.accumulate(coeffs, self.i, self.j, Fraction(1))
        const += columns.accumulate(coeffs, self.j, self.k, Fraction(1))
        const += columns.accumulate(coeffs, self.i, self.k, Fraction(-1))
        return tuple(coeffs), const

    def value_at(self, x: Sequence[Fraction], n: int) -> Fraction:
        coeffs, const = self.coefficients(n)
        return sum((c * Fraction(v) for c, v in zip(coeffs, x)), const)


@dataclass(frozen=True)
class StandardMatrixWitness:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    pattern: str  # "minimal" for the 3x3 block, "chain-k" for overlaps
    stage: str = "raw"  # "raw" submatrix, or "reduced" after elimination


@dataclass(frozen=True)
class CutBundle:
    cuts: tuple[LinearInequality, ...]
    provenance: str  # fence | affine_hull | reduced
    source_vertex: tuple[Fraction, ...]
    verified_valid: Union[bool, str]  # True, False, or "sampled"
    verified_facet_dim: Optional[int]
    notes: tuple[str, ...] = ()


def fence_inequality(i_list: Sequence[int], j_list: Sequence[int],
                     n: int) -> LinearInequality:
    """The fence cut: 2*sum of matched pairs minus the full crossed block,
    bounded above by 1.  Facet-defining for m >= 3; m = 2 is rejected
    because that instance is already implied by the triangle rows."""
    m = len(i_list)
    if len(j_list) != m:
        raise ValueError("i_list and j_list must have equal length")
    if m < 3:
        raise ValueError("fence needs m >= 3")
    nodes = list(i_list) + list(j_list)
    if len(set(nodes)) != 2 * m:
        raise ValueError("fence node lists must be disjoint and distinct")
    if any(v < 1 or v > n for v in nodes):
        raise ValueError("fence nodes out of range")
    columns = VarIndex(n)
    coeffs = [Fraction(0)] * columns.dim
    const = Fraction(0)
    for l in range(m):
        for q in range(m):
            weight = Fraction(1) if l == q else Fraction(-1)
            const += columns.accumulate(coeffs, i_list[l], j_list[q], weight)
    upper = Fraction(1) - const
    return LinearInequality(coeffs=tuple(coeffs), lower=None, upper=upper,
                            origin="fence").normalized()


def adjacent_integer_vertices(sys: ConstraintSystem,
                              x: Sequence[Fraction]) -> list[Permutation]:
    """All orderings whose characteristic vector is an LP-polytope
    neighbor of x: the rows tight at both points at the same bound must
    have rank dim-1.  Exhaustive over n! orderings, so capped at n <= 8.
    """
    n = sys.n
    if n > EXHAUSTIVE_CAP:
        raise ScaleError(
            f"adjacency enumeration is exhaustive and capped at n <= "
            f"{EXHAUSTIVE_CAP}, got {n}")
    if not is_vertex(sys, x):
        raise ValueError("adjacency enumeration needs a vertex")
    if all(Fraction(v).denominator == 1 for v in x):
        raise ValueError("adjacency enumeration expects a fractional vertex")
    d = sys.dim
    rows = sys.all_rows()
    pair_list = sys.columns.pairs()
    # Sparse integer form of the rows tight at x, with their x-values.
    sparse: list[tuple[list[tuple[int, int]], Fraction]] = []
    for idx in tight_rows(sys, x):
        row = rows[idx]
        norm = row.normalized()
        nz = [(c, int(v)) for c, v in enumerate(norm.coeffs) if v]
        sparse.append((nz, evaluate(norm, x)))
    adjacent = []
    for p in permutations(range(1, n + 1)):
        pos = [0] * (n + 1)
        for k, v in enumerate(p):
            pos[v] = k
        vvec = [1 if pos[i] < pos[j] else 0 for (i, j) in pair_list]
        common = []
        for nz, val in sparse:
            s = 0
            for c, w in nz:
                if vvec[c]:
                    s += w
            if s == val:
                common.append(nz)
        if len(common) < d - 1:
            continue
        mat = []
        for nz in common:
            r = [0] * d
            for c, w in nz:
                r[c] = w
            mat.append(r)
        if _int_rank(mat, len(mat), d) == d - 1:
            adjacent.append(p)
    return adjacent


def hyperplanes_through(points: Sequence[Sequence[Fraction]],
                        dim: int) -> list[LinearEquality]:
    """Hyperplane(s) carrying the points.

    If the affine hull has dimension dim-1 the unique hyperplane comes
    back.  If the points span the whole space they are greedily clustered
    into (dim-1)-flats: seed dim affinely independent points in input
    order, absorb everything co-planar, repeat; clusters smaller than
    dim+1 points are too thin to trust and are retired.  If nothing
    survives, the points determine no hyperplane.
    """
    if not points:
        raise ValueError("need at least one point")
    hull_dim, equalities = affine_hull(points, dim)
    if hull_dim == dim - 1:
        return [_single_hyperplane(equalities)]
    if hull_dim < dim - 1:
        # Underdetermined: every equality holds; report the canonical first.
        return [equalities[0]]
    return _cluster_hyperplanes(points, dim)


def _single_hyperplane(equalities: list[LinearEquality]) -> LinearEquality:
    assert len(equalities) == 1
    return equalities[0]


def _cluster_hyperplanes(points: Sequence[Sequence[Fraction]],
                         dim: int) -> list[LinearEquality]:
    active = list(points)
    retired: list[Sequence[Fraction]] = []
    found: list[LinearEquality] = []
    while True:
        seeds = []
        basis = IncrementalRowBasis(dim + 1)
        for p in active:
            if basis.try_add(list(p) + [Fraction(1)]):
                seeds.append(p)
            if len(seeds) == dim:
                break
        if len(seeds) < dim:
            break
        _, eqs = affine_hull(seeds, dim)
        eq = eqs[0]
        members = [p for p in active if eq.holds_at(p)]
        members += [p for p in retired if eq.holds_at(p)]
        if len(members) >= dim + 1:
            found.append(eq)
            active = [p for p in active if not eq.holds_at(p)]
            retired = [p for p in retired if not eq.holds_at(p)]
        else:
            retired.append(active.pop(0))
    if not found:
        raise NoHyperplaneError(
            "points affinely span the space and no co-planar cluster is "
            "large enough to determine a hyperplane")
    return found


def _orient_hyperplane(eq: LinearEquality, n: int) -> Optional[LinearInequality]:
    """Turn an equality into the <=-cut satisfied by the orderings.

    The side is fixed by the first ordering found off the hyperplane;
    returns None when every ordering lies on it (nothing to cut with).
    """
    for p in permutations(range(1, n + 1)):
        v = embed_permutation(p, n)
        val = eq.evaluate(v)
        if val == eq.rhs:
            continue
        if val < eq.rhs:
            return LinearInequality(
                coeffs=tuple(Fraction(c) for c in eq.coeffs),
                lower=None, upper=Fraction(eq.rhs), origin="hull_cut")
        return LinearInequality(
            coeffs=tuple(Fraction(-c) for c in eq.coeffs),
            lower=None, upper=Fraction(-eq.rhs), origin="hull_cut")
    return None


def _lift_cut(cut: LinearInequality, nodes: Sequence[int],
              n: int) -> LinearInequality:
    """Zero-lift a cut over a node subset into the full variable space.

    The subset is relabelled in increasing order, so pair orientation is
    preserved and no complement flips arise.
    """
    sub_cols = VarIndex(len(nodes))
    full_cols = VarIndex(n)
    coeffs = [Fraction(0)] * full_cols.dim
    for c, (p, q) in enumerate(sub_cols.pairs()):
        if cut.coeffs[c]:
            coeffs[full_cols.col(nodes[p - 1], nodes[q - 1])] = cut.coeffs[c]
    return LinearInequality(coeffs=tuple(coeffs), lower=cut.lower,
                            upper=cut.upper, origin=cut.origin)


def _restrict_point(x: Sequence[Fraction], nodes: Sequence[int],
                    n: int) -> tuple[Fraction, ...]:
    full_cols = VarIndex(n)
    sub_cols = VarIndex(len(nodes))
    out = [Fraction(0)] * sub_cols.dim
    for c, (p, q) in enumerate(sub_cols.pairs()):
        out[c] = full_cols.value(x, nodes[p - 1], nodes[q - 1])
    return tuple(out)


def _component_cuts(sys: ConstraintSystem, x: Sequence[Fraction],
                    profile: VertexProfile, comp: frozenset[int],
                    notes: list[str]) -> list[LinearInequality]:
    comp_nodes = sorted(comp)
    comp_fences = [f for f in profile.fences
                   if set(f.i_list) | set(f.j_list) <= comp]
    if comp_fences:
        return [fence_inequality(f.i_list, f.j_list, sys.n)
                for f in comp_fences]
    k = len(comp_nodes)
    if k < 3:
        notes.append(f"component {comp_nodes}: too small for cuts")
        return []
    if k > EXHAUSTIVE_CAP:
        notes.append(f"component {comp_nodes}: beyond enumeration scale")
        return []
    sub_sys = build_bn(k)
    sub_x = _restrict_point(x, comp_nodes, sys.n)
    if not sub_sys.is_feasible(sub_x) or not is_vertex(sub_sys, sub_x):
        notes.append(f"component {comp_nodes}: restriction is not a vertex")
        return []
    adj = adjacent_integer_vertices(sub_sys, sub_x)
    points = [embed_permutation(p, k) for p in adj]
    if not points:
        notes.append(f"component {comp_nodes}: no adjacent integer vertices")
        return []
    try:
        hyps = hyperplanes_through(points, sub_sys.dim)
    except NoHyperplaneError as exc:
        notes.append(f"component {comp_nodes}: {exc}")
        return []
    cuts = []
    for eq in hyps:
        oriented = _orient_hyperplane(eq, k)
        if oriented is None:
            notes.append(f"component {comp_nodes}: hyperplane carries all "
                         "orderings, discarded")
            continue
        cuts.append(_lift_cut(oriented, comp_nodes, sys.n))
    return cuts


def facet_cuts_for_vertex(sys: ConstraintSystem, x: Sequence[Fraction],
                          oracle_budget: int = DEFAULT_SAMPLE_BUDGET,
                          reduced: bool = False) -> CutBundle:
    """Verified facet cuts for a half-integral fractional vertex.

    Components of the fractional support are handled one at a time:
    detected fences take the closed form, everything else goes through
    adjacency enumeration and hyperplane reconstruction on the induced
    subproblem, zero-lifted back.  Each candidate must pass the oracle
    validity scan and strictly separate x, otherwise it is dropped; an
    empty result raises NotSeparatedError.
    """
    if not is_vertex(sys, x):
        raise ValueError("cut generation needs a vertex")
    profile = profile_from_point(x, sys.n)
    if profile.is_integral():
        raise ValueError("cut generation needs a fractional vertex")
    if profile.max_denominator() > 2:
        raise ValueError("denominators exceed 2; reduce the vertex first")
    notes: list[str] = []
    candidates: list[LinearInequality] = []
    for comp in profile.components:
        candidates.extend(_component_cuts(sys, x, profile, comp, notes))
    verified: list[LinearInequality] = []
    modes: list[str] = []
    for cut in candidates:
        report = validate_inequality(cut, sys.n, sample_budget=oracle_budget)
        if not report.valid:
            notes.append(f"cut {cut.origin} failed validity "
                         f"(max {report.max_lhs} vs bound {cut.upper})")
            continue
        if cut.upper is None or evaluate(cut, x) <= cut.upper:
            notes.append(f"cut {cut.origin} does not separate the vertex")
            continue
        verified.append(cut.normalized())
        modes.append(report.mode)
    if not verified:
        raise NotSeparatedError(notes)
    if reduced:
        provenance = "reduced"
    elif all(c.origin == "fence" for c in verified):
        provenance = "fence"
    else:
        provenance = "affine_hull"
    valid_flag: Union[bool, str]
    valid_flag = "sampled" if any(m == "sampled" for m in modes) else True
    facet_dim: Optional[int] = None
    if len(verified) == 1 and sys.n <= EXHAUSTIVE_CAP:
        facet_dim = facet_dimension(verified[0], sys.n)
    return CutBundle(cuts=tuple(verified), provenance=provenance,
                     source_vertex=tuple(Fraction(v) for v in x),
                     verified_valid=valid_flag, verified_facet_dim=facet_dim,
                     notes=tuple(notes))


def find_standard_matrices(basis: Sequence[Sequence[Fraction]]
                           ) -> list[StandardMatrixWitness]:
    """3x3 non-unimodular blocks inside a basis matrix.

    The minimal pattern, up to row/column permutation and sign flips, is
    a {0, +-1} submatrix with exactly two nonzeros in every row and
    column and absolute determinant 2.  Real bases rarely show the block
    verbatim, so the search runs both on the raw matrix and on its
    fraction-free row reduction (witness stage "raw" vs "reduced").
    Overlapping minimal witnesses, which is how larger denominators show
    up, are additionally reported as chains.
    """
    nrows = len(basis)
    if nrows == 0 or any(len(r) != nrows for r in basis):
        raise ValueError("basis must be square")
    if rank(basis) != nrows:
        raise ValueError("basis must be nonsingular")
    witnesses = _scan_stage(basis, "raw")
    reduced = row_reduce_integer(basis)
    witnesses.extend(_scan_stage(reduced, "reduced"))
    witnesses.extend(_chained_witnesses(witnesses))
    return witnesses


def _scan_stage(mat: Sequence[Sequence[Fraction]],
                stage: str) -> list[StandardMatrixWitness]:
    nrows = len(mat)
    supports = [frozenset(c for c, v in enumerate(row) if v != 0)
                for row in mat]
    found: list[StandardMatrixWitness] = []
    for rsel in combinations(range(nrows), 3):
        cols_pool = sorted(supports[rsel[0]] | supports[rsel[1]]
                           | supports[rsel[2]])
        if len(cols_pool) < 3:
            continue
        for csel in combinations(cols_pool, 3):
            sub = [[mat[r][c] for c in csel] for r in rsel]
            if _is_minimal_standard(sub):
                found.append(StandardMatrixWitness(
                    rows=tuple(rsel), cols=tuple(csel), pattern="minimal",
                    stage=stage))
    return found


def _is_minimal_standard(sub: list[list[Fraction]]) -> bool:
    for row in sub:
        if sum(1 for v in row if v != 0) != 2:
            return False
        if any(v not in (-1, 0, 1) for v in row):
            return False
    for c in range(3):
        if sum(1 for r in range(3) if sub[r][c] != 0) != 2:
            return False
    return abs(determinant(sub)) == 2


def _chained_witnesses(minimal: list[StandardMatrixWitness]
                       ) -> list[StandardMatrixWitness]:
    """Connected groups of row-overlapping minimal witnesses, per stage."""
    chains = []
    for stage in ("raw", "reduced"):
        group = [w for w in minimal if w.stage == stage]
        if len(group) < 2:
            continue
        parent = list(range(len(group)))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                if set(group[a].rows) & set(group[b].rows):
                    ra, rb = find(a), find(b)
                    if ra != rb:
                        parent[ra] = rb
        comps: dict[int, list[int]] = {}
        for i in range(len(group)):
            comps.setdefault(find(i), []).append(i)
        for members in comps.values():
            if len(members) < 2:
                continue
            rows = sorted(set().union(*(group[i].rows for i in members)))
            cols = sorted(set().union(*(group[i].cols for i in members)))
            chains.append(StandardMatrixWitness(
                rows=tuple(rows), cols=tuple(cols),
                pattern=f"chain-{len(members)}", stage=stage))
    return chains


def walk_edge(sys: ConstraintSystem, x: Sequence[Fraction],
              certificate: Sequence[int],
              drop: int) -> list[tuple[Fraction, ...]]:
    """Drop one certificate row and walk the resulting line both ways.

    Returns the feasible endpoints with a strictly positive step; each is
    a vertex because a new row becomes tight there on top of the dim-1
    kept rows.
    """
    rows = sys.all_rows()
    kept = [rows[idx].coeffs for idx in certificate if idx != drop]
    if len(kept) != len(certificate) - 1:
        raise ValueError("drop must be one of the certificate rows")
    directions = nullspace(kept)
    if len(directions) != 1:
        raise ValueError("kept rows do not leave a one-dimensional line")
    w = [Fraction(v) for v in normalize_integer_vector(directions[0])]
    endpoints = []
    for sign in (1, -1):
        step = [sign * v for v in w]
        t_max: Optional[Fraction] = None
        for row in rows:
            slope = sum((c * s for c, s in zip(row.coeffs, step)), Fraction(0))
            if slope == 0:
                continue
            val = evaluate(row, x)
            if slope > 0:
                if row.upper is None:
                    continue
                t = (row.upper - val) / slope
            else:
                if row.lower is None:
                    continue
                t = (val - row.lower) / (-slope)
            if t_max is None or t < t_max:
                t_max = t
        if t_max is None or t_max <= 0:
            continue
        endpoints.append(tuple(
            Fraction(v) + t_max * s for v, s in zip(x, step)))
    return endpoints


def reduce_denominator(sys: ConstraintSystem,
                       x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Move to an adjacent vertex with a strictly smaller max denominator.

    Tries every single swap of a certificate row (drop it, walk the edge)
    and returns the first neighbor that lowers the maximum fractional
    denominator; if none does, raises ReductionStuckError carrying the
    census of neighbor denominators.
    """
    if not is_vertex(sys, x):
        raise ValueError("reduction needs a vertex")
    cur = max((Fraction(v).denominator for v in x), default=1)
    if cur < 3:
        raise ValueError("vertex already has denominators <= 2")
    cert = basis_certificate(sys, x)
    census: dict[int, int] = {}
    for drop in cert:
        for y in walk_edge(sys, x, cert, drop):
            md = max((Fraction(v).denominator for v in y), default=1)
            census[md] = census.get(md, 0) + 1
            if md < cur:
                return y
    raise ReductionStuckError(census)


def reduce_to_half_integral(sys: ConstraintSystem,
                            x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Iterate reduce_denominator until every denominator is 1 or 2."""
    y = tuple(Fraction(v) for v in x)
    while max((v.denominator for v in y), default=1) > 2:
        y = reduce_denominator(sys, y)
    return y


def cut_bundle_to_json(bundle: CutBundle) -> dict:
    return {
        "cuts": [inequality_to_json(c) for c in bundle.cuts],
        "provenance": bundle.provenance,
        "source_vertex": [{"num": v.numerator, "den": v.denominator}
                          for v in bundle.source_vertex],
        "verified_valid": bundle.verified_valid,
        "verified_facet_dim": bundle.verified_facet_dim,
        "notes": list(bundle.notes),
    }


def inequality_to_json(cut: LinearInequality) -> dict:
    norm = cut.normalized()
    return {
        "coeffs": [int(c) for c in norm.coeffs],
        "lower": _bound_json(norm.lower),
        "upper": _bound_json(norm.upper),
        "origin": norm.origin,
    }


def inequality_from_json(doc: dict) -> LinearInequality:
    return LinearInequality(
        coeffs=tuple(Fraction(c) for c in doc["coeffs"]),
        lower=_bound_from_json(doc.get("lower")),
        upper=_bound_from_json(doc.get("upper")),
        origin=doc.get("origin", "aux"))


def _bound_json(v: Optional[Fraction]) -> Optional[dict]:
    if v is None:
        return None
    return {"num": v.numerator, "den": v.denominator}


def _bound_from_json(doc: Optional[dict]) -> Optional[Fraction]:
    if doc is None:
        return None
    return Fraction(doc["num"], doc["den"])
