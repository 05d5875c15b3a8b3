"""Scratch: verify fence vertexhood and adjacency counts early."""
import time
from fractions import Fraction
from itertools import permutations

from lopcut.relaxation import build_bn, embed_permutation, VarIndex
from lopcut.simplex import is_vertex, tight_rank, tight_rows
from lopcut.numerics import IncrementalRowBasis


def fence_point(i_list, j_list, n):
    cols = VarIndex(n)
    x = [Fraction(1, 2)] * cols.dim
    m = len(i_list)
    for l in range(m):
        for q in range(m):
            if l == q:
                continue
            i, j = i_list[l], j_list[q]
            # x_{i j} = 0 means j before i
            if i < j:
                x[cols.col(i, j)] = Fraction(0)
            else:
                x[cols.col(j, i)] = Fraction(1)
    return tuple(x)


def count_adjacent(n, i_list, j_list):
    sys = build_bn(n)
    x = fence_point(i_list, j_list, n)
    assert sys.is_feasible(x), "fence point infeasible!"
    tr = tight_rank(sys, x)
    print(f"n={n}: fence tight rank = {tr} (dim {sys.dim}), vertex: {tr == sys.dim}")
    rows = sys.all_rows()
    tight_at_x = tight_rows(sys, x)
    tight_rows_x = [(idx, rows[idx]) for idx in tight_at_x]
    d = sys.dim
    adj = []
    t0 = time.time()
    xvals = [(idx, row, row.evaluate(x)) for idx, row in tight_rows_x]
    for p in permutations(range(1, n + 1)):
        v = embed_permutation(p, n)
        common = [row for idx, row, val in xvals if row.evaluate(v) == val]
        if len(common) < d - 1:
            continue
        basis = IncrementalRowBasis(d)
        for row in common:
            basis.try_add(row.coeffs)
        if basis.rank == d - 1:
            adj.append(p)
    t1 = time.time()
    print(f"adjacent count: {len(adj)}  time {t1-t0:.1f}s")
    return adj, x, sys


adj3, x3, sys3 = count_adjacent(6, (1, 2, 3), (4, 5, 6))
fam1 = []
# family 1: alpha_k i_k j_k beta_k
il, jl = (1, 2, 3), (4, 5, 6)
for k in range(3):
    others_j = [jl[q] for q in range(3) if q != k]
    others_i = [il[q] for q in range(3) if q != k]
    for a in permutations(others_j):
        for b in permutations(others_i):
            fam1.append(tuple(a) + (il[k], jl[k]) + tuple(b))
fam2 = []
for k in range(3):
    for p_ in range(3):
        if k == p_:
            continue
        others_j = [jl[q] for q in range(3) if q not in (k, p_)]
        others_i = [il[q] for q in range(3) if q not in (k, p_)]
        for a in permutations(others_j):
            for b in permutations(others_i):
                fam2.append(tuple(a) + (il[k], jl[k], il[p_], jl[p_]) + tuple(b))
print("family1 size:", len(set(fam1)), "family2 size:", len(set(fam2)))
adjset = set(adj3)
print("fam1 subset of adj:", set(fam1) <= adjset)
print("fam2 in adj:", sum(1 for p in set(fam2) if p in adjset), "of", len(set(fam2)))
print("adj minus fam1+fam2:", adjset - set(fam1) - set(fam2))
print("fam2 members adjacency:", {p: (p in adjset) for p in sorted(set(fam2))})
