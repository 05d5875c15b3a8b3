"""Scratch: end-to-end pipeline checks before writing the test suite."""
import time
from fractions import Fraction

from lopcut.instance import LopInstance, random_instance
from lopcut.relaxation import build_bn, add_cut, evaluate
from lopcut.facet_engine import (fence_inequality, facet_cuts_for_vertex,
                                 adjacent_integer_vertices, hyperplanes_through,
                                 find_standard_matrices, walk_edge)
from lopcut.oracle import validate_inequality, facet_dimension, brute_force_opt
from lopcut.simplex import lp_solve, basis_certificate
from lopcut.solver import (SolverConfig, solve, report_to_json_text,
                           auxiliary_problem, tight_rows_for_auxiliary,
                           decode_integer_vertex)
from lopcut.vertex_analysis import fence_point
from lopcut.relaxation import embed_permutation

t0 = time.time()

# fence inequality basics
sys6 = build_bn(6)
fc = fence_inequality((1, 2, 3), (4, 5, 6), 6)
xf = fence_point((1, 2, 3), (4, 5, 6), 6)
print("fence value at vertex:", evaluate(fc, xf), "upper:", fc.upper)
rep = validate_inequality(fc, 6)
print("validity:", rep.valid, "max:", rep.max_lhs, "min:", rep.min_lhs,
      "tight:", rep.tight_count)
print("facet dim:", facet_dimension(fc, 6))

# full bundle for the fence
bundle = facet_cuts_for_vertex(sys6, xf)
print("bundle cuts:", len(bundle.cuts), "prov:", bundle.provenance,
      "valid:", bundle.verified_valid, "facet dim:", bundle.verified_facet_dim)

# adjacency + hyperplane reconstruction at m=3
adj = adjacent_integer_vertices(sys6, xf)
print("adjacent count m=3:", len(adj))
pts = [embed_permutation(p, 6) for p in adj]
hyps = hyperplanes_through(pts, sys6.dim)
print("hyperplanes:", len(hyps))
eq = hyps[0]
fc_eq_coeffs = tuple(int(c) for c in fc.coeffs)
print("hyperplane == fence form:", eq.coeffs == fc_eq_coeffs and eq.rhs == fc.upper)

# standard matrix witnesses in the fence basis certificate
cert = basis_certificate(sys6, xf)
rows = sys6.all_rows()
mat = [list(rows[i].coeffs) for i in cert]
wits = find_standard_matrices(mat)
print("standard-matrix witnesses:", len(wits),
      "minimal:", sum(1 for w in wits if w.pattern == "minimal"))

# edge walk from the fence vertex
endpoints = []
for drop in cert:
    endpoints.extend(walk_edge(sys6, xf, cert, drop))
print("edge-walk endpoints:", len(endpoints))

# solver on the n=3 example
inst3 = LopInstance(3, ((0, 5, 1), (0, 0, 4), (2, 0, 0)))
r = solve(inst3)
print("n=3 solve:", r.status, r.best_bound, r.incumbent)

# solver on the fence-functional instance (integer costs, zero constant)
costs = [[0] * 6 for _ in range(6)]
for l, (i, j) in enumerate(((1, 4), (2, 5), (3, 6))):
    costs[i - 1][j - 1] = 1
for i in (1, 2, 3):
    for j in (4, 5, 6):
        pass
for l in range(3):
    for q in range(3):
        if l != q:
            i, j = (1, 2, 3)[l], (4, 5, 6)[q]
            costs[i - 1][j - 1] = -1
inst_fence = LopInstance(6, tuple(tuple(r_) for r_ in costs))
rf = solve(inst_fence)
print("fence instance:", rf.status, "bound:", rf.best_bound,
      "iters:", len(rf.iterations),
      "lp values:", [str(it.lp_value) for it in rf.iterations],
      "cuts:", [it.cuts_added for it in rf.iterations])
opt = brute_force_opt(inst_fence)
print("oracle:", opt.best_value, "incumbent:", rf.incumbent)

# auxiliary problem example: p=0, q=1 with the fence cut
sys_with = add_cut(sys6, fence_inequality((1, 2, 3), (4, 5, 6), 6))
cut = sys_with.cut_pool[0]
# bounds per oracle: min -3, max 1
cut_b = cut
sol_aux, val_aux = auxiliary_problem(
    sys_with, [], [(cut_b, Fraction(-3), Fraction(1))])
print("aux optimum (p=0,q=1):", val_aux)

# aux with single triple
from lopcut.facet_engine import TripleExpression
sol_aux2, val_aux2 = auxiliary_problem(sys6, [TripleExpression(1, 2, 3)], [])
print("aux optimum (p=1,q=0):", val_aux2)

# random solves cross-checked
for n in (5, 6, 7):
    ok = 0
    t1 = time.time()
    for seed in range(10):
        inst = random_instance(n, seed, (0, 99))
        r = solve(inst)
        o = brute_force_opt(inst)
        assert r.best_bound >= o.best_value
        if r.status == "Optimal":
            assert r.incumbent[1] == o.best_value
            ok += 1
    print(f"n={n}: {ok}/10 optimal, {time.time()-t1:.1f}s")

print(f"total {time.time()-t0:.1f}s")
