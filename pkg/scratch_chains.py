"""Scratch: chain dependency labels on the drawn example digraphs."""
from fractions import Fraction

from lopcut.relaxation import build_bn, VarIndex
from lopcut.simplex import is_vertex, tight_rank
from lopcut.vertex_analysis import (profile_from_point, find_chains,
                                    chain_is_dependent, detect_fences,
                                    fence_point, check_no_dependent_chain4)

def point_from_arcs(n, arcs):
    cols = VarIndex(n)
    x = [Fraction(1, 2)] * cols.dim
    for (a, b) in arcs:
        if a < b:
            x[cols.col(a, b)] = Fraction(1)
        else:
            x[cols.col(b, a)] = Fraction(0)
    return tuple(x)

FIG2 = [(4, 2), (4, 3), (5, 1), (5, 3), (5, 8), (6, 1), (6, 2),
        (7, 1), (7, 3), (7, 5), (7, 8), (8, 1), (8, 3)]
FIG3 = [(1, 4), (2, 5), (3, 4), (3, 5), (6, 1), (6, 2), (6, 4), (6, 5)]

x2 = point_from_arcs(8, FIG2)
sys8 = build_bn(8)
print("fig2 feasible:", sys8.is_feasible(x2), "tight rank:", tight_rank(sys8, x2),
      "dim:", sys8.dim)
p2 = profile_from_point(x2, 8)
print("fig2 fences:", p2.fences)
print("fig2 components:", [sorted(c) for c in p2.components], "simple:", p2.simple)
chains3 = find_chains(p2, 3)
print("fig2 length-3 chains:", [(c.nodes, c.dependent) for c in chains3])
chains2 = find_chains(p2, 2)
print("fig2 length-2 chains:", [(c.nodes, c.dependent) for c in chains2])
print("fig2 chain (7,5,8) dependent?", chain_is_dependent(p2, (7, 5, 8)))
print("fig2 chain (8,1) dependent?", chain_is_dependent(p2, (8, 1)))
print("fig2 no dependent chain4:", check_no_dependent_chain4(p2))
print("fig2 length-4 chains:", find_chains(p2, 4))
print("fig2 tau:", p2.tau)

x3 = point_from_arcs(6, FIG3)
sys6 = build_bn(6)
print("fig3 feasible:", sys6.is_feasible(x3), "tight rank:", tight_rank(sys6, x3),
      "dim:", sys6.dim)
p3 = profile_from_point(x3, 6)
print("fig3 chain (6,1,4) dependent?", chain_is_dependent(p3, (6, 1, 4)))
print("fig3 length-2 chains:", [(c.nodes, c.dependent) for c in find_chains(p3, 2)])
print("fig3 fences:", p3.fences)

# fence profile checks
xf = fence_point((1, 2, 3), (4, 5, 6), 6)
pf = profile_from_point(xf, 6)
print("fence fences:", pf.fences)
print("fence components:", [sorted(c) for c in pf.components], "tau:", pf.tau)
print("fence chains2:", find_chains(pf, 2))

# m=4 fence detection on n=8
xf4 = fence_point((1, 2, 3, 4), (5, 6, 7, 8), 8)
pf4 = profile_from_point(xf4, 8)
print("m4 fences:", pf4.fences)
