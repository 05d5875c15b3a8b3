"""Scratch: simplex cross-checks against brute force."""
import time
from fractions import Fraction
from itertools import permutations

from lopcut.instance import random_instance, permutation_value
from lopcut.relaxation import build_bn, embed_permutation, objective_from_instance
from lopcut.simplex import lp_solve, is_vertex
from scratch_adjacency import fence_point

# 1. LP vs brute force on random instances (LP is an upper bound; for n<=5
#    the relaxation is integral so values must match exactly)
t0 = time.time()
for n in (3, 4, 5):
    sysn = build_bn(n)
    for seed in range(30):
        inst = random_instance(n, seed, (0, 99))
        obj, const = objective_from_instance(inst)
        sol = lp_solve(sysn, obj, "max")
        assert is_vertex(sysn, sol.x)
        best = max(permutation_value(inst, p)
                   for p in permutations(range(1, n + 1)))
        lp_val = sol.objective + const
        assert lp_val >= best, (n, seed, lp_val, best)
        assert sol.is_integral(), (n, seed, sol.x)
        assert lp_val == best, (n, seed, lp_val, best)
print(f"n<=5 LP == brute force on 90 instances ({time.time()-t0:.1f}s)")

# 2. n=3 worked example
from lopcut.instance import LopInstance
inst = LopInstance(3, ((0, 5, 1), (0, 0, 4), (2, 0, 0)))
obj, const = objective_from_instance(inst)
sol = lp_solve(build_bn(3), obj, "max")
print("n=3 example: value", sol.objective + const, "x =", sol.x)

# 3. fence functional on B6: optimum should be 3/2 at the fence point
sys6 = build_bn(6)
cols = sys6.columns
il, jl = (1, 2, 3), (4, 5, 6)
fcoef = [Fraction(0)] * sys6.dim
for l in range(3):
    for q in range(3):
        i, j = il[l], jl[q]
        w = Fraction(1 if l == q else -1)
        if i < j:
            fcoef[cols.col(i, j)] += w
        else:
            fcoef[cols.col(j, i)] -= w
t0 = time.time()
sol = lp_solve(sys6, fcoef, "max")
print("fence objective optimum:", sol.objective, f"({time.time()-t0:.2f}s)")
print("matches fence point:", tuple(sol.x) == fence_point(il, jl, 6))

# 4. timing at n=7,8
for n in (6, 7, 8):
    sysn = build_bn(n)
    t0 = time.time()
    cnt_frac = 0
    for seed in range(10):
        inst = random_instance(n, seed, (0, 99))
        obj, const = objective_from_instance(inst)
        sol = lp_solve(sysn, obj, "max")
        if not sol.is_integral():
            cnt_frac += 1
    print(f"n={n}: 10 solves in {time.time()-t0:.2f}s, fractional: {cnt_frac}")
