"""Scratch: perturbed fence objectives + edge walks to reach fractional vertices."""
import random
import time
from fractions import Fraction

from lopcut.relaxation import build_bn
from lopcut.simplex import lp_solve

def fence_coeffs(sysn, il, jl):
    cols = sysn.columns
    c = [Fraction(0)] * sysn.dim
    m = len(il)
    for l in range(m):
        for q in range(m):
            i, j = il[l], jl[q]
            w = Fraction(1 if l == q else -1)
            if i < j:
                c[cols.col(i, j)] += w
            else:
                c[cols.col(j, i)] -= w
    return c


for n in (6, 7):
    sysn = build_bn(n)
    nodes = list(range(1, n + 1))
    for scale, noise in ((8, 2), (4, 3), (12, 5)):
        rng = random.Random(999)
        frac = 0
        denoms = {}
        t0 = time.time()
        trials = 100
        for _ in range(trials):
            sel = rng.sample(nodes, 6)
            il, jl = tuple(sel[:3]), tuple(sel[3:])
            base = fence_coeffs(sysn, il, jl)
            obj = [scale * b + rng.randint(-noise, noise) for b in base]
            sol = lp_solve(sysn, [Fraction(v) for v in obj], "max")
            if not sol.is_integral():
                frac += 1
                ds = tuple(sorted({v.denominator for v in sol.x if v.denominator > 1}))
                denoms[ds] = denoms.get(ds, 0) + 1
        print(f"n={n} fence*{scale}+-{noise}: frac {frac}/{trials} denoms {denoms} "
              f"{time.time()-t0:.1f}s")
