"""Scratch: hunt for fractional vertices with random reduced objectives."""
import random
import time
from fractions import Fraction

from lopcut.relaxation import build_bn
from lopcut.simplex import lp_solve

for n in (6, 7):
    sysn = build_bn(n)
    for lo, hi, label in ((-9, 9, "[-9,9]"), (-3, 3, "[-3,3]"), (0, 1, "{0,1}")):
        rng = random.Random(12345)
        frac = 0
        denoms = {}
        t0 = time.time()
        trials = 200
        for _ in range(trials):
            obj = [Fraction(rng.randint(lo, hi)) for _ in range(sysn.dim)]
            sol = lp_solve(sysn, obj, "max")
            if not sol.is_integral():
                frac += 1
                ds = sorted({v.denominator for v in sol.x if v.denominator > 1})
                key = tuple(ds)
                denoms[key] = denoms.get(key, 0) + 1
        dt = time.time() - t0
        print(f"n={n} obj~{label}: fractional {frac}/{trials}, denoms {denoms}, {dt:.1f}s")
