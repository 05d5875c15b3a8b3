"""Inspect the m=4 adjacent vertices that are off the fence hyperplane."""
from fractions import Fraction
from itertools import permutations

import sympy

from lopcut.relaxation import build_bn, embed_permutation
from lopcut.simplex import common_tight_rows, tight_rows
from lopcut.numerics import _int_rank
from scratch_adjacency import fence_point

n = 8
il, jl = (1, 2, 3, 4), (5, 6, 7, 8)
sysn = build_bn(n)
cols = sysn.columns
d = sysn.dim
x = fence_point(il, jl, n)
rows = sysn.all_rows()
tix = tight_rows(sysn, x)
sparse = []
for idx in tix:
    row = rows[idx]
    nz = [(c, int(v)) for c, v in enumerate(row.coeffs) if v]
    sparse.append((idx, nz, row.evaluate(x)))

fcoef = [0] * d
frhs = 1
for l in range(4):
    for q in range(4):
        i, j = il[l], jl[q]
        w = 1 if l == q else -1
        if i < j:
            fcoef[cols.col(i, j)] += w
        else:
            fcoef[cols.col(j, i)] -= w
            frhs -= w

extras = []
pair_list = cols.pairs()
for p in permutations(range(1, n + 1)):
    pos = [0] * (n + 1)
    for k, v in enumerate(p):
        pos[v] = k
    vvec = [1 if pos[i] < pos[j] else 0 for (i, j) in pair_list]
    fv = sum(c * v for c, v in zip(fcoef, vvec))
    if fv == frhs:
        continue
    common = []
    for idx, nz, val in sparse:
        s = sum(w for c, w in nz if vvec[c])
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
        extras.append((p, fv))

print("extras:", len(extras))
for p, fv in extras[:6]:
    print(p, "f value:", fv)

# sympy check on the first extra
p, fv = extras[0]
v = embed_permutation(p, n)
common = common_tight_rows(sysn, x, v)
mat = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator)
                     for c in rows[i].coeffs] for i in common])
print("sympy rank of common tight rows:", mat.rank(), "(dim-1 =", d - 1, ")")
