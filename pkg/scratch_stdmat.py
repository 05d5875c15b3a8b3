"""Scratch: hunt for det-2 blocks in the fence basis certificate."""
from fractions import Fraction
from itertools import combinations

from lopcut.relaxation import build_bn
from lopcut.simplex import basis_certificate
from lopcut.numerics import determinant
from lopcut.vertex_analysis import fence_point

sys6 = build_bn(6)
xf = fence_point((1, 2, 3), (4, 5, 6), 6)
cert = basis_certificate(sys6, xf)
rows = sys6.all_rows()
mat = [list(rows[i].coeffs) for i in cert]
n = len(mat)
print("certificate rows:", cert)
print("row kinds:", [rows[i].origin for i in cert])

det2 = []
for rsel in combinations(range(n), 3):
    cols_pool = sorted({c for r in rsel for c, v in enumerate(mat[r]) if v})
    for csel in combinations(cols_pool, 3):
        sub = [[mat[r][c] for c in csel] for r in rsel]
        d = determinant(sub)
        if abs(d) == 2:
            det2.append((rsel, csel, sub))
print("3x3 blocks with |det|=2:", len(det2))
for rsel, csel, sub in det2[:8]:
    print(rsel, csel, [[int(v) for v in row] for row in sub])

# full-matrix determinant: the vertex has denominator 2, so |det| of the
# whole certificate should be even
print("certificate det:", determinant(mat))
