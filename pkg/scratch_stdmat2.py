"""Scratch: does row reduction expose the minimal standard block?"""
from fractions import Fraction
from itertools import combinations

from lopcut.relaxation import build_bn
from lopcut.simplex import basis_certificate
from lopcut.numerics import determinant
from lopcut.vertex_analysis import fence_point

PAPER_3 = [[1, -1, 0], [1, 0, -1], [0, 1, 1]]
PAPER_5 = [[1, -1, 0, -1, 0], [1, 0, -1, 0, 0], [0, 1, 1, 0, 0],
           [1, 0, 0, 0, -1], [0, 0, 0, 1, 1]]
print("paper 3x3 det:", determinant([[Fraction(v) for v in r] for r in PAPER_3]))
print("paper 5x5 det:", determinant([[Fraction(v) for v in r] for r in PAPER_5]))


def fraction_free_eliminate(mat):
    """Bareiss forward elimination, returns the reduced integer matrix."""
    work = [[int(v) for v in row] for row in mat]
    nr, nc = len(work), len(work[0])
    r = 0
    prev = 1
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if work[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        pivot = work[r][c]
        for i in range(r + 1, nr):
            fi = work[i][c]
            wi, wr = work[i], work[r]
            for j in range(nc):
                wi[j] = (pivot * wi[j] - fi * wr[j]) // prev
        prev = pivot
        r += 1
        if r == nr:
            break
    return work


def count_pattern(mat):
    n = len(mat)
    hits = []
    for rsel in combinations(range(n), 3):
        pool = sorted({c for r in rsel for c, v in enumerate(mat[r]) if v})
        if len(pool) < 3:
            continue
        for csel in combinations(pool, 3):
            sub = [[mat[r][c] for c in csel] for r in rsel]
            ok = all(sum(1 for v in row if v) == 2 and
                     all(v in (-1, 0, 1) for v in row) for row in sub)
            if not ok:
                continue
            if all(sum(1 for r in range(3) if sub[r][c]) == 2 for c in range(3)):
                if abs(determinant([[Fraction(v) for v in r] for r in sub])) == 2:
                    hits.append((rsel, csel))
    return hits


sys6 = build_bn(6)
xf = fence_point((1, 2, 3), (4, 5, 6), 6)
cert = basis_certificate(sys6, xf)
rows = sys6.all_rows()
mat = [[int(v) for v in rows[i].coeffs] for i in cert]

red = fraction_free_eliminate(mat)
print("reduced matrix pattern hits:", len(count_pattern(red)))
for row in red:
    print(row)
