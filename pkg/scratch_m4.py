"""Scratch: fast adjacency scan for the m=4 fence on n=8, plus tight counts."""
import time
from fractions import Fraction
from itertools import permutations

from lopcut.relaxation import build_bn, VarIndex
from lopcut.simplex import tight_rows
from lopcut.numerics import _int_rank
from scratch_adjacency import fence_point


def scan(n, i_list, j_list):
    sysn = build_bn(n)
    cols = sysn.columns
    d = sysn.dim
    x = fence_point(i_list, j_list, n)
    assert sysn.is_feasible(x)
    rows = sysn.all_rows()
    tix = tight_rows(sysn, x)
    print(f"n={n} tight rows at fence: {len(tix)}")
    # sparse integer representation: (cols, coefs, value at x)
    sparse = []
    for idx in tix:
        row = rows[idx]
        nz = [(c, int(v)) for c, v in enumerate(row.coeffs) if v]
        val = row.evaluate(x)
        sparse.append((nz, val))
    pair_list = cols.pairs()
    m = len(i_list)
    # fence functional over reduced vars for tight-count
    fcoef = [0] * d
    frhs = 1
    for l in range(m):
        for q in range(m):
            i, j = i_list[l], j_list[q]
            w = 1 if l == q else -1
            if i < j:
                fcoef[cols.col(i, j)] += w
            else:
                fcoef[cols.col(j, i)] -= w
                frhs -= w
    adj = 0
    ftight = 0
    t0 = time.time()
    survivors = 0
    for p in permutations(range(1, n + 1)):
        pos = [0] * (n + 1)
        for k, v in enumerate(p):
            pos[v] = k
        vvec = [1 if pos[i] < pos[j] else 0 for (i, j) in pair_list]
        fv = sum(c * v for c, v in zip(fcoef, vvec))
        if fv == frhs:
            ftight += 1
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
        survivors += 1
        mat = []
        for nz in common:
            r = [0] * d
            for c, w in nz:
                r[c] = w
            mat.append(r)
        rk = _int_rank(mat, len(mat), d)
        if rk == d - 1:
            adj += 1
    t1 = time.time()
    print(f"adjacent: {adj}, fence-tight perms: {ftight}, survivors: {survivors}, "
          f"time {t1-t0:.1f}s")


scan(6, (1, 2, 3), (4, 5, 6))
scan(8, (1, 2, 3, 4), (5, 6, 7, 8))
