"""Scratch: explore the vertex graph of B_7 by edge walks, looking for
denominator >= 3 vertices."""
import time
from fractions import Fraction

from lopcut.relaxation import build_bn
from lopcut.simplex import basis_certificate, is_vertex
from lopcut.facet_engine import walk_edge
from lopcut.vertex_analysis import fence_point

from lopcut.relaxation import build_bn as _bn
from lopcut.vertex_analysis import lift_duplicate

t0 = time.time()
n = 7
sysn = build_bn(n)
sys6 = _bn(6)
start = lift_duplicate(sys6, fence_point((1, 2, 3), (4, 5, 6), 6), 1, 1, (0, 1))
assert is_vertex(sysn, start)

seen = {start}
frontier = [start]
denom_hist = {}
found3 = []
rounds = 0
while frontier and rounds < 3 and time.time() - t0 < 120:
    rounds += 1
    nxt = []
    for x in frontier:
        cert = basis_certificate(sysn, x)
        for drop in cert:
            for y in walk_edge(sysn, x, cert, drop):
                if y in seen:
                    continue
                seen.add(y)
                md = max((v.denominator for v in y), default=1)
                denom_hist[md] = denom_hist.get(md, 0) + 1
                if md >= 3:
                    found3.append(y)
                if md > 1:
                    nxt.append(y)
    frontier = nxt
    print(f"round {rounds}: seen {len(seen)}, denoms {denom_hist}, "
          f"time {time.time()-t0:.0f}s")

if found3:
    y = found3[0]
    print("example denom-3 vertex:", [str(v) for v in y])
    print("is_vertex:", is_vertex(sysn, y))
