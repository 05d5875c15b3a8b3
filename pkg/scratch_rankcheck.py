"""Cross-check adjacency ranks with sympy's exact rational rank."""
import random
from fractions import Fraction

import sympy

from lopcut.relaxation import build_bn, embed_permutation
from lopcut.simplex import common_tight_rows, tight_rows
from lopcut.numerics import IncrementalRowBasis, rank as my_rank
from scratch_adjacency import fence_point

# 1. random cross-check of rank implementations
rng = random.Random(0)
for trial in range(200):
    r = rng.randint(1, 6)
    c = rng.randint(1, 6)
    mat = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(c)]
           for _ in range(r)]
    sy = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row]
                       for row in mat]).rank()
    mine = my_rank(mat)
    basis = IncrementalRowBasis(c)
    for row in mat:
        basis.try_add(row)
    assert mine == sy == basis.rank, (trial, mine, sy, basis.rank)
print("rank implementations agree on 200 random matrices")

# 2. fence adjacency common-tight rank via sympy for family-2 members
sys6 = build_bn(6)
x = fence_point((1, 2, 3), (4, 5, 6), 6)
rows = sys6.all_rows()

for p in [(5, 6, 1, 4, 2, 3),        # family 1 (spec says adjacent)
          (6, 1, 4, 2, 5, 3),        # family 2 ordered (1,2)
          (6, 2, 5, 1, 4, 3),        # family 2 ordered (2,1)
          (1, 2, 3, 4, 5, 6)]:       # identity (spec says NOT adjacent)
    v = embed_permutation(p, 6)
    common = common_tight_rows(sys6, x, v)
    mat = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator)
                         for c in rows[i].coeffs] for i in common])
    print(p, "common rows:", len(common), "sympy rank:", mat.rank())

# 3. sympy rank of all tight rows at the fence point
tight = tight_rows(sys6, x)
mat = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator)
                     for c in rows[i].coeffs] for i in tight])
print("fence tight rows:", len(tight), "sympy tight rank:", mat.rank())
