"""Adding a trivial Jordan cell.

When delta fixes the last variable, generators for d variables come from
generators for d - 1 variables plus the images of the invariants under
the map pi.  The series identity behind this is checked numerically.
"""

from collections import Counter

from wdk import bigraded_dimensions, builtin_invariants, from_partition, lie_from_wreath, lift_generators, pi_map
from wdk.catalog import EXAMPLES
from wdk.constants import span_equals_kernel
from wdk.metabelian import LieElement
from wdk.parsing import parse_polynomial

small, big = from_partition(2), from_partition(2, 0)

f2 = parse_polynomial("x2^2 - 2x1x3", 3)
print("pi(x2^2 - 2x1x3) =", lie_from_wreath(pi_map(f2, 4)).format())
print("delta pi = pi delta on f2:", big(pi_map(f2, 4)) == pi_map(small(f2), 4))

c = [LieElement.parse(s, 3) for s in EXAMPLES["5.1"]["module"]]
lifted = lift_generators(big, c, builtin_invariants((2,)))
print(f"\ngenerators for {big}:")
for u in lifted:
    print("  ", lie_from_wreath(u).format())
print("span equals kernel to degree 8:", span_equals_kernel(big, lifted, builtin_invariants((2, 0)), 8))

# Bigraded counts: C_4 = C_3 / (1 - z) + z (K[X_3] - 1) / (1 - z).
N = 10
lhs = bigraded_dimensions(big, "commutator", N)
rhs = Counter()
for (a, b, k), m in bigraded_dimensions(small, "commutator", N).items():
    for j in range(k, N + 1):
        rhs[(a, b, j)] += m
for (a, b, k), m in bigraded_dimensions(small, "poly", N).items():
    for j in range(k + 1, N + 1):
        rhs[(a, b, j)] += m
print(f"\nseries identity holds through degree {N}:", lhs == dict(rhs))
