"""Hilbert series of the constants, three ways.

For delta(2) acting on the free metabelian Lie algebra of rank 3 we
compute the GL_2 Hilbert series, turn it into a multiplicity series with
the Omega calculus, and check the graded dimensions against kernels
obtained by brute-force linear algebra.
"""

from wdk import (
    constants_series,
    from_partition,
    hilbert_free_metabelian,
    kernel_dimensions,
    multiplicity_series,
    multiplicity_series_truncated,
    nice_expand,
)
from wdk.omega import TZ_NAMES, specialize

partition = (2,)
delta = from_partition(partition)
print(f"derivation {delta} on {delta.arity} generators")

# The Hilbert series of the free metabelian algebra is a nice rational function.
h = hilbert_free_metabelian(delta.arity)
print("\nH(L_3/L_3'') =", h.format(["z1", "z2", "z3"]))

# Substituting the GL_2 weights of the Jordan basis and applying the
# multiplicity operator gives the bigraded series of the constants.
h_gl2 = constants_series(partition)
closed, method = multiplicity_series(h_gl2)
print(f"\nmultiplicity series ({method}):")
print("  ", closed.format(list(TZ_NAMES)))

graded = specialize(closed)
print("graded series:", graded.format(["z"]))

N = 8
from_closed = [int(c) for c in nice_expand(graded, N).coefficients_1d()[1:]]
from_truncation = [int(c) for c in specialize(multiplicity_series_truncated(h_gl2, N))[1:]]
from_kernels = kernel_dimensions(delta, "lie", N)
print(f"\ndimensions in degrees 1..{N}")
print("  closed form :", from_closed)
print("  truncation  :", from_truncation)
print("  kernels     :", from_kernels)
assert from_closed == from_truncation == from_kernels
