"""Exact computations with constants of Weitzenböck derivations.

The package works over the rationals throughout.  Main entry points:

* :mod:`wdk.polyarith`, sparse polynomials, truncated series and rational
  functions with ``(1 - monomial)`` denominators;
* :mod:`wdk.omega`, Hilbert series, GL_2 multiplicities and the Omega
  calculus for closed forms;
* :mod:`wdk.metabelian`, the free metabelian Lie algebra and its embedding
  into the abelian wreath product;
* :mod:`wdk.weitzenbock`, derivations given by Jordan cell sizes;
* :mod:`wdk.constants`, kernels, invariant and module generators, relations.
"""

from .constants import (
    GeneratorSet,
    KernelSlice,
    Relation,
    bigraded_dimensions,
    builtin_invariants,
    invariant_generators,
    kernel_dimensions,
    kernel_slice,
    lift_generators,
    module_generators,
    pi_map,
    verify_relation,
)
from .metabelian import LieElement, LieMonomial, WreathElement, embed, in_commutator_ideal, lie_from_wreath
from .omega import (
    constants_series,
    hilbert_free_metabelian,
    hilbert_polynomial_ring,
    multiplicity_series,
    multiplicity_series_closed,
    multiplicity_series_truncated,
)
from .polyarith import NiceRational, Polynomial, TruncatedSeries, nice_expand
from .weitzenbock import Derivation, from_partition

__version__ = "0.1.0"
