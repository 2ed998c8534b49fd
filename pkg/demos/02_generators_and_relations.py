"""Generators of the module of constants for delta(3).

The constants of delta(3) in the commutator ideal form a finitely
generated module over the algebra of polynomial constants.  We discover
generators and relations degree by degree, compare them with the
tabulated list, and confirm the span equals the kernel.
"""

from wdk import builtin_invariants, from_partition, invariant_generators, module_generators
from wdk.catalog import EXAMPLES
from wdk.constants import Relation, relation_follows, span_equals_kernel
from wdk.metabelian import LieElement

delta = from_partition(3)
N = 8

algebra = invariant_generators(delta, N)
print(f"invariants of {delta} found through degree {N}:")
for i, f in enumerate(algebra, start=1):
    print(f"  f{i} = {f.format()}")

found = module_generators(delta, algebra, N)
print(f"\nmodule generators ({len(found.module)}):")
for i, g in enumerate(found.module, start=1):
    print(f"  c{i} = {g.element.format()}    bidegree {g.bidegree}")
print(f"relations certified through degree {N} ({len(found.relations)}):")
for r in found.relations:
    print("  ", r.format())

# The tabulated generators, with their relations checked against a minimal set.
table = EXAMPLES["5.2"]
f = builtin_invariants((3,))
c = [LieElement.parse(s, 4) for s in table["module"]]
fixed = module_generators(delta, f, 9, module=c)
print(f"\ntabulated generators span the kernel to degree {N}:", span_equals_kernel(delta, [g.wreath for g in fixed.module], f, N))
for text in table["relations"]:
    r = Relation.parse(text, len(f))
    print(f"  {text:<40} follows: {relation_follows(fixed, r)}")
