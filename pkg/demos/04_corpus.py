"""Checking the golden corpus.

Every stored number in the corpus was produced by the truncation oracle.
Verification recomputes it with the kernel solver and re-evaluates every
generator and relation.
"""

from wdk import corpus
from wdk.catalog import EXAMPLE_IDS

for example in EXAMPLE_IDS:
    checks = corpus.verify(example, omega_check=False)
    failed = [c.name for c in checks if not c.passed]
    status = "ok" if not failed else "FAILED: " + "; ".join(failed)
    print(f"{example}: {len(checks)} checks, {status}")
