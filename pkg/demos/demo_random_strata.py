"""
What does a random projection look like?
========================================

Sample random vertices of fixed dimension and tabulate the tangent and
normal splitting types that show up.
"""

from collections import Counter

import numpy as np

from vertexsplit.search import enumerate_monomial, sample_random

d, dim_T = 11, 3

# Random integer vertices are general: one type, one normal bundle
random_recs = list(sample_random(d, dim_T, count=20, seed=0))
print("random:", Counter((r.numerical_type, str(r.normal)) for r in random_recs))

# Monomial vertices are far from general
mono = [r for r in enumerate_monomial(d, dim_T) if not r.meets_cd]
smooth = [r for r in mono if r.smoothness == "Smooth"]
print(f"monomial: {len(mono)} miss C_d, {len(smooth)} give smooth curves")

table = Counter((str(r.normal), r.numerical_type) for r in smooth)
for (normal, nt), n in sorted(table.items()):
    print(f"  {normal:<32} type {nt:<8} x{n}")

# How unbalanced are the normal bundles?  c_max - c_min per curve
spread = np.array([max(r.normal.c) - min(r.normal.c) for r in smooth])
print("spread of twists:", np.bincount(spread))
