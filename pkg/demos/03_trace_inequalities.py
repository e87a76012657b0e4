"""The two trace comparisons and their classical companions.

For PSD matrices A, B with C = A - B, and f vanishing at 0:

    operator monotone f:  Tr(C (f(A) - f(B)))  <=  Tr(|C| f(|C|))
    operator convex   f:  Tr(C (f(A) - f(B)))  >=  Tr(|C| f(|C|))

Every gap below is oriented so that nonnegative means the inequality held.
"""

import numpy as np

from traceineq import funcat, ineq, sampler

# a pair of rank-one projections makes everything computable by hand
a = np.diag([1.0, 0.0])
b = np.full((2, 2), 0.5)

rep = ineq.monotone_gap(a, b, funcat.power(0.5))
print("projections, f = sqrt:")
print(f"  folded side {rep.lhs:.6f} (= 2^(1/4)), paired side {rep.rhs:.6f},"
      f" gap {rep.gap:.6f} -> {rep.verdict}")

rep = ineq.convex_gap(a, b, funcat.square())
print("projections, f = t^2:")
print(f"  paired side {rep.lhs:.6f}, folded side {rep.rhs:.6f} (= 1/sqrt2),"
      f" gap {rep.gap:.6f} -> {rep.verdict}")

# scalar seed of the whole story: (a-b)(a^{p-1} - b^{p-1}) vs (a-b)^p
print("\nscalar powers at (a, b) = (2, 1):")
for p in (1.5, 2.0, 3.0):
    rep = ineq.scalar_power_gap(2.0, 1.0, p)
    print(f"  p={p}: gap {rep.gap:.6f} -> {rep.verdict}")

# its matrix form, the trace-power comparison, flips orientation at p = 2
print("\nmatrix power comparison on a random pair (flips at p = 2):")
A, B = sampler.random_pair(sampler.SampleSpec(dim=4, kind="wishart", seed=8))
for p in (1.2, 1.5, 2.0, 2.5, 3.0):
    rep = ineq.ricard_gap(A, B, p)
    print(f"  p={p}: gap {rep.gap:10.6f} -> {rep.verdict}")

print("\nthree-term interpolation chain at p = 3:")
chain = ineq.interpolation_chain(A, B, 3.0)
print(f"  Tr|A^p-B^p| = {chain.left:.4f} >= paired = {chain.middle:.4f}"
      f" >= Tr|A-B|^p = {chain.right:.4f}")

print("\nPowers-Stormer bound across the s grid:")
for s in (0.0, 0.25, 0.5, 0.75, 1.0):
    rep = ineq.powers_stormer_gap(A, B, s)
    print(f"  s={s:<5} gap {rep.gap:10.6f} -> {rep.verdict}")

print("\nKlein bound (first-order convexity in trace form):")
for f in (funcat.square(), funcat.power(1.5)):
    rep = ineq.klein_gap(A, B, f)
    print(f"  f={f.name:10s} gap {rep.gap:10.6f} -> {rep.verdict}")
