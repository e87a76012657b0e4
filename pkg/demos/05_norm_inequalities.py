"""Unitarily invariant norms and the norm-form comparisons.

Schatten and Ky Fan norms are functions of singular values; by Fan
dominance, controlling every Ky Fan norm controls every unitarily
invariant norm, which is why the open norm-form question is explored over
k = 1..n rather than an infinite family.
"""

import numpy as np

from traceineq import funcat, sampler, symla, uinorm

m = np.diag([3.0, -1.0, 2.0])
print("singular values of diag(3,-1,2):", symla.singular_values(m))
print("trace norm :", uinorm.schatten_norm(m, 1.0))
print("frobenius  :", uinorm.schatten_norm(m, 2.0))
print("ky fan k=2 :", uinorm.ky_fan_norm(m, 2))

A, B = sampler.random_pair(sampler.SampleSpec(dim=4, kind="wishart", seed=21))

print("\npower-difference norm comparison |||A^p - B^p||| vs ||| |A-B|^p |||:")
for p in (1.0, 2.0, 3.0):
    rep = uinorm.ando_gap(A, B, p, uinorm.parse_norm("trace"))
    print(f"  p={p}: gap {rep.gap:10.6f} -> {rep.verdict}   (p=1 is an identity)")

print("\nits fractional-power form ||A^t - B^t||_{q/t} <= ||A-B||_q^t:")
for theta, q in ((0.25, 1.0), (0.5, 2.0), (0.75, 3.0)):
    rep = uinorm.ando_theta_gap(A, B, theta, q)
    print(f"  theta={theta}, q={q}: gap {rep.gap:10.6f} -> {rep.verdict}")

print("\ntrace Hoelder bound |Tr(XY)| <= ||X||_p ||Y||_q:")
x = A - B
_, y = sampler.random_pair(sampler.SampleSpec(dim=4, kind="wishart", seed=22))
for p, q in ((2.0, 2.0), (3.0, 1.5)):
    lhs = abs(symla.trace_product(x, y))
    rhs = uinorm.schatten_norm(x, p) * uinorm.schatten_norm(y, q)
    print(f"  (p,q)=({p},{q}): {lhs:.6f} <= {rhs:.6f}")

print("\nnorm form of the trace comparison over the whole Ky Fan family:")
for f in (funcat.power(0.5), funcat.square()):
    gaps = [uinorm.conjecture_gap(A, B, f, uinorm.NormSpec("kyfan", k)).gap
            for k in range(1, 5)]
    print(f"  f={f.name:8s} ({f.kind:8s}) gaps by k: "
          + " ".join(f"{g:9.6f}" for g in gaps))
print("(nonnegative for every k would extend the trace statement to every"
      " unitarily invariant norm; no counterexample is known)")
