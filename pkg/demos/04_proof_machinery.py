"""The decomposition the trace-inequality proofs run on.

For C = A - B with parts C = C+ - C-, the matrix Z = A + C- = B + C+
dominates both A and B, and the paired trace splits into four terms

    Tr(C (f(A)-f(B))) = t1 + t2 + t3 + t4

whose cross terms t2, t4 have a definite sign: nonpositive when f is
operator monotone, nonnegative when f is operator convex.  The ordered
case A >= B makes C- vanish and the split collapse.
"""

import numpy as np

from traceineq import funcat, ineq, sampler, symla

A, B = sampler.random_pair(sampler.SampleSpec(dim=5, kind="wishart", seed=12))

for f in (funcat.power(0.5), funcat.square()):
    z = ineq.zee_decomposition(A, B, f)
    print(f"f = {f.name} ({f.kind}):")
    print(f"  terms t1..t4 = {tuple(round(t, 6) for t in z.terms)}")
    print(f"  sum = {sum(z.terms):.10f} vs direct = {z.direct:.10f}")
    print(f"  cross terms t2={z.t2:.3e}, t4={z.t4:.3e}")

print("\nZ dominates both A and B (smallest eigenvalues of Z-A, Z-B):")
z = ineq.zee_decomposition(A, B, funcat.power(0.5))
print("  min eig(Z - A):", symla.jacobi_eigh(z.z - symla.symmetrize(A)).eigenvalues[-1])
print("  min eig(Z - B):", symla.jacobi_eigh(z.z - symla.symmetrize(B)).eigenvalues[-1])

print("\nordered pair: the negative part vanishes and Z = A:")
Ao, Bo = sampler.random_pair(sampler.SampleSpec(dim=5, kind="ordered_pair", seed=3))
zo = ineq.zee_decomposition(Ao, Bo, funcat.power(0.5))
print("  ||C-|| =", symla.frobenius(zo.negative_part), " t2 =", zo.t2, " t4 =", zo.t4)

print("\nresolvent monotonicity the sign argument leans on, at s = 0.1:")
s = 0.1
inv_b = symla.shifted_inverse(Bo, s)
bound = np.eye(5) / s - inv_b
print("  min eig(s^-1 I - (B+s)^-1)  =", symla.jacobi_eigh(bound).eigenvalues[-1])
diff = symla.shifted_inverse(Ao - Bo, s) - symla.shifted_inverse(Ao, s)
print("  min eig((C+s)^-1 - (B+C+s)^-1) =", symla.jacobi_eigh(diff).eigenvalues[-1])
