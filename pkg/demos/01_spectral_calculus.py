"""Spectral calculus on symmetric matrices: the building blocks.

Everything downstream rests on three operations: the cyclic-Jacobi
eigendecomposition, functions of a matrix evaluated through its spectrum,
and the split of a symmetric matrix into positive and negative parts.
"""

import numpy as np

from traceineq import symla

m = np.array([[2.0, 1.0], [1.0, 2.0]])
dec = symla.jacobi_eigh(m)
print("M =\n", m)
print("eigenvalues (descending):", dec.eigenvalues)          # (3, 1)
print("eigenvectors (columns):\n", dec.eigenvectors.round(6))

root = symla.apply_scalar_function(m, np.sqrt)
print("\nsqrt(M) =\n", root.round(6))
print("sqrt(M) @ sqrt(M) - M ~ 0:", np.abs(root @ root - m).max())

c = np.array([[0.0, 1.0], [1.0, 0.0]])
pos, neg = symla.decompose_parts(c)
print("\nC =\n", c)
print("positive part\n", pos, "\nnegative part\n", neg)
print("C = pos - neg, |C| = pos + neg:")
print(symla.abs_matrix(c))

# singular values of a nonsymmetric matrix go through the Gram matrix
n = np.array([[0.0, 2.0], [0.0, 0.0]])
print("\nsingular values of [[0,2],[0,0]]:", symla.singular_values(n))

# the resolvent identity behind the trace-inequality proofs is exact
rng = np.random.default_rng(1)
g1, g2 = rng.standard_normal((2, 4, 4))
b, c = g1.T @ g1, g2.T @ g2
for s in (1e-3, 1.0, 1e3):
    print(f"resolvent identity residual at s={s:g}:",
          symla.resolvent_residual(b, c, s))
