"""Schatten and Ky Fan norms plus the norm-form inequality gaps.

Both families are functions of singular values, which is all the unitary
invariance used here: by Fan dominance, a gap that is nonnegative for every
Ky Fan index k is nonnegative in every unitarily invariant norm, so the
norm-inequality searches quantify over k = 1..n instead of an infinite
family.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import funcat, symla
from .ineq import GAP_RTOL, GapReport, classify


@dataclass(frozen=True)
class NormSpec:
    family: str   # "schatten" | "kyfan"
    index: float  # p >= 1 for schatten, integer k >= 1 for kyfan

    def __post_init__(self):
        if self.family == "schatten":
            if self.index < 1:
                raise ValueError("schatten index p must be >= 1")
        elif self.family == "kyfan":
            if self.index != int(self.index) or self.index < 1:
                raise ValueError("kyfan index k must be a positive integer")
        else:
            raise ValueError(f"unknown norm family {self.family!r}")

    @property
    def label(self) -> str:
        if self.family == "kyfan":
            return f"kyfan:{int(self.index)}"
        return "trace" if self.index == 1 else f"schatten:{self.index:g}"


def parse_norm(text: str) -> NormSpec:
    """Parse ``trace`` | ``schatten:<p>`` | ``kyfan:<k>``."""
    name, _, arg = text.partition(":")
    if name == "trace" and not arg:
        return NormSpec("schatten", 1.0)
    if name == "schatten":
        return NormSpec("schatten", float(arg))
    if name == "kyfan":
        return NormSpec("kyfan", int(arg))
    raise ValueError(f"unknown norm spec {text!r}")


def norm_from_singular_values(sigma: np.ndarray, spec: NormSpec) -> float:
    sigma = np.asarray(sigma, dtype=float)
    if spec.family == "schatten":
        if np.isinf(spec.index):
            return float(sigma[0]) if sigma.size else 0.0
        return float(np.sum(sigma ** spec.index) ** (1.0 / spec.index))
    k = int(spec.index)
    if k > sigma.size:
        raise ValueError(f"kyfan index {k} exceeds dimension {sigma.size}")
    return float(np.sum(sigma[:k]))


def norm_value(mat, spec: NormSpec) -> float:
    return norm_from_singular_values(symla.singular_values(mat), spec)


def schatten_norm(mat, p: float) -> float:
    """(sum sigma_i^p)^{1/p}; p = 1 is the trace norm."""
    return norm_value(mat, NormSpec("schatten", float(p)))


def ky_fan_norm(mat, k: int) -> float:
    """Sum of the k largest singular values."""
    return norm_value(mat, NormSpec("kyfan", int(k)))


def _psd_pair(a, b):
    am = symla.symmetrize(a)
    bm = symla.symmetrize(b)
    if am.shape != bm.shape:
        raise ValueError("A and B must have equal dimensions")
    return am, bm, symla.psd_decomposition(am), symla.psd_decomposition(bm)


def ando_gap(a, b, p: float, spec: NormSpec, tol: float = GAP_RTOL) -> GapReport:
    """|||A^p - B^p||| vs ||| |A-B|^p ||| for p >= 1."""
    if p < 1:
        raise ValueError("exponent p must be >= 1")
    am, bm, da, db = _psd_pair(a, b)
    diff_p = (
        symla.reconstruct(np.power(da.eigenvalues, p), da.eigenvectors)
        - symla.reconstruct(np.power(db.eigenvalues, p), db.eigenvectors)
    )
    lhs = norm_from_singular_values(np.sort(np.abs(symla.jacobi_eigh(diff_p).eigenvalues))[::-1], spec)
    mu = np.sort(np.abs(symla.jacobi_eigh(am - bm).eigenvalues))[::-1]
    rhs = norm_from_singular_values(mu ** p, spec)
    return classify(f"ando(p={p:g},{spec.label})", lhs, rhs, tol)


def ando_theta_gap(a, b, theta: float, q: float, tol: float = GAP_RTOL) -> GapReport:
    """||A-B||_q^theta vs ||A^theta - B^theta||_{q/theta} for 0 < theta <= 1, q >= theta."""
    if not 0.0 < theta <= 1.0:
        raise ValueError("theta must lie in (0, 1]")
    if q < theta:
        raise ValueError("q must be >= theta")
    am, bm, da, db = _psd_pair(a, b)
    diff_t = (
        symla.reconstruct(np.power(da.eigenvalues, theta), da.eigenvectors)
        - symla.reconstruct(np.power(db.eigenvalues, theta), db.eigenvectors)
    )
    rhs = schatten_norm(diff_t, q / theta)
    lhs = schatten_norm(am - bm, q) ** theta
    return classify(f"ando_theta(theta={theta:g},q={q:g})", lhs, rhs, tol)


def conjecture_gap(a, b, f: funcat.OperatorFunction, spec: NormSpec,
                   tol: float = GAP_RTOL, accurate: bool = False) -> GapReport:
    """Norm comparison of (A-B)(f(A)-f(B)) against |A-B| f(|A-B|).

    For monotone-class f the folded side ||| |A-B| f(|A-B|) ||| is conjectured
    to dominate; for convex-class f the orientation is reversed.  The product
    matrix is generally nonsymmetric, so its singular values go through
    :func:`symla.singular_values` (or the slower augmented route when
    ``accurate`` is set, e.g. while re-verifying a candidate violation).
    """
    am, bm, da, db = _psd_pair(a, b)
    c = am - bm
    fa = symla.reconstruct(f.fn(da.eigenvalues), da.eigenvectors)
    fb = symla.reconstruct(f.fn(db.eigenvalues), db.eigenvectors)
    product = c @ (fa - fb)
    if accurate:
        sigma = symla.singular_values_augmented(product)
    else:
        sigma = symla.singular_values(product)
    paired = norm_from_singular_values(sigma, spec)
    mu = np.sort(np.abs(symla.jacobi_eigh(c).eigenvalues))[::-1]
    folded = norm_from_singular_values(np.sort(mu * f.fn(mu))[::-1], spec)
    name = f"conjecture[{f.name},{spec.label}]"
    if f.kind == funcat.MONOTONE:
        return classify(name, folded, paired, tol)
    return classify(name, paired, folded, tol)
