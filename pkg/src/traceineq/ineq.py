"""Oriented gaps for the trace inequalities.

Every operation returns a :class:`GapReport` whose ``gap`` is lhs - rhs with
lhs the side the inequality claims is larger, so nonnegative means the
inequality held on that instance.  ``relative_gap`` normalizes by
max(1, |lhs|, |rhs|) and the verdict classifies against a relative
tolerance (default ``GAP_RTOL``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import funcat, symla

GAP_RTOL = 1e-9

HOLDS = "holds"
VIOLATED = "violated"
EQUALITY = "equality"


@dataclass(frozen=True)
class GapReport:
    name: str
    lhs: float
    rhs: float
    gap: float
    relative_gap: float
    verdict: str


def classify(name: str, lhs: float, rhs: float, tol: float = GAP_RTOL) -> GapReport:
    gap = lhs - rhs
    rel = gap / max(1.0, abs(lhs), abs(rhs))
    if rel < -tol:
        verdict = VIOLATED
    elif rel <= tol:
        verdict = EQUALITY
    else:
        verdict = HOLDS
    return GapReport(name, float(lhs), float(rhs), float(gap), float(rel), verdict)


def scalar_power_gap(a: float, b: float, p: float, tol: float = GAP_RTOL) -> GapReport:
    """Scalar comparison of (a-b)(a^{p-1} - b^{p-1}) against |a-b|^p.

    For p >= 2 (requiring a >= b) the paired-difference side dominates; for
    p in [1, 2] the power side dominates.  Both sides are symmetric under
    swapping a and b, which is how |a-b|^p extends the ordered statement.
    """
    if a < 0 or b < 0:
        raise ValueError("a and b must be nonnegative")
    if p < 1:
        raise ValueError("exponent p must be >= 1")
    if p >= 2 and a < b:
        raise ValueError("p >= 2 orientation needs a >= b")
    paired = (a - b) * (a ** (p - 1.0) - b ** (p - 1.0))
    powered = abs(a - b) ** p
    if p >= 2:
        return classify(f"scalar_power(p={p:g})", paired, powered, tol)
    return classify(f"scalar_power(p={p:g})", powered, paired, tol)


def _psd_pair(a, b):
    am = symla.symmetrize(a)
    bm = symla.symmetrize(b)
    if am.shape != bm.shape:
        raise ValueError("A and B must have equal dimensions")
    return am, bm, symla.psd_decomposition(am), symla.psd_decomposition(bm)


def _paired_trace(a, b, da, db, fn) -> float:
    """Tr((A-B)(fn(A)-fn(B))) from the two decompositions."""
    c = a - b
    fa = symla.reconstruct(fn(da.eigenvalues), da.eigenvectors)
    fb = symla.reconstruct(fn(db.eigenvalues), db.eigenvectors)
    return symla.trace_product(c, fa - fb)


def ricard_gap(a, b, p: float, tol: float = GAP_RTOL) -> GapReport:
    """Tr((A-B)(A^{p-1}-B^{p-1})) vs Tr(|A-B|^p); orientation flips at p = 2."""
    if p < 1:
        raise ValueError("exponent p must be >= 1")
    am, bm, da, db = _psd_pair(a, b)
    paired = _paired_trace(am, bm, da, db, lambda t: np.power(t, p - 1.0))
    mu = symla.jacobi_eigh(am - bm).eigenvalues
    powered = float(np.sum(np.abs(mu) ** p))
    if p >= 2:
        return classify(f"ricard(p={p:g})", paired, powered, tol)
    return classify(f"ricard(p={p:g})", powered, paired, tol)


@dataclass(frozen=True)
class ChainResult:
    """The three-term chain Tr|A^p-B^p| >= Tr((A-B)(A^{p-1}-B^{p-1})) >= Tr|A-B|^p."""

    left: float
    middle: float
    right: float
    left_middle: GapReport
    middle_right: Optional[GapReport]  # None below p = 2, where only the left gap is claimed


def interpolation_chain(a, b, p: float, tol: float = GAP_RTOL) -> ChainResult:
    if p < 1:
        raise ValueError("exponent p must be >= 1")
    am, bm, da, db = _psd_pair(a, b)
    pa = symla.reconstruct(np.power(da.eigenvalues, p), da.eigenvectors)
    pb = symla.reconstruct(np.power(db.eigenvalues, p), db.eigenvectors)
    left = float(np.sum(np.abs(symla.jacobi_eigh(pa - pb).eigenvalues)))
    middle = _paired_trace(am, bm, da, db, lambda t: np.power(t, p - 1.0))
    mu = symla.jacobi_eigh(am - bm).eigenvalues
    right = float(np.sum(np.abs(mu) ** p))
    lm = classify(f"chain_left(p={p:g})", left, middle, tol)
    mr = classify(f"chain_right(p={p:g})", middle, right, tol) if p >= 2 else None
    return ChainResult(left, middle, right, lm, mr)


def powers_stormer_gap(a, b, s: float, tol: float = GAP_RTOL) -> GapReport:
    """2 Tr(A^s B^{1-s}) vs Tr(A + B - |A-B|) for s in [0, 1].

    At the endpoints A^0 (resp. B^0) is the identity, following the 0^0 = 1
    spectral convention.
    """
    if not 0.0 <= s <= 1.0:
        raise ValueError("s must lie in [0, 1]")
    am, bm, da, db = _psd_pair(a, b)
    a_s = symla.reconstruct(np.power(da.eigenvalues, s), da.eigenvectors)
    b_1s = symla.reconstruct(np.power(db.eigenvalues, 1.0 - s), db.eigenvectors)
    mixed = 2.0 * symla.trace_product(a_s, b_1s)
    mu = symla.jacobi_eigh(am - bm).eigenvalues
    overlap = float(np.sum(da.eigenvalues) + np.sum(db.eigenvalues) - np.sum(np.abs(mu)))
    return classify(f"powers_stormer(s={s:g})", mixed, overlap, tol)


MIN_DEFINITE_EIG = 1e-8  # B must be this positive when f' blows up at 0


def klein_gap(a, b, f: funcat.OperatorFunction, tol: float = GAP_RTOL) -> GapReport:
    """Tr(f(A) - f(B)) vs Tr((A-B) f'(B)) for a differentiable convex f.

    B may touch 0 only when f' extends continuously there; otherwise its
    smallest eigenvalue must exceed ``MIN_DEFINITE_EIG``.
    """
    if f.kind != funcat.CONVEX:
        raise ValueError(f"klein_gap needs a convex-class function, got {f.name}")
    am, bm, da, db = _psd_pair(a, b)
    if f.deriv_at_zero is None and float(db.eigenvalues[-1]) <= MIN_DEFINITE_EIG:
        raise ValueError(
            f"{f.name} has an unbounded derivative at 0; B must be strictly positive"
        )
    lhs = float(np.sum(f.fn(da.eigenvalues)) - np.sum(f.fn(db.eigenvalues)))
    fprime_b = symla.reconstruct(funcat.derivative_on_spectrum(f, db.eigenvalues), db.eigenvectors)
    rhs = symla.trace_product(am - bm, fprime_b)
    return classify(f"klein[{f.name}]", lhs, rhs, tol)


def monotone_gap(a, b, f: funcat.OperatorFunction, tol: float = GAP_RTOL) -> GapReport:
    """Tr(|A-B| f(|A-B|)) vs Tr((A-B)(f(A)-f(B))) for operator monotone f."""
    if f.kind != funcat.MONOTONE:
        raise ValueError(f"monotone_gap needs a monotone-class function, got {f.name}")
    am, bm, da, db = _psd_pair(a, b)
    paired = _paired_trace(am, bm, da, db, f.fn)
    mu = np.abs(symla.jacobi_eigh(am - bm).eigenvalues)
    folded = float(np.sum(mu * f.fn(mu)))
    return classify(f"monotone[{f.name}]", folded, paired, tol)


def convex_gap(a, b, f: funcat.OperatorFunction, tol: float = GAP_RTOL) -> GapReport:
    """Tr((A-B)(f(A)-f(B))) vs Tr(|A-B| f(|A-B|)) for operator convex f."""
    if f.kind != funcat.CONVEX:
        raise ValueError(f"convex_gap needs a convex-class function, got {f.name}")
    am, bm, da, db = _psd_pair(a, b)
    paired = _paired_trace(am, bm, da, db, f.fn)
    mu = np.abs(symla.jacobi_eigh(am - bm).eigenvalues)
    folded = float(np.sum(mu * f.fn(mu)))
    return classify(f"convex[{f.name}]", paired, folded, tol)


@dataclass(frozen=True)
class ZeeDecomposition:
    """Split of Tr((A-B)(f(A)-f(B))) through Z = A + (A-B)_- = B + (A-B)_+.

    ``t1..t4`` telescope back to the direct trace; for monotone-class f the
    cross terms t2 and t4 are nonpositive, for convex-class f nonnegative.
    """

    z: np.ndarray
    positive_part: np.ndarray
    negative_part: np.ndarray
    t1: float
    t2: float
    t3: float
    t4: float
    direct: float

    @property
    def terms(self):
        return (self.t1, self.t2, self.t3, self.t4)


def zee_decomposition(a, b, f: funcat.OperatorFunction) -> ZeeDecomposition:
    am, bm, da, db = _psd_pair(a, b)
    c = am - bm
    pos, neg = symla.decompose_parts(c)
    z = (am + neg + bm + pos) / 2.0  # the two expressions agree; average kills round-off
    dz = symla.psd_decomposition(z)
    fa = symla.reconstruct(f.fn(da.eigenvalues), da.eigenvectors)
    fb = symla.reconstruct(f.fn(db.eigenvalues), db.eigenvectors)
    fz = symla.reconstruct(f.fn(dz.eigenvalues), dz.eigenvectors)
    t1 = symla.trace_product(-neg, fa - fz)   # A - Z = -C_-
    t2 = symla.trace_product(-neg, fz - fb)
    t3 = symla.trace_product(pos, fz - fb)    # Z - B = C_+
    t4 = symla.trace_product(pos, fa - fz)
    direct = symla.trace_product(c, fa - fb)
    return ZeeDecomposition(z, pos, neg, t1, t2, t3, t4, direct)
