"""Dense real-symmetric linear algebra built on cyclic Jacobi rotations.

Matrices are plain float64 numpy arrays.  Everything enters through
:func:`symmetrize`, which tolerates round-off level asymmetry and rejects
anything worse; downstream code may then assume exact symmetry.  The
eigensolver is a cyclic Jacobi sweep, which is unconditionally stable and
accurate for the moderate dimensions (n <= 64) this library targets, and
which vectorizes over a leading batch axis so that property suites can
decompose thousands of small matrices per call.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

SYMMETRY_RTOL = 1e-12   # accepted relative asymmetry at construction
JACOBI_RTOL = 1e-12     # off-diagonal target, relative to ||M||_F
PSD_RTOL = 1e-10        # negative-eigenvalue slack for PSD acceptance
MAX_SWEEPS = 100


class JacobiConvergenceError(RuntimeError):
    """Cyclic Jacobi did not reach the off-diagonal target within the sweep cap."""


class NotSymmetricError(ValueError):
    """Input is not symmetric within the construction tolerance."""


class NotPositiveSemidefiniteError(ValueError):
    """Matrix has an eigenvalue below the PSD acceptance threshold."""


class SpectralDecomposition(NamedTuple):
    """Eigenvalues sorted descending; eigenvector k is ``eigenvectors[:, k]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


class PartsDecomposition(NamedTuple):
    """Positive/negative parts: M = positive - negative, both PSD, orthogonal supports."""

    positive: np.ndarray
    negative: np.ndarray


def frobenius(mat: np.ndarray) -> float:
    return float(np.sqrt(np.sum(np.asarray(mat, dtype=float) ** 2)))


def symmetrize(mat, rtol: float = SYMMETRY_RTOL) -> np.ndarray:
    """Validate and return the symmetric float64 copy of ``mat``.

    Asymmetry up to ``rtol * ||mat||_F`` (round-off from file ingestion or
    accumulated matrix products) is averaged away; anything larger raises
    :class:`NotSymmetricError`.  NaN/Inf entries are rejected.
    """
    m = np.asarray(mat, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    asym = frobenius(m - m.T)
    if asym > rtol * max(frobenius(m), np.finfo(float).tiny):
        raise NotSymmetricError(
            f"asymmetry {asym:.3e} exceeds {rtol:g} * ||M||_F = {rtol * frobenius(m):.3e}"
        )
    return (m + m.T) / 2.0


def parse_matrix(text: str) -> np.ndarray:
    """Parse the matrix text format: one row per line, whitespace-separated entries."""
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        try:
            rows.append([float(tok) for tok in line.split()])
        except ValueError as exc:
            raise ValueError(f"bad matrix row {line!r}: {exc}") from None
    if not rows:
        raise ValueError("empty matrix text")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged rows in matrix text")
    if len(rows) != width:
        raise ValueError(f"matrix must be square, got {len(rows)}x{width}")
    return symmetrize(np.array(rows, dtype=float))


def load_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def jacobi_eigh_batch(
    mats: np.ndarray,
    rtol: float = JACOBI_RTOL,
    max_sweeps: int = MAX_SWEEPS,
    vectors: bool = True,
):
    """Eigendecompose a batch of symmetric matrices by cyclic Jacobi sweeps.

    Parameters
    ----------
    mats : (B, n, n) array, symmetric along the last two axes.
    rtol : convergence when off-diagonal Frobenius norm <= rtol * ||M||_F.
    max_sweeps : hard cap; exceeding it raises JacobiConvergenceError.
    vectors : accumulate eigenvectors (skip for eigenvalue-only work).

    Returns
    -------
    (eigenvalues, eigenvectors) with eigenvalues (B, n) sorted descending and
    eigenvectors (B, n, n) column-matched, or (eigenvalues, None).

    The pivot order is fixed (row-cyclic), so the work is data-independent and
    every matrix in the batch sees the same rotation schedule.
    """
    a = np.array(mats, dtype=float)
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise ValueError(f"expected (B, n, n) batch, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    nb, n, _ = a.shape
    v = np.tile(np.eye(n), (nb, 1, 1)) if vectors else None
    if n == 1 or nb == 0:
        lam = a[:, 0, :].copy() if n == 1 else np.zeros((nb, n))
        return lam, v

    idx = np.arange(n)
    off_mask = ~np.eye(n, dtype=bool)
    norm0_sq = np.sum(a * a, axis=(1, 2))
    thresh_sq = (rtol**2) * norm0_sq

    # One extra sweep after the criterion fires: quadratic convergence takes
    # the remaining off-diagonal mass (the backward error of the returned
    # decomposition) from rtol * ||M||_F to the rounding floor, which is what
    # resolvent-style residual checks downstream rely on.
    polished = False
    sweep = 0
    while True:
        off_sq = np.sum((a * off_mask) ** 2, axis=(1, 2))
        converged = bool(np.all(off_sq <= thresh_sq))
        if converged and polished:
            break
        if not converged and sweep >= max_sweeps:
            bad = np.nonzero(off_sq > thresh_sq)[0]
            raise JacobiConvergenceError(
                f"no convergence after {max_sweeps} sweeps for batch indices {bad[:8].tolist()}"
            )
        polished = converged
        sweep += 1
        for k in range(n - 1):
            for l in range(k + 1, n):
                akl = a[:, k, l]
                if not np.any(akl):
                    continue
                akk = a[:, k, k]
                all_ = a[:, l, l]
                nz = akl != 0.0
                with np.errstate(over="ignore", invalid="ignore"):
                    # tau overflowing to inf is fine: t underflows to 0 below
                    tau = np.where(nz, (all_ - akk) / np.where(nz, 2.0 * akl, 1.0), 0.0)
                    sgn = np.where(tau < 0.0, -1.0, 1.0)
                    t = np.where(nz, sgn / (np.abs(tau) + np.hypot(1.0, tau)), 0.0)
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                cc = c[:, None]
                ss = s[:, None]
                rowk = a[:, k, :].copy()
                rowl = a[:, l, :].copy()
                a[:, k, :] = cc * rowk - ss * rowl
                a[:, l, :] = ss * rowk + cc * rowl
                colk = a[:, :, k].copy()
                coll = a[:, :, l].copy()
                a[:, :, k] = cc[:, 0:1] * colk - ss[:, 0:1] * coll
                a[:, :, l] = ss[:, 0:1] * colk + cc[:, 0:1] * coll
                if vectors:
                    vk = v[:, :, k].copy()
                    vl = v[:, :, l].copy()
                    v[:, :, k] = cc[:, 0:1] * vk - ss[:, 0:1] * vl
                    v[:, :, l] = ss[:, 0:1] * vk + cc[:, 0:1] * vl

    lam = a[:, idx, idx]
    order = np.argsort(-lam, axis=1, kind="stable")
    lam = np.take_along_axis(lam, order, axis=1)
    if vectors:
        v = np.take_along_axis(v, order[:, None, :], axis=2)
    return lam, v


def jacobi_eigh(
    mat,
    rtol: float = JACOBI_RTOL,
    max_sweeps: int = MAX_SWEEPS,
) -> SpectralDecomposition:
    """Eigendecomposition of one symmetric matrix; see :func:`jacobi_eigh_batch`."""
    m = symmetrize(mat)
    lam, vec = jacobi_eigh_batch(m[None, :, :], rtol=rtol, max_sweeps=max_sweeps)
    return SpectralDecomposition(lam[0], vec[0])


def reconstruct(eigenvalues: np.ndarray, eigenvectors: np.ndarray) -> np.ndarray:
    """V diag(lam) V^T, re-symmetrized against round-off."""
    r = (eigenvectors * eigenvalues) @ eigenvectors.T
    return (r + r.T) / 2.0


def apply_scalar_function(mat, fn: Callable) -> np.ndarray:
    """Evaluate fn on the spectrum: V diag(fn(lam)) V^T.

    ``fn`` must accept a float ndarray.  A non-finite value of fn at any
    eigenvalue (e.g. sqrt of a negative eigenvalue) raises ValueError.
    """
    dec = jacobi_eigh(mat)
    with np.errstate(all="ignore"):
        vals = np.asarray(fn(dec.eigenvalues), dtype=float)
    if vals.shape != dec.eigenvalues.shape or not np.all(np.isfinite(vals)):
        raise ValueError("scalar function undefined (non-finite) on part of the spectrum")
    return reconstruct(vals, dec.eigenvectors)


def psd_decomposition(mat, rtol: float = PSD_RTOL) -> SpectralDecomposition:
    """Eigendecomposition of a matrix required to be PSD.

    Accepts min eigenvalue >= -rtol * max(1, max eigenvalue); eigenvalues
    inside the acceptance band (|lam| <= rtol * max(1, max eigenvalue)) are
    zeroed before functional calculus.  Zeroing the whole round-off band, not
    just the negatives, keeps functions with unbounded derivative at 0 (t^p
    for small p) from amplifying the formation noise of matrices built with
    exactly singular spectra.  Raises NotPositiveSemidefiniteError below the
    band.
    """
    dec = jacobi_eigh(mat)
    lam = dec.eigenvalues
    band = rtol * max(1.0, float(lam[0]))
    if float(lam[-1]) < -band:
        raise NotPositiveSemidefiniteError(
            f"min eigenvalue {lam[-1]:.3e} below PSD threshold {-band:.3e}"
        )
    return SpectralDecomposition(np.where(lam <= band, 0.0, lam), dec.eigenvectors)


def clip_psd_eigenvalues(lam: np.ndarray, rtol: float = PSD_RTOL) -> np.ndarray:
    """Batch form of the PSD acceptance rule on pre-computed spectra (descending)."""
    lam = np.asarray(lam, dtype=float)
    band = rtol * np.maximum(1.0, lam[..., 0])
    if np.any(lam[..., -1] < -band):
        raise NotPositiveSemidefiniteError("batch contains a non-PSD matrix")
    return np.where(lam <= band[..., None], 0.0, lam)


def psd_function(mat, fn: Callable) -> np.ndarray:
    """fn applied to a PSD matrix via spectral calculus, with negative clip first."""
    dec = psd_decomposition(mat)
    with np.errstate(all="ignore"):
        vals = np.asarray(fn(dec.eigenvalues), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise ValueError("scalar function undefined (non-finite) on part of the spectrum")
    return reconstruct(vals, dec.eigenvectors)


def decompose_parts(mat) -> PartsDecomposition:
    """Split M into positive and negative parts: M = P - N with P, N PSD, PN = 0."""
    dec = jacobi_eigh(mat)
    pos = reconstruct(np.maximum(dec.eigenvalues, 0.0), dec.eigenvectors)
    neg = reconstruct(np.maximum(-dec.eigenvalues, 0.0), dec.eigenvectors)
    return PartsDecomposition(pos, neg)


def abs_matrix(mat) -> np.ndarray:
    """|M| = (M^2)^{1/2}, evaluated as V diag(|lam|) V^T."""
    return apply_scalar_function(mat, np.abs)


def trace_product(x, y) -> float:
    """Tr(XY) for symmetric X, Y, computed entrywise as sum(X_ij * Y_ij)."""
    xm = np.asarray(x, dtype=float)
    ym = np.asarray(y, dtype=float)
    if xm.shape != ym.shape:
        raise ValueError(f"dimension mismatch: {xm.shape} vs {ym.shape}")
    return float(np.sum(xm * ym))


def singular_values(mat) -> np.ndarray:
    """Singular values, descending.

    Symmetric input (within the construction tolerance) uses |eigenvalues|
    directly; otherwise the values are sqrt of the eigenvalues of M^T M.
    The symmetric shortcut is exact and avoids the sqrt-of-squared loss of
    the Gram route near zero singular values.
    """
    m = np.asarray(mat, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    asym = frobenius(m - m.T)
    if asym <= SYMMETRY_RTOL * max(frobenius(m), np.finfo(float).tiny):
        lam = jacobi_eigh(m).eigenvalues
        return np.sort(np.abs(lam))[::-1]
    gram = m.T @ m
    lam = jacobi_eigh((gram + gram.T) / 2.0).eigenvalues
    return np.sqrt(np.maximum(lam, 0.0))


def singular_values_augmented(mat) -> np.ndarray:
    """Singular values via the symmetric embedding [[0, M^T], [M, 0]].

    Slower than :func:`singular_values` but does not square the matrix, so
    small singular values keep full absolute accuracy.  Used to re-verify
    candidate inequality violations.
    """
    m = np.asarray(mat, dtype=float)
    n = m.shape[0]
    z = np.zeros((2 * n, 2 * n))
    z[:n, n:] = m.T
    z[n:, :n] = m
    lam = jacobi_eigh(z).eigenvalues
    return np.maximum(lam[:n], 0.0)


def shifted_inverse(mat, s: float) -> np.ndarray:
    """(M + s I)^{-1} for PSD M and s > 0, via spectral calculus.

    The spectrum is used as computed (no zero-band clip): 1/(lam + s) is
    well defined throughout the PSD acceptance band, and clipping would
    plant a backward error exactly where resolvent identities are most
    sensitive.
    """
    if s <= 0:
        raise ValueError("shift s must be positive")
    dec = jacobi_eigh(mat)
    lam = dec.eigenvalues
    if float(lam[-1]) < -PSD_RTOL * max(1.0, float(lam[0])):
        raise NotPositiveSemidefiniteError("matrix is not PSD within tolerance")
    if float(lam[-1]) + s <= 0.0:
        raise ValueError("shift too small: M + s I is not positive definite")
    return reconstruct(1.0 / (lam + s), dec.eigenvectors)


def resolvent_residual(b, c, s: float) -> float:
    """Frobenius residual of (B+s)^{-1} - (B+C+s)^{-1} = (B+s)^{-1} C (B+C+s)^{-1}.

    The identity is algebraic, so for PSD B, C and s > 0 the residual is pure
    round-off.
    """
    if s <= 0:
        raise ValueError("shift s must be positive")
    bm = symmetrize(b)
    cm = symmetrize(c)
    inv_b = shifted_inverse(bm, s)
    inv_bc = shifted_inverse(bm + cm, s)
    return frobenius(inv_b - inv_bc - inv_b @ cm @ inv_bc)
