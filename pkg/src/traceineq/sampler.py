"""Deterministic random generation of PSD matrices and structured pairs.

Sampling is driven by Philox, a 64-bit counter-based generator; per-trial
streams are derived by hashing (seed, stream key...) through numpy's
SeedSequence, so trials can be generated independently and in any order.
Gaussian entries come from numpy's ziggurat sampler (an inverse-free method
over uniform draws).  Bitwise reproducibility is promised within this
implementation: the same SampleSpec always yields the same bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import symla

KINDS = (
    "wishart",
    "spectrum_given",
    "ordered_pair",
    "commuting_pair",
    "projection_pair",
    "rank_deficient",
)


@dataclass(frozen=True)
class SampleSpec:
    dim: int
    kind: str
    seed: int
    scale: float = 1.0
    rank: Optional[int] = None
    eigenvalues: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.kind not in KINDS:
            raise ValueError(f"unknown sample kind {self.kind!r}; choose from {KINDS}")
        if self.rank is not None and not 1 <= self.rank <= self.dim:
            raise ValueError("rank must lie in [1, dim]")
        if self.kind == "spectrum_given":
            if self.eigenvalues is None or len(self.eigenvalues) != self.dim:
                raise ValueError("spectrum_given needs dim eigenvalues")
            if any(e < 0 for e in self.eigenvalues):
                raise ValueError("requested eigenvalues must be nonnegative")


def stream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for (seed, key...): Philox keyed via SeedSequence."""
    ints = [int(seed)] + [int(k) for k in key]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(ints)))


def random_orthogonal(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed orthogonal matrix: QR of a Gaussian with sign fix."""
    g = rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    return q * np.where(np.diag(r) < 0.0, -1.0, 1.0)


def _exact_sym(m: np.ndarray) -> np.ndarray:
    return (m + m.T) / 2.0


def _wishart(dim: int, rng, scale: float = 1.0) -> np.ndarray:
    g = scale * rng.standard_normal((dim, dim))
    return _exact_sym(g.T @ g)


def _from_spectrum(eigs, rng) -> np.ndarray:
    q = random_orthogonal(len(eigs), rng)
    return _exact_sym((q * np.asarray(eigs, dtype=float)) @ q.T)


def _rank_deficient(dim: int, rank: int, rng, scale: float = 1.0) -> np.ndarray:
    g = scale * rng.standard_normal((rank, dim))
    return _exact_sym(g.T @ g)


def _projection(dim: int, rank: int, rng) -> np.ndarray:
    q = random_orthogonal(dim, rng)
    cols = q[:, :rank]
    return _exact_sym(cols @ cols.T)


def _random_rank(dim: int, rng) -> int:
    return 1 if dim == 1 else int(rng.integers(1, dim))


def random_psd(spec: SampleSpec) -> np.ndarray:
    """One PSD matrix drawn per the sample spec; deterministic in spec.seed."""
    rng = stream(spec.seed, 0)
    if spec.kind == "wishart":
        return _wishart(spec.dim, rng, spec.scale)
    if spec.kind == "spectrum_given":
        return _from_spectrum(spec.eigenvalues, rng)
    if spec.kind == "rank_deficient":
        rank = spec.rank if spec.rank is not None else _random_rank(spec.dim, rng)
        return _rank_deficient(spec.dim, rank, rng, spec.scale)
    raise ValueError(f"kind {spec.kind!r} produces pairs; use random_pair")


def random_pair(spec: SampleSpec) -> Tuple[np.ndarray, np.ndarray]:
    """A structured (A, B) pair of PSD matrices; deterministic in spec.seed."""
    rng = stream(spec.seed, 1)
    n = spec.dim
    if spec.kind == "wishart":
        return _wishart(n, rng, spec.scale), _wishart(n, rng, spec.scale)
    if spec.kind == "ordered_pair":
        b = _wishart(n, rng, spec.scale)
        return _exact_sym(b + _wishart(n, rng, spec.scale)), b
    if spec.kind == "commuting_pair":
        a, b, _, _ = commuting_pair_with_spectra(spec)
        return a, b
    if spec.kind == "projection_pair":
        return (
            _projection(n, spec.rank or _random_rank(n, rng), rng),
            _projection(n, spec.rank or _random_rank(n, rng), rng),
        )
    if spec.kind == "rank_deficient":
        ra = spec.rank if spec.rank is not None else _random_rank(n, rng)
        rb = spec.rank if spec.rank is not None else _random_rank(n, rng)
        return (
            _rank_deficient(n, ra, rng, spec.scale),
            _rank_deficient(n, rb, rng, spec.scale),
        )
    raise ValueError(f"kind {spec.kind!r} produces single matrices; use random_psd")


def commuting_pair_with_spectra(spec: SampleSpec):
    """Commuting pair sharing a random eigenbasis, plus the generating spectra.

    Returns (A, B, a, b) with a, b the eigenvalue vectors used to build the
    matrices -- an input-side record against which matrix-side computations
    can be checked without going through any eigensolver.  About a fifth of
    the eigenvalues are exact zeros so that rank-deficient behaviour is
    exercised too.
    """
    rng = stream(spec.seed, 2)
    n = spec.dim
    q = random_orthogonal(n, rng)
    a = spec.scale * 3.0 * rng.random(n)
    b = spec.scale * 3.0 * rng.random(n)
    a[rng.random(n) < 0.2] = 0.0
    b[rng.random(n) < 0.2] = 0.0
    return _exact_sym((q * a) @ q.T), _exact_sym((q * b) @ q.T), a, b


def check_sample(mat: np.ndarray) -> None:
    """Assert a generated matrix passes the symmetry and PSD acceptance rules."""
    symla.psd_decomposition(symla.symmetrize(mat))
