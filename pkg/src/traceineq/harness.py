"""Suite runner, conjecture search, and report emission.

``run_suite`` draws seeded random instances for every selected check and
aggregates oriented gaps per (check, function, dim); a nonnegative minimum
relative gap means the inequality held on every trial.
``search_counterexample`` hunts for negative gaps of the norm-form
comparison over the Ky Fan family by random screening plus coordinate-wise
perturbation descent on the Gaussian factors.

Determinism: every trial derives its own generator by hashing
(seed, check-id, dim, trial) through SeedSequence, and aggregation is
order-independent (min, and mean by exact summation), so results do not
depend on evaluation order and identical configs reproduce identical
reports byte for byte (wall time aside).
"""

from __future__ import annotations

import json
import math
import time
import zlib
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import funcat, sampler, symla, uinorm

__version__ = "0.1.0"

CHECKS = (
    "monotone",
    "convex",
    "klein",
    "ricard",
    "chain_left",
    "chain_right",
    "powers_stormer",
    "ando",
    "ando_theta",
    "hoelder",
    "commuting_oracle",
    "resolvent",
    "zee_identity",
    "zee_signs",
    "conjecture",
)

# Parameter grids for the parameterized checks.
RICARD_P = (1.0, 1.2, 1.5, 2.0, 2.5, 3.0, 4.0)
CHAIN_LEFT_P = (1.2, 1.5, 2.0, 2.5, 3.0, 4.0)
CHAIN_RIGHT_P = (2.0, 2.5, 3.0, 4.0)
POWERS_STORMER_S = (0.0, 0.25, 0.5, 0.75, 1.0)
ANDO_P = (1.0, 1.5, 2.0, 3.0)
ANDO_THETA = (0.25, 0.5, 0.75)
ANDO_THETA_Q = (1.0, 2.0, 3.0)
HOELDER_PQ = ((2.0, 2.0), (3.0, 1.5), (4.0, 4.0 / 3.0))
RESOLVENT_S = (1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3)

# Identity-style checks measure round-off, not inequality slack, and get
# their own (tighter) tolerances.
ORACLE_RTOL = 1e-10
RESOLVENT_RTOL = 1e-10

DEFAULT_MONOTONE = tuple(f"power:{i / 10:g}" for i in range(1, 11)) + ("log1p",)
DEFAULT_CONVEX = tuple(f"power:{1 + i / 10:g}" for i in range(0, 11)) + ("square",)
GRID_MONOTONE = tuple(f"power:{i / 20:g}" for i in range(1, 21)) + ("log1p",)
GRID_CONVEX = tuple(f"power:{1 + i / 20:g}" for i in range(0, 21))


@dataclass(frozen=True)
class SuiteConfig:
    dims: tuple
    trials: int
    checks: tuple = ("all",)
    functions: tuple = ("all",)
    tolerance: float = 1e-9
    seed: int = 42
    kind: str = "wishart"

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "checks", tuple(self.checks))
        object.__setattr__(self, "functions", tuple(self.functions))
        if self.trials < 0:
            raise ValueError("trials must be >= 0")
        if not self.dims or any(d < 1 for d in self.dims):
            raise ValueError("dims must be a nonempty list of integers >= 1")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        for name in self.expanded_checks():
            if name not in CHECKS:
                raise ValueError(f"unknown check {name!r}; choose from {CHECKS}")
        resolve_functions(self.functions, funcat.MONOTONE)
        resolve_functions(self.functions, funcat.CONVEX)

    def expanded_checks(self) -> tuple:
        out = []
        for c in self.checks:
            out.extend(CHECKS if c == "all" else [c])
        return tuple(dict.fromkeys(out))

    def as_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "trials": self.trials,
            "checks": list(self.checks),
            "functions": list(self.functions),
            "tolerance": self.tolerance,
            "seed": self.seed,
            "kind": self.kind,
        }


@dataclass(frozen=True)
class CheckRow:
    name: str
    function: str
    dim: int
    trials: int
    min_gap: float
    mean_gap: float
    min_relative_gap: float
    violations: int
    worst_instance: Optional[dict] = None


@dataclass(frozen=True)
class SuiteReport:
    version: str
    seed: int
    config: dict
    checks: tuple
    wall_time_ms: float

    @property
    def total_violations(self) -> int:
        return sum(row.violations for row in self.checks)


def resolve_functions(selectors, kind) -> list:
    """Expand selector strings into catalog entries of the requested class.

    Selectors naming a valid entry of the other class are skipped (so one
    mixed list can serve both the monotone and convex suites); unknown
    selectors raise.
    """
    out = []
    for sel in selectors:
        if sel == "all":
            names = DEFAULT_MONOTONE if kind == funcat.MONOTONE else DEFAULT_CONVEX
            out.extend(funcat.parse_function(s, kind) for s in names)
            continue
        if sel == "power:grid":
            names = GRID_MONOTONE if kind == funcat.MONOTONE else GRID_CONVEX
            out.extend(funcat.parse_function(s, kind) for s in names)
            continue
        try:
            out.append(funcat.parse_function(sel, kind))
        except ValueError:
            funcat.parse_function(sel)  # re-raise if the selector itself is bad
    seen = {}
    for f in out:
        seen.setdefault(f.name, f)
    return list(seen.values())


# ---------------------------------------------------------------------------
# sampling and batched spectral preparation


def _check_id(name: str) -> int:
    return zlib.crc32(name.encode("ascii"))


def _trial_seed(seed: int, check: str, dim: int, trial: int, extra: int = 0) -> int:
    ss = np.random.SeedSequence((int(seed), _check_id(check), int(dim), int(trial), int(extra)))
    return int(ss.generate_state(1, np.uint64)[0])


def _sample_pair_stack(cfg: SuiteConfig, check: str, dim: int, kind: str | None = None,
                       extra: int = 0):
    kind = kind or cfg.kind
    a = np.empty((cfg.trials, dim, dim))
    b = np.empty((cfg.trials, dim, dim))
    for t in range(cfg.trials):
        spec = sampler.SampleSpec(dim=dim, kind=kind,
                                  seed=_trial_seed(cfg.seed, check, dim, t, extra))
        a[t], b[t] = sampler.random_pair(spec)
    return a, b


class _Prepared:
    """Batched spectral data shared by the gap kernels.

    lam_a/lam_b are PSD-clipped; w_a[t, i] = v_i^T C v_i collects everything a
    paired trace Tr(C f(A)) needs, so per-function work reduces to dot
    products over eigenvalues.
    """

    __slots__ = ("a", "b", "c", "lam_a", "vec_a", "lam_b", "vec_b", "mu", "vec_c",
                 "w_a", "w_b", "abs_mu")

    def __init__(self, a, b):
        t = a.shape[0]
        self.a, self.b = a, b
        self.c = a - b
        lam, vec = symla.jacobi_eigh_batch(np.concatenate([a, b, self.c], axis=0))
        self.lam_a = symla.clip_psd_eigenvalues(lam[:t])
        self.lam_b = symla.clip_psd_eigenvalues(lam[t:2 * t])
        self.mu = lam[2 * t:]
        self.vec_a, self.vec_b, self.vec_c = vec[:t], vec[t:2 * t], vec[2 * t:]
        self.w_a = np.einsum("tji,tjk,tki->ti", self.vec_a, self.c, self.vec_a)
        self.w_b = np.einsum("tji,tjk,tki->ti", self.vec_b, self.c, self.vec_b)
        self.abs_mu = np.abs(self.mu)

    def paired_trace(self, fn) -> np.ndarray:
        """Tr((A-B)(fn(A)-fn(B))) per trial."""
        return np.sum(fn(self.lam_a) * self.w_a, axis=1) - np.sum(fn(self.lam_b) * self.w_b, axis=1)

    def folded_trace(self, fn) -> np.ndarray:
        """Tr(|A-B| fn(|A-B|)) per trial."""
        return np.sum(self.abs_mu * fn(self.abs_mu), axis=1)

    def power_diff_eigs(self, p: float) -> np.ndarray:
        """Eigenvalues (descending) of A^p - B^p per trial."""
        pa = _reconstruct(self.vec_a, np.power(self.lam_a, p))
        pb = _reconstruct(self.vec_b, np.power(self.lam_b, p))
        lam, _ = symla.jacobi_eigh_batch(pa - pb, vectors=False)
        return lam


def _reconstruct(vecs, vals) -> np.ndarray:
    out = np.einsum("tik,tk,tjk->tij", vecs, vals, vecs)
    return (out + np.swapaxes(out, 1, 2)) / 2.0


def _trace_pair(x, y) -> np.ndarray:
    return np.einsum("tij,tij->t", x, y)


# ---------------------------------------------------------------------------
# row aggregation


def _aggregate(cfg, name, label, dim, lhs, rhs, mats=None, params=None,
               tol=None, denom=None) -> CheckRow:
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    tol = cfg.tolerance if tol is None else tol
    gaps = lhs - rhs
    if denom is None:
        denom = np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))
    rel = gaps / denom
    violations = int(np.count_nonzero(rel < -tol))
    worst_idx = int(np.argmin(rel))
    min_rel = float(rel[worst_idx])
    worst = None
    if violations > 0 or min_rel <= 10.0 * tol:
        worst = {
            "params": dict(params or {}, function=label),
            "gap": float(gaps[worst_idx]),
            "relative_gap": min_rel,
        }
        if mats is not None:
            worst["A"] = mats[0][worst_idx].tolist()
            worst["B"] = mats[1][worst_idx].tolist()
    return CheckRow(
        name=name,
        function=label,
        dim=dim,
        trials=len(gaps),
        min_gap=float(np.min(gaps)),
        mean_gap=math.fsum(gaps) / len(gaps),
        min_relative_gap=min_rel,
        violations=violations,
        worst_instance=worst,
    )


# ---------------------------------------------------------------------------
# check evaluators (one per registry name)


def _eval_monotone(cfg, name, dim):
    fs = resolve_functions(cfg.functions, funcat.MONOTONE)
    pb = _Prepared(*_sample_pair_stack(cfg, name, dim))
    return [
        _aggregate(cfg, name, f.name, dim, pb.folded_trace(f.fn), pb.paired_trace(f.fn), (pb.a, pb.b))
        for f in fs
    ]


def _eval_convex(cfg, name, dim):
    fs = resolve_functions(cfg.functions, funcat.CONVEX)
    pb = _Prepared(*_sample_pair_stack(cfg, name, dim))
    return [
        _aggregate(cfg, name, f.name, dim, pb.paired_trace(f.fn), pb.folded_trace(f.fn), (pb.a, pb.b))
        for f in fs
    ]


def _eval_klein(cfg, name, dim):
    fs = resolve_functions(cfg.functions, funcat.CONVEX)
    pb = _Prepared(*_sample_pair_stack(cfg, name, dim))
    rows = []
    for f in fs:
        lhs = np.sum(f.fn(pb.lam_a), axis=1) - np.sum(f.fn(pb.lam_b), axis=1)
        rhs = np.sum(funcat.derivative_on_spectrum(f, pb.lam_b) * pb.w_b, axis=1)
        rows.append(_aggregate(cfg, name, f.name, dim, lhs, rhs, (pb.a, pb.b)))
    return rows


def _eval_ricard(cfg, name, dim):
    pb = _Prepared(*_sample_pair_stack(cfg, name, dim))
    rows = []
    for p in RICARD_P:
        paired = pb.paired_trace(lambda t, p=p: np.power(t, p - 1.0))
        powered = np.sum(pb.abs_mu**p, axis=1)
        lhs, rhs = (paired, powered) if p >= 2 else (powered, paired)
        rows.append(_aggregate(cfg, name, f"p={p:g}", dim, lhs, rhs, (pb.a, pb.b), {"p": p}))
    return rows


def _eval_chain_left(cfg, name, dim):
    pb = _Prepared(*_sample_pair_stack(cfg, name, dim))
    rows = []
    for p in CHAIN_LEFT_P:
        left = np.sum(np.abs(pb.power_diff_eigs(p)), axis=1)
        middle = pb.paired_trace(lambda t, p=p: np.power(t, p - 1.0))
        rows.append(_aggregate(cfg, name, f"p={p:g}", dim, left, middle, (pb.a, pb.b), {"p": p}))
    return rows


def _eval_chain_right(cfg, name, dim):
    pb = _Prepared(*_sample_pair_stack(cfg, name, dim))
    rows = []
    for p in CHAIN_RIGHT_P:
        middle = pb.paired_trace(lambda t, p=p: np.power(t, p - 1.0))
        right = np.sum(pb.abs_mu**p, axis=1)
        rows.append(_aggregate(cfg, name, f"p={p:g}", dim, middle, right, (pb.a, pb.b), {"p": p}))
    return rows


def _eval_powers_stormer(cfg, name, dim):
    pb = _Prepared(*_sample_pair_stack(cfg, name, dim))
    overlap = (np.sum(pb.lam_a, axis=1) + np.sum(pb.lam_b, axis=1)
               - np.sum(pb.abs_mu, axis=1))
    rows = []
    for s in POWERS_STORMER_S:
        a_s = _reconstruct(pb.vec_a, np.power(pb.lam_a, s))
        b_1s = _reconstruct(pb.vec_b, np.power(pb.lam_b, 1.0 - s))
        mixed = 2.0 * _trace_pair(a_s, b_1s)
        rows.append(_aggregate(cfg, name, f"s={s:g}", dim, mixed, overlap, (pb.a, pb.b), {"s": s}))
    return rows


def _eval_ando(cfg, name, dim):
    pb = _Prepared(*_sample_pair_stack(cfg, name, dim))
    mu_desc = -np.sort(-pb.abs_mu, axis=1)
    rows = []
    for p in ANDO_P:
        sig_l = -np.sort(-np.abs(pb.power_diff_eigs(p)), axis=1)
        sig_r = mu_desc**p
        rows.append(_aggregate(cfg, name, f"p={p:g}|trace", dim,
                               np.sum(sig_l, axis=1), np.sum(sig_r, axis=1), (pb.a, pb.b), {"p": p}))
        cum_l = np.cumsum(sig_l, axis=1)
        cum_r = np.cumsum(sig_r, axis=1)
        for k in range(1, dim + 1):
            rows.append(_aggregate(cfg, name, f"p={p:g}|kyfan:{k}", dim,
                                   cum_l[:, k - 1], cum_r[:, k - 1], (pb.a, pb.b), {"p": p, "k": k}))
    return rows


def _eval_ando_theta(cfg, name, dim):
    pb = _Prepared(*_sample_pair_stack(cfg, name, dim))
    rows = []
    for theta in ANDO_THETA:
        lam_diff = np.abs(pb.power_diff_eigs(theta))
        for q in ANDO_THETA_Q:
            lhs = np.sum(pb.abs_mu**q, axis=1) ** (theta / q)
            rhs = np.sum(lam_diff ** (q / theta), axis=1) ** (theta / q)
            rows.append(_aggregate(cfg, name, f"theta={theta:g}|q={q:g}", dim,
                                   lhs, rhs, (pb.a, pb.b), {"theta": theta, "q": q}))
    return rows


def _eval_hoelder(cfg, name, dim):
    a1, b1 = _sample_pair_stack(cfg, name, dim, extra=0)
    a2, b2 = _sample_pair_stack(cfg, name, dim, extra=1)
    x = a1 - b1
    y = a2 - b2
    t = x.shape[0]
    lam, _ = symla.jacobi_eigh_batch(np.concatenate([x, y], axis=0), vectors=False)
    ax, ay = np.abs(lam[:t]), np.abs(lam[t:])
    tr_xy = np.abs(_trace_pair(x, y))
    rows = []
    for p, q in HOELDER_PQ:
        lhs = np.sum(ax**p, axis=1) ** (1.0 / p) * np.sum(ay**q, axis=1) ** (1.0 / q)
        rows.append(_aggregate(cfg, name, f"p={p:g}|q={q:g}", dim,
                               lhs, tr_xy, (x, y), {"p": p, "q": q}))
    return rows


def _scalar_oracle_quantities(a, b, fs_m, fs_c):
    """Scalar-sum values of every trace quantity on commuting spectra (a, b)."""
    c = a - b
    ac = np.abs(c)
    out = {}
    for f in fs_m:
        out[f"monotone_lhs[{f.name}]"] = np.sum(ac * f.fn(ac), axis=1)
        out[f"monotone_rhs[{f.name}]"] = np.sum(c * (f.fn(a) - f.fn(b)), axis=1)
    for f in fs_c:
        out[f"convex_lhs[{f.name}]"] = np.sum(c * (f.fn(a) - f.fn(b)), axis=1)
        out[f"convex_rhs[{f.name}]"] = np.sum(ac * f.fn(ac), axis=1)
        out[f"klein[{f.name}]"] = (
            np.sum(f.fn(a) - f.fn(b), axis=1),
            np.sum(c * funcat.derivative_on_spectrum(f, b), axis=1),
        )
    for p in (1.5, 2.0, 3.0):
        out[f"ricard_lhs[p={p:g}]"] = np.sum(c * (a ** (p - 1) - b ** (p - 1)), axis=1)
        out[f"ricard_rhs[p={p:g}]"] = np.sum(ac**p, axis=1)
        out[f"chain_left[p={p:g}]"] = np.sum(np.abs(a**p - b**p), axis=1)
    for s in (0.0, 0.5, 1.0):
        out[f"ps_mixed[s={s:g}]"] = 2.0 * np.sum(a**s * b ** (1.0 - s), axis=1)
    out["ps_overlap"] = np.sum(a + b - ac, axis=1)
    return out


def _eval_commuting_oracle(cfg, name, dim):
    """Commuting pairs: matrix-route values against scalar sums on the
    generating spectra, reported as a negative max relative deviation."""
    fs_m = resolve_functions(cfg.functions, funcat.MONOTONE)
    fs_c = resolve_functions(cfg.functions, funcat.CONVEX)
    t = cfg.trials
    a = np.empty((t, dim, dim))
    b = np.empty((t, dim, dim))
    spec_a = np.empty((t, dim))
    spec_b = np.empty((t, dim))
    for i in range(t):
        spec = sampler.SampleSpec(dim=dim, kind="commuting_pair",
                                  seed=_trial_seed(cfg.seed, name, dim, i))
        a[i], b[i], spec_a[i], spec_b[i] = sampler.commuting_pair_with_spectra(spec)
    pb = _Prepared(a, b)
    oracle = _scalar_oracle_quantities(spec_a, spec_b, fs_m, fs_c)

    lib = {}
    for f in fs_m:
        lib[f"monotone_lhs[{f.name}]"] = pb.folded_trace(f.fn)
        lib[f"monotone_rhs[{f.name}]"] = pb.paired_trace(f.fn)
    for f in fs_c:
        lib[f"convex_lhs[{f.name}]"] = pb.paired_trace(f.fn)
        lib[f"convex_rhs[{f.name}]"] = pb.folded_trace(f.fn)
        lib[f"klein[{f.name}]"] = (
            np.sum(f.fn(pb.lam_a), axis=1) - np.sum(f.fn(pb.lam_b), axis=1),
            np.sum(funcat.derivative_on_spectrum(f, pb.lam_b) * pb.w_b, axis=1),
        )
    for p in (1.5, 2.0, 3.0):
        lib[f"ricard_lhs[p={p:g}]"] = pb.paired_trace(lambda x, p=p: np.power(x, p - 1.0))
        lib[f"ricard_rhs[p={p:g}]"] = np.sum(pb.abs_mu**p, axis=1)
        lib[f"chain_left[p={p:g}]"] = np.sum(np.abs(pb.power_diff_eigs(p)), axis=1)
    for s in (0.0, 0.5, 1.0):
        a_s = _reconstruct(pb.vec_a, np.power(pb.lam_a, s))
        b_1s = _reconstruct(pb.vec_b, np.power(pb.lam_b, 1.0 - s))
        lib[f"ps_mixed[s={s:g}]"] = 2.0 * _trace_pair(a_s, b_1s)
    lib["ps_overlap"] = (np.sum(pb.lam_a, axis=1) + np.sum(pb.lam_b, axis=1)
                         - np.sum(pb.abs_mu, axis=1))

    dev = np.zeros(t)
    for key, orc in oracle.items():
        pair_lib = lib[key] if isinstance(lib[key], tuple) else (lib[key],)
        pair_orc = orc if isinstance(orc, tuple) else (orc,)
        for lv, ov in zip(pair_lib, pair_orc):
            dev = np.maximum(dev, np.abs(lv - ov) / np.maximum(1.0, np.abs(ov)))
    return [_aggregate(cfg, name, "max_rel_dev", dim, -dev, np.zeros(t), (a, b),
                       tol=ORACLE_RTOL, denom=np.ones(t))]


def _eval_resolvent(cfg, name, dim):
    """Residual of the rank-one-style resolvent identity plus the resolvent
    monotonicity bounds the proofs lean on."""
    b, c = _sample_pair_stack(cfg, name, dim)
    t = b.shape[0]
    lam, vec = symla.jacobi_eigh_batch(np.concatenate([b, b + c, c], axis=0))
    # resolvents use the raw spectra: 1/(lam + s) tolerates the round-off
    # band, and clipping would perturb exactly what the identity measures
    symla.clip_psd_eigenvalues(lam[:t])  # PSD acceptance only
    symla.clip_psd_eigenvalues(lam[2 * t:])
    lam_b, lam_bc, lam_c = lam[:t], lam[t:2 * t], lam[2 * t:]
    vec_b, vec_bc, vec_c = vec[:t], vec[t:2 * t], vec[2 * t:]
    norm_b = np.sqrt(np.sum(b * b, axis=(1, 2)))
    norm_c = np.sqrt(np.sum(c * c, axis=(1, 2)))

    residual = np.zeros(t)
    mono = np.full(t, np.inf)
    eye = np.eye(dim)
    for s in RESOLVENT_S:
        inv_b = _reconstruct(vec_b, 1.0 / (lam_b + s))
        inv_bc = _reconstruct(vec_bc, 1.0 / (lam_bc + s))
        inv_c = _reconstruct(vec_c, 1.0 / (lam_c + s))
        res = inv_b - inv_bc - inv_b @ c @ inv_bc
        scale = np.maximum(1.0, norm_b + norm_c + s)
        residual = np.maximum(residual, np.sqrt(np.sum(res * res, axis=(1, 2))) / scale)
        d1, _ = symla.jacobi_eigh_batch(eye / s - inv_b, vectors=False)
        d2, _ = symla.jacobi_eigh_batch(inv_c - inv_bc, vectors=False)
        mono = np.minimum(mono, np.minimum(d1[:, -1], d2[:, -1]))
    return [
        _aggregate(cfg, name, "identity", dim, -residual, np.zeros(t), (b, c),
                   tol=RESOLVENT_RTOL, denom=np.ones(t)),
        _aggregate(cfg, name, "monotonicity", dim, mono, np.zeros(t), (b, c),
                   tol=RESOLVENT_RTOL, denom=np.ones(t)),
    ]


def _zee_terms(pb, f):
    pos = _reconstruct(pb.vec_c, np.maximum(pb.mu, 0.0))
    neg = _reconstruct(pb.vec_c, np.maximum(-pb.mu, 0.0))
    z = (pb.a + neg + pb.b + pos) / 2.0
    lam_z, vec_z = symla.jacobi_eigh_batch(z)
    lam_z = symla.clip_psd_eigenvalues(lam_z)
    fa = _reconstruct(pb.vec_a, f.fn(pb.lam_a))
    fb = _reconstruct(pb.vec_b, f.fn(pb.lam_b))
    fz = _reconstruct(vec_z, f.fn(lam_z))
    t1 = _trace_pair(-neg, fa - fz)
    t2 = _trace_pair(-neg, fz - fb)
    t3 = _trace_pair(pos, fz - fb)
    t4 = _trace_pair(pos, fa - fz)
    direct = _trace_pair(pb.c, fa - fb)
    return t1, t2, t3, t4, direct


def _eval_zee_identity(cfg, name, dim):
    fs = (resolve_functions(cfg.functions, funcat.MONOTONE)
          + resolve_functions(cfg.functions, funcat.CONVEX))
    pb = _Prepared(*_sample_pair_stack(cfg, name, dim))
    rows = []
    for f in fs:
        t1, t2, t3, t4, direct = _zee_terms(pb, f)
        dev = np.abs(t1 + t2 + t3 + t4 - direct) / np.maximum(1.0, np.abs(direct))
        rows.append(_aggregate(cfg, name, f.name, dim, -dev, np.zeros_like(dev),
                               (pb.a, pb.b), denom=np.ones_like(dev)))
    return rows


def _eval_zee_signs(cfg, name, dim):
    """Cross terms through Z: nonpositive for monotone f, nonnegative for convex f."""
    pb = _Prepared(*_sample_pair_stack(cfg, name, dim))
    rows = []
    for kind in (funcat.MONOTONE, funcat.CONVEX):
        for f in resolve_functions(cfg.functions, kind):
            t1, t2, t3, t4, _ = _zee_terms(pb, f)
            scale = np.maximum(1.0, np.abs(t1) + np.abs(t2) + np.abs(t3) + np.abs(t4))
            cross = np.maximum(t2, t4) if kind == funcat.MONOTONE else -np.minimum(t2, t4)
            rows.append(_aggregate(cfg, name, f.name, dim, -cross, np.zeros_like(cross),
                                   (pb.a, pb.b), denom=scale))
    return rows


def _conjecture_sigmas(pb, f):
    """Descending singular values of (A-B)(f(A)-f(B)) and |A-B| f(|A-B|).

    The product is symmetric exactly when A-B and f(A)-f(B) commute; those
    instances take the |eigenvalue| route, everything else goes through the
    Gram matrix.
    """
    fa = _reconstruct(pb.vec_a, f.fn(pb.lam_a))
    fb = _reconstruct(pb.vec_b, f.fn(pb.lam_b))
    m = pb.c @ (fa - fb)
    mt = np.swapaxes(m, 1, 2)
    asym = np.sqrt(np.sum((m - mt) ** 2, axis=(1, 2)))
    scale = np.maximum(np.sqrt(np.sum(m * m, axis=(1, 2))), np.finfo(float).tiny)
    symmetric = asym <= symla.SYMMETRY_RTOL * scale

    t, n, _ = m.shape
    sig_l = np.empty((t, n))
    if np.any(symmetric):
        ms = (m[symmetric] + mt[symmetric]) / 2.0
        lam, _ = symla.jacobi_eigh_batch(ms, vectors=False)
        sig_l[symmetric] = -np.sort(-np.abs(lam), axis=1)
    if not np.all(symmetric):
        rest = ~symmetric
        gram = mt[rest] @ m[rest]
        gram = (gram + np.swapaxes(gram, 1, 2)) / 2.0
        lam, _ = symla.jacobi_eigh_batch(gram, vectors=False)
        sig_l[rest] = np.sqrt(np.maximum(lam, 0.0))

    folded = pb.abs_mu * f.fn(pb.abs_mu)
    sig_r = -np.sort(-folded, axis=1)
    return sig_l, sig_r


def _eval_conjecture(cfg, name, dim):
    fs = (resolve_functions(cfg.functions, funcat.MONOTONE)
          + resolve_functions(cfg.functions, funcat.CONVEX))
    pb = _Prepared(*_sample_pair_stack(cfg, name, dim))
    rows = []
    for f in fs:
        sig_l, sig_r = _conjecture_sigmas(pb, f)
        cum_l = np.cumsum(sig_l, axis=1)
        cum_r = np.cumsum(sig_r, axis=1)
        for k in range(1, dim + 1):
            if f.kind == funcat.MONOTONE:
                lhs, rhs = cum_r[:, k - 1], cum_l[:, k - 1]
            else:
                lhs, rhs = cum_l[:, k - 1], cum_r[:, k - 1]
            rows.append(_aggregate(cfg, name, f"{f.name}|kyfan:{k}", dim, lhs, rhs,
                                   (pb.a, pb.b), {"function": f.name, "k": k}))
    return rows


_CHECK_EVALS = {
    "monotone": _eval_monotone,
    "convex": _eval_convex,
    "klein": _eval_klein,
    "ricard": _eval_ricard,
    "chain_left": _eval_chain_left,
    "chain_right": _eval_chain_right,
    "powers_stormer": _eval_powers_stormer,
    "ando": _eval_ando,
    "ando_theta": _eval_ando_theta,
    "hoelder": _eval_hoelder,
    "commuting_oracle": _eval_commuting_oracle,
    "resolvent": _eval_resolvent,
    "zee_identity": _eval_zee_identity,
    "zee_signs": _eval_zee_signs,
    "conjecture": _eval_conjecture,
}


def run_suite(cfg: SuiteConfig) -> SuiteReport:
    """Run every selected check over every dim; see the module docstring."""
    t0 = time.perf_counter()
    rows = []
    if cfg.trials > 0:
        for name in cfg.expanded_checks():
            for dim in cfg.dims:
                rows.extend(_CHECK_EVALS[name](cfg, name, dim))
    wall = (time.perf_counter() - t0) * 1000.0
    return SuiteReport(version=__version__, seed=cfg.seed, config=cfg.as_dict(),
                       checks=tuple(rows), wall_time_ms=wall)


# ---------------------------------------------------------------------------
# conjecture counterexample search


@dataclass(frozen=True)
class SearchConfig:
    dims: tuple = (2, 3, 4, 5, 6, 7, 8)
    instances: int = 1000
    restarts: int = 20
    steps: int = 50
    step_scale: float = 0.1
    functions: tuple = ("power:grid",)
    norm: str = "kyfan:all"
    tolerance: float = 1e-9
    seed: int = 42
    kinds: tuple = ("wishart", "rank_deficient")
    keep: int = 10

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if not self.dims or any(d < 1 for d in self.dims):
            raise ValueError("dims must be a nonempty list of integers >= 1")
        if self.instances < 0 or self.restarts < 0 or self.steps < 0:
            raise ValueError("instances, restarts and steps must be >= 0")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.norm != "kyfan:all":
            uinorm.parse_norm(self.norm)
        for kind in self.kinds:
            if kind not in ("wishart", "rank_deficient", "projection_pair",
                            "commuting_pair", "ordered_pair"):
                raise ValueError(f"unsupported search kind {kind!r}")

    def as_dict(self) -> dict:
        return {
            "dims": list(self.dims), "instances": self.instances,
            "restarts": self.restarts, "steps": self.steps,
            "step_scale": self.step_scale, "functions": list(self.functions),
            "norm": self.norm, "tolerance": self.tolerance, "seed": self.seed,
            "kinds": list(self.kinds), "keep": self.keep,
        }


@dataclass(frozen=True)
class SearchReport:
    version: str
    seed: int
    config: dict
    verdict: str  # no_violation_found | violation_candidate
    best_gap: float
    best_relative_gap: float
    best: Optional[dict]
    lowest: tuple
    downgraded: tuple
    instances: int
    restarts: int
    iterations: int
    wall_time_ms: float


def _search_functions(cfg: SearchConfig) -> list:
    return (resolve_functions(cfg.functions, funcat.MONOTONE)
            + resolve_functions(cfg.functions, funcat.CONVEX))


def _norm_gaps_batch(sig_l, sig_r, kind, norm: str):
    """Relative conjecture gaps, vectorized over instances.

    Returns (rel, labels) with rel of shape (T, #labels): one column per Ky
    Fan index for ``kyfan:all``, a single column otherwise.
    """
    if norm == "kyfan:all":
        lhs_v = np.cumsum(sig_l, axis=1)
        rhs_v = np.cumsum(sig_r, axis=1)
        labels = [f"kyfan:{k}" for k in range(1, sig_l.shape[1] + 1)]
    else:
        spec = uinorm.parse_norm(norm)
        if spec.family == "kyfan":
            k = int(spec.index)
            lhs_v = np.sum(sig_l[:, :k], axis=1)[:, None]
            rhs_v = np.sum(sig_r[:, :k], axis=1)[:, None]
        else:
            p = spec.index
            lhs_v = (np.sum(sig_l**p, axis=1) ** (1.0 / p))[:, None]
            rhs_v = (np.sum(sig_r**p, axis=1) ** (1.0 / p))[:, None]
        labels = [spec.label]
    if kind == funcat.MONOTONE:
        lhs_v, rhs_v = rhs_v, lhs_v
    rel = (lhs_v - rhs_v) / np.maximum(1.0, np.maximum(np.abs(lhs_v), np.abs(rhs_v)))
    return rel, labels


def _norm_gaps(sig_l, sig_r, kind, norm: str):
    """Single-instance form of :func:`_norm_gaps_batch`."""
    rel, labels = _norm_gaps_batch(sig_l[None], sig_r[None], kind, norm)
    return rel[0], labels


def _screen_chunk(pb: "_Prepared", fs, norm: str):
    """Per-instance minimum relative gap over all functions and norm indices.

    Returns (best_rel, best_f_index, best_label) arrays/lists over the batch.
    """
    t = pb.a.shape[0]
    best_rel = np.full(t, np.inf)
    best_f = np.zeros(t, dtype=int)
    best_label = [""] * t
    for fi, f in enumerate(fs):
        sig_l, sig_r = _conjecture_sigmas(pb, f)
        rel, labels = _norm_gaps_batch(sig_l, sig_r, f.kind, norm)
        col = np.argmin(rel, axis=1)
        val = rel[np.arange(t), col]
        better = val < best_rel
        best_rel[better] = val[better]
        best_f[better] = fi
        for i in np.nonzero(better)[0]:
            best_label[i] = labels[col[i]]
    return best_rel, best_f, best_label


def _instance_min_gap(a, b, fs, norm: str):
    """Minimum relative gap over functions (and norm indices) for one pair."""
    pb = _Prepared(a[None], b[None])
    best = (np.inf, None)
    for f in fs:
        sig_l, sig_r = _conjecture_sigmas(pb, f)
        rel, labels = _norm_gaps(sig_l[0], sig_r[0], f.kind, norm)
        i = int(np.argmin(rel))
        if rel[i] < best[0]:
            best = (float(rel[i]), (f, labels[i]))
    return best


def _reverify(a, b, f, norm_label: str, rtol: float):
    """Re-evaluate one candidate with tightened Jacobi tolerance and with the
    augmented (non-squaring) singular value route."""
    da = symla.jacobi_eigh(a, rtol=rtol)
    db = symla.jacobi_eigh(b, rtol=rtol)
    lam_a = symla.clip_psd_eigenvalues(da.eigenvalues)
    lam_b = symla.clip_psd_eigenvalues(db.eigenvalues)
    c = symla.symmetrize(a) - symla.symmetrize(b)
    fa = symla.reconstruct(f.fn(lam_a), da.eigenvectors)
    fb = symla.reconstruct(f.fn(lam_b), db.eigenvectors)
    m = c @ (fa - fb)
    n = m.shape[0]
    z = np.zeros((2 * n, 2 * n))
    z[:n, n:] = m.T
    z[n:, :n] = m
    sig_l = np.maximum(symla.jacobi_eigh(z, rtol=rtol).eigenvalues[:n], 0.0)
    mu = np.abs(symla.jacobi_eigh(c, rtol=rtol).eigenvalues)
    sig_r = -np.sort(-(mu * f.fn(mu)))
    spec = uinorm.parse_norm(norm_label)
    vl = uinorm.norm_from_singular_values(sig_l, spec)
    vr = uinorm.norm_from_singular_values(sig_r, spec)
    lhs, rhs = (vr, vl) if f.kind == funcat.MONOTONE else (vl, vr)
    gap = lhs - rhs
    return gap, gap / max(1.0, abs(lhs), abs(rhs))


def search_counterexample(cfg: SearchConfig) -> SearchReport:
    """Random screening plus perturbation descent on the norm-form gaps.

    Screening walks ``instances`` seeded pairs (cycling dims and sample
    kinds) and records the lowest relative gap over the function grid and
    norm family.  Descent then restarts from fresh Gaussian factors and
    perturbs one factor coordinate at a time, accepting steps that lower the
    gap of the currently worst (function, norm) choice, re-selecting that
    choice every ten steps.  Any final gap below -tolerance is re-verified
    at 100x tighter eigensolver tolerance with the augmented singular-value
    route; candidates that fail re-verification are downgraded and logged.
    """
    t0 = time.perf_counter()
    fs = _search_functions(cfg)
    if not fs:
        raise ValueError("no functions selected for the search")
    iterations = 0
    found = []  # (rel_gap, instance dict)

    def record(rel, a, b, dim, kind, f, label):
        entry = {
            "relative_gap": float(rel), "dim": int(dim), "kind": kind,
            "function": f.name, "function_class": f.kind, "norm": label,
            "A": np.asarray(a).tolist(), "B": np.asarray(b).tolist(),
        }
        found.append(entry)
        found.sort(key=lambda e: e["relative_gap"])
        del found[max(cfg.keep, 1):]

    # Screening: instances cycle through dims and sample kinds; evaluation is
    # batched per (dim, kind) chunk, which changes nothing about the values
    # (each instance still owns its derived seed).
    chunks = {}
    for i in range(cfg.instances):
        dim = cfg.dims[i % len(cfg.dims)]
        kind = cfg.kinds[(i // len(cfg.dims)) % len(cfg.kinds)]
        chunks.setdefault((dim, kind), []).append(i)
    for (dim, kind), idxs in sorted(chunks.items()):
        a = np.empty((len(idxs), dim, dim))
        b = np.empty((len(idxs), dim, dim))
        for j, i in enumerate(idxs):
            spec = sampler.SampleSpec(dim=dim, kind=kind,
                                      seed=_trial_seed(cfg.seed, "search", dim, i))
            a[j], b[j] = sampler.random_pair(spec)
        pb = _Prepared(a, b)
        best_rel, best_f, best_label = _screen_chunk(pb, fs, cfg.norm)
        iterations += len(idxs)
        for j in range(len(idxs)):
            record(best_rel[j], a[j], b[j], dim, kind, fs[best_f[j]], best_label[j])

    for r in range(cfg.restarts):
        dim = cfg.dims[r % len(cfg.dims)]
        rng = sampler.stream(cfg.seed, _check_id("descent"), dim, r)
        ga = rng.standard_normal((dim, dim))
        gb = rng.standard_normal((dim, dim))
        a, b = ga.T @ ga, gb.T @ gb
        cur_rel, hit = _instance_min_gap(a, b, fs, cfg.norm)
        iterations += 1
        if hit is None:
            continue
        f, label = hit
        for step in range(cfg.steps):
            side = int(rng.integers(2))
            i, j = int(rng.integers(dim)), int(rng.integers(dim))
            bump = cfg.step_scale * rng.standard_normal()
            g = [ga, gb][side].copy()
            g[i, j] += bump
            a2 = (g.T @ g) if side == 0 else a
            b2 = (g.T @ g) if side == 1 else b
            if (step + 1) % 10 == 0:
                rel2, hit2 = _instance_min_gap(a2, b2, fs, cfg.norm)
            else:
                pb = _Prepared(np.asarray(a2)[None], np.asarray(b2)[None])
                sig_l, sig_r = _conjecture_sigmas(pb, f)
                rels, labels = _norm_gaps(sig_l[0], sig_r[0], f.kind, cfg.norm)
                idx = labels.index(label) if label in labels else int(np.argmin(rels))
                rel2, hit2 = float(rels[idx]), (f, labels[idx])
            iterations += 1
            if rel2 < cur_rel:
                cur_rel = rel2
                f, label = hit2
                if side == 0:
                    ga, a = g, a2
                else:
                    gb, b = g, b2
        record(cur_rel, a, b, dim, "descent", f, label)

    downgraded = []
    best = found[0] if found else None
    best_gap = math.inf
    best_rel = math.inf
    verdict = "no_violation_found"
    if best is not None:
        for entry in found:
            if entry["relative_gap"] >= -cfg.tolerance:
                continue
            f = funcat.parse_function(entry["function"], entry["function_class"])
            gap, rel = _reverify(np.array(entry["A"]), np.array(entry["B"]), f,
                                 entry["norm"], rtol=symla.JACOBI_RTOL / 100.0)
            if rel < -cfg.tolerance:
                verdict = "violation_candidate"
                entry["reverified_gap"] = gap
                entry["reverified_relative_gap"] = rel
                best = entry
                break
            downgraded.append(dict(entry, reverified_relative_gap=rel))
        if verdict == "violation_candidate":
            best_gap, best_rel = best["reverified_gap"], best["reverified_relative_gap"]
        else:
            fbest = funcat.parse_function(best["function"], best["function_class"])
            g = uinorm.conjecture_gap(np.array(best["A"]), np.array(best["B"]), fbest,
                                      uinorm.parse_norm(best["norm"]), tol=cfg.tolerance)
            best_gap, best_rel = g.gap, best["relative_gap"]
    wall = (time.perf_counter() - t0) * 1000.0
    return SearchReport(
        version=__version__, seed=cfg.seed, config=cfg.as_dict(), verdict=verdict,
        best_gap=float(best_gap), best_relative_gap=float(best_rel), best=best,
        lowest=tuple(found), downgraded=tuple(downgraded),
        instances=cfg.instances, restarts=cfg.restarts, iterations=iterations,
        wall_time_ms=wall,
    )


# ---------------------------------------------------------------------------
# report emission


def suite_report_to_dict(report: SuiteReport) -> dict:
    rows = []
    for row in report.checks:
        d = {
            "name": row.name, "function": row.function, "dim": row.dim,
            "trials": row.trials, "min_gap": row.min_gap, "mean_gap": row.mean_gap,
            "min_relative_gap": row.min_relative_gap, "violations": row.violations,
        }
        if row.worst_instance is not None:
            d["worst_instance"] = row.worst_instance
        rows.append(d)
    return {
        "version": report.version, "seed": report.seed, "config": report.config,
        "checks": rows, "wall_time_ms": report.wall_time_ms,
    }


def suite_report_from_json(text: str) -> SuiteReport:
    data = json.loads(text)
    rows = tuple(
        CheckRow(
            name=d["name"], function=d["function"], dim=d["dim"], trials=d["trials"],
            min_gap=d["min_gap"], mean_gap=d["mean_gap"],
            min_relative_gap=d["min_relative_gap"], violations=d["violations"],
            worst_instance=d.get("worst_instance"),
        )
        for d in data["checks"]
    )
    return SuiteReport(version=data["version"], seed=data["seed"], config=data["config"],
                       checks=rows, wall_time_ms=data["wall_time_ms"])


def search_report_to_dict(report: SearchReport) -> dict:
    return {
        "version": report.version, "seed": report.seed, "config": report.config,
        "verdict": report.verdict, "best_gap": report.best_gap,
        "best_relative_gap": report.best_relative_gap, "best": report.best,
        "lowest": list(report.lowest), "downgraded": list(report.downgraded),
        "instances": report.instances, "restarts": report.restarts,
        "iterations": report.iterations, "wall_time_ms": report.wall_time_ms,
    }


_SUITE_CSV_FIELDS = ("name", "function", "dim", "trials", "min_gap", "mean_gap",
                     "min_relative_gap", "violations")


def emit_report(report, fmt: str = "text", destination=None) -> str:
    """Serialize a SuiteReport or SearchReport as json, csv or text."""
    if fmt == "json":
        to_dict = suite_report_to_dict if isinstance(report, SuiteReport) else search_report_to_dict
        out = json.dumps(to_dict(report), sort_keys=True, indent=1)
    elif fmt == "csv":
        if isinstance(report, SuiteReport):
            lines = [",".join(_SUITE_CSV_FIELDS)]
            for row in report.checks:
                lines.append(",".join(repr(getattr(row, f)) if isinstance(getattr(row, f), float)
                                      else str(getattr(row, f)) for f in _SUITE_CSV_FIELDS))
        else:
            lines = ["relative_gap,dim,kind,function,norm"]
            for e in report.lowest:
                lines.append(f"{e['relative_gap']!r},{e['dim']},{e['kind']},"
                             f"{e['function']},{e['norm']}")
        out = "\n".join(lines) + "\n"
    elif fmt == "text":
        out = _text_report(report)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if destination:
        with open(destination, "w", encoding="utf-8") as fh:
            fh.write(out)
    return out


def _text_report(report) -> str:
    if isinstance(report, SearchReport):
        lines = [
            f"conjecture search: verdict={report.verdict}",
            f"  best gap {report.best_gap:.6e} (relative {report.best_relative_gap:.6e})",
            f"  instances={report.instances} restarts={report.restarts} "
            f"iterations={report.iterations} wall={report.wall_time_ms:.0f} ms",
        ]
        if report.best is not None:
            b = report.best
            lines.append(f"  argmin: dim={b['dim']} kind={b['kind']} "
                         f"function={b['function']} norm={b['norm']}")
        if report.downgraded:
            lines.append(f"  downgraded candidates: {len(report.downgraded)}")
        lines.append("  lowest gaps:")
        for e in report.lowest:
            lines.append(f"    {e['relative_gap']: .3e}  dim={e['dim']} "
                         f"{e['kind']:13s} {e['function']:12s} {e['norm']}")
        return "\n".join(lines) + "\n"
    head = f"{'check':17s} {'function':22s} {'dim':>3s} {'trials':>7s} " \
           f"{'min_gap':>12s} {'mean_gap':>12s} {'min_rel':>10s} {'viol':>5s}"
    lines = [head, "-" * len(head)]
    for r in report.checks:
        lines.append(f"{r.name:17s} {r.function:22s} {r.dim:3d} {r.trials:7d} "
                     f"{r.min_gap:12.4e} {r.mean_gap:12.4e} {r.min_relative_gap:10.2e} "
                     f"{r.violations:5d}")
    lines.append(f"total violations: {report.total_violations}   "
                 f"wall: {report.wall_time_ms:.0f} ms")
    return "\n".join(lines) + "\n"
