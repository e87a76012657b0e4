"""traceineq: numerical verification of trace and norm inequalities for
operator monotone and operator convex matrix functions."""

from .funcat import (
    CONVEX,
    MONOTONE,
    OperatorFunction,
    QuadratureSpec,
    atom,
    catalog,
    eval_derivative,
    eval_scalar,
    eval_via_representation,
    log1p,
    parse_function,
    power,
    qatom,
    square,
)
from .harness import (
    SearchConfig,
    SearchReport,
    SuiteConfig,
    SuiteReport,
    emit_report,
    run_suite,
    search_counterexample,
    suite_report_from_json,
)
from .ineq import (
    GapReport,
    convex_gap,
    interpolation_chain,
    klein_gap,
    monotone_gap,
    powers_stormer_gap,
    ricard_gap,
    scalar_power_gap,
    zee_decomposition,
)
from .sampler import SampleSpec, random_pair, random_psd
from .symla import (
    abs_matrix,
    apply_scalar_function,
    decompose_parts,
    jacobi_eigh,
    load_matrix,
    resolvent_residual,
    singular_values,
    symmetrize,
    trace_product,
)
from .uinorm import NormSpec, ando_gap, ando_theta_gap, conjecture_gap, ky_fan_norm, schatten_norm

__version__ = "0.1.0"

__all__ = [
    "CONVEX",
    "MONOTONE",
    "GapReport",
    "NormSpec",
    "OperatorFunction",
    "QuadratureSpec",
    "SampleSpec",
    "SearchConfig",
    "SearchReport",
    "SuiteConfig",
    "SuiteReport",
    "abs_matrix",
    "ando_gap",
    "ando_theta_gap",
    "apply_scalar_function",
    "atom",
    "catalog",
    "conjecture_gap",
    "convex_gap",
    "decompose_parts",
    "emit_report",
    "eval_derivative",
    "eval_scalar",
    "eval_via_representation",
    "interpolation_chain",
    "jacobi_eigh",
    "klein_gap",
    "ky_fan_norm",
    "load_matrix",
    "log1p",
    "monotone_gap",
    "parse_function",
    "power",
    "powers_stormer_gap",
    "qatom",
    "random_pair",
    "random_psd",
    "resolvent_residual",
    "ricard_gap",
    "run_suite",
    "scalar_power_gap",
    "schatten_norm",
    "search_counterexample",
    "singular_values",
    "square",
    "suite_report_from_json",
    "symmetrize",
    "trace_product",
    "zee_decomposition",
]
