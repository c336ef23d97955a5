"""Rigorous dimension-dependent upper bounds on the Hot Spots constant.

Library layout:

* specialfun — Bessel J_nu evaluation and log-gamma;
* zeros — first Bessel zeros j_{nu,1} and p-roots with directed rounding;
* ratio — the ratio upper bound r(d) in its four kinds;
* vfunction — Vogt / improved-Vogt exit-time prefactors, in log space;
* bound — the two-parameter bound, its minimization, and the finite-horizon
  four-parameter bound;
* asymptotic — the parameter family whose bound tends to sqrt(e);
* montecarlo — exit-time simulation and empirical V-bound validation;
* cli — the `hotspots` command-line front end.
"""

from .asymptotic import AsymptoticParams, asymptotic_bound, feasible_threshold, sweep
from .bound import (
    BoundQuery,
    BoundResult,
    FiniteBParams,
    bound_value,
    finite_b_bound,
    optimal_a,
    optimize_bound,
)
from .errors import (
    AccuracyError,
    FiniteHorizonConstraintError,
    HotspotsError,
    InfeasibleParameterError,
)
from .montecarlo import (
    DomainShape,
    SimConfig,
    SimDomain,
    TailEstimate,
    VBoundReport,
    check_vbound,
    default_dt,
    default_t_grid,
    estimate_survival,
    off_center_start,
    principal_eigenvalue,
    sample_exit_times,
    split_chunks,
    with_paths,
)
from .ratio import RatioBoundSpec, RatioKind, ratio_upper_bound
from .specialfun import EvalResult, bessel_j, log_gamma
from .vfunction import VFunctionSpec, VKind, load_custom_table, log_v
from .zeros import BesselZeroRecord, RootFamily, first_bessel_zero, first_p_root

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "AsymptoticParams",
    "BesselZeroRecord",
    "BoundQuery",
    "BoundResult",
    "DomainShape",
    "EvalResult",
    "FiniteBParams",
    "FiniteHorizonConstraintError",
    "HotspotsError",
    "InfeasibleParameterError",
    "RatioBoundSpec",
    "RatioKind",
    "RootFamily",
    "SimConfig",
    "SimDomain",
    "TailEstimate",
    "VBoundReport",
    "VFunctionSpec",
    "VKind",
    "asymptotic_bound",
    "bessel_j",
    "bound_value",
    "check_vbound",
    "default_dt",
    "default_t_grid",
    "estimate_survival",
    "off_center_start",
    "feasible_threshold",
    "finite_b_bound",
    "first_bessel_zero",
    "first_p_root",
    "load_custom_table",
    "log_gamma",
    "log_v",
    "optimal_a",
    "optimize_bound",
    "principal_eigenvalue",
    "ratio_upper_bound",
    "sample_exit_times",
    "split_chunks",
    "sweep",
    "with_paths",
    "__version__",
]
