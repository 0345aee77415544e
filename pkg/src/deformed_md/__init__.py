"""Mirror descent on the probability simplex with deformed-logarithm link functions."""

from .bregman import Potential, bregman_div, potential_eval
from .descent import (
    DescentConfig,
    Trace,
    TraceRecord,
    g_multiply,
    md_step,
    mmd_step,
    normalized_grad,
    project,
    run,
)
from .estimators import DeformedLogTransformer, OnlinePortfolio, SimplexRegressor
from .exceptions import (
    BracketError,
    DegenerateState,
    DeformedMDError,
    DomainError,
    InvalidParams,
    LengthMismatch,
    NoConvergence,
    QuadratureFailure,
    StepFailure,
)
from .generating import GeneratingFunction, make_generating_function
from .inverse import (
    InversionSettings,
    LookupTable,
    build_lookup,
    deformed_exp,
    exp_series,
    invert_monotone,
    lookup_invert,
)
from .linkfn import (
    CATALOG,
    HTG,
    KLS,
    KS,
    Euler,
    ExtKaniadakis,
    HTGGeneral,
    Identity,
    Kaniadakis,
    LinkFamily,
    Natural,
    Tempesta,
    ThreeParam,
    Tsallis,
    dlog_eval,
    entropy,
    exp_closed,
    log_eval,
    make_family,
    tempesta_series_coeffs,
    validate_params,
)
from .problems import (
    Problem,
    cross_entropy_problem,
    finite_diff_grad,
    portfolio_problem,
    quadratic_problem,
)

__version__ = "0.1.0"
