"""Short-interval representation counts for binary problems with prime
powers, with the circle-method machinery needed to check every finite-
precision identity and bound behind them."""

__version__ = "0.1.0"

from .arith import (  # noqa: E402
    PrimeSegment,
    WeightEntry,
    integer_kth_root,
    is_prime,
    mangoldt_weights,
    primes_in_range,
)
from .model import (  # noqa: E402
    DerivedConstants,
    HRange,
    ProblemConfig,
    Theorem,
    Variant,
    admissible_h_range,
    cutoff_a,
    cutoff_b,
    derive_constants,
    gamma_fn,
    main_term,
)
from .repcount import WindowCounts, rep_brute, rep_window, rep_window_total  # noqa: E402
from .expsums import (  # noqa: E402
    ExpSumSample,
    Frequency,
    SumKind,
    classical_sum,
    damped_sum,
    theta_main_approx,
)
from .verify import (  # noqa: E402
    LemmaReport,
    QuadratureGrid,
    bound_suite,
    circle_identity_check,
    fourier_coeff_on_grid,
    laplace_check,
    mean_square_report,
    parseval_check,
    theta_modular_check,
)
from .experiments import SweepRow, SweepTable, emit_report, fit_error_exponent, sweep  # noqa: E402
from .errors import GuardError  # noqa: E402

__all__ = [
    "__version__",
    "PrimeSegment", "WeightEntry", "integer_kth_root", "is_prime",
    "mangoldt_weights", "primes_in_range",
    "DerivedConstants", "HRange", "ProblemConfig", "Theorem", "Variant",
    "admissible_h_range", "cutoff_a", "cutoff_b", "derive_constants",
    "gamma_fn", "main_term",
    "WindowCounts", "rep_brute", "rep_window", "rep_window_total",
    "ExpSumSample", "Frequency", "SumKind", "classical_sum", "damped_sum",
    "theta_main_approx",
    "LemmaReport", "QuadratureGrid", "bound_suite", "circle_identity_check",
    "fourier_coeff_on_grid", "laplace_check", "mean_square_report",
    "parseval_check", "theta_modular_check",
    "SweepRow", "SweepTable", "emit_report", "fit_error_exponent", "sweep",
    "GuardError",
]
