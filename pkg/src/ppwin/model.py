"""Problem configuration, derived constants and admissible window ranges.

The density exponent is lam = 1/ell1 + 1/ell2 and the average density
constant is c(ell1, ell2) = Gamma(1/ell1)Gamma(1/ell2) / (ell1*ell2*Gamma(lam));
the expected window total over (N, N+H] is c * H * N^(lam-1).  Admissibility
of a window width H = N^theta is an exact rational fact about exponents, so
exponents are kept as fractions until the final float conversion.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import INT_DOMAIN_MAX

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_fn(x: float) -> float:
    """Gamma(x) for x > 0 via the Lanczos approximation (g = 7, n = 9).

    Relative error is well below 1e-12 on (0, 3], the range exercised by the
    density constants and the Laplace-formula references.
    """
    if x <= 0:
        raise ValueError(f"gamma_fn requires x > 0, got {x}")
    if x < 0.5:
        # reflection keeps the series argument in its accurate range
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))
    z = x - 1.0
    s = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        s += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * s


class Variant(enum.Enum):
    """The four window counters.

    Truncated variants restrict both summands to N/A <= x <= N; Full
    variants impose no cutoff.  The second summand is a prime power for the
    ``RPP_*`` counters (weight log p1 * log p2) and an arbitrary positive
    integer power for the ``RP_*`` counters (weight log p).
    """

    RPP_TRUNC = "rpp-trunc"
    RP_TRUNC = "rp-trunc"
    RPP_FULL = "rpp-full"
    RP_FULL = "rp-full"

    @property
    def truncated(self) -> bool:
        return self in (Variant.RPP_TRUNC, Variant.RP_TRUNC)

    @property
    def prime_power_side(self) -> bool:
        """True when the second summand must be a prime power."""
        return self in (Variant.RPP_TRUNC, Variant.RPP_FULL)


def cutoff_a(N: int, d: float) -> float:
    """The slowly growing cutoff exp(d * (log N / log log N)^(1/3))."""
    if N < 16:
        raise ValueError(f"cutoff_a requires N >= 16, got {N}")
    return math.exp(d * (math.log(N) / math.log(math.log(N))) ** (1.0 / 3.0))


def cutoff_b(N: int, ell1: int, ell2: int, c: float = 1.0) -> float:
    """Arc-dissection scale N^(1-lam) * A(N, c); c defaults to 1."""
    lam = Fraction(1, ell1) + Fraction(1, ell2)
    return float(N) ** float(1 - lam) * cutoff_a(N, c)


@dataclass(frozen=True)
class DerivedConstants:
    ell1: int
    ell2: int
    lam: Fraction            # 1/ell1 + 1/ell2
    c_density: float         # Gamma(1/ell1)Gamma(1/ell2)/(ell1 ell2 Gamma(lam))
    a_param: Fraction        # ell1 / (2 (ell1-1) ell2)
    b_param: Fraction        # 3 ell1 / (2 (ell1-1))
    log_n: float | None = None


def derive_constants(ell1: int, ell2: int, N: int | None = None) -> DerivedConstants:
    if ell1 < 2 or ell2 < 2:
        raise ValueError("ell1, ell2 must be >= 2")
    lam = Fraction(1, ell1) + Fraction(1, ell2)
    c = gamma_fn(1.0 / ell1) * gamma_fn(1.0 / ell2) / (ell1 * ell2 * gamma_fn(float(lam)))
    a = Fraction(ell1, 2 * (ell1 - 1) * ell2)
    b = Fraction(3 * ell1, 2 * (ell1 - 1))
    return DerivedConstants(ell1, ell2, lam, c, a, b,
                            math.log(N) if N is not None else None)


@dataclass(frozen=True)
class ProblemConfig:
    """A fully specified counting instance.

    ``cutoff_a_value`` is the A in N/A <= x <= N for the truncated variants
    (math.inf means lower limit 1 with the <= N cap kept); it is ignored for
    the Full variants.  ``damped`` weights each summand n by exp(-n/N).
    """

    ell1: int
    ell2: int
    variant: Variant
    N: int
    H: int
    cutoff_a_value: float | None = None
    damped: bool = False

    def __post_init__(self) -> None:
        if self.ell1 < 2 or self.ell2 < 2:
            raise ValueError("ell1, ell2 must be >= 2")
        if self.N < 4:
            raise ValueError(f"N must be >= 4, got {self.N}")
        if not 0 <= self.H <= self.N:
            raise ValueError(f"H must satisfy 0 <= H <= N, got H={self.H}")
        if self.N + self.H > INT_DOMAIN_MAX:
            raise OverflowError("N + H exceeds the supported 2^63-1 domain")
        if self.variant.truncated:
            a = self.effective_cutoff()
            if not a > 1:
                raise ValueError(f"truncated variants need cutoff A > 1, got {a}")

    def effective_cutoff(self) -> float | None:
        """The A actually applied: None for Full variants, default A(N, 1)."""
        if not self.variant.truncated:
            return None
        if self.cutoff_a_value is None:
            return cutoff_a(self.N, 1.0)
        return self.cutoff_a_value


def main_term(cfg: ProblemConfig, refined: bool = False) -> float:
    """Predicted window total c(ell1,ell2) * H * N^(lam-1).

    ``refined=True`` returns the intermediate form c * sum n^(lam-1) over
    (N, N+H] instead of the collapsed H*N^(lam-1).  For damped instances the
    collapsed form carries the 1/e factor and the refined form weights each
    n by exp(-n/N).
    """
    cst = derive_constants(cfg.ell1, cfg.ell2)
    lam = float(cst.lam)
    if not refined:
        value = cst.c_density * cfg.H * float(cfg.N) ** (lam - 1.0)
        return value / math.e if cfg.damped else value
    import numpy as np

    n = np.arange(cfg.N + 1, cfg.N + cfg.H + 1, dtype=np.float64)
    terms = n ** (lam - 1.0)
    if cfg.damped:
        terms = terms * np.exp(-n / cfg.N)
    return cst.c_density * float(np.sum(terms))


class Theorem(enum.Enum):
    T1 = "T1"  # unconditional, two prime powers, truncated
    T2 = "T2"  # conditional, two prime powers, full
    T3 = "T3"  # unconditional, prime power + integer power, truncated
    T4 = "T4"  # conditional, prime power + square, full


@dataclass(frozen=True)
class HRange:
    """Admissible-exponent window for H = N^theta at a given theorem.

    ``lo_exponent``/``hi_exponent`` are the epsilon-free rational endpoints;
    the sampling window at a concrete N shrinks both ends by epsilon.  For
    the conditional theorems the lower end is an order-of-growth threshold
    carrying a (log N)^log_power factor whose constant the caller sets.
    """

    theorem: Theorem
    ell1: int
    ell2: int
    N: int
    epsilon: Fraction
    lo_exponent: Fraction
    hi_exponent: Fraction
    log_power: Fraction
    lo_is_threshold: bool
    nonempty: bool

    def lower_h(self, kappa: float = 1.0) -> float:
        """Lower end of the window at this N (threshold value for T2/T4)."""
        if self.lo_is_threshold:
            return kappa * float(self.N) ** float(self.lo_exponent) \
                * math.log(self.N) ** float(self.log_power)
        return float(self.N) ** float(self.lo_exponent + self.epsilon)

    def upper_h(self) -> float:
        return float(self.N) ** float(self.hi_exponent - self.epsilon)

    def contains(self, H: int, kappa: float = 1.0) -> bool:
        """In-range label for a concrete width H at this N."""
        return self.lower_h(kappa) <= H <= self.upper_h()


def unconditional_lower_exponent(ell1: int, ell2: int) -> Fraction:
    """Generalized lower exponent 2 - 11/(6*ell2) - 1/ell1 of the truncated
    two-prime-power problem (roles interchangeable, so stated for the pair
    as given)."""
    return 2 - Fraction(11, 6 * ell2) - Fraction(1, ell1)


def admissible_h_range(theorem: Theorem, ell1: int, ell2: int, N: int,
                       epsilon: Fraction | float = Fraction(1, 100)) -> HRange:
    """Exact admissible H-exponent interval for one of the four theorems.

    Nonemptiness is the strict rational inequality lo < hi on the
    epsilon-free endpoints: the theorems hold for every epsilon > 0, so the
    window is realizable for small epsilon exactly when the strict
    inequality holds.
    """
    eps = Fraction(epsilon).limit_denominator(10**9) if not isinstance(epsilon, Fraction) else epsilon
    if eps <= 0:
        raise ValueError("epsilon must be > 0")
    if ell1 < 2 or ell2 < 2:
        raise ValueError("ell1, ell2 must be >= 2")

    hi = Fraction(1)
    if theorem is Theorem.T1:
        if ell1 != 2:
            raise ValueError("T1 is stated for ell1 = 2")
        lo = Fraction(3, 2) - Fraction(11, 6 * ell2)
        log_pow, threshold = Fraction(0), False
    elif theorem is Theorem.T2:
        if not ell1 <= ell2:
            raise ValueError("T2 is stated for 2 <= ell1 <= ell2")
        cst = derive_constants(ell1, ell2)
        lo = 1 - cst.a_param
        log_pow, threshold = cst.b_param, True
    elif theorem is Theorem.T3:
        lo = 2 - Fraction(11, 6 * ell1) - Fraction(1, ell2)
        log_pow, threshold = Fraction(0), False
    elif theorem is Theorem.T4:
        if ell2 != 2:
            raise ValueError("T4 is stated for ell2 = 2")
        lo = 1 - Fraction(1, ell1)
        log_pow, threshold = Fraction(2), True
    else:  # pragma: no cover
        raise ValueError(f"unknown theorem {theorem}")

    return HRange(theorem, ell1, ell2, N, eps, lo, hi, log_pow, threshold,
                  nonempty=lo < hi)
