"""Generating functions on the circle.

Classical finite sums over a frequency alpha in [-1/2, 1/2]:

    S_ell  : sum of Lambda(m) e(m^ell a)  over N/A <= m^ell <= N
    V_ell  : sum of log p   e(p^ell a)    over N/A <= p^ell <= N
    T_ell  : sum of          e(m^ell a)   over N/A <= m^ell <= N
    f_ell  : (1/ell) sum of m^(1/ell - 1) e(m a) over N/A <= m <= N
    U      : sum of e(m a) over 1 <= m <= H

and their damped (everywhere-convergent) companions weighted by
exp(-m^ell / N), written against the kernel z = 1/N - 2 pi i a.  Damped
series are truncated where a rigorous tail bound drops below tolerance and
the excluded mass is reported alongside the value.

Each term's phase is reduced modulo 1 before exponentiation, so long
supports do not accumulate rotation drift.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .arith import integer_kth_root, prime_power_weights
from .errors import GuardError
from .model import gamma_fn

TWO_PI = 2.0 * math.pi
DEFAULT_DAMPED_TOL = 1e-16
_THETA_TERMS_GUARD = 2 * 10**7


@dataclass(frozen=True)
class Frequency:
    """A circle frequency with its damped kernel z = 1/N - 2 pi i alpha."""

    alpha: float
    N: int

    def __post_init__(self) -> None:
        if not -0.5 <= self.alpha <= 0.5:
            raise ValueError(f"alpha must lie in [-1/2, 1/2], got {self.alpha}")
        if self.N < 2:
            raise ValueError(f"N must be >= 2, got {self.N}")

    @cached_property
    def z(self) -> complex:
        return complex(1.0 / self.N, -TWO_PI * self.alpha)

    @cached_property
    def Y(self) -> float:
        """Re(1/z) = N / (1 + 4 pi^2 alpha^2 N^2) > 0."""
        return self.N / (1.0 + 4.0 * math.pi**2 * self.alpha**2 * self.N**2)


class SumKind(enum.Enum):
    S = "S"
    V = "V"
    T = "T"
    F = "f"
    U = "U"
    STILDE = "Stilde"
    VTILDE = "Vtilde"
    OMEGA = "omega"

    @property
    def damped(self) -> bool:
        return self in (SumKind.STILDE, SumKind.VTILDE, SumKind.OMEGA)


@dataclass(frozen=True)
class ExpSumSample:
    kind: SumKind
    ell: int
    value: complex
    truncation_bound: float = 0.0


def unit_phases(freqs: np.ndarray, alpha: float) -> np.ndarray:
    """e(f * alpha) per frequency, phase reduced mod 1 term by term."""
    phase = np.mod(np.asarray(freqs, dtype=np.float64) * alpha, 1.0)
    return np.exp(2j * np.pi * phase)


def eval_terms(freqs: np.ndarray, coeffs: np.ndarray, alpha: float) -> complex:
    if len(freqs) == 0:
        return 0.0 + 0.0j
    return complex(np.sum(coeffs * unit_phases(freqs, alpha)))


def eval_terms_on_nodes(freqs: np.ndarray, coeffs: np.ndarray,
                        nodes: np.ndarray) -> np.ndarray:
    """Sum of coeff * e(freq * node) for every node; term loop in Python,
    node arithmetic vectorized."""
    acc = np.zeros(len(nodes), dtype=np.complex128)
    if len(freqs) == 0:
        return acc
    phase = np.empty(len(nodes), dtype=np.float64)
    for f, c in zip(np.asarray(freqs, dtype=np.float64), np.asarray(coeffs)):
        np.multiply(nodes, f, out=phase)
        np.mod(phase, 1.0, out=phase)
        acc += c * np.exp(2j * np.pi * phase)
    return acc


def _root_range(lo_value: int, hi_value: int, ell: int) -> tuple[int, int]:
    """Integer m range with m^ell in [lo_value, hi_value]."""
    if hi_value < lo_value:
        return (1, 0)
    m_lo = integer_kth_root(max(lo_value - 1, 0), ell) + 1
    m_hi = integer_kth_root(hi_value, ell)
    return (m_lo, m_hi)


def classical_support(kind: SumKind, ell: int, N: int, A: float = math.inf,
                      H: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """(frequencies, coefficients) of one classical sum as int64/float64 arrays."""
    if kind is SumKind.U:
        if H is None:
            raise ValueError("U requires H")
        m = np.arange(1, H + 1, dtype=np.int64)
        return m, np.ones(len(m), dtype=np.float64)

    if ell < 2:
        raise ValueError(f"classical sums need ell >= 2, got {ell}")
    lo_cut = 1 if math.isinf(A) else max(1, math.ceil(N / A))

    if kind is SumKind.F:
        m = np.arange(lo_cut, N + 1, dtype=np.int64)
        return m, m.astype(np.float64) ** (1.0 / ell - 1.0) / ell

    m_lo, m_hi = _root_range(lo_cut, N, ell)
    if m_hi < m_lo:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.float64)
    if kind is SumKind.T:
        m = np.arange(m_lo, m_hi + 1, dtype=np.int64)
        return m**ell, np.ones(len(m), dtype=np.float64)
    if kind in (SumKind.S, SumKind.V):
        m, w = prime_power_weights(m_lo, m_hi, primes_only=(kind is SumKind.V))
        return m**ell, w
    raise ValueError(f"{kind} is not a classical kind")


def classical_sum(kind: SumKind, ell: int, freq: Frequency,
                  A: float = math.inf, H: int | None = None) -> ExpSumSample:
    """Exact finite sum by direct evaluation."""
    freqs, coeffs = classical_support(kind, ell, freq.N, A=A, H=H)
    return ExpSumSample(kind, ell, eval_terms(freqs, coeffs, freq.alpha))


def damped_cap(ell: int, N: int, tol: float) -> tuple[int, float]:
    """Support cap M and a rigorous tail bound for sums weighted by
    exp(-m^ell/N) with per-term weights <= m.

    Uses m^ell >= M^(ell-1) m for m > M, so the tail is at most
    sum_{m>M} m rho^m with rho = exp(-M^(ell-1)/N), summed in closed form.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if not 0 < tol <= 1e-6:
        raise ValueError("tol must be in (0, 1e-6]")
    k0 = math.log(1.0 / tol) + 2.0 * math.log(N + 2.0)
    M = max(8, integer_kth_root(math.ceil(k0 * N), ell))
    while True:
        t = M ** (ell - 1) / N
        one_minus_rho = -math.expm1(-t)
        rho = math.exp(-t)
        log_lead = -(M + 1) * t
        if log_lead < -745.0:
            bound = 0.0
        else:
            bound = math.exp(log_lead) * ((M + 1) - M * rho) / one_minus_rho**2
        if bound <= tol:
            return M, bound
        M = M + max(1, M // 4)


def damped_support(kind: SumKind, ell: int, N: int,
                   tol: float = DEFAULT_DAMPED_TOL) -> tuple[np.ndarray, np.ndarray, float]:
    """(frequencies, damped coefficients, tail bound) of a damped sum."""
    M, tail = damped_cap(ell, N, tol)
    if M > 5 * 10**7:
        raise GuardError(f"damped support needs {M} terms (ell={ell}, N={N})")
    if kind is SumKind.OMEGA:
        m = np.arange(1, M + 1, dtype=np.int64)
        w = np.ones(len(m), dtype=np.float64)
    elif kind in (SumKind.STILDE, SumKind.VTILDE):
        m, w = prime_power_weights(1, M, primes_only=(kind is SumKind.VTILDE))
    else:
        raise ValueError(f"{kind} is not a damped kind")
    powers = m**ell
    coeffs = w * np.exp(-powers.astype(np.float64) / N)
    return powers, coeffs, tail


def damped_sum(kind: SumKind, ell: int, freq: Frequency,
               tol: float = DEFAULT_DAMPED_TOL) -> ExpSumSample:
    """Damped series truncated where the tail bound drops below tol."""
    freqs, coeffs, tail = damped_support(kind, ell, freq.N, tol)
    return ExpSumSample(kind, ell, eval_terms(freqs, coeffs, freq.alpha), tail)


@dataclass(frozen=True)
class ThetaMainApprox:
    value: complex
    tail_bound: float
    j_terms: int


def theta_main_approx(freq: Frequency, j_max: int = 8,
                      tol: float = DEFAULT_DAMPED_TOL) -> ThetaMainApprox:
    """Modular-side evaluation (pi/z)^(1/2)/2 - 1/2 + (pi/z)^(1/2) * j-sum.

    The j-sum runs to at least ``j_max`` terms and always far enough that the
    omitted terms (modulus exp(-j^2 pi^2 Y), monotone in j) fall below tol;
    near |alpha| = 1/2 the kernel Y is tiny and the series genuinely needs
    ~Y^(-1/2) terms, while for Y >= 1 the floor j_max already overshoots.
    The reported tail bound follows the Y-split shape of the transformed
    series (exponential for Y >= 1, algebraic below).
    """
    if j_max < 1:
        raise ValueError("j_max must be >= 1")
    z = freq.z
    Y = freq.Y
    a = math.pi**2 * Y
    need = math.sqrt(max(0.0, math.log(1.0 / tol)) / a) if a > 0 else 1.0
    J = max(j_max, math.ceil(need))
    if J > _THETA_TERMS_GUARD:
        raise GuardError(f"theta series needs {J} terms, guard {_THETA_TERMS_GUARD}")
    j = np.arange(1, J + 1, dtype=np.float64)
    terms = np.exp(-(j * j) * (math.pi**2 / z))
    sq = cmath.sqrt(math.pi / z)
    value = sq / 2.0 - 0.5 + sq * complex(np.sum(terms))
    # geometric tail of exp(-j^2 a) past J, times the sqrt prefactor
    lead = math.exp(-((J + 1) ** 2) * a) if (J + 1) ** 2 * a < 745 else 0.0
    tail = abs(sq) * lead / max(1.0 - math.exp(-(2 * J + 2) * a), 1e-300)
    return ThetaMainApprox(value, tail, J)


def tilde_error(ell: int, freq: Frequency,
                tol: float = DEFAULT_DAMPED_TOL) -> complex:
    """Deviation of the damped prime-power sum from its smooth main term
    Gamma(1/ell) / (ell z^(1/ell))."""
    main = gamma_fn(1.0 / ell) / (ell * cmath.exp(cmath.log(freq.z) / ell))
    return damped_sum(SumKind.STILDE, ell, freq, tol).value - main
