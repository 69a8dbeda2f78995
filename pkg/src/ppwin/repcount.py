"""Windowed representation counts over (N, N+H].

A window value at n is the weighted number of ordered representations
n = x + y with x = p1^ell1 (weight log p1) and y either a second prime power
p2^ell2 (extra weight log p2) or an integer power m^ell2, m >= 1.  Truncated
variants additionally require N/A <= x, y <= N; damped instances weight each
n's contribution by exp(-n/N).

The streaming total iterates the first side's primes and brackets the second
side with exact integer roots, so the work is O(pi((N+H)^(1/ell1)) * (1 +
H / N^(1 - 1/ell2))) and windows near N = 10^12 stay feasible.  Totals are
accumulated in fixed chunk order with exact (fsum) reduction, so results do
not depend on the worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .arith import integer_kth_root, is_prime, iter_primes, primes_in_range
from .errors import GuardError
from .model import ProblemConfig, Variant, cutoff_a

DENSE_H_GUARD = 2**27
BRUTE_N_GUARD = 10**9
_CHUNK_P = 1 << 16       # first-side chunk width (fixed; independent of threads)
_SIEVE_WIDTH = 64        # second-side ranges at least this wide get sieved


@dataclass(frozen=True)
class WindowCounts:
    """Dense per-offset weighted counts; values[i] holds n = N + 1 + i."""

    N: int
    H: int
    values: np.ndarray

    def total(self) -> float:
        return float(np.sum(self.values))


def _lower_cut(N: int, A: float | None) -> int:
    """Smallest admissible summand under the N/A <= . cutoff (1 if none)."""
    if A is None or math.isinf(A):
        return 1
    return max(1, math.ceil(N / A))


def _first_side_range(cfg: ProblemConfig) -> tuple[int, int]:
    """Prime range [p_lo, p_hi] for the first summand x = p^ell1."""
    N, H = cfg.N, cfg.H
    if cfg.variant.truncated:
        lo_cut = _lower_cut(N, cfg.effective_cutoff())
        x_lo, x_hi = lo_cut, min(N, N + H - lo_cut)
    else:
        x_lo, x_hi = 1, N + H - 1
    if x_hi < x_lo:
        return (2, 1)
    p_lo = integer_kth_root(max(x_lo - 1, 0), cfg.ell1) + 1
    p_hi = integer_kth_root(x_hi, cfg.ell1)
    return (max(p_lo, 2), p_hi)


def _second_side_m_range(cfg: ProblemConfig, x: int) -> tuple[int, int]:
    """Integer root range [m_lo, m_hi] of admissible y = m^ell2 given x."""
    N, H = cfg.N, cfg.H
    y_lo = N - x + 1
    y_hi = N + H - x
    if cfg.variant.truncated:
        y_lo = max(y_lo, _lower_cut(N, cfg.effective_cutoff()))
        y_hi = min(y_hi, N)
    if y_hi < y_lo or y_hi < 1:
        return (1, 0)
    m_lo = integer_kth_root(max(y_lo - 1, 0), cfg.ell2) + 1
    m_hi = integer_kth_root(y_hi, cfg.ell2)
    return (m_lo, m_hi)


def _iter_second_primes(m_lo: int, m_hi: int):
    """Primes in [m_lo, m_hi]; sieve wide ranges, test narrow ones."""
    if m_hi - m_lo >= _SIEVE_WIDTH:
        for p in primes_in_range(m_lo, m_hi).primes():
            yield int(p)
    else:
        for m in range(max(m_lo, 2), m_hi + 1):
            if is_prime(m):
                yield m


def _p1_contribution(cfg: ProblemConfig, p1: int) -> float:
    """Streaming contribution of one first-side prime."""
    x = p1**cfg.ell1
    m_lo, m_hi = _second_side_m_range(cfg, x)
    if m_hi < m_lo:
        return 0.0
    w1 = math.log(p1)
    N = cfg.N
    if cfg.variant.prime_power_side:
        if cfg.damped:
            parts = [math.log(m) * math.exp(-(x + m**cfg.ell2) / N)
                     for m in _iter_second_primes(m_lo, m_hi)]
        else:
            parts = [math.log(m) for m in _iter_second_primes(m_lo, m_hi)]
        return w1 * math.fsum(parts)
    if not cfg.damped:
        return w1 * (m_hi - m_lo + 1)
    m = np.arange(m_lo, m_hi + 1, dtype=np.float64)
    return w1 * float(np.sum(np.exp(-(x + m**cfg.ell2) / N)))


def _total_chunk(cfg: ProblemConfig, c_lo: int, c_hi: int) -> float:
    parts = [_p1_contribution(cfg, p1) for p1 in iter_primes(c_lo, c_hi)]
    return math.fsum(parts)


def _total_chunk_star(args) -> float:
    return _total_chunk(*args)


def rep_window_total(cfg: ProblemConfig, threads: int = 1) -> float:
    """Interval total over (N, N+H] without materializing per-n values."""
    if cfg.H == 0:
        return 0.0
    p_lo, p_hi = _first_side_range(cfg)
    chunks = [(lo, min(lo + _CHUNK_P - 1, p_hi))
              for lo in range(p_lo, p_hi + 1, _CHUNK_P)]
    if threads > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(_total_chunk_star,
                                [(cfg, lo, hi) for lo, hi in chunks]))
    else:
        parts = [_total_chunk(cfg, lo, hi) for lo, hi in chunks]
    return math.fsum(parts)


def rep_window(cfg: ProblemConfig) -> WindowCounts:
    """Dense per-n weighted counts over (N, N+H]."""
    if cfg.H > DENSE_H_GUARD:
        raise GuardError(f"dense window H={cfg.H} exceeds guard {DENSE_H_GUARD}")
    values = np.zeros(cfg.H, dtype=np.float64)
    N, ell2 = cfg.N, cfg.ell2
    p_lo, p_hi = _first_side_range(cfg)
    for p1 in iter_primes(p_lo, p_hi):
        x = p1**cfg.ell1
        m_lo, m_hi = _second_side_m_range(cfg, x)
        if m_hi < m_lo:
            continue
        w1 = math.log(p1)
        if cfg.variant.prime_power_side:
            for m in _iter_second_primes(m_lo, m_hi):
                n = x + m**ell2
                w = w1 * math.log(m)
                if cfg.damped:
                    w *= math.exp(-n / N)
                values[n - N - 1] += w
        else:
            for m in range(m_lo, m_hi + 1):
                n = x + m**ell2
                w = w1 * math.exp(-n / N) if cfg.damped else w1
                values[n - N - 1] += w
    return WindowCounts(cfg.N, cfg.H, values)


def rep_brute(n: int, variant: Variant, ell1: int, ell2: int,
              cutoff_a_value: float | None = None, damped: bool = False,
              N: int | None = None) -> float:
    """Ground-truth weight of a single n by exhaustive double enumeration.

    Both summand lists are enumerated in full (no root bracketing), then
    joined on x + y = n; used only as a test oracle.
    """
    if n > BRUTE_N_GUARD:
        raise GuardError(f"brute oracle capped at n <= {BRUTE_N_GUARD}")
    if n < 2:
        return 0.0
    truncated = variant.truncated
    if (truncated or damped) and N is None:
        raise ValueError("N is required for truncated or damped evaluation")
    if truncated:
        A = cutoff_a_value if cutoff_a_value is not None else cutoff_a(N, 1.0)
        lo_cut, hi_cut = _lower_cut(N, A), N
    else:
        lo_cut, hi_cut = 1, n  # no cutoff; x, y < n anyway

    second: dict[int, float] = {}
    m = 1
    while m**ell2 <= n - 1:
        y = m**ell2
        if lo_cut <= y <= hi_cut:
            if variant.prime_power_side:
                if is_prime(m):
                    second[y] = math.log(m)
            else:
                second[y] = second.get(y, 0.0) + 1.0
        m += 1

    total = 0.0
    p = 2
    while p**ell1 <= n - 1:
        if is_prime(p):
            x = p**ell1
            if lo_cut <= x <= hi_cut and (n - x) in second:
                total += math.log(p) * second[n - x]
        p += 1
    if damped and total:
        total *= math.exp(-n / N)
    return total
