"""Exact integer number theory: primality, integer roots, segmented sieving,
and von Mangoldt / log-prime weights.

Everything here is deterministic and exact.  The supported integer domain is
capped at 2**63 - 1 so that all power/membership arithmetic stays well inside
what Python ints handle without surprises elsewhere in the package.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

INT_DOMAIN_MAX = 2**63 - 1
DEFAULT_SEGMENT_SIZE = 2**24

# Deterministic Miller-Rabin witness set valid for all n < 2^64
# (Jim Sinclair's 7-base set, see miller-rabin.appspot.com).
_MR_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < 2^64."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < _SMALL_PRIMES[-1] ** 2:
        return True
    d = n - 1
    s = 0
    while d & 1 == 0:
        d >>= 1
        s += 1
    for a in _MR_WITNESSES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def integer_kth_root(n: int, k: int) -> int:
    """Exact floor(n**(1/k)) for n >= 0, k >= 1.

    A floating-point seed followed by exact integer correction; the returned
    r always satisfies r**k <= n < (r+1)**k.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1 or n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    if n >> k == 0:  # n < 2^k, root is 1
        return 1
    r = int(n ** (1.0 / k))
    # The seed is within a few units; walk to the exact floor.
    while r > 1 and r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


@dataclass(frozen=True)
class PrimeSegment:
    """Primality table for the odd integers in [lo, hi], one bit per odd.

    ``flags`` is a little-endian packed bitset; bit i corresponds to the odd
    integer ``odd_base + 2*i``.  Query through :meth:`is_prime_flag`,
    :meth:`primes` and :meth:`count`; the number 2 is handled out of band.
    """

    lo: int
    hi: int
    odd_base: int          # smallest odd integer >= max(lo, 3)
    n_odd: int             # number of odd slots covered
    flags: np.ndarray      # packed uint8 bitset, little bit order

    def is_prime_flag(self, m: int) -> bool:
        if not (self.lo <= m <= self.hi):
            raise ValueError(f"{m} outside segment [{self.lo}, {self.hi}]")
        if m == 2:
            return True
        if m < 3 or m % 2 == 0:
            return False
        i = (m - self.odd_base) >> 1
        return bool((self.flags[i >> 3] >> (i & 7)) & 1)

    def primes(self) -> np.ndarray:
        """All primes in [lo, hi], ascending, as an int64 array."""
        if self.n_odd == 0:
            odds = np.empty(0, dtype=np.int64)
        else:
            bits = np.unpackbits(self.flags, bitorder="little")[: self.n_odd]
            odds = self.odd_base + 2 * np.nonzero(bits)[0].astype(np.int64)
        if self.lo <= 2 <= self.hi:
            return np.concatenate(([np.int64(2)], odds))
        return odds

    def count(self) -> int:
        c = int(np.unpackbits(self.flags, bitorder="little")[: self.n_odd].sum())
        if self.lo <= 2 <= self.hi:
            c += 1
        return c


@functools.lru_cache(maxsize=8)
def _small_primes_upto(limit: int) -> np.ndarray:
    """Simple full sieve for the base primes (limit <= ~3e9 never reached)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def primes_in_range(lo: int, hi: int,
                    segment_size: int = DEFAULT_SEGMENT_SIZE) -> PrimeSegment:
    """Segmented sieve of Eratosthenes over [lo, hi].

    The range length must not exceed ``segment_size`` so memory stays
    O(segment); stitch consecutive segments (or use :func:`iter_primes`)
    for longer ranges.
    """
    if hi > INT_DOMAIN_MAX:
        raise OverflowError(f"hi exceeds supported domain 2^63-1: {hi}")
    lo_eff = max(lo, 2)
    if lo > hi or hi < 2:
        return PrimeSegment(lo, hi, 3, 0, np.empty(0, dtype=np.uint8))
    if hi - lo_eff > segment_size:
        raise ValueError(
            f"range length {hi - lo_eff} exceeds segment size {segment_size}")

    odd_base = lo_eff if lo_eff % 2 == 1 else lo_eff + 1
    odd_base = max(odd_base, 3)
    n_odd = max(0, (hi - odd_base) // 2 + 1) if hi >= odd_base else 0
    odd = np.ones(n_odd, dtype=bool)

    for p in _small_primes_upto(math.isqrt(hi)):
        p = int(p)
        if p == 2:
            continue
        start = max(p * p, ((odd_base + p - 1) // p) * p)
        if start % 2 == 0:
            start += p
        if start > hi:
            continue
        odd[(start - odd_base) // 2 :: p] = False

    return PrimeSegment(lo, hi, odd_base, n_odd,
                        np.packbits(odd, bitorder="little"))


def iter_prime_segments(lo: int, hi: int,
                        segment_size: int = DEFAULT_SEGMENT_SIZE) -> Iterator[PrimeSegment]:
    """Yield consecutive PrimeSegments covering [lo, hi]."""
    start = max(lo, 2)
    while start <= hi:
        end = min(start + segment_size, hi)
        yield primes_in_range(start, end, segment_size)
        start = end + 1


def iter_primes(lo: int, hi: int,
                segment_size: int = DEFAULT_SEGMENT_SIZE) -> Iterator[int]:
    """All primes in [lo, hi], ascending, through segment-size memory."""
    for seg in iter_prime_segments(lo, hi, segment_size):
        for p in seg.primes():
            yield int(p)


class WeightEntry(NamedTuple):
    m: int
    weight: float


def prime_power_weights(lo: int, hi: int,
                        primes_only: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """Supports and weights of the von Mangoldt function on [lo, hi].

    Returns ascending arrays (m, w) with w = log p for every prime power
    m = p^k in range; ``primes_only`` keeps k = 1 (log-prime weights).
    """
    if lo < 1 or lo > hi:
        raise ValueError("need 1 <= lo <= hi")
    ms: list[int] = []
    ws: list[float] = []
    for seg in iter_prime_segments(max(lo, 2), hi):
        for p in seg.primes():
            ms.append(int(p))
            ws.append(math.log(p))
    if not primes_only:
        for p in iter_primes(2, math.isqrt(hi)):
            logp = math.log(p)
            q = p * p
            while q <= hi:
                if q >= lo:
                    ms.append(q)
                    ws.append(logp)
                q *= p
    m_arr = np.array(ms, dtype=np.int64)
    w_arr = np.array(ws, dtype=np.float64)
    order = np.argsort(m_arr, kind="stable")
    return m_arr[order], w_arr[order]


def mangoldt_weights(lo: int, hi: int,
                     primes_only: bool = False) -> list[WeightEntry]:
    """WeightEntry list for every m in [lo, hi] with Lambda(m) != 0."""
    ms, ws = prime_power_weights(lo, hi, primes_only=primes_only)
    return [WeightEntry(int(m), float(w)) for m, w in zip(ms, ws)]
