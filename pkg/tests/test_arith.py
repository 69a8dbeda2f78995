import math
import random

import numpy as np
import pytest
import sympy

from ppwin.arith import (
    integer_kth_root,
    is_prime,
    iter_prime_segments,
    mangoldt_weights,
    prime_power_weights,
    primes_in_range,
)


def _sieve_bools(limit):
    s = np.ones(limit + 1, dtype=bool)
    s[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if s[p]:
            s[p * p :: p] = False
    return s


class TestIsPrime:
    def test_small_examples(self):
        assert is_prime(2)
        assert not is_prime(0) and not is_prime(1)
        assert not is_prime(561)  # Carmichael number
        assert is_prime(2**61 - 1)

    def test_mersenne_against_independent_oracle(self):
        assert is_prime(2**61 - 1) == bool(sympy.isprime(2**61 - 1))

    def test_exhaustive_vs_sieve(self):
        limit = 300_000
        sieve = _sieve_bools(limit)
        for n in range(limit + 1):
            assert is_prime(n) == bool(sieve[n]), n

    def test_sampled_vs_sieve_to_1e7(self):
        limit = 10**7
        sieve = _sieve_bools(limit)
        rng = random.Random(7)
        for _ in range(30_000):
            n = rng.randrange(limit)
            assert is_prime(n) == bool(sieve[n]), n

    def test_random_64bit_vs_sympy(self):
        rng = random.Random(11)
        for _ in range(300):
            n = rng.randrange(2**62, 2**63)
            assert is_prime(n) == bool(sympy.isprime(n)), n


class TestIntegerKthRoot:
    def test_examples(self):
        assert integer_kth_root(8, 3) == 2
        assert integer_kth_root(10**18, 2) == 10**9
        assert integer_kth_root(2**63 - 1, 2) == 3037000499

    def test_exactness_property(self):
        rng = random.Random(1234)
        for _ in range(200_000):
            k = rng.randint(1, 64)
            n = rng.randrange(0, 2**rng.randint(1, 63))
            r = integer_kth_root(n, k)
            assert r**k <= n, (n, k, r)
            assert (r + 1) ** k > n, (n, k, r)

    def test_exact_power_boundaries(self):
        for m in (2, 3, 10, 99, 2**21):
            for k in (2, 3, 5, 11):
                if m**k > 2**63:
                    continue
                assert integer_kth_root(m**k, k) == m
                assert integer_kth_root(m**k - 1, k) == m - 1
                assert integer_kth_root(m**k + 1, k) == m

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            integer_kth_root(-1, 2)
        with pytest.raises(ValueError):
            integer_kth_root(5, 0)


class TestPrimesInRange:
    def test_examples(self):
        assert list(primes_in_range(90, 100).primes()) == [97]
        assert primes_in_range(2, 100).count() == 25
        assert primes_in_range(10, 5).count() == 0

    def test_agrees_with_trial_division(self):
        seg = primes_in_range(10**6, 10**6 + 10**4)
        expected = [n for n in range(10**6, 10**6 + 10**4 + 1) if sympy.isprime(n)]
        assert list(seg.primes()) == expected

    def test_membership_flags(self):
        seg = primes_in_range(2, 1000)
        for n in range(2, 1001):
            assert seg.is_prime_flag(n) == is_prime(n), n

    def test_stitched_segments_match_whole_range(self):
        lo, hi = 1000, 50_000
        whole = list(primes_in_range(lo, hi).primes())
        stitched = []
        for seg in iter_prime_segments(lo, hi, segment_size=4096):
            stitched.extend(seg.primes())
        assert stitched == whole

    def test_segment_size_guard(self):
        with pytest.raises(ValueError):
            primes_in_range(0, 2**25, segment_size=2**24)


def _mangoldt_brute(m):
    if m < 2:
        return 0.0
    p = 2
    while p * p <= m:
        if m % p == 0:
            q = m
            while q % p == 0:
                q //= p
            return math.log(p) if q == 1 else 0.0
        p += 1
    return math.log(m)


class TestMangoldtWeights:
    def test_examples(self):
        assert [(e.m, round(e.weight, 12)) for e in mangoldt_weights(8, 9)] == [
            (8, round(math.log(2), 12)),
            (9, round(math.log(3), 12)),
        ]
        assert [e.m for e in mangoldt_weights(14, 16)] == [16]
        assert mangoldt_weights(1, 1) == []

    def test_primes_only_restricts_to_first_powers(self):
        full = {e.m for e in mangoldt_weights(2, 1000)}
        primes = {e.m for e in mangoldt_weights(2, 1000, primes_only=True)}
        assert primes < full
        assert 8 in full and 8 not in primes
        assert all(is_prime(m) for m in primes)

    def test_chebyshev_psi_vs_bruteforce(self):
        x = 10**5
        ms, ws = prime_power_weights(1, x)
        psi = math.fsum(ws)
        brute = math.fsum(_mangoldt_brute(m) for m in range(1, x + 1))
        assert abs(psi - brute) <= 1e-9 * brute

    def test_weights_match_bruteforce_pointwise(self):
        entries = {e.m: e.weight for e in mangoldt_weights(1, 2000)}
        for m in range(1, 2001):
            w = _mangoldt_brute(m)
            if w == 0.0:
                assert m not in entries
            else:
                assert math.isclose(entries[m], w, rel_tol=1e-15)
