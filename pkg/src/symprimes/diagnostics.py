"""Arithmetic statistics behind the upper-bound argument.

For primes p <= x these profile the factor structure of p - 1: how many
are smooth (largest factor of p - 1 below x**(1/log log x)), how many
carry an excess of prime factors (Omega(p - 1) above
L = floor(log log x / log 2)), and the reciprocal sum E over primes and
prime powers below x, which tracks log log x to within an additive
constant.  Counts are exact; E and thresholds are doubles.

Boundary strictness is fixed as "<= threshold" for smoothness and "> L"
for excess; flipping either only moves the handful of boundary cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvalidArgumentError, OutOfRangeError
from .sieve import Tables

MIN_X = 16  # below this log log x < 1 and the quantities lose meaning


@dataclass(frozen=True)
class ProofProfile:
    x: int
    L: int
    E: float
    smooth_threshold: float
    s1_count: int
    s2_count: int
    prime_count: int
    omega_histogram: dict[int, int] = field(default_factory=dict)


def _check_x(x: int, minimum: int = MIN_X) -> None:
    if not isinstance(x, int) or isinstance(x, bool):
        raise InvalidArgumentError(f"x must be an integer, got {type(x).__name__}")
    if x < minimum:
        raise InvalidArgumentError(f"x must be >= {minimum}, got {x}")


def L_of(x: int) -> int:
    """floor((1 / log 2) * log log x), natural logs."""
    _check_x(x)
    return math.floor(math.log(math.log(x)) / math.log(2))


def smooth_threshold(x: int) -> float:
    """x ** (1 / log log x), the smoothness cutoff applied to p - 1."""
    _check_x(x)
    return x ** (1.0 / math.log(math.log(x)))


def reciprocal_prime_power_sum(tables: Tables, x: int) -> float:
    """E: sum of 1/q over all primes and prime powers q < x.

    Primes enter as the first power; summation order is fixed (ascending
    base, then ascending exponent) so results are reproducible bit for bit.
    """
    if x - 1 > tables.primality.bound:
        raise OutOfRangeError(
            f"reciprocal sum below {x} needs primality to {x - 1}, "
            f"have {tables.primality.bound}",
            required_bound=x - 1,
        )
    total = 0.0
    for p in tables.primality.primes_in(2, x - 1).tolist():
        q = p
        while q < x:
            total += 1.0 / q
            q *= p
    return total


def omega_histogram(tables: Tables, x: int) -> dict[int, int]:
    """Counts of primes p <= x by Omega(p - 1); p = 2 contributes Omega(1) = 0."""
    if x > tables.primality.bound:
        raise OutOfRangeError(
            f"histogram to {x} needs primality to {x}, have {tables.primality.bound}",
            required_bound=x,
        )
    if x >= 3 and x - 1 > tables.factors.bound:
        raise OutOfRangeError(
            f"histogram to {x} needs factorizations to {x - 1}, "
            f"have {tables.factors.bound}",
            required_bound=x - 1,
        )
    hist: dict[int, int] = {}
    for p in tables.primality.primes_in(2, x).tolist():
        k = tables.factors.big_omega(p - 1) if p > 2 else 0
        hist[k] = hist.get(k, 0) + 1
    return dict(sorted(hist.items()))


def largest_prime_factor_decomposition(tables: Tables, p: int) -> tuple[int, int]:
    """Write p = a*r + 1 with r the largest prime factor of p - 1."""
    if not tables.primality.is_prime(p):
        raise InvalidArgumentError(f"p={p} is not prime")
    if p == 2:
        raise InvalidArgumentError("p=2 has p - 1 = 1, whose largest prime factor is 0")
    r = tables.factors.p_plus(p - 1)
    return (p - 1) // r, r


def smooth_exceptions(tables: Tables, x: int) -> list[int]:
    """Primes p <= x with P+(p - 1) above the smoothness threshold."""
    _check_x(x)
    thr = smooth_threshold(x)
    out = []
    for p in tables.primality.primes_in(3, x).tolist():
        if tables.factors.p_plus(p - 1) > thr:
            out.append(p)
    return out


def proof_profile(tables: Tables, x: int) -> ProofProfile:
    """All the profile quantities in one pass over the primes up to x."""
    _check_x(x)
    if x > tables.primality.bound:
        raise OutOfRangeError(
            f"profile at {x} needs primality to {x}, have {tables.primality.bound}",
            required_bound=x,
        )
    if x - 1 > tables.factors.bound:
        raise OutOfRangeError(
            f"profile at {x} needs factorizations to {x - 1}, "
            f"have {tables.factors.bound}",
            required_bound=x - 1,
        )
    big_l = L_of(x)
    threshold = smooth_threshold(x)
    e_sum = reciprocal_prime_power_sum(tables, x)
    factors = tables.factors
    hist: dict[int, int] = {0: 1}  # the prime 2: Omega(1) = 0
    s1 = 1  # P+(1) = 0 is below any threshold
    s2 = 0
    count = 1
    for p in tables.primality.primes_in(3, x).tolist():
        count += 1
        m = p - 1
        spf = factors._spf
        omega = 0
        largest = 0
        while m > 1:
            sp = int(spf[m])
            if sp == 0:
                largest = m if m > largest else largest
                omega += 1
                break
            largest = sp if sp > largest else largest
            while m % sp == 0:
                m //= sp
                omega += 1
        hist[omega] = hist.get(omega, 0) + 1
        if largest <= threshold:
            s1 += 1
        elif omega > big_l:
            s2 += 1
    return ProofProfile(
        x=x,
        L=big_l,
        E=e_sum,
        smooth_threshold=threshold,
        s1_count=s1,
        s2_count=s2,
        prime_count=count,
        omega_histogram=dict(sorted(hist.items())),
    )
