"""Symmetric prime pairs: the predicate, partner certificates, and counts.

Two distinct primes p, q form a *symmetric pair* when
``gcd(p - 1, q - 1) == abs(p - q)``.  A prime is *symmetric* when it
belongs to some symmetric pair.  Everything here rides on one reduction:
for q = p + d (or p - d) the pair is symmetric exactly when d divides
p - 1, so partner searches walk the divisors of p - 1 instead of scanning
primes.  That is what makes million-prime surveys take seconds.

Convention: the defining notion is stated for odd primes, but the pair
{2, 3} satisfies the gcd condition (gcd(1, 2) == 1 == 3 - 2).  Whether 2
counts is a genuine choice, so both conventions ship; see ``Convention``.
For every x >= 2 the two counts differ by exactly 1 (the prime 2), since
q = 2 can only partner p = 3, which prime 5 already certifies.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .errors import InvalidArgumentError, OutOfRangeError
from .sieve import MAX_BOUND, Tables

#: 1 - (1 + log(log 2)) / log 2, the exponent in the survey's model column.
#: Pinned to the correctly rounded double (0.08607133205593420688...);
#: evaluating the formula in floats lands 8 ulp away.
ETA = 0.0860713320559342

ABOVE = "above"
BELOW = "below"


def eta() -> float:
    """The model-column exponent constant, accurate to the last double bit."""
    return ETA


@dataclass(frozen=True)
class Convention:
    """Whether the pair test may involve the prime 2 (the {2, 3} pair)."""

    include_two: bool = True


#: Matches the published survey's n = 10 row (2 counted via {2, 3}).
TABLE_CONVENTION = Convention(include_two=True)
#: The definition-faithful reading: odd primes only.
ODD_PRIMES_ONLY = Convention(include_two=False)


@dataclass(frozen=True)
class PartnerCertificate:
    """Witness that {p, q} is a symmetric pair with gap d = abs(p - q)."""

    p: int
    d: int
    q: int
    direction: str  # ABOVE: q = p + d, BELOW: q = p - d

    def __post_init__(self):
        if self.direction not in (ABOVE, BELOW):
            raise InvalidArgumentError(f"bad direction {self.direction!r}")


@dataclass(frozen=True)
class SurveyRow:
    """One row of the survey table: counts at the nth prime."""

    n: int
    p_n: int
    s: int
    ratio: float  # s / n
    model: float  # 1 / (log p_n) ** ETA


@dataclass(frozen=True)
class BoundaryReport:
    """How partner locality affects the count at x = p_n.

    ``count_restricted`` only accepts partners q <= p_n;
    ``primes_only_certified_above`` is how many primes lose their status
    under that restriction (their every partner exceeds p_n).
    """

    n: int
    p_n: int
    count_unrestricted: int
    count_restricted: int
    primes_only_certified_above: int


def _require_prime(tables: Tables, value: int, name: str) -> None:
    if not tables.primality.is_prime(value):
        raise InvalidArgumentError(f"{name}={value} is not prime")


def is_symmetric_pair(
    tables: Tables, p: int, q: int, convention: Convention = TABLE_CONVENTION
) -> bool:
    """Direct gcd test: gcd(p-1, q-1) == abs(p - q).

    Under ``include_two=False`` any pair touching 2 is simply False (the
    notion is only defined for odd primes); non-primes are an error.
    """
    _require_prime(tables, p, "p")
    _require_prime(tables, q, "q")
    if p == q:
        raise InvalidArgumentError(f"pair must be distinct, got p == q == {p}")
    if not convention.include_two and (p == 2 or q == 2):
        return False
    return math.gcd(p - 1, q - 1) == abs(p - q)


def _partner_candidates(p: int, divisors: Iterable[int]):
    """Yield (d, q, direction) candidates in (d, above-then-below) order."""
    for d in divisors:
        yield d, p + d, ABOVE
        if p - d >= 2:
            yield d, p - d, BELOW


def _check_partner_bounds(tables: Tables, p: int) -> None:
    # Partners reach q = 2p - 1 (take d = p - 1; e.g. {3, 5} and {7, 13}),
    # so primality must be known that far.
    if tables.primality.bound < 2 * p - 1:
        raise OutOfRangeError(
            f"partner search for p={p} needs primality to 2p-1 = {2 * p - 1}, "
            f"have {tables.primality.bound}",
            required_bound=2 * p - 1,
        )
    if p > 2 and tables.factors.bound < p - 1:
        raise OutOfRangeError(
            f"partner search for p={p} needs factorizations to {p - 1}, "
            f"have {tables.factors.bound}",
            required_bound=p - 1,
        )


def _admits(convention: Convention, p: int, q: int) -> bool:
    return convention.include_two or (p != 2 and q != 2)


def partners(
    tables: Tables, p: int, convention: Convention = TABLE_CONVENTION
) -> list[PartnerCertificate]:
    """Every prime q forming a symmetric pair with p, ascending by q.

    All partners lie in (p/2, 2p); each gap d divides p - 1, which is the
    reduction the whole module leans on.
    """
    _require_prime(tables, p, "p")
    _check_partner_bounds(tables, p)
    if not convention.include_two and p == 2:
        return []
    divs = [1] if p == 2 else tables.factors.divisors(p - 1)
    found = []
    for d, q, direction in _partner_candidates(p, divs):
        if _admits(convention, p, q) and tables.primality.is_prime(q):
            found.append(PartnerCertificate(p=p, d=d, q=q, direction=direction))
    found.sort(key=lambda c: c.q)
    return found


def is_symmetric(
    tables: Tables, p: int, convention: Convention = TABLE_CONVENTION
) -> Optional[PartnerCertificate]:
    """Certificate with minimal gap d (above before below on ties), else None."""
    _require_prime(tables, p, "p")
    _check_partner_bounds(tables, p)
    if not convention.include_two and p == 2:
        return None
    divs = [1] if p == 2 else tables.factors.divisors(p - 1)
    for d, q, direction in _partner_candidates(p, divs):
        if _admits(convention, p, q) and tables.primality.is_prime(q):
            return PartnerCertificate(p=p, d=d, q=q, direction=direction)
    return None


# ----------------------------------------------------------------------
# Bulk scanning

def _scan_chunk(
    primes_chunk: list[int],
    spf,
    odd_flags: bytes,
    cap: int | None,
) -> bytearray:
    """Symmetric flags for a chunk of odd primes.

    Only even divisors d of p - 1 matter here: an odd d makes p +- d even,
    and the lone even prime partner (q = 2, from p = 3, d = 1) never
    changes a flag because 5 certifies 3 anyway.  Candidates above are
    capped by ``cap`` when partner locality is being measured.
    """
    flags = bytearray(len(primes_chunk))
    limit = len(odd_flags)
    for pos, p in enumerate(primes_chunk):
        n = p - 1
        facs = []
        m = n
        while m > 1:
            sp = spf[m]
            if sp == 0:
                sp = m
            e = 0
            while m % sp == 0:
                m //= sp
                e += 1
            facs.append((sp, e))
        divs = [1]
        for prime, e in facs:
            pk = 1
            block = list(divs)
            for _ in range(e):
                pk *= prime
                divs.extend(d * pk for d in block)
        hit = 0
        for d in divs:
            if d & 1:
                continue
            q = p + d
            i = q >> 1
            if i < limit and odd_flags[i] and (cap is None or q <= cap):
                hit = 1
                break
            q = p - d
            if q >= 3 and odd_flags[q >> 1]:
                hit = 1
                break
        flags[pos] = hit
    return flags


def symmetric_flags(
    tables: Tables,
    x: int,
    partner_cap: int | None = None,
    threads: int = 1,
) -> tuple[list[int], bytearray]:
    """(odd primes <= x, flag per prime) under the divisor reduction.

    ``partner_cap`` restricts candidate partners to q <= cap (downward
    partners always qualify; they sit below p).  Chunks may be scanned by
    a thread pool; the merged result is identical for any thread count.
    """
    if x > MAX_BOUND:
        raise InvalidArgumentError(f"x={x} exceeds the 2**62 input limit")
    if tables.primality.bound < 2 * x - 1:
        raise OutOfRangeError(
            f"counting to x={x} needs primality to 2x-1 = {2 * x - 1}, "
            f"have {tables.primality.bound}",
            required_bound=2 * x - 1,
        )
    if x >= 3 and tables.factors.bound < x - 1:
        raise OutOfRangeError(
            f"counting to x={x} needs factorizations to {x - 1}, "
            f"have {tables.factors.bound}",
            required_bound=x - 1,
        )
    primes = tables.primality.primes_in(3, x).tolist()
    spf = tables.factors.spf_accessor()
    odd_flags = tables.primality.odd_flag_bytes()
    if threads <= 1 or len(primes) < 4096:
        return primes, _scan_chunk(primes, spf, odd_flags, partner_cap)
    chunk = (len(primes) + threads - 1) // threads
    pieces = [primes[i : i + chunk] for i in range(0, len(primes), chunk)]
    out = bytearray()
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(lambda c: _scan_chunk(c, spf, odd_flags, partner_cap), pieces):
            out.extend(part)
    return primes, out


def _two_counts(convention: Convention, x: int, partner_cap: int | None) -> int:
    # The prime 2 is symmetric through {2, 3} whenever the convention
    # admits it; 3 <= 2x - 1 always, but a partner cap below 3 blocks it.
    if not convention.include_two or x < 2:
        return 0
    if partner_cap is not None and partner_cap < 3:
        return 0
    return 1


def count_symmetric(
    tables: Tables,
    x: int,
    convention: Convention = TABLE_CONVENTION,
    partner_cap: int | None = None,
    threads: int = 1,
) -> int:
    """S(x): number of symmetric primes p <= x.

    Partners are allowed to exceed x (they live in (p/2, 2p)); pass
    ``partner_cap`` to study the truncated variant.
    """
    if x < 2:
        return 0
    if x == 2:
        return _two_counts(convention, x, partner_cap)
    _, flags = symmetric_flags(tables, x, partner_cap=partner_cap, threads=threads)
    return sum(flags) + _two_counts(convention, x, partner_cap)


def symmetric_primes(
    tables: Tables, x: int, convention: Convention = TABLE_CONVENTION
) -> list[int]:
    """The symmetric primes up to x, ascending."""
    if x < 2:
        return []
    out = [2] if _two_counts(convention, x, None) else []
    if x >= 3:
        primes, flags = symmetric_flags(tables, x)
        out.extend(p for p, f in zip(primes, flags) if f)
    return out


def survey_rows(max_n: int) -> list[int]:
    """Row schedule: powers of ten up to max_n, plus max_n itself."""
    if max_n < 1:
        raise InvalidArgumentError(f"max_n must be positive, got {max_n}")
    rows = []
    n = 10
    while n <= max_n:
        rows.append(n)
        n *= 10
    if not rows or rows[-1] != max_n:
        rows.append(max_n)
    return rows


def tabulate(
    tables: Tables,
    max_n: int,
    convention: Convention = TABLE_CONVENTION,
    threads: int = 1,
) -> list[SurveyRow]:
    """Survey rows (n, p_n, S(p_n), S(p_n)/n, model) at powers of ten.

    A single scan to p_max serves every row; the model column is
    1/(log p_n)**ETA in natural logs.
    """
    schedule = survey_rows(max_n)
    p_max = tables.primality.nth_prime(max_n)
    primes, flags = symmetric_flags(tables, p_max, threads=threads)
    bonus = _two_counts(convention, p_max, None)
    boundaries = {}
    for n in schedule:
        boundaries[tables.primality.nth_prime(n)] = n
    rows = []
    running = 0
    seen = 1  # the prime 2 is not in the odd scan
    for p, f in zip(primes, flags):
        running += f
        seen += 1
        n = boundaries.get(p)
        if n is not None and n == seen:
            s = running + bonus
            rows.append(
                SurveyRow(n=n, p_n=p, s=s, ratio=s / n, model=1.0 / math.log(p) ** ETA)
            )
    if max_n == 1:  # degenerate schedule: only the prime 2
        rows.append(SurveyRow(n=1, p_n=2, s=bonus, ratio=float(bonus), model=1.0 / math.log(2) ** ETA))
    return rows


def boundary_dependence(
    tables: Tables, n: int, convention: Convention = TABLE_CONVENTION
) -> BoundaryReport:
    """Measure how many primes <= p_n are certified only by partners > p_n."""
    p_n = tables.primality.nth_prime(n)
    unrestricted = count_symmetric(tables, p_n, convention)
    restricted = count_symmetric(tables, p_n, convention, partner_cap=p_n)
    return BoundaryReport(
        n=n,
        p_n=p_n,
        count_unrestricted=unrestricted,
        count_restricted=restricted,
        primes_only_certified_above=unrestricted - restricted,
    )


# ----------------------------------------------------------------------
# Eisenstein lattice counts and the Legendre symbol

def _is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def _floor_sum(n: int, m: int, a: int, b: int) -> int:
    """sum_{i=0}^{n-1} floor((a*i + b) / m), Euclidean-style in O(log)."""
    total = 0
    while True:
        if a >= m:
            total += (n - 1) * n // 2 * (a // m)
            a %= m
        if b >= m:
            total += n * (b // m)
            b %= m
        y_max = a * n + b
        if y_max < m:
            return total
        n, b, a, m = y_max // m, y_max % m, m, a


def _require_odd_prime(value: int, name: str) -> None:
    if value % 2 == 0 or value < 3:
        raise InvalidArgumentError(f"{name}={value} must be an odd prime")
    if not _is_prime_trial(value):
        raise InvalidArgumentError(f"{name}={value} is not prime")


def eisenstein_count(q: int, p: int) -> int:
    """Interior lattice points strictly below the diagonal of the
    (p/2) x (q/2) rectangle: sum over i = 1..(p-1)/2 of floor(q*i / p)."""
    _require_odd_prime(q, "q")
    _require_odd_prime(p, "p")
    if p == q:
        raise InvalidArgumentError(f"p and q must be distinct, got {p}")
    return _floor_sum((p - 1) // 2 + 1, p, q, 0)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) in {-1, 0, +1} via Euler's criterion."""
    _require_odd_prime(p, "p")
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1
