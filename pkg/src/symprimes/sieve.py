"""Segmented prime sieve and smallest-prime-factor tables.

Primality is stored as a packed bit array over the odd numbers (bit ``i``
corresponds to ``2*i + 1``, set bit = prime), so a table to bound ``N``
costs about ``N/16`` bytes plus per-segment prime-count checkpoints for
fast ``prime_count``/``nth_prime`` queries.  Smallest-prime-factor data
costs 4 bytes per integer (sentinel 0 marks a prime), which is why the
factor table is usually built to a smaller bound than the primality
table: partner searches need primality up to ``2p - 1`` while
factorizations are only needed up to ``p - 1``.

Both tables are immutable after construction and safe to share across
threads.  The primality bit array can optionally be cached on disk; see
``PrimalityTable.from_cache_or_build`` and the ``SYMPRIMES_CACHE_DIR``
environment variable.
"""

from __future__ import annotations

import math
import os
import struct
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import InvalidArgumentError, OutOfRangeError, ResourceError

# Inputs past 2**62 are rejected outright: sums like p + d and 2*x - 1 must
# stay well inside 64-bit range.
MAX_BOUND = 1 << 62

# Odd entries per sieve segment; must be a multiple of 64 so segments align
# with the packed words.
DEFAULT_SEGMENT_ODDS = 1 << 18

# Chunk size (in odd entries) for streaming unpack operations.
_UNPACK_CHUNK_ODDS = 1 << 22

# Cache file layout, little-endian: magic, format version, bound, word
# count, then the raw packed words.  A mismatch on any header field means
# the file is ignored and the table rebuilt; stale caches are never
# partially reused.
CACHE_MAGIC = b"SYMP"
CACHE_VERSION = 1
_CACHE_HEADER = struct.Struct("<4sIQQ")
CACHE_ENV_VAR = "SYMPRIMES_CACHE_DIR"

# Largest odd-flag expansion kept cached on the table (2**28 bytes).
_FLAG_CACHE_LIMIT = 1 << 28

ProgressFn = Callable[[int, int], None]


def _check_bound(bound: int, minimum: int = 2) -> int:
    if not isinstance(bound, int):
        raise InvalidArgumentError(f"bound must be an integer, got {type(bound).__name__}")
    if bound < minimum:
        raise InvalidArgumentError(f"bound must be >= {minimum}, got {bound}")
    if bound > MAX_BOUND:
        raise InvalidArgumentError(f"bound {bound} exceeds the 2**62 input limit")
    return bound


def _simple_odd_flags(limit: int) -> np.ndarray:
    """Byte-per-odd sieve to ``limit`` inclusive; used for base primes."""
    half = (limit + 1) // 2
    flags = np.ones(half, dtype=np.uint8)
    flags[0] = 0  # the number 1
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[p >> 1]:
            flags[(p * p) >> 1 :: p] = 0
    return flags


class PrimalityTable:
    """Queryable primality over ``[2, bound]``, built by segmented sieving."""

    def __init__(self, bound: int, bits: np.ndarray, segment_odds: int):
        self.bound = bound
        self._bits = bits
        self._segment_odds = segment_odds
        self._n_odds = (bound + 1) // 2
        self._checkpoints = self._compute_checkpoints()
        self._total_odd_primes = int(self._checkpoints[-1])
        self._odd_flag_bytes: bytes | None = None

    # -- construction ---------------------------------------------------

    @classmethod
    def build(
        cls,
        bound: int,
        segment_odds: int = DEFAULT_SEGMENT_ODDS,
        progress: ProgressFn | None = None,
    ) -> "PrimalityTable":
        """Sieve all odd numbers up to ``bound`` segment by segment.

        The output is identical for every valid ``segment_odds``; the knob
        only trades peak working-set size against loop overhead.
        """
        _check_bound(bound)
        if segment_odds % 64 != 0 or segment_odds <= 0:
            raise InvalidArgumentError("segment_odds must be a positive multiple of 64")
        n_odds = (bound + 1) // 2
        n_words = (n_odds + 63) // 64
        try:
            bits = np.zeros(n_words, dtype=np.uint64)
            base = _simple_odd_flags(max(math.isqrt(bound), 3))
        except MemoryError as exc:
            raise ResourceError(
                f"could not allocate {8 * n_words} bytes for a primality table to {bound}",
                requested_bytes=8 * n_words,
            ) from exc
        base_primes = (2 * np.nonzero(base)[0] + 1).tolist()

        n_segments = (n_odds + segment_odds - 1) // segment_odds
        for seg in range(n_segments):
            lo_idx = seg * segment_odds
            hi_idx = min(lo_idx + segment_odds, n_odds)
            flags = np.ones(hi_idx - lo_idx, dtype=np.uint8)
            if seg == 0:
                flags[0] = 0  # the number 1
            lo_val = 2 * lo_idx + 1
            hi_val = 2 * hi_idx - 1  # last odd number in the segment
            for p in base_primes:
                if p * p > hi_val:
                    break
                start = max(p * p, ((lo_val + p - 1) // p) * p)
                if start % 2 == 0:
                    start += p
                if start > hi_val:
                    continue
                flags[(start >> 1) - lo_idx :: p] = 0
            packed = np.packbits(flags, bitorder="little")
            word_lo = lo_idx // 8
            bits.view(np.uint8)[word_lo : word_lo + packed.size] = packed
            if progress is not None:
                progress(seg + 1, n_segments)
        return cls(bound, bits, segment_odds)

    def _compute_checkpoints(self) -> np.ndarray:
        """Cumulative odd-prime counts at segment starts (one extra entry
        holding the grand total)."""
        words_per_seg = self._segment_odds // 64
        n_segments = (self._n_odds + self._segment_odds - 1) // self._segment_odds
        checkpoints = np.zeros(max(n_segments, 1) + 1, dtype=np.int64)
        for seg in range(n_segments):
            w0 = seg * words_per_seg
            w1 = min(w0 + words_per_seg, self._bits.size)
            checkpoints[seg + 1] = checkpoints[seg] + int(
                np.bitwise_count(self._bits[w0:w1]).sum()
            )
        return checkpoints

    # -- queries ---------------------------------------------------------

    def _odd_bit(self, n: int) -> int:
        i = n >> 1
        return (int(self._bits[i >> 6]) >> (i & 63)) & 1

    def is_prime(self, n: int) -> bool:
        """True iff ``n`` is prime.  ``n`` past the bound raises, never a
        silent ``False``."""
        if not isinstance(n, int) or isinstance(n, bool):
            raise InvalidArgumentError(f"is_prime expects an integer, got {type(n).__name__}")
        if n < 0:
            raise InvalidArgumentError(f"is_prime expects a nonnegative integer, got {n}")
        if n > self.bound:
            raise OutOfRangeError(
                f"is_prime({n}) needs a table to at least {n}, have {self.bound}",
                required_bound=n,
            )
        if n < 2:
            return False
        if n % 2 == 0:
            return n == 2
        return bool(self._odd_bit(n))

    def _odd_primes_upto_index(self, i: int) -> int:
        """Number of set bits with index <= i."""
        seg = i // self._segment_odds
        count = int(self._checkpoints[seg])
        w0 = seg * (self._segment_odds // 64)
        w1 = i >> 6
        if w1 > w0:
            count += int(np.bitwise_count(self._bits[w0:w1]).sum())
        mask = (1 << ((i & 63) + 1)) - 1
        count += (int(self._bits[w1]) & mask).bit_count()
        return count

    def prime_count(self, x: int) -> int:
        """pi(x): the number of primes <= x."""
        if x > self.bound:
            raise OutOfRangeError(
                f"prime_count({x}) needs a table to at least {x}, have {self.bound}",
                required_bound=x,
            )
        if x < 2:
            return 0
        if x == 2:
            return 1
        return 1 + self._odd_primes_upto_index((x - 1) // 2)

    @staticmethod
    def nth_prime_bound_estimate(n: int) -> int:
        """Upper bound for the nth prime, used in error messages."""
        if n < 6:
            return 15
        return int(n * (math.log(n) + math.log(math.log(n)))) + 1

    def nth_prime(self, n: int) -> int:
        """The nth prime, 1-indexed: ``nth_prime(1) == 2``."""
        if not isinstance(n, int) or n < 1:
            raise InvalidArgumentError(f"nth_prime expects a positive integer, got {n}")
        if n == 1:
            return 2
        k = n - 1  # rank among odd primes
        if k > self._total_odd_primes:
            raise OutOfRangeError(
                f"nth_prime({n}) exceeds the table to {self.bound} "
                f"({self._total_odd_primes + 1} primes); rebuild to at least "
                f"{self.nth_prime_bound_estimate(n)}",
                required_bound=self.nth_prime_bound_estimate(n),
            )
        seg = int(np.searchsorted(self._checkpoints, k, side="left")) - 1
        need = k - int(self._checkpoints[seg])
        w0 = seg * (self._segment_odds // 64)
        w1 = min(w0 + self._segment_odds // 64, self._bits.size)
        cum = np.cumsum(np.bitwise_count(self._bits[w0:w1]).astype(np.int64))
        wpos = int(np.searchsorted(cum, need, side="left"))
        before = int(cum[wpos - 1]) if wpos > 0 else 0
        word = int(self._bits[w0 + wpos])
        remaining = need - before
        bit = -1
        for _ in range(remaining):
            bit = (word & -word).bit_length() - 1
            word &= word - 1
        idx = (w0 + wpos) * 64 + bit
        return 2 * idx + 1

    def primes_in(self, lo: int, hi: int) -> np.ndarray:
        """All primes in ``[lo, hi]`` as an int64 array, ascending."""
        if hi > self.bound:
            raise OutOfRangeError(
                f"primes_in(..., {hi}) needs a table to at least {hi}, have {self.bound}",
                required_bound=hi,
            )
        lo = max(lo, 2)
        if lo > hi:
            return np.empty(0, dtype=np.int64)
        parts: list[np.ndarray] = []
        if lo <= 2 <= hi:
            parts.append(np.array([2], dtype=np.int64))
        first_odd = lo if lo % 2 == 1 else lo + 1
        i_lo = max(first_odd >> 1, 1)  # skip index 0 (the number 1)
        i_hi = (hi - 1) // 2  # index of last odd <= hi
        bv = self._bits.view(np.uint8)
        start = i_lo
        while start <= i_hi:
            stop = min(start + _UNPACK_CHUNK_ODDS - 1, i_hi)
            b0, b1 = start // 8, stop // 8 + 1
            flags = np.unpackbits(bv[b0:b1], bitorder="little")
            idx = np.nonzero(flags)[0] + b0 * 8
            idx = idx[(idx >= start) & (idx <= stop)]
            if idx.size:
                parts.append((2 * idx + 1).astype(np.int64))
            start = stop + 1
        if not parts:
            return np.empty(0, dtype=np.int64)
        return np.concatenate(parts)

    def odd_flag_bytes(self) -> bytes:
        """One byte per odd number (1 = prime), for tight scan loops.

        Costs ``bound/2`` bytes, eight times the packed table, so the
        expansion is cached only below ``_FLAG_CACHE_LIMIT``.
        """
        if self._odd_flag_bytes is not None:
            return self._odd_flag_bytes
        chunks = []
        bv = self._bits.view(np.uint8)
        for b0 in range(0, bv.size, _UNPACK_CHUNK_ODDS // 8):
            b1 = min(b0 + _UNPACK_CHUNK_ODDS // 8, bv.size)
            chunks.append(np.unpackbits(bv[b0:b1], bitorder="little").tobytes())
        flat = b"".join(chunks)[: self._n_odds]
        if self._n_odds <= _FLAG_CACHE_LIMIT:
            self._odd_flag_bytes = flat
        return flat

    # -- cache -----------------------------------------------------------

    def save(self, path: str) -> None:
        header = _CACHE_HEADER.pack(CACHE_MAGIC, CACHE_VERSION, self.bound, self._bits.size)
        tmp = f"{path}.tmp.{os.getpid()}"
        with open(tmp, "wb") as fh:
            fh.write(header)
            fh.write(self._bits.astype("<u8", copy=False).tobytes())
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str, segment_odds: int = DEFAULT_SEGMENT_ODDS) -> "PrimalityTable | None":
        """Load a cached table; any header mismatch returns None (rebuild)."""
        try:
            with open(path, "rb") as fh:
                raw = fh.read(_CACHE_HEADER.size)
                if len(raw) != _CACHE_HEADER.size:
                    return None
                magic, version, bound, n_words = _CACHE_HEADER.unpack(raw)
                if magic != CACHE_MAGIC or version != CACHE_VERSION:
                    return None
                body = fh.read(8 * n_words)
        except OSError:
            return None
        if len(body) != 8 * n_words or n_words != ((bound + 1) // 2 + 63) // 64:
            return None
        bits = np.frombuffer(body, dtype="<u8").astype(np.uint64, copy=False)
        return cls(int(bound), bits, segment_odds)

    @classmethod
    def from_cache_or_build(
        cls,
        bound: int,
        cache_dir: str | None = None,
        segment_odds: int = DEFAULT_SEGMENT_ODDS,
        progress: ProgressFn | None = None,
    ) -> "PrimalityTable":
        """Build, consulting ``cache_dir`` (or $SYMPRIMES_CACHE_DIR) first."""
        _check_bound(bound)
        cache_dir = cache_dir if cache_dir is not None else os.environ.get(CACHE_ENV_VAR)
        if not cache_dir:
            return cls.build(bound, segment_odds=segment_odds, progress=progress)
        path = os.path.join(cache_dir, f"symp_{bound}.primbits")
        cached = cls.load(path, segment_odds=segment_odds)
        if cached is not None and cached.bound == bound:
            return cached
        table = cls.build(bound, segment_odds=segment_odds, progress=progress)
        try:
            os.makedirs(cache_dir, exist_ok=True)
            table.save(path)
        except OSError:
            pass  # cache is best-effort
        return table


@dataclass(frozen=True)
class Factorization:
    """Canonical factorization: primes strictly increasing, exponents >= 1.

    ``n == 1`` carries an empty factor list.
    """

    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def p_plus(self) -> int:
        """Largest prime factor; 0 for n == 1."""
        return self.factors[-1][0] if self.factors else 0

    @property
    def big_omega(self) -> int:
        return sum(e for _, e in self.factors)

    @property
    def small_omega(self) -> int:
        return len(self.factors)

    def divisor_count(self) -> int:
        out = 1
        for _, e in self.factors:
            out *= e + 1
        return out

    def divisors(self) -> list[int]:
        """All divisors in increasing order."""
        divs = [1]
        for p, e in self.factors:
            pk = 1
            block = list(divs)
            for _ in range(e):
                pk *= p
                divs.extend(d * pk for d in block)
        divs.sort()
        return divs


class FactorTable:
    """Smallest-prime-factor array over ``[2, bound]``.

    Internally the sentinel 0 marks primes (their smallest factor is
    themselves), keeping the array in 4-byte entries for any bound below
    2**62 since composite smallest factors never exceed sqrt(bound).
    """

    def __init__(self, bound: int, spf: np.ndarray):
        self.bound = bound
        self._spf = spf
        self._spf_list: list[int] | None = None

    @classmethod
    def build(cls, bound: int) -> "FactorTable":
        _check_bound(bound)
        try:
            spf = np.zeros(bound + 1, dtype=np.uint32)
        except MemoryError as exc:
            raise ResourceError(
                f"could not allocate {4 * (bound + 1)} bytes for a factor table to {bound}",
                requested_bytes=4 * (bound + 1),
            ) from exc
        if bound >= 4:
            spf[4::2] = 2
        for p in range(3, math.isqrt(bound) + 1, 2):
            if spf[p] == 0:
                sl = spf[p * p :: 2 * p]
                sl[sl == 0] = p
        return cls(bound, spf)

    def _check_n(self, n: int) -> None:
        if not isinstance(n, int) or isinstance(n, bool):
            raise InvalidArgumentError(f"expected an integer, got {type(n).__name__}")
        if n < 1:
            raise InvalidArgumentError(f"factorization is defined for n >= 1, got {n}")
        if n > self.bound:
            raise OutOfRangeError(
                f"n={n} exceeds the factor table bound {self.bound}",
                required_bound=n,
            )

    def smallest_prime_factor(self, n: int) -> int:
        self._check_n(n)
        if n == 1:
            return 1
        sp = int(self._spf[n])
        return sp if sp else n

    def factorize(self, n: int) -> Factorization:
        """Canonical factorization of ``n``; repeated calls are identical."""
        self._check_n(n)
        m = n
        spf = self._spf
        out: list[tuple[int, int]] = []
        while m > 1:
            sp = int(spf[m])
            if sp == 0:
                sp = m
            e = 0
            while m % sp == 0:
                m //= sp
                e += 1
            out.append((sp, e))
        return Factorization(n, tuple(out))

    def divisors(self, n: int) -> list[int]:
        return self.factorize(n).divisors()

    def p_plus(self, n: int) -> int:
        """Largest prime factor of n, with p_plus(1) == 0."""
        self._check_n(n)
        if n == 1:
            return 0
        m, spf, largest = n, self._spf, 0
        while m > 1:
            sp = int(spf[m])
            if sp == 0:
                return m  # m itself is prime and the largest factor
            largest = sp if sp > largest else largest
            while m % sp == 0:
                m //= sp
        return largest

    def big_omega(self, n: int) -> int:
        self._check_n(n)
        m, spf, count = n, self._spf, 0
        while m > 1:
            sp = int(spf[m])
            if sp == 0:
                return count + 1
            m //= sp
            count += 1
        return count

    def small_omega(self, n: int) -> int:
        self._check_n(n)
        m, spf, count, prev = n, self._spf, 0, 0
        while m > 1:
            sp = int(spf[m])
            if sp == 0:
                return count + (1 if m != prev else 0)
            if sp != prev:
                count += 1
                prev = sp
            m //= sp
        return count

    def spf_accessor(self) -> "list[int] | np.ndarray":
        """Fast random-access view of the table for scan loops.

        Plain Python lists index several times faster than numpy scalars,
        so the array is expanded once (and kept) for moderate bounds.
        """
        if self._spf_list is not None:
            return self._spf_list
        if self.bound <= 1 << 26:
            self._spf_list = self._spf.tolist()
            return self._spf_list
        return self._spf


class Tables(NamedTuple):
    primality: PrimalityTable
    factors: FactorTable


def build_tables(
    bound: int,
    factor_bound: int | None = None,
    cache_dir: str | None = None,
    segment_odds: int = DEFAULT_SEGMENT_ODDS,
    progress: ProgressFn | None = None,
) -> Tables:
    """Build both tables; the factor table may stop at a smaller bound.

    Memory model: about ``bound/16`` bytes for primality plus
    ``4 * factor_bound`` bytes for smallest prime factors.
    """
    _check_bound(bound)
    fbound = bound if factor_bound is None else _check_bound(factor_bound)
    primality = PrimalityTable.from_cache_or_build(
        bound, cache_dir=cache_dir, segment_odds=segment_odds, progress=progress
    )
    return Tables(primality, FactorTable.build(fbound))
