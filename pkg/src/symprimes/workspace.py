"""Table ownership for long-lived processes.

Library operations never build tables behind the caller's back: they
raise ``OutOfRangeError`` naming the bound they need.  A ``Workspace``
is the piece that reacts, growing a shared pair of tables on demand
(under a lock) up to configurable ceilings.  Once built, tables are
immutable, so concurrent readers need no coordination.
"""

from __future__ import annotations

import os
import sys
import threading

from .errors import OutOfRangeError
from .sieve import FactorTable, PrimalityTable, Tables

MAX_PRIMALITY_ENV = "SYMPRIMES_MAX_PRIMALITY_BOUND"
MAX_FACTOR_ENV = "SYMPRIMES_MAX_FACTOR_BOUND"

DEFAULT_MAX_PRIMALITY_BOUND = 1 << 32  # ~256 MiB of packed bits
DEFAULT_MAX_FACTOR_BOUND = 1 << 28  # ~1 GiB of smallest-prime-factor words

# Builds at or above this size report per-segment progress on stderr.
_PROGRESS_THRESHOLD = 1 << 28


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        return default


def _round_up(n: int) -> int:
    """Next power of two, so near-miss requests reuse one build."""
    return 1 << max(n - 1, 1).bit_length()


class Workspace:
    def __init__(
        self,
        cache_dir: str | None = None,
        max_primality_bound: int | None = None,
        max_factor_bound: int | None = None,
    ):
        self.cache_dir = cache_dir
        self.max_primality_bound = (
            max_primality_bound
            if max_primality_bound is not None
            else _env_int(MAX_PRIMALITY_ENV, DEFAULT_MAX_PRIMALITY_BOUND)
        )
        self.max_factor_bound = (
            max_factor_bound
            if max_factor_bound is not None
            else _env_int(MAX_FACTOR_ENV, DEFAULT_MAX_FACTOR_BOUND)
        )
        self._lock = threading.Lock()
        self._tables: Tables | None = None

    # -- bookkeeping ------------------------------------------------------

    @property
    def primality_bound(self) -> int:
        return self._tables.primality.bound if self._tables else 0

    @property
    def factor_bound(self) -> int:
        return self._tables.factors.bound if self._tables else 0

    def _progress(self, done: int, total: int) -> None:
        print(f"sieve segment {done}/{total}", file=sys.stderr, flush=True)

    # -- provisioning -----------------------------------------------------

    def tables(self, primality_bound: int, factor_bound: int | None = None) -> Tables:
        """Current tables, grown if needed to cover the requested bounds."""
        primality_bound = max(primality_bound, 4)
        factor_bound = max(factor_bound or 4, 4)
        if primality_bound > self.max_primality_bound:
            raise OutOfRangeError(
                f"request needs primality to {primality_bound}, above the "
                f"configured ceiling {self.max_primality_bound} "
                f"(raise ${MAX_PRIMALITY_ENV})",
                required_bound=primality_bound,
            )
        if factor_bound > self.max_factor_bound:
            raise OutOfRangeError(
                f"request needs factorizations to {factor_bound}, above the "
                f"configured ceiling {self.max_factor_bound} "
                f"(raise ${MAX_FACTOR_ENV})",
                required_bound=factor_bound,
            )
        with self._lock:
            have = self._tables
            if (
                have is not None
                and have.primality.bound >= primality_bound
                and have.factors.bound >= factor_bound
            ):
                return have
            new_p = max(_round_up(primality_bound), self.primality_bound)
            new_f = max(_round_up(factor_bound), self.factor_bound)
            progress = self._progress if new_p >= _PROGRESS_THRESHOLD else None
            if have is not None and have.primality.bound >= new_p:
                primality = have.primality
            else:
                primality = PrimalityTable.from_cache_or_build(
                    new_p, cache_dir=self.cache_dir, progress=progress
                )
            if have is not None and have.factors.bound >= new_f:
                factors = have.factors
            else:
                factors = FactorTable.build(new_f)
            self._tables = Tables(primality, factors)
            return self._tables

    # -- sized helpers for the common operations ---------------------------

    def for_count(self, x: int) -> Tables:
        return self.tables(max(2 * x - 1, 4), max(x - 1, 4))

    def for_partners(self, p: int) -> Tables:
        return self.tables(max(2 * p - 1, 4), max(p - 1, 4))

    def for_pair(self, p: int, q: int) -> Tables:
        return self.tables(max(p, q, 4), 4)

    def for_graph(self, limit: int) -> Tables:
        return self.tables(max(limit, 4), max(limit - 1, 4))

    def for_tabulate(self, max_n: int) -> Tables:
        estimate = PrimalityTable.nth_prime_bound_estimate(max_n)
        tables = self.tables(max(2 * estimate - 1, 4), max(estimate - 1, 4))
        p_n = tables.primality.nth_prime(max_n)  # exact; estimate is an upper bound
        return self.tables(max(2 * p_n - 1, 4), max(p_n - 1, 4))

    def for_diagnostics(self, x: int) -> Tables:
        return self.tables(max(x, 4), max(x - 1, 4))
