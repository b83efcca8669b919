"""gcd-difference sets, tuple admissibility, and theorem-hypothesis checks.

A *gcd-difference set* has gcd(a, b) == abs(a - b) for every pair of
members; equivalently (b - a) divides a for a < b, which is the form the
searches prune on.  Scaling by any positive constant preserves the
property.  The prime variant (pairwise gcd(p-1, q-1) == abs(p-q)) is the
same thing as a clique of the symmetric-pair graph.

Admissibility of linear forms {g_i t + h_i}: no prime divides the product
at every t.  Only primes p <= k or p dividing some g_i can be fixed
divisors, since k nonconstant forms cover at most k < p residues mod p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .errors import InvalidArgumentError, OutOfRangeError
from .sieve import Tables
from .symmetry import _is_prime_trial

SKIPPED_PRIME_NOTE = (
    "primes p > k not dividing any coefficient are skipped: k forms cover "
    "at most k < p residue classes mod p, so some t avoids them all"
)


@dataclass(frozen=True)
class GcdDiffSet:
    """Ascending distinct positive integers with gcd(a, b) == b - a pairwise."""

    elements: tuple[int, ...]


@dataclass(frozen=True)
class LinearForm:
    """The form g*t + h."""

    g: int
    h: int


@dataclass(frozen=True)
class PrimeWitness:
    """Residue check for one prime: either a t avoiding every form mod p,
    or the certificate that all residues are covered."""

    prime: int
    avoiding_residue: Optional[int]  # None when every residue hits a form

    @property
    def covered(self) -> bool:
        return self.avoiding_residue is None


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    witnesses: tuple[PrimeWitness, ...]
    skipped_note: str = SKIPPED_PRIME_NOTE


@dataclass(frozen=True)
class MaynardTaoReport:
    """Hypothesis check: positive coefficients, nonvanishing pairwise
    determinants g_i*h_j - g_j*h_i, and admissibility."""

    all_positive: bool
    nonpositive_indices: tuple[int, ...]
    determinants_nonzero: bool
    vanishing_pairs: tuple[tuple[int, int], ...]
    admissibility: Optional[AdmissibilityReport]
    passed: bool


@dataclass(frozen=True)
class BftbReport:
    """Input check: distinct offsets b_j, admissible {t + b_j}, and g
    coprime to every b_j (checked factor by factor, never as a product)."""

    distinct: bool
    duplicate_values: tuple[int, ...]
    admissibility: AdmissibilityReport
    coprime: bool
    common_factors: tuple[tuple[int, int], ...]  # (b_j, gcd(g, b_j)) with gcd > 1
    passed: bool


def _validated_elements(elements: Sequence[int]) -> tuple[int, ...]:
    if not elements:
        raise InvalidArgumentError("a gcd-difference set needs at least one element")
    out = tuple(sorted(elements))
    for a in out:
        if not isinstance(a, int) or isinstance(a, bool) or a < 1:
            raise InvalidArgumentError(f"elements must be positive integers, got {a!r}")
    if len(set(out)) != len(out):
        raise InvalidArgumentError(f"elements must be distinct, got {sorted(elements)}")
    return out


def verify_gcd_diff_set(elements: Sequence[int]) -> bool:
    """True iff gcd(a, b) == abs(a - b) for every pair."""
    vals = _validated_elements(elements)
    return all(math.gcd(a, b) == b - a for a, b in combinations(vals, 2))


def _compatible(candidate: int, chosen: Sequence[int]) -> bool:
    # (c - a) | a for every earlier a; equivalent to the gcd condition.
    return all(candidate != a and a % (candidate - a) == 0 for a in chosen)


def search_gcd_diff_set(k: int, max_element: int) -> Optional[GcdDiffSet]:
    """Smallest valid k-set, minimizing the maximum element then
    lexicographic order; None if no set fits under ``max_element``.

    The minimum is found by raising a target maximum M and taking the
    first (lexicographically smallest) ascending set that ends exactly
    at M; the divisibility form of the pair condition drives pruning.
    """
    if k < 2:
        raise InvalidArgumentError(f"set size must be >= 2, got {k}")
    if max_element < k:
        return None

    def dfs(target: int, chosen: list[int], start: int) -> Optional[list[int]]:
        if len(chosen) == k:
            return list(chosen) if chosen[-1] == target else None
        slots_left = k - len(chosen)
        for c in range(start, target - slots_left + 2):
            if _compatible(c, chosen):
                chosen.append(c)
                found = dfs(target, chosen, c + 1)
                chosen.pop()
                if found:
                    return found
        return None

    for target in range(k, max_element + 1):
        found = dfs(target, [], 1)
        if found:
            return GcdDiffSet(elements=tuple(found))
    return None


def search_prime_gcd_diff_set(
    tables: Tables,
    k: int,
    min_element: int = 2,
    prime_bound: int | None = None,
) -> Optional[GcdDiffSet]:
    """Primes with pairwise gcd(p-1, q-1) == abs(p-q), all > min_element,
    minimizing the largest member; None if the sieve bound is exhausted.

    Scans candidate maxima P upward: any qualifying set containing P sits
    inside P's partner window (P/2, P), found through the divisors of
    P - 1, so the subproblem is a tiny clique search each time.
    """
    if k < 2:
        raise InvalidArgumentError(f"set size must be >= 2, got {k}")
    primality, factors = tables
    bound = primality.bound if prime_bound is None else prime_bound
    if bound > primality.bound:
        raise OutOfRangeError(
            f"prime set search to {bound} needs primality to {bound}, "
            f"have {primality.bound}",
            required_bound=bound,
        )

    def symmetric_pair(a: int, b: int) -> bool:
        lo, hi = (a, b) if a < b else (b, a)
        return (hi - lo) != 0 and (lo - 1) % (hi - lo) == 0

    for p_max in primality.primes_in(max(min_element + 1, 3), bound).tolist():
        if p_max - 1 > factors.bound:
            raise OutOfRangeError(
                f"prime set search at {p_max} needs factorizations to {p_max - 1}, "
                f"have {factors.bound}",
                required_bound=p_max - 1,
            )
        window = []
        for d in factors.divisors(p_max - 1):
            q = p_max - d
            if q > min_element and q >= 2 and primality.is_prime(q):
                window.append(q)
        window.sort()

        def dfs(chosen: list[int], start: int) -> Optional[list[int]]:
            if len(chosen) == k - 1:
                return list(chosen)
            for i in range(start, len(window)):
                c = window[i]
                if all(symmetric_pair(c, a) for a in chosen):
                    chosen.append(c)
                    found = dfs(chosen, i + 1)
                    chosen.pop()
                    if found:
                        return found
            return None

        if len(window) >= k - 1:
            found = dfs([], 0)
            if found:
                return GcdDiffSet(elements=tuple(found + [p_max]))
    return None


def _trial_prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _primes_upto(limit: int) -> list[int]:
    return [p for p in range(2, limit + 1) if _is_prime_trial(p)]


def is_admissible(forms: Sequence[LinearForm]) -> AdmissibilityReport:
    """Check every prime that could be a fixed divisor of prod(g_i t + h_i).

    Those are the primes p <= k plus primes dividing some g_i; all others
    are skipped with the recorded justification.
    """
    if not forms:
        raise InvalidArgumentError("admissibility needs at least one form")
    for f in forms:
        if f.g == 0:
            raise InvalidArgumentError(f"constant form {f.h} has no variable part")
    k = len(forms)
    to_check = set(_primes_upto(k))
    for f in forms:
        to_check.update(_trial_prime_factors(f.g))
    witnesses = []
    admissible = True
    for p in sorted(to_check):
        avoiding = None
        for t in range(p):
            if all((f.g * t + f.h) % p != 0 for f in forms):
                avoiding = t
                break
        if avoiding is None:
            admissible = False
        witnesses.append(PrimeWitness(prime=p, avoiding_residue=avoiding))
    return AdmissibilityReport(admissible=admissible, witnesses=tuple(witnesses))


def maynard_tao_hypothesis_check(forms: Sequence[LinearForm]) -> MaynardTaoReport:
    """Report on the three hypotheses; failures carry their witnesses."""
    if not forms:
        raise InvalidArgumentError("hypothesis check needs at least one form")
    nonpositive = tuple(i for i, f in enumerate(forms) if f.g <= 0)
    vanishing = tuple(
        (i, j)
        for i, j in combinations(range(len(forms)), 2)
        if forms[i].g * forms[j].h - forms[j].g * forms[i].h == 0
    )
    admissibility = None
    if all(f.g != 0 for f in forms):
        admissibility = is_admissible(forms)
    passed = (
        not nonpositive
        and not vanishing
        and admissibility is not None
        and admissibility.admissible
    )
    return MaynardTaoReport(
        all_positive=not nonpositive,
        nonpositive_indices=nonpositive,
        determinants_nonzero=not vanishing,
        vanishing_pairs=vanishing,
        admissibility=admissibility,
        passed=passed,
    )


def bftb_input_check(b: Sequence[int], g: int) -> BftbReport:
    """Distinct offsets, admissible {t + b_j}, and gcd(g, b_j) == 1 for
    every j (factor-by-factor, so products never overflow a word)."""
    if not b:
        raise InvalidArgumentError("the offset list must be nonempty")
    if g < 1:
        raise InvalidArgumentError(f"g must be a positive integer, got {g}")
    seen: set[int] = set()
    dups = []
    for v in b:
        if v in seen:
            dups.append(v)
        seen.add(v)
    admissibility = is_admissible([LinearForm(g=1, h=v) for v in b])
    common = tuple((v, math.gcd(g, v)) for v in b if math.gcd(g, v) != 1)
    passed = not dups and admissibility.admissible and not common
    return BftbReport(
        distinct=not dups,
        duplicate_values=tuple(dups),
        admissibility=admissibility,
        coprime=not common,
        common_factors=common,
        passed=passed,
    )


def coprimality_lemma_check(b: Sequence[int]) -> bool:
    """For a prime gcd-difference set, is prod(b_i - 1) coprime to prod(b_j)?

    Computed as pairwise gcds.  The answer is always True for valid input
    (b_j dividing some b_i - 1 would force b_i - b_j > b_j - 1 >= the gcd),
    so False signals a bug or bad input rather than a mathematical outcome.
    """
    vals = _validated_elements(b)
    if len(vals) < 2:
        raise InvalidArgumentError("need at least two primes")
    for v in vals:
        if not _is_prime_trial(v):
            raise InvalidArgumentError(f"{v} is not prime")
    for a, c in combinations(vals, 2):
        if math.gcd(a - 1, c - 1) != c - a:
            raise InvalidArgumentError(
                f"{{{a}, {c}}} violates gcd(a-1, b-1) == b - a; not a prime "
                "gcd-difference set"
            )
    return all(math.gcd(a - 1, c) == 1 for a in vals for c in vals if a != c)


def dilate(s: GcdDiffSet, c: int) -> GcdDiffSet:
    """Scale every element by c > 0; validity is preserved."""
    if c < 1:
        raise InvalidArgumentError(f"dilation factor must be positive, got {c}")
    return GcdDiffSet(elements=tuple(c * a for a in s.elements))
