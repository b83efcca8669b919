import math
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symprimes import InvalidArgumentError, ODD_PRIMES_ONLY, is_symmetric_pair
from symprimes.gcdsets import (
    GcdDiffSet,
    LinearForm,
    bftb_input_check,
    coprimality_lemma_check,
    dilate,
    is_admissible,
    maynard_tao_hypothesis_check,
    search_gcd_diff_set,
    search_prime_gcd_diff_set,
    verify_gcd_diff_set,
)
from symprimes.graph import build_graph, find_cliques


class TestVerify:
    def test_examples(self):
        assert verify_gcd_diff_set([6, 8, 9, 12])
        assert verify_gcd_diff_set([2, 3, 4])
        assert not verify_gcd_diff_set([1, 2, 3])

    def test_order_does_not_matter(self):
        assert verify_gcd_diff_set([12, 6, 9, 8])

    def test_validation(self):
        with pytest.raises(InvalidArgumentError):
            verify_gcd_diff_set([])
        with pytest.raises(InvalidArgumentError):
            verify_gcd_diff_set([3, 3, 4])
        with pytest.raises(InvalidArgumentError):
            verify_gcd_diff_set([0, 4])
        with pytest.raises(InvalidArgumentError):
            verify_gcd_diff_set([-2, 4])

    def test_gcd_form_equals_divisibility_form(self):
        # exhaustive on subsets of 1..30 of sizes 2..4
        universe = range(1, 31)
        for size in (2, 3, 4):
            for combo in combinations(universe, size):
                gcd_form = all(
                    math.gcd(a, b) == b - a for a, b in combinations(combo, 2)
                )
                div_form = all(a % (b - a) == 0 for a, b in combinations(combo, 2))
                assert gcd_form == div_form == verify_gcd_diff_set(combo)


class TestSearch:
    def test_minimal_sets(self):
        assert search_gcd_diff_set(2, 10).elements == (1, 2)
        assert search_gcd_diff_set(3, 10).elements == (2, 3, 4)
        assert search_gcd_diff_set(4, 20).elements == (6, 8, 9, 12)
        assert search_gcd_diff_set(5, 200).elements == (36, 40, 42, 45, 48)

    def test_k_too_small_rejected(self):
        with pytest.raises(InvalidArgumentError):
            search_gcd_diff_set(1, 10)

    def test_none_when_bound_too_tight(self):
        assert search_gcd_diff_set(4, 11) is None
        assert search_gcd_diff_set(2, 1) is None

    def test_results_always_verify(self):
        for k in range(2, 6):
            found = search_gcd_diff_set(k, 200)
            assert found is not None
            assert verify_gcd_diff_set(found.elements)
            assert max(found.elements) <= 200

    def test_minimality_of_max_element(self):
        # no valid 4-set exists with max below 12: re-search with a cap
        assert search_gcd_diff_set(4, 11) is None
        assert max(search_gcd_diff_set(4, 50).elements) == 12


@settings(max_examples=100, deadline=None)
@given(
    k=st.integers(min_value=2, max_value=5),
    c=st.integers(min_value=1, max_value=100),
)
def test_dilation_closure(k, c):
    base = search_gcd_diff_set(k, 200)
    scaled = dilate(base, c)
    assert verify_gcd_diff_set(scaled.elements)


class TestPrimeSearch:
    def test_twin_pair(self, tables_small):
        assert search_prime_gcd_diff_set(tables_small, 2, 2).elements == (3, 5)

    def test_first_triple(self, tables_small):
        assert search_prime_gcd_diff_set(tables_small, 3, 3).elements == (13, 17, 19)

    def test_past_23(self, tables_small):
        found = search_prime_gcd_diff_set(tables_small, 2, 23)
        assert found.elements == (29, 31)
        assert min(found.elements) > 23

    def test_two_three_pair_when_allowed(self, tables_small):
        assert search_prime_gcd_diff_set(tables_small, 2, 1).elements == (2, 3)

    def test_results_are_prime_and_pairwise_symmetric(self, tables_small):
        for k in (2, 3, 4):
            found = search_prime_gcd_diff_set(tables_small, k, k)
            assert found is not None
            for v in found.elements:
                assert tables_small.primality.is_prime(v)
            for a, b in combinations(found.elements, 2):
                assert math.gcd(a - 1, b - 1) == b - a

    def test_none_within_small_bound(self, tables_small):
        assert search_prime_gcd_diff_set(tables_small, 3, 3, prime_bound=18) is None

    def test_matches_graph_cliques(self, tables_small):
        # prime gcd-diff sets of size m are exactly the m-cliques
        graph = build_graph(tables_small, 10_000, ODD_PRIMES_ONLY)
        for m in (2, 3):
            cliques = find_cliques(graph, m)
            for c in cliques[:200]:
                for a, b in combinations(c.members, 2):
                    assert math.gcd(a - 1, b - 1) == b - a
            best = min(cliques, key=lambda c: (c.members[-1], c.members))
            found = search_prime_gcd_diff_set(tables_small, m, 2)
            assert found.elements == best.members

    def test_bound_exceeding_tables_rejected(self, tables_small):
        from symprimes import OutOfRangeError

        with pytest.raises(OutOfRangeError):
            search_prime_gcd_diff_set(
                tables_small, 2, 2, prime_bound=tables_small.primality.bound + 1
            )


class TestAdmissibility:
    def test_consecutive_integers_rejected(self):
        report = is_admissible([LinearForm(1, 0), LinearForm(1, 1)])
        assert not report.admissible
        covered = [w for w in report.witnesses if w.covered]
        assert [w.prime for w in covered] == [2]

    def test_three_odd_offsets_rejected_mod_3(self):
        report = is_admissible([LinearForm(1, 3), LinearForm(1, 5), LinearForm(1, 7)])
        assert not report.admissible
        assert [w.prime for w in report.witnesses if w.covered] == [3]

    def test_unit_constant_terms_admissible(self):
        for coeffs in ((6, 8, 9, 12), (1, 2, 3), (5,), (10, 100, 1000)):
            report = is_admissible([LinearForm(a, 1) for a in coeffs])
            assert report.admissible
            for w in report.witnesses:
                assert w.avoiding_residue is not None

    def test_checked_primes_are_small_or_divide_coefficients(self):
        report = is_admissible([LinearForm(14, 1), LinearForm(15, 2)])
        assert {w.prime for w in report.witnesses} == {2, 3, 5, 7}
        assert report.skipped_note

    def test_witnesses_actually_avoid(self):
        forms = [LinearForm(6, 1), LinearForm(8, 1), LinearForm(9, 1), LinearForm(12, 1)]
        for w in is_admissible(forms).witnesses:
            t = w.avoiding_residue
            assert all((f.g * t + f.h) % w.prime != 0 for f in forms)

    def test_constant_form_rejected(self):
        with pytest.raises(InvalidArgumentError):
            is_admissible([LinearForm(0, 5)])
        with pytest.raises(InvalidArgumentError):
            is_admissible([])


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_prime_offsets_above_k_are_admissible(data):
    # any set of distinct primes all exceeding the tuple length k gives an
    # admissible {t + b_j}: mod small p some b_j residues collide, leaving
    # a free residue; mod large p there are too few forms to cover
    pool = [p for p in range(2, 200) if all(p % d for d in range(2, p))]
    k = data.draw(st.integers(min_value=1, max_value=6))
    offsets = data.draw(
        st.lists(
            st.sampled_from([p for p in pool if p > k]),
            min_size=k,
            max_size=k,
            unique=True,
        )
    )
    report = is_admissible([LinearForm(1, b) for b in offsets])
    assert report.admissible


class TestMaynardTao:
    def test_unit_forms_from_gcd_set_pass(self):
        report = maynard_tao_hypothesis_check(
            [LinearForm(a, 1) for a in (6, 8, 9, 12)]
        )
        assert report.passed
        assert report.all_positive
        assert report.determinants_nonzero
        assert report.admissibility.admissible

    def test_proportional_forms_fail_determinant(self):
        report = maynard_tao_hypothesis_check([LinearForm(6, 1), LinearForm(12, 2)])
        assert not report.passed
        assert report.vanishing_pairs == ((0, 1),)

    def test_negative_coefficient_fails_positivity(self):
        report = maynard_tao_hypothesis_check([LinearForm(-1, 3), LinearForm(1, 1)])
        assert not report.passed
        assert report.nonpositive_indices == (0,)
        assert report.determinants_nonzero

    def test_inadmissible_tuple_fails(self):
        report = maynard_tao_hypothesis_check([LinearForm(1, 0), LinearForm(1, 1)])
        assert not report.passed
        assert report.all_positive and report.determinants_nonzero
        assert not report.admissibility.admissible


class TestBftb:
    def test_pass_example(self):
        report = bftb_input_check([5, 7, 11], 8)
        assert report.passed

    def test_inadmissible_offsets(self):
        report = bftb_input_check([3, 5, 7], 2)
        assert not report.passed
        assert not report.admissibility.admissible

    def test_common_factor_with_g(self):
        report = bftb_input_check([5, 7, 11], 35)
        assert not report.passed
        assert report.common_factors == ((5, 5), (7, 7))

    def test_duplicates_flagged(self):
        report = bftb_input_check([5, 5, 11], 2)
        assert not report.distinct
        assert report.duplicate_values == (5,)

    def test_validation(self):
        with pytest.raises(InvalidArgumentError):
            bftb_input_check([], 3)
        with pytest.raises(InvalidArgumentError):
            bftb_input_check([5, 7], 0)


class TestCoprimalityLemma:
    def test_examples(self):
        assert coprimality_lemma_check([3, 5])
        assert coprimality_lemma_check([13, 17, 19])
        assert coprimality_lemma_check([5, 7])

    def test_invalid_inputs(self):
        with pytest.raises(InvalidArgumentError):
            coprimality_lemma_check([5, 11])  # gcd(4, 10) != 6
        with pytest.raises(InvalidArgumentError):
            coprimality_lemma_check([9, 11])  # 9 not prime
        with pytest.raises(InvalidArgumentError):
            coprimality_lemma_check([13])

    def test_holds_for_every_searched_set(self, tables_small):
        for k, min_element in ((2, 2), (2, 100), (3, 3), (4, 4)):
            found = search_prime_gcd_diff_set(tables_small, k, min_element)
            assert coprimality_lemma_check(found.elements)


class TestSymmetricPairBridge:
    def test_scaled_pairs_are_symmetric(self, tables_mid):
        # for a < b in the set and n with a*n+1, b*n+1 both prime, the two
        # primes form a symmetric pair
        elements = (6, 8, 9, 12)
        pt = tables_mid.primality
        hits = 0
        for n in range(1, 10_001):
            for a, b in combinations(elements, 2):
                p, q = a * n + 1, b * n + 1
                if q <= pt.bound and pt.is_prime(p) and pt.is_prime(q):
                    assert is_symmetric_pair(tables_mid, p, q, ODD_PRIMES_ONLY)
                    hits += 1
        assert hits > 100  # the scan genuinely exercised the bridge
