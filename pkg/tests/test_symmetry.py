import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symprimes import (
    ETA,
    InvalidArgumentError,
    ODD_PRIMES_ONLY,
    OutOfRangeError,
    TABLE_CONVENTION,
    count_symmetric,
    eisenstein_count,
    eta,
    is_symmetric,
    is_symmetric_pair,
    legendre,
    partners,
    tabulate,
)
from symprimes.symmetry import (
    _floor_sum,
    boundary_dependence,
    survey_rows,
    symmetric_primes,
)


class TestPairPredicate:
    def test_examples(self, tables_small):
        assert is_symmetric_pair(tables_small, 3, 5)
        assert not is_symmetric_pair(tables_small, 3, 7)
        assert is_symmetric_pair(tables_small, 13, 19)

    def test_two_three_pair_is_convention_dependent(self, tables_small):
        assert is_symmetric_pair(tables_small, 2, 3, TABLE_CONVENTION)
        assert not is_symmetric_pair(tables_small, 2, 3, ODD_PRIMES_ONLY)
        assert not is_symmetric_pair(tables_small, 2, 5, TABLE_CONVENTION)

    def test_non_prime_rejected(self, tables_small):
        with pytest.raises(InvalidArgumentError):
            is_symmetric_pair(tables_small, 15, 19)
        with pytest.raises(InvalidArgumentError):
            is_symmetric_pair(tables_small, 13, 1)
        with pytest.raises(InvalidArgumentError):
            is_symmetric_pair(tables_small, 13, 13)

    def test_symmetric_in_arguments(self, tables_small):
        primes = tables_small.primality.primes_in(3, 200).tolist()
        for p, q in combinations(primes, 2):
            assert is_symmetric_pair(tables_small, p, q) == is_symmetric_pair(
                tables_small, q, p
            )

    def test_reduction_identity_small(self, tables_small):
        # gcd(p-1, q-1) == q - p  <=>  (q - p) | (p - 1), p < q
        primes = tables_small.primality.primes_in(3, 500).tolist()
        for p, q in combinations(primes, 2):
            gcd_form = math.gcd(p - 1, q - 1) == q - p
            div_form = (p - 1) % (q - p) == 0
            assert gcd_form == div_form, (p, q)


class TestPartners:
    def test_asymmetric_23(self, tables_small):
        assert partners(tables_small, 23) == []
        assert is_symmetric(tables_small, 23) is None

    def test_partners_of_5(self, tables_small):
        assert [(c.d, c.q, c.direction) for c in partners(tables_small, 5)] == [
            (2, 3, "below"),
            (2, 7, "above"),
        ]

    def test_partners_of_3_by_convention(self, tables_small):
        odd = partners(tables_small, 3, ODD_PRIMES_ONLY)
        assert [(c.q, c.d) for c in odd] == [(5, 2)]
        incl = partners(tables_small, 3, TABLE_CONVENTION)
        assert [(c.q, c.d) for c in incl] == [(2, 1), (5, 2)]

    def test_certificate_tie_break(self, tables_small):
        # minimal d first, and "above" checked before "below"
        cert = is_symmetric(tables_small, 3, ODD_PRIMES_ONLY)
        assert (cert.d, cert.q, cert.direction) == (2, 5, "above")
        cert = is_symmetric(tables_small, 29)
        assert (cert.d, cert.q, cert.direction) == (2, 31, "above")
        cert = is_symmetric(tables_small, 5)
        assert (cert.d, cert.q, cert.direction) == (2, 7, "above")

    def test_certificates_satisfy_definition(self, tables_small):
        for p in tables_small.primality.primes_in(2, 2000).tolist():
            for c in partners(tables_small, p, TABLE_CONVENTION):
                assert c.p == p
                assert abs(c.q - c.p) == c.d
                assert math.gcd(c.p - 1, c.q - 1) == c.d
                assert tables_small.primality.is_prime(c.q)
                assert c.q == (p + c.d if c.direction == "above" else p - c.d)

    def test_partner_window(self, tables_small):
        for p in tables_small.primality.primes_in(3, 2000).tolist():
            for c in partners(tables_small, p):
                assert p / 2 < c.q < 2 * p

    def test_bound_errors_name_requirements(self, tables_small):
        pt_bound = tables_small.primality.bound
        p = tables_small.primality.primes_in(pt_bound // 2 + 1, pt_bound)[0]
        with pytest.raises(OutOfRangeError) as exc:
            partners(tables_small, int(p))
        assert exc.value.required_bound == 2 * int(p) - 1

    def test_non_prime_rejected(self, tables_small):
        with pytest.raises(InvalidArgumentError):
            partners(tables_small, 24)


class TestCounting:
    def test_count_at_29(self, tables_small):
        assert count_symmetric(tables_small, 29, TABLE_CONVENTION) == 9
        assert count_symmetric(tables_small, 29, ODD_PRIMES_ONLY) == 8

    def test_tiny_x(self, tables_small):
        assert count_symmetric(tables_small, 2, ODD_PRIMES_ONLY) == 0
        assert count_symmetric(tables_small, 2, TABLE_CONVENTION) == 1
        assert count_symmetric(tables_small, 1) == 0
        assert count_symmetric(tables_small, 0) == 0

    def test_conventions_differ_by_exactly_one(self, tables_small):
        for x in (2, 3, 29, 100, 541, 1000, 9999):
            assert (
                count_symmetric(tables_small, x, TABLE_CONVENTION)
                == count_symmetric(tables_small, x, ODD_PRIMES_ONLY) + 1
            )

    def test_monotone_in_x(self, tables_small):
        prev = 0
        for x in range(2, 400):
            cur = count_symmetric(tables_small, x)
            assert cur >= prev
            prev = cur

    def test_agrees_with_certificate_path(self, tables_small):
        # bulk scan flags == per-prime certificate search
        for conv in (TABLE_CONVENTION, ODD_PRIMES_ONLY):
            listed = symmetric_primes(tables_small, 1500, conv)
            direct = [
                p
                for p in tables_small.primality.primes_in(2, 1500).tolist()
                if is_symmetric(tables_small, p, conv) is not None
            ]
            assert listed == direct

    def test_thread_count_does_not_change_result(self, tables_mid):
        x = 100_000
        base = count_symmetric(tables_mid, x, threads=1)
        assert count_symmetric(tables_mid, x, threads=2) == base
        assert count_symmetric(tables_mid, x, threads=7) == base

    def test_bound_error(self, tables_small):
        with pytest.raises(OutOfRangeError) as exc:
            count_symmetric(tables_small, tables_small.primality.bound)
        assert exc.value.required_bound == 2 * tables_small.primality.bound - 1


class TestSurvey:
    def test_row_schedule(self):
        assert survey_rows(10) == [10]
        assert survey_rows(25) == [10, 25]
        assert survey_rows(1000) == [10, 100, 1000]
        assert survey_rows(5) == [5]

    def test_first_row_both_conventions(self, tables_small):
        row = tabulate(tables_small, 10, TABLE_CONVENTION)[0]
        assert (row.n, row.p_n, row.s) == (10, 29, 9)
        assert f"{row.ratio:.4f}" == "0.9000"
        assert f"{row.model:.4f}" == "0.9008"
        row = tabulate(tables_small, 10, ODD_PRIMES_ONLY)[0]
        assert row.s == 8

    def test_rows_match_pointwise_counts(self, tables_small):
        rows = tabulate(tables_small, 1000, TABLE_CONVENTION)
        for row in rows:
            assert row.p_n == tables_small.primality.nth_prime(row.n)
            assert row.s == count_symmetric(tables_small, row.p_n, TABLE_CONVENTION)
            assert row.ratio == row.s / row.n
            assert row.model == 1.0 / math.log(row.p_n) ** ETA

    def test_boundary_dependence_at_n10(self, tables_small):
        # 29's partners are 31 and 43, both beyond p_10: capping partners
        # at p_n would change the count, so the survey cannot be capped.
        rep = boundary_dependence(tables_small, 10, TABLE_CONVENTION)
        assert rep.p_n == 29
        assert rep.count_unrestricted == 9
        assert rep.count_restricted == 8
        assert rep.primes_only_certified_above == 1

    def test_partner_cap_matches_filtered_certificates(self, tables_small):
        cap = 541
        capped = count_symmetric(tables_small, 541, TABLE_CONVENTION, partner_cap=cap)
        direct = sum(
            1
            for p in tables_small.primality.primes_in(2, 541).tolist()
            if any(c.q <= cap for c in partners(tables_small, p, TABLE_CONVENTION))
        )
        assert capped == direct


class TestEisenstein:
    def test_examples(self):
        assert eisenstein_count(5, 3) == 1
        assert eisenstein_count(3, 5) == 1
        assert eisenstein_count(7, 3) == 2

    def test_invalid_inputs(self):
        with pytest.raises(InvalidArgumentError):
            eisenstein_count(4, 7)
        with pytest.raises(InvalidArgumentError):
            eisenstein_count(7, 7)
        with pytest.raises(InvalidArgumentError):
            eisenstein_count(9, 7)  # 9 is odd but not prime

    def test_floor_sum_against_direct_summation(self):
        primes = [p for p in range(3, 300) if all(p % d for d in range(2, p))]
        for q, p in combinations(primes, 2):
            for a, b in ((q, p), (p, q)):
                direct = sum(a * i // b for i in range(1, (b - 1) // 2 + 1))
                assert eisenstein_count(a, b) == direct

    def test_sum_identity_and_parity(self, tables_small):
        primes = tables_small.primality.primes_in(3, 200).tolist()
        for p, q in combinations(primes, 2):
            s_qp = eisenstein_count(q, p)
            s_pq = eisenstein_count(p, q)
            assert s_qp + s_pq == (p - 1) // 2 * ((q - 1) // 2)
            assert (-1) ** s_qp == legendre(q, p)
            assert (-1) ** s_pq == legendre(p, q)

    def test_characterizes_symmetry_to_2000(self, tables_small):
        primes = tables_small.primality.primes_in(3, 2000).tolist()
        for p, q in combinations(primes, 2):
            equal_counts = eisenstein_count(q, p) == eisenstein_count(p, q)
            assert equal_counts == is_symmetric_pair(tables_small, p, q, ODD_PRIMES_ONLY)


class TestLegendre:
    def test_examples(self):
        for p in (3, 5, 7, 11, 97):
            assert legendre(1, p) == 1
        assert legendre(5, 3) == -1
        assert legendre(3, 13) == 1

    def test_against_square_enumeration(self):
        for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
            squares = {(a * a) % p for a in range(1, p)}
            for a in range(2 * p):
                expect = 0 if a % p == 0 else (1 if a % p in squares else -1)
                assert legendre(a, p) == expect

    def test_even_p_rejected(self):
        with pytest.raises(InvalidArgumentError):
            legendre(3, 8)
        with pytest.raises(InvalidArgumentError):
            legendre(3, 15)


class TestEta:
    def test_value_and_formula(self):
        assert eta() == ETA
        assert repr(ETA) == "0.0860713320559342"
        formula = 1 - (1 + math.log(math.log(2))) / math.log(2)
        assert math.isclose(formula, ETA, rel_tol=0, abs_tol=1e-14)

    def test_model_column_endpoints(self):
        assert f"{1.0 / math.log(29) ** ETA:.4f}" == "0.9008"
        assert f"{1.0 / math.log(2038074743) ** ETA:.4f}" == "0.7681"


@settings(max_examples=200, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=60),
    m=st.integers(min_value=1, max_value=500),
    a=st.integers(min_value=0, max_value=500),
    b=st.integers(min_value=0, max_value=500),
)
def test_floor_sum_property(n, m, a, b):
    assert _floor_sum(n, m, a, b) == sum((a * i + b) // m for i in range(n))
