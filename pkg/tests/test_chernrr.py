import json
import math
import random
from collections import Counter
from fractions import Fraction

import pytest

from hkrr.chebbern import bernoulli, pk_poly
from hkrr.chernrr import ChernData, partitions, q_rr_from_chern
from hkrr.exactpoly import ONE, Poly, ZERO, poly_compose_affine


def partition_formula_oracle(data: ChernData) -> Poly:
    """Closed-form expansion used as an independent check.

    The weight-n part of exp(sum c_k x_k P_k) is, partition by partition,
    prod_parts c_k^(mult) / mult! times the product of the P_k; summing
    value * that term over all partitions of n avoids the truncated
    algebra entirely.
    """
    out = ZERO
    for part in partitions(data.n):
        v = data.value(part)
        if not v:
            continue
        term = ONE
        scalar = Fraction(1)
        for k, mult in Counter(part).items():
            c_k = -bernoulli(2 * k) / (2 * k)
            scalar *= c_k**mult / math.factorial(mult)
            term = term * pk_poly(k) ** mult
        out = out + term * (scalar * v)
    return out


def random_chern(rng, n, lo=-(10**6), hi=10**6) -> ChernData:
    return ChernData(n, {part: rng.randint(lo, hi) for part in partitions(n)})


class TestChernData:
    def test_keys_canonicalized_to_multisets(self):
        d = ChernData(3, {(2, 1): 5})
        assert d.value((1, 2)) == 5
        assert d.value([2, 1]) == 5

    def test_missing_keys_are_zero(self):
        assert ChernData(2, {}).value((1, 1)) == 0

    def test_rejects_wrong_weight(self):
        with pytest.raises(ValueError):
            ChernData(3, {(1, 1): 1})

    def test_rejects_nonpositive_parts(self):
        with pytest.raises(ValueError):
            ChernData(2, {(0, 2): 1})

    def test_rejects_duplicate_partitions(self):
        with pytest.raises(ValueError):
            ChernData(2, {(1, 2): 1, (2, 1): 2})

    def test_json_round_trip(self):
        d = ChernData(3, {(1, 1, 1): Fraction(5, 3), (1, 2): -7})
        blob = json.dumps(d.to_json())
        back = ChernData.from_json(json.loads(blob))
        assert back.n == d.n and back.values == d.values


class TestPartitions:
    def test_small_counts(self):
        # 1, 2, 3, 5, 7, 11 partitions of 1..6.
        assert [len(partitions(n)) for n in range(1, 7)] == [1, 2, 3, 5, 7, 11]

    def test_each_sums_to_n(self):
        for n in range(1, 8):
            for part in partitions(n):
                assert sum(part) == n and all(k >= 1 for k in part)


class TestQrrFromChern:
    def test_all_zero_data_gives_zero(self):
        assert q_rr_from_chern(ChernData(4, {})) == ZERO

    def test_k3_surface(self):
        # n = 1 with integral of ch_2 equal to -24 gives T + 2.
        assert q_rr_from_chern(ChernData(1, {(1,): -24})) == Poly((2, 1))

    def test_n2_expansion_coefficients(self):
        # Weight-2 part: v/288 (T/2+1)^2 + w/120 (T^2/2+2T+1).
        v, w = Fraction(7, 3), Fraction(-11, 2)
        got = q_rr_from_chern(ChernData(2, {(1, 1): v, (2,): w}))
        p1, p2 = pk_poly(1), pk_poly(2)
        assert got == p1 * p1 * (v / 288) + p2 * (w / 120)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_matches_partition_formula_oracle(self, n):
        rng = random.Random(100 + n)
        for _ in range(25):
            data = random_chern(rng, n, -999, 999)
            assert q_rr_from_chern(data) == partition_formula_oracle(data)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_symmetry_property(self, n):
        rng = random.Random(200 + n)
        sign = -1 if n % 2 else 1
        for _ in range(20):
            q = q_rr_from_chern(random_chern(rng, n))
            assert poly_compose_affine(q, -1, -4) == q * sign

    def test_linearity(self):
        rng = random.Random(9)
        n = 4
        for _ in range(20):
            d1, d2 = random_chern(rng, n, -99, 99), random_chern(rng, n, -99, 99)
            a = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            b = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            combo = ChernData(
                n, {part: a * d1.value(part) + b * d2.value(part) for part in partitions(n)}
            )
            assert q_rr_from_chern(combo) == q_rr_from_chern(d1) * a + q_rr_from_chern(d2) * b

    @pytest.mark.parametrize("n", range(1, 7))
    def test_degree_never_exceeds_n(self, n):
        rng = random.Random(300 + n)
        for _ in range(20):
            q = q_rr_from_chern(random_chern(rng, n, -50, 50))
            assert q.degree <= n

    def test_degree_exactly_n_for_single_partition(self):
        # With only the all-ones partition set, the leading term cannot cancel.
        for n in range(1, 7):
            q = q_rr_from_chern(ChernData(n, {(1,) * n: 1}))
            assert q.degree == n
