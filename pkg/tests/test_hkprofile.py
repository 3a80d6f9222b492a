import random
from fractions import Fraction

import pytest

from hkrr.exactpoly import Poly, X, poly_compose_affine
from hkrr.hkprofile import (
    HKProfile,
    ProfileError,
    cubic_prr,
    denominator_check,
    double_factorial,
    even_values_check,
    known_family_prr,
    profile_from_prr,
    real_root_classifier,
)


class TestDoubleFactorial:
    def test_values(self):
        assert [double_factorial(m) for m in (1, 3, 5, 7)] == [1, 3, 15, 105]


class TestReferenceConstants:
    def test_n2_classification_data_pinned(self):
        from hkrr.hkprofile import N2_BETTI_SMALL, N2_BETTI_SPLIT

        assert N2_BETTI_SPLIT == {"b2": 23, "b3": 0, "a_x": Fraction(25, 32)}
        assert N2_BETTI_SMALL["b2_max"] == 8
        assert N2_BETTI_SMALL["a_x_min"] == Fraction(5, 6)
        assert N2_BETTI_SMALL["a_x_max"] == Fraction(131, 144)


class TestKnownFamilies:
    def test_split_cubic_factored(self):
        p = known_family_prr("split-type", 3)
        assert p * 48 == Poly((8, 1)) * Poly((6, 1)) * Poly((4, 1))

    def test_product_quadratic_factored(self):
        p = known_family_prr("product-type", 2)
        assert p * 8 == Poly((2, 1)) * Poly((4, 1)) * 3

    def test_split_line_bundle_on_surface(self):
        assert known_family_prr("split", 1) == Poly((2, Fraction(1, 2)))

    def test_constant_term_is_n_plus_one(self):
        for kind in ("split", "product"):
            for n in range(1, 11):
                assert known_family_prr(kind, n).coeff(0) == n + 1

    def test_unknown_family_rejected(self):
        with pytest.raises(ValueError):
            known_family_prr("mystery", 2)


class TestProfileExtraction:
    def test_split_n3(self):
        prof = profile_from_prr(3, known_family_prr("split", 3))
        assert (prof.c_x, prof.n_x, prof.m_x, prof.a_x) == (15, 6, 3, Fraction(9, 16))

    def test_product_n2(self):
        prof = profile_from_prr(2, known_family_prr("product", 2))
        assert (prof.c_x, prof.n_x, prof.a_x) == (9, 3, Fraction(27, 32))

    def test_split_n2(self):
        prof = profile_from_prr(2, known_family_prr("split", 2))
        assert (prof.c_x, prof.n_x, prof.a_x) == (3, 5, Fraction(25, 32))

    def test_n1_has_a_x_one(self):
        prof = profile_from_prr(1, known_family_prr("split", 1))
        assert prof.a_x == 1 and prof.n_x == 4

    @pytest.mark.parametrize("kind", ["split", "product"])
    @pytest.mark.parametrize("n", range(1, 11))
    def test_known_families_profile_cleanly(self, kind, n):
        prof = profile_from_prr(n, known_family_prr(kind, n))
        prof.validate()
        expected_nx = n + 3 if kind == "split" else n + 1
        assert prof.n_x == expected_nx
        if kind == "split":
            assert prof.c_x == double_factorial(2 * n - 1)
        else:
            assert prof.c_x == (n + 1) * double_factorial(2 * n - 1)
        assert prof.c_x > 0
        if n > 1:
            assert 0 < prof.a_x < 1
        assert prof.n_x_is_integer

    def test_no_symmetry_rejected(self):
        with pytest.raises(ProfileError, match="no symmetry"):
            profile_from_prr(3, Poly((4, 1, 1, Fraction(1, 48))))

    def test_bad_constant_term_rejected(self):
        p = known_family_prr("split", 3) + 1
        with pytest.raises(ProfileError, match="bad constant term"):
            profile_from_prr(3, p)

    def test_a_x_out_of_range_rejected(self):
        # Symmetric about -1 with constant term 3 but a_x = 25/12 > 1.
        shifted = Poly((1, 1))
        p = shifted**2 * Fraction(25, 3) - Fraction(16, 3)
        with pytest.raises(ProfileError, match="A_X out of range"):
            profile_from_prr(2, p)

    def test_degree_mismatch_rejected(self):
        with pytest.raises(ProfileError):
            profile_from_prr(4, known_family_prr("split", 3))


class TestCubicPrr:
    def test_recovers_split_family(self):
        assert cubic_prr(15, 6) == known_family_prr("split", 3)

    def test_published_cases(self):
        assert cubic_prr(15, 2) == Poly((4, Fraction(13, 6), Fraction(1, 8), Fraction(1, 48)))
        assert cubic_prr(30, 4) == Poly((4, Fraction(7, 3), Fraction(1, 2), Fraction(1, 24)))

    def test_round_trip_with_profile(self):
        for c_x, n_x in [(15, 2), (15, 6), (30, 1), (30, 2), (30, 3), (30, 4), (3, 1)]:
            p = cubic_prr(c_x, n_x)
            prof = profile_from_prr(3, p)
            assert (prof.c_x, prof.n_x) == (c_x, n_x)

    def test_round_trip_random_admissible(self):
        rng = random.Random(23)
        hits = 0
        for _ in range(200):
            c = Fraction(rng.randint(1, 2000), rng.randint(1, 8))
            s = Fraction(rng.randint(1, 12), rng.randint(1, 3))
            if not 0 < c * (s / 2) ** 3 / 720 < 1:
                continue
            prof = profile_from_prr(3, cubic_prr(c, s))
            assert (prof.c_x, prof.n_x) == (c, s)
            # Every valid degree-3 profile factors as (T+2)(a_x(T^2+4T)+2).
            verdict = real_root_classifier(prof)
            assert verdict.method == "factored-discriminant"
            hits += 1
        assert hits > 20

    def test_zero_shift_rejected(self):
        with pytest.raises(ValueError):
            cubic_prr(15, 0)


class TestDenominatorCheck:
    def test_split_n3_even(self):
        report = denominator_check(3, known_family_prr("split", 3), even_form=True)
        assert report.ok and report.fujiki_in_lattice and bool(report)

    def test_tiny_leading_coefficient_fails(self):
        p = Poly((4, 0, 0, Fraction(1, 10**6)))
        report = denominator_check(3, p, even_form=True)
        assert not report.ok and not bool(report)

    def test_n2_half_integer_fujiki_boundary(self):
        # With C(2) = 12, a_2 * 4 * 12 is an integer iff c_x = 24 a_2 is in (1/2) Z.
        ok = denominator_check(2, X**2 * Fraction(1, 48) + 3, even_form=True)
        assert ok.ok  # c_x = 1/2
        bad = denominator_check(2, X**2 * Fraction(1, 72) + 3, even_form=True)
        assert not bad.ok  # c_x = 1/3

    def test_not_even_is_stricter(self):
        p = Poly((4, Fraction(1, 2 * 4320)))  # a_1 = 1/(2 C_3)
        assert denominator_check(1, p, even_form=True, c_n=4320).ok
        assert not denominator_check(1, p, even_form=False, c_n=4320).ok


class TestEvenValuesCheck:
    def test_split_n3(self):
        report = even_values_check(3, known_family_prr("split", 3))
        assert report.ok and report.c_x == 15 == double_factorial(5)

    def test_product_n2(self):
        report = even_values_check(2, known_family_prr("product", 2))
        assert report.ok and report.c_x == 9

    def test_surviving_denominator_fails(self):
        report = even_values_check(2, X**2 * Fraction(1, 5) + Poly((3, 1)))
        assert not report.integral_on_even and not report.ok


class TestRealRootClassifier:
    def test_split_n2_positive_discriminant(self):
        prof = profile_from_prr(2, known_family_prr("split", 2))
        verdict = real_root_classifier(prof)
        assert verdict.all_real and verdict.discriminant == Fraction(25, 64)

    def test_n3_boundary_double_root(self):
        prof = profile_from_prr(3, cubic_prr(360, 2))  # a_x = 1/2 exactly
        assert prof.a_x == Fraction(1, 2)
        verdict = real_root_classifier(prof)
        assert verdict.all_real and verdict.discriminant == 0

    def test_split_n3(self):
        prof = profile_from_prr(3, known_family_prr("split", 3))
        verdict = real_root_classifier(prof)
        assert verdict.all_real
        assert verdict.discriminant == 8 * Fraction(9, 16) * (2 * Fraction(9, 16) - 1)

    def test_n3_complex_when_a_x_small(self):
        prof = profile_from_prr(3, cubic_prr(180, 2))  # a_x = 1/4 < 1/2
        verdict = real_root_classifier(prof)
        assert not verdict.all_real and verdict.discriminant < 0

    def test_n3_inconsistent_profile_raises(self):
        prof = profile_from_prr(3, known_family_prr("split", 3))
        broken = HKProfile(
            n=3,
            p_rr=prof.p_rr,
            q_rr=prof.q_rr + X,
            c_x=prof.c_x,
            n_x=prof.n_x,
            m_x=prof.m_x,
            a_x=prof.a_x,
        )
        with pytest.raises(ProfileError, match="factorization failed"):
            real_root_classifier(broken)

    @pytest.mark.parametrize("kind", ["split", "product"])
    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_known_families_all_real_by_isolation(self, kind, n):
        prof = profile_from_prr(n, known_family_prr(kind, n))
        verdict = real_root_classifier(prof)
        assert verdict.method == "isolation" and verdict.all_real

    def test_n4_complex_roots_detected(self):
        # (T+2)^4 + 16, rescaled to constant term 5: no real roots at all.
        p = (Poly((2, 1)) ** 4 + 16) * Fraction(5, 32)
        prof = profile_from_prr(4, p)
        verdict = real_root_classifier(prof)
        assert verdict.method == "isolation" and not verdict.all_real
