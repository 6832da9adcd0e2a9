"""Canonical exact value semantics: construction, equality, order, floats."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rocgrid import (
    NEG_INF,
    ONE,
    POS_INF,
    UNDEFINED,
    ZERO,
    MetricValue,
    exact_sqrt,
    rational,
    signed_sqrt,
)


class TestExactSqrt:
    def test_perfect_squares(self):
        assert exact_sqrt(Fraction(0)) == 0
        assert exact_sqrt(Fraction(4, 9)) == Fraction(2, 3)
        assert exact_sqrt(Fraction(225, 16)) == Fraction(15, 4)

    def test_non_squares(self):
        assert exact_sqrt(Fraction(2)) is None
        assert exact_sqrt(Fraction(1, 3)) is None
        assert exact_sqrt(Fraction(8, 9)) is None

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            exact_sqrt(Fraction(-1, 4))

    def test_huge_perfect_square(self):
        base = 10**40 + 7
        assert exact_sqrt(Fraction(base * base)) == base


class TestConstruction:
    def test_rational_normalizes(self):
        v = rational(Fraction(4, 6))
        assert (v.num, v.den, v.sign) == (2, 3, 1)
        assert rational(0) == ZERO
        assert rational(1) == ONE
        assert rational(Fraction(-3, 6)).sign == -1

    def test_perfect_square_collapses(self):
        v = signed_sqrt(1, Fraction(4, 9))
        assert v.is_rational and v.as_fraction() == Fraction(2, 3)
        v = signed_sqrt(-1, Fraction(9))
        assert v.as_fraction() == -3

    def test_sqrt_stays_sqrt(self):
        v = signed_sqrt(-1, Fraction(1, 3))
        assert v.is_sqrt and v.sign == -1 and v.square() == Fraction(1, 3)

    def test_zero_square_collapses(self):
        assert signed_sqrt(1, Fraction(0)) == ZERO
        assert signed_sqrt(0, Fraction(5)) == ZERO

    def test_bad_sign_rejected(self):
        with pytest.raises(ValueError):
            signed_sqrt(2, Fraction(2))
        with pytest.raises(ValueError):
            signed_sqrt(1, Fraction(-2))


class TestEquality:
    def test_equal_rationals_equal(self):
        assert rational(Fraction(1, 2)) == rational(Fraction(2, 4))

    def test_sqrt_vs_rational_never_equal(self):
        # sqrt kind only holds non-perfect-square radicands
        assert signed_sqrt(1, Fraction(1, 3)) != rational(Fraction(1, 3))

    def test_sign_distinguishes_sqrt(self):
        assert signed_sqrt(1, Fraction(1, 3)) != signed_sqrt(-1, Fraction(1, 3))

    def test_specials_distinct(self):
        specials = [POS_INF, NEG_INF, UNDEFINED, ZERO]
        assert len(set(specials)) == 4


class TestOrdering:
    def test_total_order_over_defined(self):
        chain = [
            NEG_INF,
            rational(-2),
            signed_sqrt(-1, Fraction(2)),  # -sqrt(2)
            rational(-1),
            ZERO,
            signed_sqrt(1, Fraction(1, 3)),
            rational(1),
            signed_sqrt(1, Fraction(2)),
            POS_INF,
        ]
        for lo, hi in zip(chain, chain[1:]):
            assert lo < hi
            assert hi > lo
            assert lo <= hi and not hi <= lo

    def test_undefined_not_ordered(self):
        with pytest.raises(ValueError):
            _ = UNDEFINED < ZERO
        with pytest.raises(ValueError):
            _ = ZERO <= UNDEFINED

    def test_negative_sqrt_magnitude_flips(self):
        # -sqrt(3) < -sqrt(2) even though 3 > 2
        assert signed_sqrt(-1, Fraction(3)) < signed_sqrt(-1, Fraction(2))

    @settings(max_examples=200, deadline=None)
    @given(
        st.fractions(min_value=-4, max_value=4),
        st.fractions(min_value=-4, max_value=4),
    )
    def test_order_matches_fraction_order(self, x, y):
        assert (rational(x) < rational(y)) == (x < y)

    @settings(max_examples=200, deadline=None)
    @given(
        st.integers(min_value=-50, max_value=50),
        st.integers(min_value=1, max_value=50),
        st.integers(min_value=-50, max_value=50),
        st.integers(min_value=1, max_value=50),
    )
    def test_mixed_order_matches_real_order(self, sn, sd, rn, rd):
        # sign*sqrt(|sn|/sd) against the rational rn/rd
        sign = -1 if sn < 0 else (1 if sn > 0 else 0)
        sq = signed_sqrt(sign, Fraction(abs(sn), sd))
        rat = rational(Fraction(rn, rd))
        fs, fr = float(sq), float(rat)
        if abs(fs - fr) > 1e-12:
            assert (sq < rat) == (fs < fr)


class TestFloat:
    def test_rational_and_sqrt(self):
        assert float(rational(Fraction(1, 4))) == 0.25
        assert float(signed_sqrt(-1, Fraction(1, 3))) == pytest.approx(
            -math.sqrt(1 / 3), abs=1e-15
        )

    def test_specials(self):
        assert float(POS_INF) == math.inf
        assert float(NEG_INF) == -math.inf
        assert math.isnan(float(UNDEFINED))

    def test_huge_components_no_overflow(self):
        big = 10**400
        assert float(rational(Fraction(big, 3 * big))) == pytest.approx(1 / 3)

    def test_signum(self):
        assert rational(Fraction(-1, 7)).signum() == -1
        assert ZERO.signum() == 0
        assert POS_INF.signum() == 1
        with pytest.raises(ValueError):
            UNDEFINED.signum()


class TestAccessors:
    def test_as_fraction_only_rational(self):
        assert rational(Fraction(3, 7)).as_fraction() == Fraction(3, 7)
        with pytest.raises(ValueError):
            signed_sqrt(1, Fraction(2)).as_fraction()
        with pytest.raises(ValueError):
            POS_INF.as_fraction()

    def test_square(self):
        assert rational(Fraction(-2, 3)).square() == Fraction(4, 9)
        assert signed_sqrt(-1, Fraction(5, 7)).square() == Fraction(5, 7)
        with pytest.raises(ValueError):
            UNDEFINED.square()

    def test_hashable_for_grouping(self):
        d = {rational(Fraction(1, 2)): 1}
        d[rational(Fraction(2, 4))] = 2
        assert d == {rational(Fraction(1, 2)): 2}
        assert isinstance(hash(MetricValue("undefined")), int)
