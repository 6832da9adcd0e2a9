"""Confusion matrices, rate coordinates, and benefit matrices."""

from fractions import Fraction

import pytest

from rocgrid import BenefitMatrix, ConfusionMatrix, DomainError


class TestConfusionMatrix:
    def test_margins(self):
        m = ConfusionMatrix(16, 8, 4, 32)
        assert (m.pos, m.neg, m.total) == (20, 40, 60)
        assert m.counts() == (16, 8, 4, 32)

    def test_negative_counts_rejected(self):
        with pytest.raises(DomainError):
            ConfusionMatrix(-1, 0, 0, 0)

    def test_rates_spec_example(self):
        r = ConfusionMatrix(16, 8, 4, 32).rates()
        assert r.tpr == Fraction(4, 5)
        assert r.tnr == Fraction(4, 5)
        assert r.fpr == Fraction(1, 5)
        assert r.fnr == Fraction(1, 5)
        assert r.prevalence == Fraction(1, 3)

    def test_rates_degenerate_perfect_negative(self):
        r = ConfusionMatrix(0, 0, 5, 5).rates()
        assert r.tpr == 0 and r.tnr == 1

    def test_rates_empty_margin_is_none(self):
        r = ConfusionMatrix(10, 0, 0, 0).rates()
        assert r.tpr == 1
        assert r.tnr is None and r.fpr is None
        r = ConfusionMatrix(0, 3, 0, 2).rates()
        assert r.tpr is None and r.fnr is None
        assert r.tnr == Fraction(2, 5)

    def test_rates_never_raise(self):
        r = ConfusionMatrix(0, 0, 0, 0).rates()
        assert r.tpr is None and r.tnr is None and r.prevalence is None


class TestBenefitMatrix:
    def test_of_coerces_rationals(self):
        b = BenefitMatrix.of(1, 0, 0, 1)
        assert b.cells() == (1, 0, 0, 1)
        b = BenefitMatrix.of("3/2", 0, Fraction(1, 2), 2)
        assert b.beta_tp == Fraction(3, 2) and b.beta_fn == Fraction(1, 2)

    def test_contour_ordering(self):
        BenefitMatrix.of(2, 1, 0, 3).require_contour_ordering()
        with pytest.raises(DomainError):
            # true-positive benefit must exceed the miss benefit
            BenefitMatrix.of(1, 0, 1, 2).require_contour_ordering()
        with pytest.raises(DomainError):
            # negative benefits are rejected for contour work
            BenefitMatrix.of(2, -1, 0, 3).require_contour_ordering()

    def test_normalized_range(self):
        b = BenefitMatrix.of(5, 1, 0, 3).normalized(10)
        cells = b.cells()
        assert min(cells) == 0
        assert max(cells) == Fraction(1, 10)
        # shift and scale preserve the ordering of cells
        assert cells[0] > cells[3] > cells[1] > cells[2]

    def test_normalized_constant_rejected(self):
        with pytest.raises(DomainError):
            BenefitMatrix.of(2, 2, 2, 2).normalized(10)
