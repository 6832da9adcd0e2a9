"""Lattice enumeration, 3D projections, slices, and the PR mapping."""

from fractions import Fraction

import pytest

from rocgrid import (
    ConfusionMatrix,
    DomainError,
    count_matrices,
    enumerate_matrices,
    enumerate_slice,
    project_barycentric,
    project_simplex,
    project_tetrahedral,
    roc_to_pr,
    slice_point_to_matrix,
)


class TestCounting:
    def test_small_counts_match_enumeration(self):
        for N in range(0, 12):
            assert count_matrices(N) == sum(1 for _ in enumerate_matrices(N))

    def test_closed_form(self):
        # C(N+3, 3) compositions of N into four ordered parts
        assert count_matrices(0) == 1
        assert count_matrices(1) == 4
        assert count_matrices(2) == 10
        assert count_matrices(100) == 176851

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            count_matrices(-1)

    def test_enumeration_is_lexicographic_and_exact(self):
        seen = list(enumerate_matrices(3))
        assert len(seen) == count_matrices(3) == 20
        assert seen[0] == ConfusionMatrix(0, 0, 0, 3)
        assert seen[-1] == ConfusionMatrix(3, 0, 0, 0)
        keys = [(m.tp, m.fp, m.fn) for m in seen]
        assert keys == sorted(keys)
        assert all(m.total == 3 for m in seen)


class TestSlices:
    def test_slice_size_and_orientation(self):
        points = list(enumerate_slice(2, 3))
        assert len(points) == 3 * 4
        # row-major: tp ascending, then tn ascending
        assert [(a, d) for a, d, _ in points][:5] == [(0, 0), (0, 1), (0, 2), (0, 3), (1, 0)]
        for a, d, m in points:
            assert m == ConfusionMatrix(a, 3 - d, 2 - a, d)
            assert (m.pos, m.neg) == (2, 3)

    def test_slice_point_rates(self):
        m = slice_point_to_matrix(16, 32, 20, 40)
        assert m == ConfusionMatrix(16, 8, 4, 32)
        r = m.rates()
        assert (r.tpr, r.fpr) == (Fraction(4, 5), Fraction(1, 5))

    def test_slice_point_bounds(self):
        with pytest.raises(DomainError):
            slice_point_to_matrix(3, 0, 2, 5)
        with pytest.raises(DomainError):
            slice_point_to_matrix(0, 6, 2, 5)


class TestProjections:
    def test_tetrahedral_normalizes_counts(self):
        m = ConfusionMatrix(16, 8, 4, 32)
        assert project_tetrahedral(m) == (
            Fraction(16, 60),
            Fraction(4, 60),
            Fraction(8, 60),
        )

    def test_tetrahedral_collides_across_sizes(self):
        # count-normalizing projections identify proportional matrices
        small = project_tetrahedral(ConfusionMatrix(1, 0, 0, 0))
        large = project_tetrahedral(ConfusionMatrix(2, 0, 0, 0))
        assert small == large

    def test_simplex_separates_sizes(self):
        small = project_simplex(ConfusionMatrix(1, 0, 0, 0))
        large = project_simplex(ConfusionMatrix(2, 0, 0, 0))
        assert small != large

    def test_simplex_formula(self):
        m = ConfusionMatrix(16, 8, 4, 32)
        third = Fraction(32, 3)
        assert project_simplex(m) == (16 - third, 8 - third, 4 - third)

    def test_barycentric_formula(self):
        m = ConfusionMatrix(16, 8, 4, 32)
        N = 60
        assert project_barycentric(m) == (
            Fraction(16 - 8 - 4 + 32, N),
            Fraction(16 + 8 - 4 - 32, N),
            Fraction(16 - 8 + 4 - 32, N),
        )

    def test_empty_matrix_rejected(self):
        with pytest.raises(DomainError):
            project_tetrahedral(ConfusionMatrix(0, 0, 0, 0))
        with pytest.raises(DomainError):
            project_barycentric(ConfusionMatrix(0, 0, 0, 0))


class TestRocToPr:
    def test_spec_point(self):
        pt = roc_to_pr(Fraction(1, 5), Fraction(4, 5), 10, 40)
        assert pt.recall == Fraction(4, 5)
        assert pt.precision == Fraction(1, 2)

    def test_zero_fpr_full_precision(self):
        pt = roc_to_pr(Fraction(0), Fraction(3, 5), 10, 40)
        assert pt.precision == 1

    def test_balanced_corner(self):
        pt = roc_to_pr(Fraction(1), Fraction(1), 25, 25)
        assert pt.precision == Fraction(1, 2)

    def test_undefined_only_at_zero_denominator(self):
        # tpr = 0 with positive fpr still has precision 0
        pt = roc_to_pr(Fraction(1, 4), Fraction(0), 10, 40)
        assert pt.recall == 0 and pt.precision == 0
        pt = roc_to_pr(Fraction(0), Fraction(0), 10, 40)
        assert pt.precision is None

    def test_needs_positive_sizes(self):
        with pytest.raises(DomainError):
            roc_to_pr(Fraction(1, 2), Fraction(1, 2), 0, 40)
