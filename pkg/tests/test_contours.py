"""Level curves in rate space: closed forms, sampling, grids, incidence."""

import math
from fractions import Fraction

import pytest

from rocgrid import (
    CONTOUR_IDS,
    BenefitMatrix,
    ContourError,
    DomainError,
    POS_INF,
    UNDEFINED,
    contour_alpha,
    contour_spec,
    contour_verticals,
    default_levels,
    enumerate_slice,
    eval_metric,
    intersection_points,
    lattice_incidence,
    level_from_display,
    on_contour,
    rational,
    sample_contour,
    scale_factor,
    signed_sqrt,
)

BENEFITS = BenefitMatrix.of(3, 1, 0, 2)
IDENTITY_BENEFITS = BenefitMatrix.of(3, 0, 0, 3)

F = Fraction


class TestClosedForms:
    def test_tpr_is_horizontal(self):
        for delta in (F(0), F(1, 3), F(1)):
            assert contour_alpha("TPR", F(1, 2), delta) == (F(1, 2),)

    def test_fnr_is_complementary_horizontal(self):
        assert contour_alpha("FNR", F(3, 10), F(1, 2)) == (F(7, 10),)

    def test_tnr_is_vertical(self):
        assert contour_alpha("TNR", F(3, 10), F(1, 2)) == ()
        assert contour_verticals("TNR", F(3, 10)) == (F(3, 10),)

    def test_fpr_vertical_reindexes(self):
        assert contour_verticals("FPR", F(3, 10)) == (F(7, 10),)

    def test_ba_line(self):
        # alpha = 2k - delta
        assert contour_alpha("BA", F(3, 4), F(1, 2)) == (F(1),)
        assert contour_alpha("BA", F(3, 4), F(1, 4)) == (F(5, 4),)

    def test_bm_line_through_chance_diagonal(self):
        # level 0 is the line alpha = 1 - delta (the chance diagonal)
        for delta in (F(0), F(1, 4), F(1)):
            assert contour_alpha("BM", 0, delta) == (1 - delta,)

    def test_acc_line_spec_point(self):
        # alpha = (k(p+n) - n*delta)/p; passes through (tnr, tpr) = (4/5, 4/5)
        assert contour_alpha("Acc", F(4, 5), F(4, 5), 20, 40) == (F(4, 5),)
        assert on_contour("Acc", F(4, 5), F(4, 5), F(4, 5), 20, 40)

    def test_gm_hyperbola(self):
        # level sqrt(1/4): alpha*delta = 1/4
        level = signed_sqrt(1, F(1, 4))
        assert contour_alpha("GM", level, F(1, 2)) == (F(1, 2),)
        assert contour_alpha("GM", level, F(1, 3)) == (F(3, 4),)
        assert contour_alpha("GM", level, F(0)) == (None,)

    def test_gm_zero_level_is_both_axes(self):
        assert contour_alpha("GM", 0, F(1, 3)) == (F(0),)
        assert contour_verticals("GM", 0) == (F(0),)

    def test_pt_line(self):
        # display 1/2 means ratio 1, the anti-diagonal alpha = 1 - delta
        level = level_from_display("PT", "1/2")
        assert level == rational(1)
        assert contour_alpha("PT", level, F(1, 4)) == (F(3, 4),)

    def test_f1_branch_gap_at_level_two(self):
        assert contour_alpha("F1", 2, F(1, 2), 10, 40) == (None,)

    def test_ppv_vertical_at_level_one(self):
        assert contour_alpha("PPV", 1, F(1, 2), 10, 40) == (None,)
        assert contour_verticals("PPV", 1, 10, 40) == (F(1),)

    def test_mcc_quadratic_hits_lattice_point(self):
        # (16, 8, 4, 32) on the (20, 40) slice has MCC = sqrt(1/3)
        level = signed_sqrt(1, F(1, 3))
        sols = contour_alpha("MCC", level, F(4, 5), 20, 40)
        assert F(4, 5) in sols

    def test_mcc_sign_filter_rejects_wrong_arc(self):
        # at delta = 1/5 no point with alpha + delta > 1 ... the negative
        # level keeps only solutions below the chance diagonal
        level = signed_sqrt(-1, F(1, 3))
        sols = contour_alpha("MCC", level, F(4, 5), 20, 40)
        for sol in sols:
            if sol is None:
                continue
            val = float(sol) if not isinstance(sol, Fraction) else sol
            assert float(val) + 0.8 - 1 < 0

    def test_ck_matches_metric_value(self):
        # (16, 8, 4, 32): CK = 4/7 at rates (4/5, 4/5)
        assert F(4, 5) in contour_alpha("CK", F(4, 7), F(4, 5), 20, 40)

    def test_ck_vertical_line(self):
        # the CK family degenerates to a vertical at k = 2n/(n-p)
        assert contour_verticals("CK", 4, 20, 40) == (F(2),)
        assert contour_alpha("CK", 4, F(1, 3), 20, 40) == (None,)

    def test_needs_sizes(self):
        for mid in ("Acc", "F1", "TS", "PPV", "NPV", "MCC", "MK", "CK", "FM"):
            with pytest.raises(DomainError):
                contour_alpha(mid, F(1, 2), F(1, 2))

    def test_db_needs_ordered_benefits(self):
        with pytest.raises(DomainError):
            contour_alpha("DB", 10, F(1, 2), 20, 40)
        with pytest.raises(DomainError):
            contour_alpha("DB", 10, F(1, 2), 20, 40, BenefitMatrix.of(1, 0, 2, 1))

    def test_prevalence_has_no_curves(self):
        with pytest.raises(ContourError):
            contour_spec("Prev")

    def test_undefined_level_rejected(self):
        with pytest.raises(ContourError):
            contour_alpha("BA", UNDEFINED, F(1, 2))


class TestPrevalenceFreeFamilies:
    SLICES = ((10, 90), (50, 50), (90, 10))

    @pytest.mark.parametrize(
        "mid,level",
        [
            ("BA", F(7, 10)),
            ("BM", F(-3, 10)),
            ("GM", signed_sqrt(1, F(2, 5))),
            ("PT", F(1, 4)),
            ("LRpos", F(2)),
            ("bMCC", signed_sqrt(1, F(1, 5))),
            ("bF1", F(4, 5)),
        ],
    )
    def test_curves_ignore_class_sizes(self, mid, level):
        deltas = (F(0), F(1, 7), F(1, 2), F(9, 10), F(1))
        expected = [contour_alpha(mid, level, d, *self.SLICES[0]) for d in deltas]
        for p, n in self.SLICES[1:]:
            assert [contour_alpha(mid, level, d, p, n) for d in deltas] == expected

    def test_acc_depends_on_class_sizes(self):
        a = contour_alpha("Acc", F(1, 2), F(1, 4), 10, 90)
        b = contour_alpha("Acc", F(1, 2), F(1, 4), 90, 10)
        assert a != b


class TestDecisionBenefitFamily:
    def test_identity_benefits_coincide_with_accuracy(self):
        p, n = 20, 40
        scale = 3 * (p + n)
        for k in (F(36), F(90), F(144)):
            acc_level = k / scale
            for delta in (F(0), F(1, 4), F(2, 3), F(1)):
                assert contour_alpha(
                    "DB", k, delta, p, n, IDENTITY_BENEFITS
                ) == contour_alpha("Acc", acc_level, delta, p, n)

    def test_general_benefits_line(self):
        # alpha = (k - n*bb - p*bc + n*delta*(bb - bd)) / (p*(ba - bc))
        p, n = 5, 7
        level = F(20)
        delta = F(2, 7)
        ba, bb, bc, bd = BENEFITS.cells()
        expected = (level - n * bb - p * bc + n * delta * (bb - bd)) / (p * (ba - bc))
        assert contour_alpha("DB", level, delta, p, n, BENEFITS) == (expected,)


class TestOnContour:
    def test_vertical_membership(self):
        assert on_contour("TNR", F(3, 10), F(1, 4), F(3, 10))
        assert not on_contour("TNR", F(3, 10), F(1, 4), F(1, 2))

    def test_float_solutions_need_tolerance(self):
        # MCC level sqrt(1/2) at delta = 1/3 has irrational alpha
        level = signed_sqrt(1, F(1, 2))
        sols = contour_alpha("MCC", level, F(1, 3), 20, 40)
        alpha = next(s for s in sols if s is not None)
        assert isinstance(alpha, float)
        assert on_contour("MCC", level, F(alpha), F(1, 3), 20, 40, tol=1e-10)
        assert not on_contour("MCC", level, F(alpha) + F(1, 1000), F(1, 3), 20, 40)

    @pytest.mark.parametrize("p,n", [(5, 5), (10, 40)])
    def test_lattice_points_lie_on_their_own_contour(self, p, n):
        for mid in ("TPR", "TNR", "BA", "F1", "MCC", "GM", "DOR", "PT", "CK", "DB"):
            benefits = BENEFITS if mid == "DB" else None
            for a, d, mat in enumerate_slice(p, n):
                value = eval_metric(mid, mat, benefits=benefits)
                if value.is_undefined:
                    continue
                assert on_contour(
                    mid, value, F(a, p), F(d, n), p, n, benefits
                ), f"{mid} at (a={a}, d={d}) on ({p}, {n})"

    def test_incidence_counts_geometric_membership(self):
        # MCC = 0 on (20, 40): 19 defined points plus the two corner
        # points with undefined MCC whose rates sit on the same curves
        assert lattice_incidence("MCC", 0, 20, 40) == 21

    def test_incidence_needs_positive_sizes(self):
        with pytest.raises(DomainError):
            lattice_incidence("BA", F(1, 2), 0, 40)


class TestIntersectionPoints:
    def test_size_free_points_by_evaluation(self):
        for mid in ("PPV", "NPV", "LRpos", "LRneg", "DOR", "PT", "bF1", "bTS", "bPPV", "bNPV"):
            points = intersection_points(mid)
            assert points
            for level in default_levels(mid):
                for tnr, tpr in points:
                    assert on_contour(mid, level, tpr, tnr, 20, 40), f"{mid} at level {level}"

    def test_dor_meets_both_corners(self):
        assert intersection_points("DOR") == ((F(1), F(0)), (F(0), F(1)))

    def test_slog_points_by_evaluation(self):
        for mid in ("slogLRpos", "slogLRneg", "slogDOR"):
            points = intersection_points(mid)
            assert points
            for level in default_levels(mid, 20, 40):
                for tnr, tpr in points:
                    assert on_contour(mid, level, tpr, tnr)

    def test_f1_ts_points_need_sizes(self):
        assert intersection_points("F1", 10, 40) == ((F(5, 4), F(0)),)
        assert intersection_points("TS", 20, 40) == ((F(3, 2), F(0)),)
        for mid in ("F1", "TS", "CK"):
            with pytest.raises(DomainError):
                intersection_points(mid)

    @pytest.mark.parametrize("p,n", [(20, 40), (40, 10)])
    def test_f1_ts_ck_points_by_evaluation(self, p, n):
        for mid in ("F1", "TS", "CK"):
            for level in default_levels(mid):
                for tnr, tpr in intersection_points(mid, p, n):
                    assert on_contour(mid, level, tpr, tnr, p, n), f"{mid} on ({p}, {n})"

    def test_ck_balanced_slice_has_no_common_point(self):
        assert intersection_points("CK", 15, 15) == ()

    def test_line_families_have_no_common_point(self):
        for mid in ("TPR", "BA", "BM", "Acc", "MCC", "GM"):
            assert intersection_points(mid, 10, 40) == ()


class TestSampling:
    def test_bm_diagonal_two_steps(self):
        cs = sample_contour("BM", 0, steps=2)
        assert [(line.branch, line.points) for line in cs.lines] == [
            (0, ((0.0, 0.0), (1.0, 1.0)))
        ]
        assert cs.verticals == ()
        assert cs.window == (0.0, 1.0, 0.0, 1.0)

    def test_acc_clipped_at_top_edge(self):
        cs = sample_contour("Acc", F(4, 5), 20, 40, steps=3)
        assert len(cs.lines) == 1
        points = cs.lines[0].points
        assert points[0] == (0.0, pytest.approx(0.4))
        assert points[-1] == (pytest.approx(0.3), 1.0)
        xs = [x for x, _ in points]
        assert xs == sorted(xs)

    def test_segment_crossing_whole_band(self):
        # both samples outside on opposite sides still yield the window chord
        cs = sample_contour("Acc", F(4, 5), 20, 40, window=(0, 1, 0.5, 0.6), steps=2)
        assert len(cs.lines) == 1
        (x0, y0), (x1, y1) = cs.lines[0].points
        assert (y0, y1) == (0.5, 0.6)
        assert x0 == pytest.approx(0.05)
        assert x1 == pytest.approx(0.1)

    def test_vertical_window_filtering(self):
        assert sample_contour("TNR", F(3, 10)).verticals == (0.7,)
        assert sample_contour("TNR", F(3, 10), window=(0.75, 1, 0, 1)).verticals == ()
        assert sample_contour("TNR", F(3, 10), window=(0.7, 1, 0, 1)).verticals == (0.7,)

    def test_mcc_arcs_in_wide_window(self):
        level = signed_sqrt(1, F(1, 4))
        cs = sample_contour("MCC", level, 20, 40, window=(-0.5, 1.5, -0.5, 1.5), steps=401)
        assert cs.lines
        for line in cs.lines:
            for x, y in line.points:
                if not (-0.5 < y < 1.5):
                    continue  # window-edge crossings are interpolated
                a, b = y * 20, x * 40
                c, d = 20 - a, 40 - b
                num = a * d - b * c
                den = math.sqrt((a + b) * (a + c) * (b + d) * (c + d))
                assert num / den == pytest.approx(0.5, abs=1e-9)

    def test_branches_sorted_and_labelled(self):
        level = signed_sqrt(1, F(1, 4))
        cs = sample_contour("MCC", level, 20, 40, steps=257)
        branches = [line.branch for line in cs.lines]
        assert branches == sorted(branches)
        for line in cs.lines:
            assert len(line.points) >= 2

    def test_step_and_window_validation(self):
        with pytest.raises(DomainError):
            sample_contour("BA", F(1, 2), steps=1)
        with pytest.raises(DomainError):
            sample_contour("BA", F(1, 2), window=(0.5, 0.5, 0, 1))
        with pytest.raises(ContourError):
            sample_contour("Prev", F(1, 2))

    def test_out_of_range_level_yields_no_lines(self):
        cs = sample_contour("BA", 5, steps=33)
        assert cs.lines == ()
        assert cs.verticals == ()


class TestLevelGrids:
    def test_signed_grids(self):
        for mid in ("BM", "MK", "CK", "MCC", "bMCC", "bMK"):
            args = (20, 40) if contour_spec(mid).needs_sizes else ()
            levels = default_levels(mid, *args)
            assert len(levels) == 19
            assert levels[9] == rational(0)

    def test_unsigned_grids(self):
        for mid in ("TPR", "TNR", "FPR", "FNR", "Acc", "BA", "F1", "TS", "PPV",
                    "NPV", "GM", "FM", "bF1", "bFM", "bTS", "bPPV", "bNPV"):
            args = (20, 40) if contour_spec(mid).needs_sizes else ()
            levels = default_levels(mid, *args)
            assert len(levels) == 9
            assert levels[0] == rational(F(1, 10))
            assert levels[-1] == rational(F(9, 10))

    def test_sqrt_grids_collapse_to_rationals(self):
        for level in default_levels("MCC", 20, 40):
            assert level.kind == "rational"
        assert default_levels("MCC", 20, 40)[0] == rational(F(-9, 10))

    def test_ratio_grid(self):
        expected = tuple(rational(r) for r in (F(1, 4), F(1, 2), F(1), F(2), F(4)))
        for mid in ("LRpos", "LRneg", "DOR"):
            assert default_levels(mid) == expected

    def test_pt_grid(self):
        levels = default_levels("PT")
        assert len(levels) == 9
        assert levels[0] == rational(F(1, 81))
        assert levels[4] == rational(1)
        assert levels[-1] == rational(81)

    def test_slog_grid_tracks_scale_bound(self):
        m = scale_factor("slogDOR", 20, 40)
        levels = default_levels("slogDOR", 20, 40)
        assert len(levels) == 19
        assert levels[9] == rational(1)
        assert levels[-1] == rational(Fraction(math.exp(m * 0.9)))
        with pytest.raises(DomainError):
            default_levels("slogDOR")

    def test_db_grid_spans_attainable_range(self):
        levels = default_levels("DB", 20, 40, IDENTITY_BENEFITS)
        assert [lv.as_fraction() for lv in levels] == [F(18 * j) for j in range(1, 10)]
        with pytest.raises(DomainError):
            default_levels("DB", 20, 40)

    def test_prev_rejected(self):
        with pytest.raises(ContourError):
            default_levels("Prev")


class TestLevelFromDisplay:
    def test_rational_passthrough(self):
        assert level_from_display("BA", "0.35") == rational(F(7, 20))
        assert level_from_display("Acc", "-0.2") == rational(F(-1, 5))

    def test_sqrt_squares_with_sign(self):
        assert level_from_display("MCC", "-0.5") == signed_sqrt(-1, F(1, 4))
        assert level_from_display("MCC", "-0.5") == rational(F(-1, 2))
        assert level_from_display("FM", "0.3") == rational(F(3, 10))

    def test_ratio_rejects_negative(self):
        assert level_from_display("DOR", "2") == rational(2)
        with pytest.raises(DomainError):
            level_from_display("LRpos", "-1")

    def test_pt_threshold_map(self):
        assert level_from_display("PT", "0.3") == rational(F(9, 49))
        assert level_from_display("PT", "1") == POS_INF
        assert level_from_display("PT", "0") == rational(0)
        for bad in ("-0.1", "1.5"):
            with pytest.raises(DomainError):
                level_from_display("PT", bad)

    def test_slog_inverts_through_scale(self):
        m = scale_factor("slogDOR", 20, 40)
        level = level_from_display("slogDOR", "1/2", 20, 40)
        assert level == rational(Fraction(math.exp(m * 0.5)))
        assert level_from_display("slogDOR", "0", 20, 40) == rational(1)
        with pytest.raises(DomainError):
            level_from_display("slogDOR", "1/2")

    def test_unparseable_rejected(self):
        with pytest.raises(DomainError):
            level_from_display("BA", "two")
