"""Level curves of the metric catalogue in rate space.

Rate space is the (tnr, tpr) unit square; a level curve of a metric at
level k is the set of rate pairs where the metric equals k, given class
sizes p and n for the prevalence-dependent metrics.  Every curve here
has a closed form: tpr as one or two explicit branches over tnr
(linear, hyperbolic, or the roots of a quadratic), possibly together
with vertical lines at fixed tnr that the branch form cannot express.

Levels are canonical :class:`~rocgrid.values.MetricValue`s, so curve
membership is decidable exactly: at a rational tnr the quadratic
discriminants of points attaining the level are perfect rational
squares (one root is the attaining tpr and root sums are rational), so
lattice points round-trip through their own level curves with no
floating point involved.  Non-square discriminants (between lattice
points) fall back to float roots for sampling only.

Branch identity is positional: an evaluator always returns the same
number of entries, with None where a branch has no valid point, so a
sampler can join consecutive solutions of one branch into polylines.
Spurious quadratic roots (squaring artifacts or cleared zero
denominators) are filtered by exact sign and denominator checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple, Union

from .errors import ContourError, DomainError
from .matrices import BenefitMatrix
from .metrics import (
    METRICS,
    RATIO_CLASS,
    SLOG_IDS,
    SQRT_CLASS,
    metric_info,
    scale_factor,
)
from .values import POS_INF, MetricValue, exact_sqrt, rational, signed_sqrt

__all__ = [
    "ContourSpec",
    "CONTOUR_IDS",
    "contour_spec",
    "contour_alpha",
    "contour_verticals",
    "on_contour",
    "lattice_incidence",
    "intersection_points",
    "ContourLine",
    "ContourSet",
    "sample_contour",
    "default_levels",
    "level_from_display",
]

_TOL = 1e-12

Solution = Optional[Union[Fraction, float]]


def _sgn(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def _matches_sign(expr, target: int) -> bool:
    """Whether expr has the target sign (tolerant for float roots)."""
    if isinstance(expr, Fraction):
        return _sgn(expr) == target
    if target > 0:
        return expr > -_TOL
    if target < 0:
        return expr < _TOL
    return abs(expr) <= _TOL


def _nonzero(expr) -> bool:
    if isinstance(expr, Fraction):
        return expr != 0
    return abs(expr) > _TOL


def _solve_quadratic(A: Fraction, B: Fraction, C: Fraction) -> Tuple[Solution, Solution]:
    """Roots of A x^2 + B x + C in fixed branch order (-sqrt first).

    Roots are exact Fractions when the discriminant is a perfect
    rational square, floats otherwise; a double root fills only the
    first branch so samplers do not draw it twice.
    """
    if A == 0:
        if B == 0:
            return (None, None)
        return (-C / B, None)
    disc = B * B - 4 * A * C
    if disc < 0:
        return (None, None)
    if disc == 0:
        return (-B / (2 * A), None)
    root = exact_sqrt(disc)
    if root is not None:
        return ((-B - root) / (2 * A), (-B + root) / (2 * A))
    sd = math.sqrt(float(disc))
    fa, fb = float(A), float(B)
    return ((-fb - sd) / (2 * fa), (-fb + sd) / (2 * fa))


# ---------------------------------------------------------------------------
# level coercion
# ---------------------------------------------------------------------------


def _rational_level(metric_id: str, level: MetricValue) -> Fraction:
    if not level.is_rational:
        raise DomainError(f"{metric_id} levels must be rational, got {level!r}")
    return level.as_fraction()


def _squared_level(metric_id: str, level: MetricValue) -> Tuple[int, Fraction]:
    if not level.is_finite:
        raise DomainError(f"{metric_id} levels must be finite, got {level!r}")
    return level.signum(), level.square()


def _ratio_level(metric_id: str, level: MetricValue) -> Optional[Fraction]:
    """Canonical ratio level; None encodes the infinite ratio."""
    if level.kind == "pos_inf":
        return None
    if not level.is_rational:
        raise DomainError(f"{metric_id} levels must be rational ratios, got {level!r}")
    r = level.as_fraction()
    if r < 0:
        raise DomainError(f"{metric_id} ratio levels cannot be negative, got {r}")
    return r


# ---------------------------------------------------------------------------
# branch evaluators: (level, delta, p, n, benefits) -> fixed-length tuple
# ---------------------------------------------------------------------------


def _ev_tpr(level, delta, p, n, benefits):
    return (_rational_level("TPR", level),)


def _ev_fnr(level, delta, p, n, benefits):
    return (1 - _rational_level("FNR", level),)


def _ev_acc(level, delta, p, n, benefits):
    k = _rational_level("Acc", level)
    return ((k * (p + n) - n * delta) / p,)


def _ev_ba(level, delta, p, n, benefits):
    return (2 * _rational_level("BA", level) - delta,)


def _ev_bm(level, delta, p, n, benefits):
    return (_rational_level("BM", level) + 1 - delta,)


def _ev_f1(level, delta, p, n, benefits):
    k = _rational_level("F1", level)
    if k == 2:
        return (None,)
    return (k * (n * (1 - delta) + p) / (p * (2 - k)),)


def _ev_ts(level, delta, p, n, benefits):
    k = _rational_level("TS", level)
    return (k * (p + n * (1 - delta)) / p,)


def _ev_ppv(level, delta, p, n, benefits):
    k = _rational_level("PPV", level)
    if k == 1:
        return (None,)
    return (k * n * (1 - delta) / (p * (1 - k)),)


def _ev_npv(level, delta, p, n, benefits):
    k = _rational_level("NPV", level)
    if k == 0:
        return (None,)
    return (1 - n * delta * (1 - k) / (p * k),)


def _ck_alpha_coeff(k: Fraction, p: int, n: int) -> Fraction:
    return 2 * p * n - k * n * p + k * p * p


def _ev_ck(level, delta, p, n, benefits):
    k = _rational_level("CK", level)
    den = _ck_alpha_coeff(k, p, n)
    if den == 0:
        return (None,)
    num = 2 * p * n * (1 - delta) + k * (n * n + p * p) + k * delta * (p * n - n * n)
    return (num / den,)


def _vl_ck(level, p, n, benefits):
    k = _rational_level("CK", level)
    if _ck_alpha_coeff(k, p, n) != 0:
        return ()
    return ((2 * p * n + k * (n * n + p * p)) / (2 * p * n + k * n * (n - p)),)


def _ev_mcc(level, delta, p, n, benefits):
    s, q = _squared_level("MCC", level)
    one_d = 1 - delta
    A = p * (n + q * p)
    B = p * (2 * n * (delta - 1) - q * (p + n * (2 * delta - 1)))
    C = n * one_d * (p * one_d - q * (p + n * delta))
    roots = _solve_quadratic(A, B, C)
    return tuple(
        r if r is not None and _matches_sign(r + delta - 1, s) else None for r in roots
    )


def _ev_mk(level, delta, p, n, benefits):
    k = _rational_level("MK", level)
    if k == 0:
        roots: Tuple[Solution, Solution] = (1 - delta, None)
    else:
        A = k * p * p
        B = p * (n - k * (p + n * (2 * delta - 1)))
        C = -n * (1 - delta) * (p + k * (p + n * delta))
        roots = _solve_quadratic(Fraction(A), Fraction(B), Fraction(C))
    out: List[Solution] = []
    for r in roots:
        if r is None:
            out.append(None)
            continue
        den1 = p * r + n * (1 - delta)
        den2 = n * delta + p * (1 - r)
        out.append(r if _nonzero(den1) and _nonzero(den2) else None)
    return tuple(out)


def _ev_fm(level, delta, p, n, benefits):
    s, q = _squared_level("FM", level)
    if s < 0:
        return (None, None)
    roots = _solve_quadratic(Fraction(p), -q * p, -q * n * (1 - delta))
    return tuple(r if r is not None and _matches_sign(r, s) else None for r in roots)


def _ev_gm(level, delta, p, n, benefits):
    s, q = _squared_level("GM", level)
    if s < 0:
        return (None,)
    if q == 0:
        return (Fraction(0),)
    if delta == 0:
        return (None,)
    return (q / delta,)


def _vl_gm(level, p, n, benefits):
    s, q = _squared_level("GM", level)
    if s == 0:
        return (Fraction(0),)
    return ()


def _ev_pt(level, delta, p, n, benefits):
    r = _ratio_level("PT", level)
    if r is None:
        return (Fraction(0),)
    if r == 0:
        return (None,)
    return ((1 - delta) / r,)


def _vl_pt(level, p, n, benefits):
    r = _ratio_level("PT", level)
    if r == 0:
        return (Fraction(1),)
    return ()


def _ev_lr_pos(level, delta, p, n, benefits):
    r = _ratio_level("LRpos", level)
    if r is None:
        return (None,)
    if r == 0:
        return (Fraction(0),)
    return (r * (1 - delta),)


def _vl_lr_pos(level, p, n, benefits):
    if _ratio_level("LRpos", level) is None:
        return (Fraction(1),)
    return ()


def _ev_lr_neg(level, delta, p, n, benefits):
    r = _ratio_level("LRneg", level)
    if r is None:
        return (None,)
    if r == 0:
        return (Fraction(1),)
    return (1 - r * delta,)


def _vl_lr_neg(level, p, n, benefits):
    if _ratio_level("LRneg", level) is None:
        return (Fraction(0),)
    return ()


def _ev_dor(level, delta, p, n, benefits):
    r = _ratio_level("DOR", level)
    if r is None:
        return (Fraction(1),)
    if r == 0:
        return (Fraction(0),)
    den = delta + r * (1 - delta)
    if den == 0:
        return (None,)
    return (r * (1 - delta) / den,)


def _vl_dor(level, p, n, benefits):
    r = _ratio_level("DOR", level)
    if r is None:
        return (Fraction(1),)
    if r == 0:
        return (Fraction(0),)
    return ()


def _ev_db(level, delta, p, n, benefits):
    k = _rational_level("DB", level)
    ba, bb, bc, bd = benefits.cells()
    num = k - n * bb - p * bc + n * delta * (bb - bd)
    return (num / (p * (ba - bc)),)


def _ev_bmcc(level, delta, p, n, benefits):
    s, q = _squared_level("bMCC", level)
    A = 1 + q
    B = 2 * delta * (1 - q) - 2
    C = (delta - 1) ** 2 + q * (delta * delta - 1)
    roots = _solve_quadratic(Fraction(A), Fraction(B), Fraction(C))
    return tuple(
        r if r is not None and _matches_sign(r + delta - 1, s) else None for r in roots
    )


def _ev_bmk(level, delta, p, n, benefits):
    k = _rational_level("bMK", level)
    if k == 0:
        u_roots: Tuple[Solution, Solution] = (1 - 2 * delta, None)
    else:
        u_roots = _solve_quadratic(k, Fraction(1), 2 * delta - 1 - k)
    out: List[Solution] = []
    for u in u_roots:
        if u is None or not _nonzero(1 + u) or not _nonzero(1 - u):
            out.append(None)
        else:
            out.append(delta + u)
    return tuple(out)


def _ev_bf1(level, delta, p, n, benefits):
    k = _rational_level("bF1", level)
    if k == 2:
        return (None,)
    return (k * (2 - delta) / (2 - k),)


def _ev_bts(level, delta, p, n, benefits):
    return (_rational_level("bTS", level) * (2 - delta),)


def _ev_bfm(level, delta, p, n, benefits):
    s, q = _squared_level("bFM", level)
    if s < 0:
        return (None, None)
    roots = _solve_quadratic(Fraction(1), -q, -q * (1 - delta))
    return tuple(r if r is not None and _matches_sign(r, s) else None for r in roots)


def _ev_bppv(level, delta, p, n, benefits):
    k = _rational_level("bPPV", level)
    if k == 1:
        return (None,)
    return (k * (1 - delta) / (1 - k),)


def _ev_bnpv(level, delta, p, n, benefits):
    k = _rational_level("bNPV", level)
    if k == 0:
        return (None,)
    return (1 - delta * (1 - k) / k,)


def _ev_none(level, delta, p, n, benefits):
    return ()


def _vl_none(level, p, n, benefits):
    return ()


def _vl_tnr(level, p, n, benefits):
    return (_rational_level("TNR", level),)


def _vl_fpr(level, p, n, benefits):
    return (1 - _rational_level("FPR", level),)


def _vl_ppv(level, p, n, benefits):
    if _rational_level("PPV", level) == 1:
        return (Fraction(1),)
    return ()


def _vl_npv(level, p, n, benefits):
    if _rational_level("NPV", level) == 0:
        return (Fraction(0),)
    return ()


def _vl_bppv(level, p, n, benefits):
    if _rational_level("bPPV", level) == 1:
        return (Fraction(1),)
    return ()


def _vl_bnpv(level, p, n, benefits):
    if _rational_level("bNPV", level) == 0:
        return (Fraction(0),)
    return ()


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContourSpec:
    """Closed-form level-curve description for one metric."""

    metric_id: str
    branches: int
    needs_sizes: bool
    evaluate: Callable[..., Tuple[Solution, ...]]
    verticals: Callable[..., Tuple[Fraction, ...]]
    needs_benefits: bool = False


def _spec(mid, branches, sizes, ev, vl=_vl_none, benefits=False) -> ContourSpec:
    return ContourSpec(mid, branches, sizes, ev, vl, benefits)


CONTOURS: Dict[str, ContourSpec] = {
    s.metric_id: s
    for s in [
        _spec("TPR", 1, False, _ev_tpr),
        _spec("TNR", 0, False, _ev_none, _vl_tnr),
        _spec("FPR", 0, False, _ev_none, _vl_fpr),
        _spec("FNR", 1, False, _ev_fnr),
        _spec("PPV", 1, True, _ev_ppv, _vl_ppv),
        _spec("NPV", 1, True, _ev_npv, _vl_npv),
        _spec("LRpos", 1, False, _ev_lr_pos, _vl_lr_pos),
        _spec("LRneg", 1, False, _ev_lr_neg, _vl_lr_neg),
        _spec("DOR", 1, False, _ev_dor, _vl_dor),
        _spec("slogLRpos", 1, False, _ev_lr_pos, _vl_lr_pos),
        _spec("slogLRneg", 1, False, _ev_lr_neg, _vl_lr_neg),
        _spec("slogDOR", 1, False, _ev_dor, _vl_dor),
        _spec("Acc", 1, True, _ev_acc),
        _spec("BA", 1, False, _ev_ba),
        _spec("BM", 1, False, _ev_bm),
        _spec("MK", 2, True, _ev_mk),
        _spec("MCC", 2, True, _ev_mcc),
        _spec("F1", 1, True, _ev_f1),
        _spec("TS", 1, True, _ev_ts),
        _spec("CK", 1, True, _ev_ck, _vl_ck),
        _spec("FM", 2, True, _ev_fm),
        _spec("GM", 1, False, _ev_gm, _vl_gm),
        _spec("PT", 1, False, _ev_pt, _vl_pt),
        _spec("DB", 1, True, _ev_db, benefits=True),
        _spec("bMCC", 2, False, _ev_bmcc),
        _spec("bMK", 2, False, _ev_bmk),
        _spec("bF1", 1, False, _ev_bf1),
        _spec("bFM", 2, False, _ev_bfm),
        _spec("bTS", 1, False, _ev_bts),
        _spec("bPPV", 1, False, _ev_bppv, _vl_bppv),
        _spec("bNPV", 1, False, _ev_bnpv, _vl_bnpv),
    ]
}

CONTOUR_IDS: Tuple[str, ...] = tuple(CONTOURS)


def contour_spec(metric_id: str) -> ContourSpec:
    spec = CONTOURS.get(metric_id)
    if spec is None:
        metric_info(metric_id)  # unknown ids raise uniformly
        raise ContourError(f"{metric_id} is constant over a slice; it has no level curves")
    return spec


def _prepare(metric_id, level, p, n, benefits) -> Tuple[ContourSpec, MetricValue]:
    spec = contour_spec(metric_id)
    if not isinstance(level, MetricValue):
        level = rational(Fraction(level))
    if level.is_undefined:
        raise ContourError("the undefined value has no level curve")
    if spec.needs_sizes and (p is None or n is None or p <= 0 or n <= 0):
        raise DomainError(f"{metric_id} level curves need positive class sizes p and n")
    if spec.needs_benefits:
        if benefits is None:
            raise DomainError("DB level curves need a benefit matrix")
        benefits.require_contour_ordering()
    return spec, level


def contour_alpha(
    metric_id: str,
    level,
    delta,
    p: Optional[int] = None,
    n: Optional[int] = None,
    benefits: Optional[BenefitMatrix] = None,
) -> Tuple[Solution, ...]:
    """Branch solutions tpr(tnr) at one tnr; None where a branch is absent.

    Solutions are exact Fractions whenever the branch is exactly
    solvable at this tnr (always, at rate pairs attaining the level)
    and floats otherwise.
    """
    spec, level = _prepare(metric_id, level, p, n, benefits)
    return spec.evaluate(level, Fraction(delta), p, n, benefits)


def contour_verticals(
    metric_id: str,
    level,
    p: Optional[int] = None,
    n: Optional[int] = None,
    benefits: Optional[BenefitMatrix] = None,
) -> Tuple[Fraction, ...]:
    """tnr positions of vertical level lines (every tpr attains the level)."""
    spec, level = _prepare(metric_id, level, p, n, benefits)
    return spec.verticals(level, p, n, benefits)


def on_contour(
    metric_id: str,
    level,
    alpha,
    delta,
    p: Optional[int] = None,
    n: Optional[int] = None,
    benefits: Optional[BenefitMatrix] = None,
    tol: float = 1e-10,
) -> bool:
    """Whether the rate pair (tpr=alpha, tnr=delta) lies on the level curve.

    Exact for Fraction branch solutions and vertical lines; float branch
    solutions match within tol.
    """
    alpha = Fraction(alpha)
    delta = Fraction(delta)
    for sol in contour_alpha(metric_id, level, delta, p, n, benefits):
        if sol is None:
            continue
        if isinstance(sol, Fraction):
            if sol == alpha:
                return True
        elif abs(sol - float(alpha)) <= tol:
            return True
    return delta in contour_verticals(metric_id, level, p, n, benefits)


def lattice_incidence(
    metric_id: str,
    level,
    p: int,
    n: int,
    benefits: Optional[BenefitMatrix] = None,
) -> int:
    """Number of slice points whose rate pair lies on the level curve.

    Counts geometric membership: points where the metric itself is
    undefined still count when their rates fall on the curve.
    """
    if p <= 0 or n <= 0:
        raise DomainError("lattice incidence needs positive class sizes")
    count = 0
    for a in range(p + 1):
        alpha = Fraction(a, p)
        for d in range(n + 1):
            if on_contour(metric_id, level, alpha, Fraction(d, n), p, n, benefits):
                count += 1
    return count


# ---------------------------------------------------------------------------
# intersection points
# ---------------------------------------------------------------------------

_FREE_INTERSECTIONS: Dict[str, Tuple[Tuple[Fraction, Fraction], ...]] = {
    "bF1": ((Fraction(2), Fraction(0)),),
    "bTS": ((Fraction(2), Fraction(0)),),
    "PPV": ((Fraction(1), Fraction(0)),),
    "bPPV": ((Fraction(1), Fraction(0)),),
    "PT": ((Fraction(1), Fraction(0)),),
    "LRpos": ((Fraction(1), Fraction(0)),),
    "slogLRpos": ((Fraction(1), Fraction(0)),),
    "NPV": ((Fraction(0), Fraction(1)),),
    "bNPV": ((Fraction(0), Fraction(1)),),
    "LRneg": ((Fraction(0), Fraction(1)),),
    "slogLRneg": ((Fraction(0), Fraction(1)),),
    "DOR": ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))),
    "slogDOR": ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))),
}


def intersection_points(
    metric_id: str,
    p: Optional[int] = None,
    n: Optional[int] = None,
) -> Tuple[Tuple[Fraction, Fraction], ...]:
    """(tnr, tpr) points common to every level curve of one metric.

    Empty when the metric's curve family has no common point (or, for
    CK, when p = n).  The points may lie outside the unit square.
    """
    spec = contour_spec(metric_id)
    mid = spec.metric_id
    if mid in ("F1", "TS"):
        if p is None or n is None or p <= 0 or n <= 0:
            raise DomainError(f"{mid} intersection points need class sizes p and n")
        return ((Fraction(p + n, n), Fraction(0)),)
    if mid == "CK":
        if p is None or n is None or p <= 0 or n <= 0:
            raise DomainError("CK intersection points need class sizes p and n")
        if p == n:
            return ()
        delta = Fraction(n, n - p)
        return ((delta, 1 - delta),)
    return _FREE_INTERSECTIONS.get(mid, ())


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ContourLine:
    """One polyline of a sampled curve; branch -1 marks a vertical line."""

    branch: int
    points: Tuple[Tuple[float, float], ...]


@dataclass(frozen=True)
class ContourSet:
    """Sampled level curve in plot coordinates (x=fpr, y=tpr).

    ``lines`` holds one polyline per uninterrupted in-window branch run,
    with segments clipped to the window edges; ``verticals`` holds the x
    positions of full-height vertical lines.
    """

    metric_id: str
    level: MetricValue
    window: Tuple[float, float, float, float]
    steps: int
    lines: Tuple[ContourLine, ...]
    verticals: Tuple[float, ...]


def sample_contour(
    metric_id: str,
    level,
    p: Optional[int] = None,
    n: Optional[int] = None,
    benefits: Optional[BenefitMatrix] = None,
    window: Tuple[float, float, float, float] = (0.0, 1.0, 0.0, 1.0),
    steps: int = 256,
) -> ContourSet:
    """Sample a level curve over an (fpr, tpr) window on a uniform x grid.

    ``steps`` is the number of sample abscissas (at least 2), spanning
    the window's x extent inclusively.  Branch runs break where a branch
    disappears (a gap, never clamped) and are clipped against the
    window's y boundaries, so a segment that crosses an edge ends (or
    begins) exactly on it; a polyline needs at least two points.
    """
    spec, level = _prepare(metric_id, level, p, n, benefits)
    x_lo, x_hi, y_lo, y_hi = (float(w) for w in window)
    if not (x_lo < x_hi and y_lo < y_hi):
        raise DomainError(f"window must have positive extent, got {window}")
    if steps < 2:
        raise DomainError(f"steps must be at least 2, got {steps}")

    lines: List[ContourLine] = []
    runs: List[List[Tuple[float, float]]] = [[] for _ in range(spec.branches)]
    prev: List[Optional[Tuple[float, float]]] = [None] * spec.branches

    def push(run: List[Tuple[float, float]], pt: Tuple[float, float]) -> None:
        if not run or run[-1] != pt:
            run.append(pt)

    def flush(branch: int) -> None:
        run = runs[branch]
        if len(run) >= 2:
            lines.append(ContourLine(branch, tuple(run)))
        run.clear()

    def crossing(p0, p1, y_at: float) -> Tuple[float, float]:
        t = (y_at - p0[1]) / (p1[1] - p0[1])
        return (p0[0] + t * (p1[0] - p0[0]), y_at)

    def inside(y: float) -> bool:
        return y_lo <= y <= y_hi

    for i in range(steps):
        x = x_lo + (x_hi - x_lo) * i / (steps - 1)
        delta = 1 - Fraction(x)
        sols = spec.evaluate(level, delta, p, n, benefits)
        for branch, sol in enumerate(sols):
            run = runs[branch]
            if sol is None:
                flush(branch)
                prev[branch] = None
                continue
            pt = (x, float(sol))
            last = prev[branch]
            prev[branch] = pt
            if last is None:
                if inside(pt[1]):
                    push(run, pt)
                continue
            in0, in1 = inside(last[1]), inside(pt[1])
            if in0 and in1:
                push(run, last)
                push(run, pt)
            elif in0:
                push(run, last)
                push(run, crossing(last, pt, y_hi if pt[1] > y_hi else y_lo))
                flush(branch)
            elif in1:
                flush(branch)
                push(run, crossing(last, pt, y_hi if last[1] > y_hi else y_lo))
                push(run, pt)
            elif (last[1] < y_lo) != (pt[1] < y_lo):
                first, second = (y_lo, y_hi) if last[1] < y_lo else (y_hi, y_lo)
                lines.append(
                    ContourLine(branch, (crossing(last, pt, first), crossing(last, pt, second)))
                )
    for branch in range(spec.branches):
        flush(branch)
    lines.sort(key=lambda line: (line.branch, line.points[0]))

    verticals = tuple(
        float(1 - dv)
        for dv in spec.verticals(level, p, n, benefits)
        if x_lo <= float(1 - dv) <= x_hi
    )
    return ContourSet(metric_id, level, (x_lo, x_hi, y_lo, y_hi), steps, tuple(lines), verticals)


# ---------------------------------------------------------------------------
# level grids
# ---------------------------------------------------------------------------

_SIGNED_GRID = tuple(Fraction(j, 10) for j in range(-9, 10))
_UNSIGNED_GRID = tuple(Fraction(j, 10) for j in range(1, 10))
_RATIO_GRID = (Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(4))


def default_levels(
    metric_id: str,
    p: Optional[int] = None,
    n: Optional[int] = None,
    benefits: Optional[BenefitMatrix] = None,
) -> Tuple[MetricValue, ...]:
    """Default canonical level grid for drawing a metric's curve family."""
    contour_spec(metric_id)
    info = metric_info(metric_id)
    if metric_id == "DB":
        if benefits is None or p is None or n is None:
            raise DomainError("DB level grids need class sizes and a benefit matrix")
        ba, bb, bc, bd = benefits.cells()
        lo = p * bc + n * bb
        hi = p * ba + n * bd
        return tuple(rational(lo + Fraction(j, 10) * (hi - lo)) for j in range(1, 10))
    if metric_id in SLOG_IDS:
        if p is None or n is None:
            raise DomainError(f"{metric_id} level grids need class sizes p and n")
        m = scale_factor(metric_id, p, n)
        return tuple(rational(Fraction(math.exp(m * float(k)))) for k in _SIGNED_GRID)
    if metric_id == "PT":
        return tuple(rational((k / (1 - k)) ** 2) for k in _UNSIGNED_GRID)
    if metric_id in ("LRpos", "LRneg", "DOR"):
        return tuple(rational(r) for r in _RATIO_GRID)
    grid = _SIGNED_GRID if info.signed_levels else _UNSIGNED_GRID
    if info.value_class == SQRT_CLASS:
        return tuple(signed_sqrt(_sgn(k), k * k) for k in grid)
    return tuple(rational(k) for k in grid)


def level_from_display(
    metric_id: str,
    display,
    p: Optional[int] = None,
    n: Optional[int] = None,
) -> MetricValue:
    """Canonical level for a display-space number (decimal string safe).

    Inverts the display transform: squares with sign for sqrt-valued
    metrics, exp through the scale bound for the scaled-log metrics,
    and the threshold-to-ratio map for PT.  Exact except for the
    scaled-log metrics, whose ratio passes through one float exp.
    """
    info = metric_info(metric_id)
    try:
        k = Fraction(display)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse level {display!r}") from exc
    if metric_id in SLOG_IDS:
        if p is None or n is None:
            raise DomainError(f"{metric_id} levels need class sizes p and n")
        m = scale_factor(metric_id, p, n)
        return rational(Fraction(math.exp(m * float(k))))
    if metric_id == "PT":
        if not 0 <= k <= 1:
            raise DomainError(f"PT levels lie in [0, 1], got {k}")
        if k == 1:
            return POS_INF
        return rational((k / (1 - k)) ** 2)
    if info.value_class == RATIO_CLASS:
        if k < 0:
            raise DomainError(f"{metric_id} levels cannot be negative, got {k}")
        return rational(k)
    if info.value_class == SQRT_CLASS:
        return signed_sqrt(_sgn(k), k * k)
    return rational(k)
