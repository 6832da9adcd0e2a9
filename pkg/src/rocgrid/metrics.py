"""Metric catalogue: exact evaluators over confusion matrices and rate pairs.

Every metric identifier maps to one evaluator returning a canonical
:class:`~rocgrid.values.MetricValue`.  Division by zero with a nonzero
numerator yields a signed infinity; 0/0 forms yield the undefined value.
The diagnostic odds ratio follows the same rule on the count products:
bc = 0 with ad > 0 is +infinity, ad = 0 with bc > 0 is 0, both zero is
undefined.

Scaled-log metrics (slogLRpos, slogLRneg, slogDOR) and the prevalence
threshold PT evaluate to values outside the rational/sqrt closed forms,
so their canonical value is the exact underlying rational ratio (LR+,
LR-, DOR; for PT the ratio fpr/tpr).  The display transform - log(r)/M,
sqrt(s)/(1+sqrt(s)) - is strictly increasing in the ratio, so grouping
and ordering by the ratio are grouping and ordering by the metric, and
floats are produced only for display via :func:`render_float`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

from .errors import DomainError
from .matrices import BenefitMatrix, ConfusionMatrix
from .values import (
    MetricValue,
    NEG_INF,
    POS_INF,
    UNDEFINED,
    rational,
    signed_sqrt,
)

__all__ = [
    "MetricInfo",
    "METRICS",
    "METRIC_IDS",
    "parse_metric_id",
    "metric_info",
    "eval_metric",
    "eval_counts",
    "eval_balanced",
    "decision_benefit",
    "scale_factor",
    "render_float",
    "display_finite",
    "display_range",
]

RATIONAL_CLASS = "rational"
SQRT_CLASS = "sqrt"
RATIO_CLASS = "ratio"

SLOG_IDS = ("slogLRpos", "slogLRneg", "slogDOR")
RATIO_IDS = ("LRpos", "LRneg", "DOR") + SLOG_IDS


@dataclass(frozen=True, slots=True)
class MetricInfo:
    """Catalogue entry for one metric identifier."""

    id: str
    label: str
    value_class: str  # rational | sqrt | ratio
    prevalence_dependent: bool
    display_range: Optional[Tuple[int, int]]  # display-space value range
    signed_levels: bool  # default contour level grid is signed


def _info(mid, label, cls, prev, rng, signed) -> MetricInfo:
    return MetricInfo(mid, label, cls, prev, rng, signed)


METRICS: Dict[str, MetricInfo] = {
    m.id: m
    for m in [
        _info("TPR", "true positive rate (sensitivity, recall)", RATIONAL_CLASS, False, (0, 1), False),
        _info("TNR", "true negative rate (specificity)", RATIONAL_CLASS, False, (0, 1), False),
        _info("FPR", "false positive rate", RATIONAL_CLASS, False, (0, 1), False),
        _info("FNR", "false negative rate", RATIONAL_CLASS, False, (0, 1), False),
        _info("Prev", "prevalence", RATIONAL_CLASS, True, (0, 1), False),
        _info("PPV", "positive predictive value (precision)", RATIONAL_CLASS, True, (0, 1), False),
        _info("NPV", "negative predictive value", RATIONAL_CLASS, True, (0, 1), False),
        _info("LRpos", "positive likelihood ratio", RATIO_CLASS, False, None, False),
        _info("LRneg", "negative likelihood ratio", RATIO_CLASS, False, None, False),
        _info("DOR", "diagnostic odds ratio", RATIO_CLASS, False, None, False),
        _info("slogLRpos", "scaled log positive likelihood ratio", RATIO_CLASS, False, (-1, 1), True),
        _info("slogLRneg", "scaled log negative likelihood ratio", RATIO_CLASS, False, (-1, 1), True),
        _info("slogDOR", "scaled log diagnostic odds ratio", RATIO_CLASS, False, (-1, 1), True),
        _info("Acc", "accuracy", RATIONAL_CLASS, True, (0, 1), False),
        _info("BA", "balanced accuracy", RATIONAL_CLASS, False, (0, 1), False),
        _info("BM", "bookmaker informedness (Youden's J)", RATIONAL_CLASS, False, (-1, 1), True),
        _info("MK", "markedness", RATIONAL_CLASS, True, (-1, 1), True),
        _info("MCC", "Matthews correlation coefficient", SQRT_CLASS, True, (-1, 1), True),
        _info("F1", "F1 score", RATIONAL_CLASS, True, (0, 1), False),
        _info("TS", "threat score (Jaccard index)", RATIONAL_CLASS, True, (0, 1), False),
        _info("CK", "Cohen's kappa", RATIONAL_CLASS, True, (-1, 1), True),
        _info("FM", "Fowlkes-Mallows index", SQRT_CLASS, True, (0, 1), False),
        _info("GM", "geometric mean of tpr and tnr", SQRT_CLASS, False, (0, 1), False),
        _info("PT", "prevalence threshold", RATIO_CLASS, False, (0, 1), False),
        _info("DB", "decision benefit", RATIONAL_CLASS, True, None, False),
        _info("bMCC", "balanced Matthews correlation coefficient", SQRT_CLASS, False, (-1, 1), True),
        _info("bMK", "balanced markedness", RATIONAL_CLASS, False, (-1, 1), True),
        _info("bF1", "balanced F1 score", RATIONAL_CLASS, False, (0, 1), False),
        _info("bFM", "balanced Fowlkes-Mallows index", SQRT_CLASS, False, (0, 1), False),
        _info("bTS", "balanced threat score", RATIONAL_CLASS, False, (0, 1), False),
        _info("bPPV", "balanced positive predictive value", RATIONAL_CLASS, False, (0, 1), False),
        _info("bNPV", "balanced negative predictive value", RATIONAL_CLASS, False, (0, 1), False),
    ]
}

METRIC_IDS: Tuple[str, ...] = tuple(METRICS)

_BY_LOWER = {mid.lower(): mid for mid in METRIC_IDS}


def parse_metric_id(text: str) -> str:
    """Normalize a metric identifier (case-insensitive)."""
    mid = _BY_LOWER.get(str(text).strip().lower())
    if mid is None:
        raise DomainError(f"unknown metric id: {text!r}")
    return mid


def metric_info(metric_id: str) -> MetricInfo:
    info = METRICS.get(metric_id)
    if info is None:
        raise DomainError(f"unknown metric id: {metric_id!r}")
    return info


# ---------------------------------------------------------------------------
# evaluators over counts (a, b, c, d) = (tp, fp, fn, tn)
# ---------------------------------------------------------------------------


def _ratio(num, den) -> MetricValue:
    """num/den with signed-infinity and 0/0 conventions."""
    if den == 0:
        if num == 0:
            return UNDEFINED
        return POS_INF if num > 0 else NEG_INF
    return rational(Fraction(num, den))


def _tpr(a, b, c, d):
    return _ratio(a, a + c)


def _tnr(a, b, c, d):
    return _ratio(d, b + d)


def _fpr(a, b, c, d):
    return _ratio(b, b + d)


def _fnr(a, b, c, d):
    return _ratio(c, a + c)


def _prev(a, b, c, d):
    return _ratio(a + c, a + b + c + d)


def _ppv(a, b, c, d):
    return _ratio(a, a + b)


def _npv(a, b, c, d):
    return _ratio(d, c + d)


def _lr_pos(a, b, c, d):
    # (a/p)/(b/n); p=0 or n=0 collapses to 0/0
    if a + c == 0 or b + d == 0:
        return UNDEFINED
    return _ratio(a * (b + d), b * (a + c))


def _lr_neg(a, b, c, d):
    if a + c == 0 or b + d == 0:
        return UNDEFINED
    return _ratio(c * (b + d), d * (a + c))


def _dor(a, b, c, d):
    return _ratio(a * d, b * c)


def _acc(a, b, c, d):
    return _ratio(a + d, a + b + c + d)


def _ba(a, b, c, d):
    p, n = a + c, b + d
    if p == 0 or n == 0:
        return UNDEFINED
    return rational((Fraction(a, p) + Fraction(d, n)) / 2)


def _bm(a, b, c, d):
    p, n = a + c, b + d
    if p == 0 or n == 0:
        return UNDEFINED
    return rational(Fraction(a, p) + Fraction(d, n) - 1)


def _mk(a, b, c, d):
    if a + b == 0 or c + d == 0:
        return UNDEFINED
    return rational(Fraction(a, a + b) + Fraction(d, c + d) - 1)


def _mcc(a, b, c, d):
    den2 = (a + b) * (a + c) * (b + d) * (c + d)
    if den2 == 0:
        return UNDEFINED
    num = a * d - b * c
    sign = 1 if num > 0 else (-1 if num < 0 else 0)
    return signed_sqrt(sign, Fraction(num * num, den2))


def _f1(a, b, c, d):
    return _ratio(2 * a, 2 * a + b + c)


def _ts(a, b, c, d):
    return _ratio(a, a + b + c)


def _ck(a, b, c, d):
    den = (a + b) * (b + d) + (a + c) * (c + d)
    return _ratio(2 * (a * d - b * c), den)


def _fm(a, b, c, d):
    den2 = (a + b) * (a + c)
    if den2 == 0:
        return UNDEFINED
    sign = 1 if a > 0 else 0
    return signed_sqrt(sign, Fraction(a * a, den2))


def _gm(a, b, c, d):
    p, n = a + c, b + d
    if p == 0 or n == 0:
        return UNDEFINED
    q = Fraction(a * d, p * n)
    return signed_sqrt(1 if q > 0 else 0, q)


def _pt(a, b, c, d):
    # canonical ratio fpr/tpr; PT = sqrt(r)/(1+sqrt(r)) is increasing in r
    p, n = a + c, b + d
    if p == 0 or n == 0:
        return UNDEFINED
    if a == 0:
        return POS_INF if b > 0 else UNDEFINED
    return rational(Fraction(b * p, a * n))


_COUNT_EVALUATORS: Dict[str, Callable[[int, int, int, int], MetricValue]] = {
    "TPR": _tpr,
    "TNR": _tnr,
    "FPR": _fpr,
    "FNR": _fnr,
    "Prev": _prev,
    "PPV": _ppv,
    "NPV": _npv,
    "LRpos": _lr_pos,
    "LRneg": _lr_neg,
    "DOR": _dor,
    "slogLRpos": _lr_pos,
    "slogLRneg": _lr_neg,
    "slogDOR": _dor,
    "Acc": _acc,
    "BA": _ba,
    "BM": _bm,
    "MK": _mk,
    "MCC": _mcc,
    "F1": _f1,
    "TS": _ts,
    "CK": _ck,
    "FM": _fm,
    "GM": _gm,
    "PT": _pt,
}


# ---------------------------------------------------------------------------
# balanced (p = n) forms over a rate pair
# ---------------------------------------------------------------------------


def _bal_ratio(num: Fraction, den: Fraction) -> MetricValue:
    return _ratio(num, den)


def _bal_mcc(t: Fraction, s: Fraction) -> MetricValue:
    num = t + s - 1
    den2 = 1 - (t - s) ** 2
    if den2 < 0:
        return UNDEFINED
    if den2 == 0:
        if num == 0:
            return UNDEFINED
        return POS_INF if num > 0 else NEG_INF
    sign = 1 if num > 0 else (-1 if num < 0 else 0)
    return signed_sqrt(sign, num * num / den2)


def _bal_mk(t: Fraction, s: Fraction) -> MetricValue:
    d1 = t + 1 - s
    d2 = s + 1 - t
    if d1 == 0:
        if t == 0:
            return UNDEFINED
        return POS_INF if t > 0 else NEG_INF
    if d2 == 0:
        if s == 0:
            return UNDEFINED
        return POS_INF if s > 0 else NEG_INF
    return rational(t / d1 + s / d2 - 1)


def _bal_fm(t: Fraction, s: Fraction) -> MetricValue:
    den2 = 1 + t - s
    if den2 < 0:
        return UNDEFINED
    if den2 == 0:
        if t == 0:
            return UNDEFINED
        return POS_INF if t > 0 else NEG_INF
    sign = 1 if t > 0 else (-1 if t < 0 else 0)
    return signed_sqrt(sign, t * t / den2)


def _bal_gm(t: Fraction, s: Fraction) -> MetricValue:
    q = t * s
    if q < 0:
        return UNDEFINED
    return signed_sqrt(1 if q > 0 else 0, q)


def _bal_pt(t: Fraction, s: Fraction) -> MetricValue:
    num = 1 - s  # fpr
    if t == 0:
        if num > 0:
            return POS_INF
        return UNDEFINED
    r = num / t
    if r < 0:
        return UNDEFINED
    return rational(r)


_BALANCED_EVALUATORS: Dict[str, Callable[[Fraction, Fraction], MetricValue]] = {
    "TPR": lambda t, s: rational(t),
    "TNR": lambda t, s: rational(s),
    "FPR": lambda t, s: rational(1 - s),
    "FNR": lambda t, s: rational(1 - t),
    "Prev": lambda t, s: rational(Fraction(1, 2)),
    "PPV": lambda t, s: _bal_ratio(t, t + 1 - s),
    "NPV": lambda t, s: _bal_ratio(s, s + 1 - t),
    "LRpos": lambda t, s: _bal_ratio(t, 1 - s),
    "LRneg": lambda t, s: _bal_ratio(1 - t, s),
    "DOR": lambda t, s: _bal_ratio(t * s, (1 - t) * (1 - s)),
    "slogLRpos": lambda t, s: _bal_ratio(t, 1 - s),
    "slogLRneg": lambda t, s: _bal_ratio(1 - t, s),
    "slogDOR": lambda t, s: _bal_ratio(t * s, (1 - t) * (1 - s)),
    "Acc": lambda t, s: rational((t + s) / 2),
    "BA": lambda t, s: rational((t + s) / 2),
    "BM": lambda t, s: rational(t + s - 1),
    "MK": _bal_mk,
    "MCC": _bal_mcc,
    "F1": lambda t, s: _bal_ratio(2 * t, 2 + t - s),
    "TS": lambda t, s: _bal_ratio(t, 2 - s),
    "CK": lambda t, s: rational(t + s - 1),  # balanced kappa reduces to informedness
    "FM": _bal_fm,
    "GM": _bal_gm,
    "PT": _bal_pt,
    "bMCC": _bal_mcc,
    "bMK": _bal_mk,
    "bF1": lambda t, s: _bal_ratio(2 * t, 2 + t - s),
    "bFM": _bal_fm,
    "bTS": lambda t, s: _bal_ratio(t, 2 - s),
    "bPPV": lambda t, s: _bal_ratio(t, t + 1 - s),
    "bNPV": lambda t, s: _bal_ratio(s, s + 1 - t),
}


def eval_balanced(metric_id: str, tpr, tnr) -> MetricValue:
    """Evaluate the balanced (p = n) form of a metric at a rate pair.

    Accepts any rational-like tpr/tnr, including values outside [0, 1]
    (non-real intermediate forms come back undefined).
    """
    fn = _BALANCED_EVALUATORS.get(metric_id)
    if fn is None:
        metric_info(metric_id)  # raise uniformly on unknown ids
        raise DomainError(f"metric {metric_id} has no balanced form")
    return fn(Fraction(tpr), Fraction(tnr))


def eval_counts(
    metric_id: str, a: int, b: int, c: int, d: int, benefits: Optional[BenefitMatrix] = None
) -> MetricValue:
    """Evaluate a metric on raw counts (tp, fp, fn, tn)."""
    fn = _COUNT_EVALUATORS.get(metric_id)
    if fn is not None:
        return fn(a, b, c, d)
    if metric_id == "DB":
        if benefits is None:
            raise DomainError("DB needs a benefit matrix")
        ba_, bb_, bc_, bd_ = benefits.cells()
        return rational(a * ba_ + b * bb_ + c * bc_ + d * bd_)
    if metric_id.startswith("b"):
        info = METRICS.get(metric_id)
        if info is not None:
            p, n = a + c, b + d
            if p == 0 or n == 0:
                return UNDEFINED
            return _BALANCED_EVALUATORS[metric_id](Fraction(a, p), Fraction(d, n))
    metric_info(metric_id)
    raise DomainError(f"metric {metric_id} cannot be evaluated on counts")


def eval_metric(
    metric_id: str, matrix: ConfusionMatrix, benefits: Optional[BenefitMatrix] = None
) -> MetricValue:
    """Evaluate a metric on a confusion matrix."""
    return eval_counts(metric_id, matrix.tp, matrix.fp, matrix.fn, matrix.tn, benefits)


def decision_benefit(
    matrix: ConfusionMatrix, benefits: BenefitMatrix, normalized: bool = False
) -> MetricValue:
    """Total decision benefit of a matrix, optionally on the normalized scale.

    The normalized scale shifts the minimum cell benefit to 0 and scales the
    maximum to 1/total, so totals over any matrix of that size lie in [0, 1].
    """
    beta = benefits.normalized(matrix.total) if normalized else benefits
    return eval_metric("DB", matrix, beta)


# ---------------------------------------------------------------------------
# display transforms
# ---------------------------------------------------------------------------


def scale_factor(metric_id: str, p: int, n: int) -> float:
    """Scale bound M for the scaled-log metrics: log of the largest finite value.

    Rejected for p < 2 or n < 2 and for bounds at or below 1 (the scale
    division would be by zero or flip orientation).
    """
    if metric_id not in SLOG_IDS:
        raise DomainError(f"metric {metric_id} has no scale factor")
    if p < 2 or n < 2:
        raise DomainError(f"scale factor for {metric_id} needs p >= 2 and n >= 2")
    if metric_id == "slogLRpos":
        bound = Fraction(n * (p - 1), p)
    elif metric_id == "slogLRneg":
        bound = Fraction(p * n, n - 1)
    else:
        bound = Fraction((p - 1) * (n - 1))
    if bound <= 1:
        raise DomainError(f"degenerate scale bound {bound} for {metric_id} at p={p}, n={n}")
    return math.log(bound.numerator) - math.log(bound.denominator)


def _log_fraction(f: Fraction) -> float:
    return math.log(f.numerator) - math.log(f.denominator)


def render_float(
    metric_id: str, value: MetricValue, p: Optional[int] = None, n: Optional[int] = None
) -> Optional[float]:
    """Display float for a canonical value (None when undefined).

    slog metrics render log(ratio)/M and need the slice sizes for M;
    PT renders sqrt(r)/(1+sqrt(r)).  Everything else is float(value).
    """
    if value.is_undefined:
        return None
    if metric_id in SLOG_IDS:
        if p is None or n is None:
            raise DomainError(f"rendering {metric_id} needs slice sizes p and n")
        m = scale_factor(metric_id, p, n)
        if value.kind == "pos_inf":
            return math.inf
        r = value.as_fraction()
        if r == 0:
            return -math.inf
        if r < 0:
            raise DomainError(f"negative ratio {r} for {metric_id}")
        return _log_fraction(r) / m
    if metric_id == "PT":
        if value.kind == "pos_inf":
            return 1.0
        r = value.as_fraction()
        if r < 0:
            raise DomainError(f"negative ratio {r} for PT")
        root = math.sqrt(r.numerator / r.denominator)
        return root / (1.0 + root)
    return float(value)


def display_finite(metric_id: str, value: MetricValue) -> bool:
    """Whether the displayed value is a finite real number.

    For slog metrics a zero ratio displays as -infinity and an infinite
    ratio as +infinity; for PT the infinite ratio displays as 1 (finite).
    """
    if value.is_undefined:
        return False
    if metric_id in SLOG_IDS:
        return value.is_finite and value.as_fraction() > 0
    if metric_id == "PT":
        return value.is_finite or value.kind == "pos_inf"
    return value.is_finite


def display_range(
    metric_id: str, p: Optional[int] = None, n: Optional[int] = None,
    benefits: Optional[BenefitMatrix] = None, normalized: bool = False,
) -> Optional[Tuple[float, float]]:
    """Display-space value range used for level grids and histogram binning."""
    if metric_id == "DB":
        if benefits is None or p is None or n is None:
            return None
        beta = benefits.normalized(p + n) if normalized else benefits
        lo = p * beta.beta_fn + n * beta.beta_fp
        hi = p * beta.beta_tp + n * beta.beta_tn
        return (float(lo), float(hi))
    rng = metric_info(metric_id).display_range
    return None if rng is None else (float(rng[0]), float(rng[1]))
