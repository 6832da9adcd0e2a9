"""Shared test helpers: an independent float evaluator for every metric.

The float oracle recomputes each metric from its textbook definition in
IEEE-754 arithmetic (0/0 as NaN, x/0 as a signed infinity), sharing no
code with the exact evaluators.  Ratio-backed metrics (the likelihood
ratios, the odds ratio, their scaled-log displays, and the prevalence
threshold) are compared on their canonical ratio scale, where the
display transforms are strictly monotone, so grouping and ordering
agree with the displayed metric.
"""

from __future__ import annotations

import math
from typing import Callable, Dict

NAN = math.nan


def fdiv(num: float, den: float) -> float:
    """Float division with 0/0 -> NaN and x/0 -> signed infinity."""
    if den == 0:
        if num == 0:
            return NAN
        return math.inf if num > 0 else -math.inf
    return num / den


def _tpr(a, b, c, d):
    return fdiv(a, a + c)


def _tnr(a, b, c, d):
    return fdiv(d, b + d)


def _ba(a, b, c, d):
    p, n = a + c, b + d
    if p == 0 or n == 0:
        return NAN
    return (a / p + d / n) / 2


def _bm(a, b, c, d):
    p, n = a + c, b + d
    if p == 0 or n == 0:
        return NAN
    return a / p + d / n - 1


def _mk(a, b, c, d):
    if a + b == 0 or c + d == 0:
        return NAN
    return a / (a + b) + d / (c + d) - 1


def _mcc(a, b, c, d):
    den2 = (a + b) * (a + c) * (b + d) * (c + d)
    return fdiv(a * d - b * c, math.sqrt(den2))


def _ck(a, b, c, d):
    return fdiv(2 * (a * d - b * c), (a + b) * (b + d) + (a + c) * (c + d))


def _fm(a, b, c, d):
    return fdiv(a, math.sqrt((a + b) * (a + c)))


def _gm(a, b, c, d):
    p, n = a + c, b + d
    return math.sqrt(fdiv(a * d, p * n)) if p and n else NAN


def _lr_pos(a, b, c, d):
    p, n = a + c, b + d
    if p == 0 or n == 0:
        return NAN
    return fdiv(a * n, b * p)


def _lr_neg(a, b, c, d):
    p, n = a + c, b + d
    if p == 0 or n == 0:
        return NAN
    return fdiv(c * n, d * p)


def _dor(a, b, c, d):
    return fdiv(a * d, b * c)


def _pt_ratio(a, b, c, d):
    p, n = a + c, b + d
    if p == 0 or n == 0:
        return NAN
    return fdiv(b * p, a * n)


def _bal_rates(a, b, c, d):
    p, n = a + c, b + d
    if p == 0 or n == 0:
        return None
    return a / p, d / n


def _balanced(fn):
    def wrapped(a, b, c, d):
        ts = _bal_rates(a, b, c, d)
        return NAN if ts is None else fn(*ts)

    return wrapped


FLOAT_ORACLE: Dict[str, Callable[[int, int, int, int], float]] = {
    "TPR": _tpr,
    "TNR": _tnr,
    "FPR": lambda a, b, c, d: fdiv(b, b + d),
    "FNR": lambda a, b, c, d: fdiv(c, a + c),
    "Prev": lambda a, b, c, d: fdiv(a + c, a + b + c + d),
    "PPV": lambda a, b, c, d: fdiv(a, a + b),
    "NPV": lambda a, b, c, d: fdiv(d, c + d),
    "LRpos": _lr_pos,
    "LRneg": _lr_neg,
    "DOR": _dor,
    "slogLRpos": _lr_pos,
    "slogLRneg": _lr_neg,
    "slogDOR": _dor,
    "Acc": lambda a, b, c, d: fdiv(a + d, a + b + c + d),
    "BA": _ba,
    "BM": _bm,
    "MK": _mk,
    "MCC": _mcc,
    "F1": lambda a, b, c, d: fdiv(2 * a, 2 * a + b + c),
    "TS": lambda a, b, c, d: fdiv(a, a + b + c),
    "CK": _ck,
    "FM": _fm,
    "GM": _gm,
    "PT": _pt_ratio,
    "bMCC": _balanced(lambda t, s: fdiv(t + s - 1, math.sqrt(1 - (t - s) ** 2))),
    "bMK": _balanced(lambda t, s: fdiv(t, t + 1 - s) + fdiv(s, s + 1 - t) - 1),
    "bF1": _balanced(lambda t, s: fdiv(2 * t, 2 + t - s)),
    "bFM": _balanced(lambda t, s: fdiv(t, math.sqrt(1 + t - s))),
    "bTS": _balanced(lambda t, s: fdiv(t, 2 - s)),
    "bPPV": _balanced(lambda t, s: fdiv(t, t + 1 - s)),
    "bNPV": _balanced(lambda t, s: fdiv(s, s + 1 - t)),
}


def close(x: float, y: float, tol: float = 1e-9) -> bool:
    """NaN matches NaN, infinities match by sign, finites by mixed tolerance."""
    if math.isnan(x) or math.isnan(y):
        return math.isnan(x) and math.isnan(y)
    if math.isinf(x) or math.isinf(y):
        return x == y
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))
