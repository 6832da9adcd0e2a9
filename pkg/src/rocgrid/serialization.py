"""Canonical payloads and renderers shared by the CLI and the service.

Every externally visible body is built here so that the CLI and the
HTTP service emit byte-identical output for the same request.  JSON is
rendered by a small deterministic writer: two-space indentation, fixed
field order (builder insertion order), and leaf arrays of scalars kept
on one line.  Floats are rounded to 12 significant digits before
rendering; exact rationals travel as decimal strings so no consumer has
to trust the float.  Non-finite display values are rendered as null,
with the value's ``kind`` field carrying the information instead.

Large lattice enumerations render through the same writer from a lazy
row iterator (wrapped in :class:`JsonStream`), so they can stream with
constant memory while keeping the exact same bytes as a materialized
render.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .contours import (
    CONTOUR_IDS,
    ContourSet,
    default_levels,
    sample_contour,
)
from .errors import DomainError
from .lattice import (
    PROJECTIONS,
    count_matrices,
    enumerate_matrices,
    enumerate_slice,
    roc_to_pr,
)
from .matrices import BenefitMatrix, ConfusionMatrix
from .metric_dist import MetricPmf, histogram, metric_pmf, summarize
from .metrics import METRIC_IDS, METRICS, display_range, render_float
from .uncertainty import BetaPrior, JointPmf, marginals, mc_oracle
from .values import MetricValue

__all__ = [
    "JsonStream",
    "fmt_float",
    "to_json",
    "to_json_chunks",
    "frac_payload",
    "value_payload",
    "metrics_payload",
    "lattice_count_payload",
    "lattice_total_payload",
    "lattice_slice_payload",
    "project_payload",
    "contours_payload",
    "pmf_joint_payload",
    "pmf_metric_payload",
    "pr_map_payload",
    "oracle_payload",
    "to_csv",
    "to_svg",
]


# ---------------------------------------------------------------------------
# scalar formatting
# ---------------------------------------------------------------------------


def fmt_float(x: float) -> Optional[float]:
    """Round to 12 significant digits; None for non-finite input."""
    if x is None or not math.isfinite(x):
        return None
    return float(f"{x:.12g}")


def frac_payload(q: Optional[Fraction]) -> Optional[Dict[str, object]]:
    """Exact rational as {num, den, float}; None passes through as null."""
    if q is None:
        return None
    return {
        "num": str(q.numerator),
        "den": str(q.denominator),
        "float": fmt_float(q.numerator / q.denominator),
    }


def value_payload(
    metric_id: str,
    value: MetricValue,
    p: Optional[int] = None,
    n: Optional[int] = None,
) -> Dict[str, object]:
    """Canonical metric value as {kind, [sign], [num, den], float}.

    The float field holds the display-space rendering (scaled log for
    the slog metrics, threshold for PT) rounded to 12 significant
    digits, or null when the display is not a finite number.
    """
    out: Dict[str, object] = {"kind": value.kind}
    if value.kind == "sqrt":
        out["sign"] = value.sign
    if value.kind in ("rational", "sqrt"):
        out["num"] = str(value.num)
        out["den"] = str(value.den)
    shown = render_float(metric_id, value, p, n)
    out["float"] = None if shown is None else fmt_float(shown)
    return out


# ---------------------------------------------------------------------------
# deterministic JSON writer
# ---------------------------------------------------------------------------


class JsonStream:
    """Marker wrapping a lazy iterable rendered as a block JSON array."""

    __slots__ = ("iterable",)

    def __init__(self, iterable: Iterable[object]) -> None:
        self.iterable = iterable


def _scalar(value: object) -> str:
    return json.dumps(value, ensure_ascii=False, allow_nan=False)


def _is_scalar(value: object) -> bool:
    return value is None or isinstance(value, (bool, int, float, str))


def to_json_chunks(value: object, indent: int = 0) -> Iterator[str]:
    """Stream the canonical JSON rendering of a payload, piecewise."""
    pad = " " * indent
    inner = " " * (indent + 2)
    if isinstance(value, dict):
        if not value:
            yield "{}"
            return
        yield "{\n"
        for i, (key, item) in enumerate(value.items()):
            yield f"{inner}{_scalar(str(key))}: "
            yield from to_json_chunks(item, indent + 2)
            yield ",\n" if i < len(value) - 1 else "\n"
        yield pad + "}"
    elif isinstance(value, JsonStream):
        first = True
        for item in value.iterable:
            yield "[\n" if first else ",\n"
            first = False
            yield inner
            yield from to_json_chunks(item, indent + 2)
        yield "[]" if first else f"\n{pad}]"
    elif isinstance(value, (list, tuple)):
        items = list(value)
        if not items:
            yield "[]"
        elif all(_is_scalar(item) for item in items):
            yield "[" + ", ".join(_scalar(item) for item in items) + "]"
        else:
            yield "[\n"
            for i, item in enumerate(items):
                yield inner
                yield from to_json_chunks(item, indent + 2)
                yield ",\n" if i < len(items) - 1 else "\n"
            yield pad + "]"
    elif _is_scalar(value):
        yield _scalar(value)
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


def to_json(value: object) -> str:
    """Full canonical JSON text, newline-terminated."""
    return "".join(to_json_chunks(value)) + "\n"


# ---------------------------------------------------------------------------
# payload builders
# ---------------------------------------------------------------------------


def metrics_payload() -> Dict[str, object]:
    """Catalogue of every metric with display metadata."""
    entries = []
    for metric_id in METRIC_IDS:
        info = METRICS[metric_id]
        rng = display_range(metric_id)
        entries.append(
            {
                "id": metric_id,
                "label": info.label,
                "value_class": info.value_class,
                "prevalence_dependent": info.prevalence_dependent,
                "signed_levels": info.signed_levels,
                "display_range": None if rng is None else [rng[0], rng[1]],
                "has_contour": metric_id in CONTOUR_IDS,
            }
        )
    return {"metrics": entries}


def lattice_count_payload(total: int) -> Dict[str, object]:
    return {"total": total, "count": count_matrices(total)}


def lattice_total_payload(total: int) -> Dict[str, object]:
    """All matrices of one total count; the row array renders lazily."""
    rows = (list(m.counts()) for m in enumerate_matrices(total))
    return {
        "total": total,
        "count": count_matrices(total),
        "matrices": JsonStream(rows),
    }


def lattice_slice_payload(p: int, n: int) -> Dict[str, object]:
    """The (p+1) x (n+1) slice with exact ROC rates per point."""
    points = []
    for a, d, m in enumerate_slice(p, n):
        rates = m.rates()
        points.append(
            {
                "a": a,
                "d": d,
                "matrix": list(m.counts()),
                "tpr": frac_payload(rates.tpr),
                "fpr": frac_payload(rates.fpr),
            }
        )
    return {"p": p, "n": n, "count": (p + 1) * (n + 1), "points": points}


def _projected(kind: str, matrices: Iterable[ConfusionMatrix]) -> Iterator[Dict[str, object]]:
    project = PROJECTIONS[kind]
    for m in matrices:
        x, y, z = project(m)
        yield {
            "matrix": list(m.counts()),
            "xyz": [fmt_float(float(x)), fmt_float(float(y)), fmt_float(float(z))],
        }


def project_payload(
    kind: str,
    total: Optional[int] = None,
    p: Optional[int] = None,
    n: Optional[int] = None,
    matrix: Optional[ConfusionMatrix] = None,
) -> Dict[str, object]:
    """3D projection of a full lattice, one slice, or a single matrix."""
    if kind not in PROJECTIONS:
        raise DomainError(f"unknown projection kind {kind!r}; choose from {sorted(PROJECTIONS)}")
    modes = [total is not None, p is not None or n is not None, matrix is not None]
    if sum(modes) != 1:
        raise DomainError("choose exactly one of: total, pos/neg, or a single matrix")
    head: Dict[str, object] = {"kind": kind}
    if total is not None:
        head["mode"] = "total"
        head["total"] = total
        points: object = JsonStream(_projected(kind, enumerate_matrices(total)))
    elif matrix is not None:
        head["mode"] = "matrix"
        points = list(_projected(kind, [matrix]))
    else:
        if p is None or n is None:
            raise DomainError("slice projection needs both pos and neg")
        head["mode"] = "slice"
        head["p"] = p
        head["n"] = n
        points = list(_projected(kind, (m for _, _, m in enumerate_slice(p, n))))
    head["points"] = points
    return head


def _benefit_list(benefits: Optional[BenefitMatrix]) -> Optional[List[str]]:
    if benefits is None:
        return None
    return [str(c) for c in benefits.cells()]


def contours_payload(
    metric_id: str,
    levels: Optional[Sequence[MetricValue]] = None,
    p: Optional[int] = None,
    n: Optional[int] = None,
    benefits: Optional[BenefitMatrix] = None,
    window: Tuple[float, float, float, float] = (0.0, 1.0, 0.0, 1.0),
    steps: int = 256,
) -> Dict[str, object]:
    """Sampled level-curve family; verticals appear as branch -1 lines."""
    if levels is None:
        levels = default_levels(metric_id, p, n, benefits)
    sets: List[ContourSet] = [
        sample_contour(metric_id, level, p, n, benefits, window, steps) for level in levels
    ]
    contour_items = []
    for cset in sets:
        lines = [
            {"branch": line.branch, "points": [[fmt_float(x), fmt_float(y)] for x, y in line.points]}
            for line in cset.lines
        ]
        y_lo, y_hi = cset.window[2], cset.window[3]
        vertical_lines = [
            {"branch": -1, "points": [[fmt_float(x), y_lo], [fmt_float(x), y_hi]]}
            for x in cset.verticals
        ]
        shown = render_float(metric_id, cset.level, p, n)
        contour_items.append(
            {
                "level": value_payload(metric_id, cset.level, p, n),
                "display": None if shown is None else fmt_float(shown),
                "lines": vertical_lines + lines,
            }
        )
    return {
        "metric": metric_id,
        "p": p,
        "n": n,
        "benefits": _benefit_list(benefits),
        "window": [float(w) for w in window],
        "steps": steps,
        "contours": contour_items,
    }


def _prior_list(prior: Optional[BetaPrior]) -> Optional[List[str]]:
    if prior is None:
        return None
    return [str(prior.u), str(prior.v)]


def _joint_head(joint: JointPmf) -> Dict[str, object]:
    return {
        "model": joint.model,
        "obs": list(joint.obs.counts()),
        "p": joint.p,
        "n": joint.n,
        "prior_tp": _prior_list(joint.prior_tp),
        "prior_tn": _prior_list(joint.prior_tn),
    }


def pmf_joint_payload(joint: JointPmf) -> Dict[str, object]:
    """Joint (a, d) pmf: exact margins, rate marginals, float grid rows."""
    head = _joint_head(joint)
    head["tp_margin"] = [frac_payload(m) for m in joint.tp_margin]
    head["tn_margin"] = [frac_payload(m) for m in joint.tn_margin]
    if joint.p > 0 and joint.n > 0:
        tpr, fpr = marginals(joint)
        head["tpr_marginal"] = [
            {"rate": frac_payload(r), "mass": frac_payload(m)} for r, m in tpr
        ]
        head["fpr_marginal"] = [
            {"rate": frac_payload(r), "mass": frac_payload(m)} for r, m in fpr
        ]
    else:
        head["tpr_marginal"] = None
        head["fpr_marginal"] = None
    head["grid"] = [
        [fmt_float(float(joint.tp_margin[a] * joint.tn_margin[d])) for d in range(joint.n + 1)]
        for a in range(joint.p + 1)
    ]
    return head


def _summary_payload(pmf: MetricPmf) -> Optional[Dict[str, object]]:
    try:
        s = summarize(pmf)
    except DomainError:
        return None
    return {
        "mean": fmt_float(s.mean),
        "sd": fmt_float(s.sd),
        "interval": [fmt_float(s.interval_low), fmt_float(s.interval_high)],
        "interval_mass": frac_payload(s.interval_mass),
        "level": str(s.level),
    }


def pmf_metric_payload(
    metric_id: str,
    joint: JointPmf,
    benefits: Optional[BenefitMatrix] = None,
    bins: Optional[int] = None,
) -> Dict[str, object]:
    """Exact metric pmf with multiplicities, MAP, summary, and histogram."""
    pmf = metric_pmf(metric_id, joint, benefits)
    head = _joint_head(joint)
    payload: Dict[str, object] = {"metric": metric_id, **head}
    if benefits is not None:
        payload["benefits"] = _benefit_list(benefits)
    payload["entries"] = [
        {
            "value": value_payload(metric_id, e.value, joint.p, joint.n),
            "mass": frac_payload(e.mass),
            "count": e.count,
        }
        for e in pmf.entries
    ]
    payload["undefined"] = {
        "mass": frac_payload(pmf.undefined_mass),
        "count": pmf.undefined_count,
    }
    try:
        map_val = pmf.map_value()
    except DomainError:
        map_val = None
    payload["map"] = None if map_val is None else value_payload(metric_id, map_val, joint.p, joint.n)
    payload["summary"] = _summary_payload(pmf)
    if bins is not None:
        h = histogram(pmf, bins)
        payload["histogram"] = {
            "bins": bins,
            "low": fmt_float(h.low),
            "high": fmt_float(h.high),
            "masses": [frac_payload(m) for m in h.bin_masses],
            "counts": list(h.bin_counts),
        }
    return payload


def pr_map_payload(fpr, tpr, p: int, n: int) -> Dict[str, object]:
    point = roc_to_pr(fpr, tpr, p, n)
    return {
        "p": p,
        "n": n,
        "fpr": frac_payload(Fraction(fpr)),
        "tpr": frac_payload(Fraction(tpr)),
        "recall": frac_payload(point.recall),
        "precision": frac_payload(point.precision),
    }


def oracle_payload(
    model: str,
    obs: ConfusionMatrix,
    p: int,
    n: int,
    draws: int,
    seed: int,
    prior_tp: BetaPrior,
    prior_tn: BetaPrior,
) -> Dict[str, object]:
    """Seeded Monte-Carlo slice counts (non-zero cells only)."""
    counts = mc_oracle(model, obs, p, n, draws, seed, prior_tp, prior_tn)
    rows = [[a, d, counts[a, d]] for (a, d) in sorted(counts) if counts[a, d] > 0]
    return {
        "model": model,
        "obs": list(obs.counts()),
        "p": p,
        "n": n,
        "prior_tp": _prior_list(prior_tp),
        "prior_tn": _prior_list(prior_tn),
        "draws": draws,
        "seed": seed,
        "counts": rows,
    }


# ---------------------------------------------------------------------------
# CSV rendering
# ---------------------------------------------------------------------------


def _csv_cell(value: object) -> object:
    if value is None:
        return ""
    return value


def _payload_float(cell: Optional[Dict[str, object]]) -> object:
    return "" if cell is None else cell["float"]


def to_csv(payload: Dict[str, object]) -> str:
    """Flat RFC-4180 table for a payload built by this module."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    if "metrics" in payload:
        writer.writerow(
            [
                "id",
                "label",
                "value_class",
                "prevalence_dependent",
                "signed_levels",
                "display_low",
                "display_high",
                "has_contour",
            ]
        )
        for m in payload["metrics"]:
            rng = m["display_range"] or ["", ""]
            writer.writerow(
                [
                    m["id"],
                    m["label"],
                    m["value_class"],
                    m["prevalence_dependent"],
                    m["signed_levels"],
                    rng[0],
                    rng[1],
                    m["has_contour"],
                ]
            )
    elif "matrices" in payload:
        writer.writerow(["tp", "fp", "fn", "tn"])
        for row in _iter_rows(payload["matrices"]):
            writer.writerow(row)
    elif "points" in payload and "kind" in payload:
        writer.writerow(["tp", "fp", "fn", "tn", "x", "y", "z"])
        for pt in _iter_rows(payload["points"]):
            writer.writerow(list(pt["matrix"]) + [_csv_cell(c) for c in pt["xyz"]])
    elif "points" in payload:
        writer.writerow(["a", "d", "tp", "fp", "fn", "tn", "tpr", "fpr"])
        for pt in payload["points"]:
            writer.writerow(
                [pt["a"], pt["d"], *pt["matrix"], _payload_float(pt["tpr"]), _payload_float(pt["fpr"])]
            )
    elif "contours" in payload:
        writer.writerow(["level", "branch", "x", "y"])
        for item in payload["contours"]:
            shown = _csv_cell(item["display"])
            for line in item["lines"]:
                for x, y in line["points"]:
                    writer.writerow([shown, line["branch"], x, y])
    elif "entries" in payload:
        writer.writerow(
            ["kind", "sign", "num", "den", "value", "mass_num", "mass_den", "mass", "count"]
        )
        for e in payload["entries"]:
            v, mass = e["value"], e["mass"]
            writer.writerow(
                [
                    v["kind"],
                    v.get("sign", ""),
                    v.get("num", ""),
                    v.get("den", ""),
                    _csv_cell(v["float"]),
                    mass["num"],
                    mass["den"],
                    mass["float"],
                    e["count"],
                ]
            )
        und = payload["undefined"]
        writer.writerow(
            ["undefined", "", "", "", "", und["mass"]["num"], und["mass"]["den"], und["mass"]["float"], und["count"]]
        )
    elif "grid" in payload:
        writer.writerow(["a", "d", "mass_num", "mass_den", "mass"])
        p, n = payload["p"], payload["n"]
        tp, tn = payload["tp_margin"], payload["tn_margin"]
        for a in range(p + 1):
            for d in range(n + 1):
                q = Fraction(int(tp[a]["num"]), int(tp[a]["den"])) * Fraction(
                    int(tn[d]["num"]), int(tn[d]["den"])
                )
                writer.writerow([a, d, q.numerator, q.denominator, fmt_float(float(q))])
    elif "counts" in payload and "draws" in payload:
        writer.writerow(["a", "d", "count"])
        for a, d, c in payload["counts"]:
            writer.writerow([a, d, c])
    elif "recall" in payload:
        writer.writerow(["recall", "precision"])
        writer.writerow([_payload_float(payload["recall"]), _payload_float(payload["precision"])])
    elif "count" in payload:
        writer.writerow(["total", "count"])
        writer.writerow([payload["total"], payload["count"]])
    else:
        raise DomainError("no CSV table defined for this payload")
    return buf.getvalue()


def _iter_rows(value: Union[JsonStream, Iterable[object]]) -> Iterable[object]:
    return value.iterable if isinstance(value, JsonStream) else value


# ---------------------------------------------------------------------------
# minimal SVG rendering
# ---------------------------------------------------------------------------

_SVG_SIZE = 480
_SVG_PAD = 24
_LINE_COLOR = "#1f6fb5"
_VERTICAL_COLOR = "#b54a1f"
_POINT_COLOR = "#1f6fb5"


def _svg_mapper(window: Tuple[float, float, float, float]):
    x_lo, x_hi, y_lo, y_hi = window
    span = _SVG_SIZE - 2 * _SVG_PAD

    def to_px(x: float, y: float) -> Tuple[float, float]:
        px = _SVG_PAD + (x - x_lo) / (x_hi - x_lo) * span
        py = _SVG_PAD + (y_hi - y) / (y_hi - y_lo) * span
        return (round(px, 3), round(py, 3))

    return to_px


def to_svg(payload: Dict[str, object]) -> str:
    """Fixed-style static SVG for contour and slice payloads."""
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_SIZE}" height="{_SVG_SIZE}" '
        f'viewBox="0 0 {_SVG_SIZE} {_SVG_SIZE}">',
        f'<rect x="{_SVG_PAD}" y="{_SVG_PAD}" width="{_SVG_SIZE - 2 * _SVG_PAD}" '
        f'height="{_SVG_SIZE - 2 * _SVG_PAD}" fill="none" stroke="#333333" stroke-width="1"/>',
    ]
    if "contours" in payload:
        to_px = _svg_mapper(tuple(payload["window"]))
        for item in payload["contours"]:
            for line in item["lines"]:
                pts = " ".join(
                    "{},{}".format(*to_px(x, y)) for x, y in line["points"]
                )
                color = _VERTICAL_COLOR if line["branch"] < 0 else _LINE_COLOR
                parts.append(
                    f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>'
                )
    elif "points" in payload and "kind" not in payload:
        to_px = _svg_mapper((0.0, 1.0, 0.0, 1.0))
        for pt in payload["points"]:
            tpr, fpr = pt["tpr"], pt["fpr"]
            if tpr is None or fpr is None:
                continue
            px, py = to_px(fpr["float"], tpr["float"])
            parts.append(f'<circle cx="{px}" cy="{py}" r="2" fill="{_POINT_COLOR}"/>')
    else:
        raise DomainError("no SVG rendering defined for this payload")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
