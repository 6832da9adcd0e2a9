"""Figure bundle rendering: matplotlib images next to their exact data.

``render_report`` writes, into one directory, a small set of PNG
figures for a posterior-predictive analysis together with the CSV/JSON
data they were drawn from.  The delimited data is byte-deterministic
(same writer as the CLI); the images use a pinned style so reruns on
one matplotlib version are stable.
"""

from __future__ import annotations

import os
from typing import List, Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

from . import serialization as ser  # noqa: E402
from .contours import CONTOUR_IDS  # noqa: E402
from .errors import DomainError  # noqa: E402
from .matrices import BenefitMatrix  # noqa: E402
from .metric_dist import metric_pmf  # noqa: E402
from .metrics import display_finite, render_float  # noqa: E402
from .uncertainty import JointPmf  # noqa: E402

_STYLE = {
    "figure.figsize": (6.0, 4.5),
    "figure.dpi": 100,
    "savefig.dpi": 100,
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
}
_POINT_SCALE = 2400.0


def _save(fig, path: str) -> None:
    fig.savefig(path, format="png")
    plt.close(fig)


def _joint_figure(joint: JointPmf, path: str) -> None:
    xs, ys, areas = [], [], []
    for a, d, mass in joint.grid():
        xs.append((joint.n - d) / joint.n)
        ys.append(a / joint.p)
        areas.append(_POINT_SCALE * float(mass))
    fig, ax = plt.subplots()
    ax.scatter(xs, ys, s=areas, alpha=0.6, edgecolors="none")
    ax.set_xlim(-0.02, 1.02)
    ax.set_ylim(-0.02, 1.02)
    ax.set_xlabel("false positive rate")
    ax.set_ylabel("true positive rate")
    ax.set_title(f"{joint.model} predictive pmf, p={joint.p}, n={joint.n}")
    _save(fig, path)


def _metric_figure(metric_id: str, joint: JointPmf, path: str,
                   benefits: Optional[BenefitMatrix] = None) -> None:
    pmf = metric_pmf(metric_id, joint, benefits)
    xs, ys = [], []
    for entry in pmf.entries:
        if not display_finite(metric_id, entry.value):
            continue
        xs.append(render_float(metric_id, entry.value, joint.p, joint.n))
        ys.append(float(entry.mass))
    fig, ax = plt.subplots()
    if xs:
        markerline, stemlines, baseline = ax.stem(xs, ys)
        plt.setp(markerline, markersize=2.5)
        plt.setp(stemlines, linewidth=1.0)
        plt.setp(baseline, visible=False)
    try:
        map_value = pmf.map_value()
    except DomainError:
        map_value = None
    if map_value is not None and display_finite(metric_id, map_value):
        shown = render_float(metric_id, map_value, joint.p, joint.n)
        ax.axvline(shown, color="#b54a1f", linestyle="--", linewidth=1.2, label="MAP")
        ax.legend(loc="upper left")
    ax.set_xlabel(metric_id)
    ax.set_ylabel("probability mass")
    ax.set_title(f"{metric_id} pmf under the {joint.model} model")
    _save(fig, path)


def _contour_figure(metric_id: str, joint: JointPmf, path: str,
                    benefits: Optional[BenefitMatrix] = None) -> Optional[dict]:
    payload = ser.contours_payload(metric_id, None, joint.p, joint.n, benefits)
    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    for item in payload["contours"]:
        for line in item["lines"]:
            xs = [pt[0] for pt in line["points"]]
            ys = [pt[1] for pt in line["points"]]
            ax.plot(xs, ys, color="#1f6fb5", linewidth=1.0, alpha=0.8)
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.set_xlabel("false positive rate")
    ax.set_ylabel("true positive rate")
    ax.set_title(f"{metric_id} level curves, p={joint.p}, n={joint.n}")
    _save(fig, path)
    return payload


def render_report(
    metric_id: str,
    joint: JointPmf,
    out_dir: str,
    benefits: Optional[BenefitMatrix] = None,
) -> List[str]:
    """Write the figure/data bundle and return the created paths."""
    os.makedirs(out_dir, exist_ok=True)
    created: List[str] = []

    def emit(name: str, text: str) -> None:
        path = os.path.join(out_dir, name)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        created.append(path)

    with plt.rc_context(_STYLE):
        joint_payload = ser.pmf_joint_payload(joint)
        emit("joint_pmf.csv", ser.to_csv(joint_payload))
        fig_path = os.path.join(out_dir, "joint_pmf.png")
        _joint_figure(joint, fig_path)
        created.append(fig_path)

        metric_payload = ser.pmf_metric_payload(metric_id, joint, benefits)
        emit("metric_pmf.csv", ser.to_csv(metric_payload))
        emit("metric_pmf.json", ser.to_json(metric_payload))
        fig_path = os.path.join(out_dir, "metric_pmf.png")
        _metric_figure(metric_id, joint, fig_path, benefits)
        created.append(fig_path)

        if metric_id in CONTOUR_IDS and (metric_id != "DB" or benefits is not None):
            fig_path = os.path.join(out_dir, "contours.png")
            payload = _contour_figure(metric_id, joint, fig_path, benefits)
            created.append(fig_path)
            emit("contours.csv", ser.to_csv(payload))
    return sorted(created)
