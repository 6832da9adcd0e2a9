"""Command-line interface.

Subcommands map one-to-one onto the library's computations and emit the
same canonical payloads as the HTTP service: identical parameters
produce byte-identical JSON.  ``--format csv`` flattens a payload into
one RFC-4180 table; ``--format svg`` draws a fixed-style static figure
for contour families and ROC slices.  ``report`` renders a bundle of
matplotlib figures next to the delimited data they were drawn from.

Exit codes: 0 on success, 2 on usage errors (bad flags or flag
combinations), 1 on computation errors (valid flags, impossible math).
"""

from __future__ import annotations

import os
import sys
from fractions import Fraction
from typing import Iterable, Optional, Tuple

import click

from . import serialization as ser
from .contours import level_from_display
from .errors import RocgridError
from .lattice import PROJECTIONS
from .matrices import BenefitMatrix, ConfusionMatrix
from .metrics import parse_metric_id
from .uncertainty import (
    BETA_BINOMIAL,
    MODELS,
    UNIFORM_PRIOR,
    BetaPrior,
    check_grid_guard,
    joint_predictive,
)

OUTPUT_DIR_ENV = "ROCGRID_OUTPUT_DIR"


# ---------------------------------------------------------------------------
# parsing helpers (usage errors -> exit code 2)
# ---------------------------------------------------------------------------


def _parse_fraction(text: str, what: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise click.UsageError(f"cannot parse {what} {text!r}: expected a rational") from exc


def _parse_prior(text: Optional[str], what: str) -> Optional[BetaPrior]:
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 2:
        raise click.UsageError(f"{what} must look like 'u,v', got {text!r}")
    u = _parse_fraction(parts[0], f"{what} u")
    v = _parse_fraction(parts[1], f"{what} v")
    if u <= 0 or v <= 0:
        raise click.UsageError(f"{what} shapes must be positive, got {text!r}")
    return BetaPrior(u, v)


def _parse_benefits(text: Optional[str]) -> Optional[BenefitMatrix]:
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 4:
        raise click.UsageError(f"--benefits must list four rationals 'tp,fp,fn,tn', got {text!r}")
    return BenefitMatrix.of(*(_parse_fraction(t, "benefit") for t in parts))


def _parse_window(text: str) -> Tuple[float, float, float, float]:
    parts = text.split(",")
    if len(parts) != 4:
        raise click.UsageError(f"--window must be 'x0,x1,y0,y1', got {text!r}")
    try:
        x0, x1, y0, y1 = (float(t) for t in parts)
    except ValueError as exc:
        raise click.UsageError(f"cannot parse window {text!r}") from exc
    if not (x0 < x1 and y0 < y1):
        raise click.UsageError(f"window must have positive extent, got {text!r}")
    return (x0, x1, y0, y1)


def _metric(metric: str) -> str:
    try:
        return parse_metric_id(metric)
    except RocgridError as exc:
        raise click.UsageError(str(exc)) from exc


def _matrix(tp: int, fp: int, fn: int, tn: int) -> ConfusionMatrix:
    try:
        return ConfusionMatrix(tp, fp, fn, tn)
    except RocgridError as exc:
        raise click.UsageError(str(exc)) from exc


def _build_joint(model, tp, fp, fn, tn, pos, neg, prior, prior_tp, prior_tn):
    if model not in MODELS:
        raise click.UsageError(f"--model must be one of {', '.join(MODELS)}, got {model!r}")
    obs = _matrix(tp, fp, fn, tn)
    p = obs.pos if pos is None else pos
    n = obs.neg if neg is None else neg
    base = _parse_prior(prior, "--prior") or UNIFORM_PRIOR
    tp_prior = _parse_prior(prior_tp, "--prior-tp") or base
    tn_prior = _parse_prior(prior_tn, "--prior-tn") or base
    joint = joint_predictive(model, obs, p, n, tp_prior, tn_prior)
    return joint, obs, p, n, tp_prior, tn_prior


# ---------------------------------------------------------------------------
# output plumbing
# ---------------------------------------------------------------------------


def _resolve_out(out: Optional[str]) -> Optional[str]:
    if out is None:
        return None
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(out):
        os.makedirs(base, exist_ok=True)
        return os.path.join(base, out)
    return out


def _write_text(text: str, out: Optional[str]) -> None:
    path = _resolve_out(out)
    if path is None:
        click.echo(text, nl=False)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _write_chunks(chunks: Iterable[str], out: Optional[str]) -> None:
    path = _resolve_out(out)
    if path is None:
        for chunk in chunks:
            sys.stdout.write(chunk)
        sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            for chunk in chunks:
                fh.write(chunk)
            fh.write("\n")


def _emit(payload, fmt: str, out: Optional[str], svg_ok: bool = False) -> None:
    if fmt == "json":
        _write_chunks(ser.to_json_chunks(payload), out)
    elif fmt == "csv":
        _write_text(ser.to_csv(payload), out)
    elif fmt == "svg":
        if not svg_ok:
            raise click.UsageError("svg output is only available for contours and ROC slices")
        _write_text(ser.to_svg(payload), out)
    else:  # pragma: no cover - click choice already guards
        raise click.UsageError(f"unknown format {fmt!r}")


def _format_option(*, svg: bool = False):
    choices = ["json", "csv", "svg"] if svg else ["json", "csv"]
    return click.option(
        "--format", "fmt", type=click.Choice(choices), default="json", show_default=True,
        help="Output format.",
    )


_out_option = click.option(
    "--out", type=str, default=None,
    help=f"Output file (relative paths resolve under ${OUTPUT_DIR_ENV} when set); default stdout.",
)


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except RocgridError as exc:
            raise click.ClickException(str(exc)) from exc


@click.group(cls=_Group, context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="rocgrid")
def main() -> None:
    """Exact confusion-matrix geometry, metric contours, and predictive pmfs."""


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


@main.command()
@_format_option()
@_out_option
def metrics(fmt, out) -> None:
    """List every metric with its display metadata."""
    _emit(ser.metrics_payload(), fmt, out)


@main.command()
@click.option("--total", type=int, default=None, help="Enumerate all matrices of this total count.")
@click.option("--count-only", is_flag=True, help="With --total: print only the matrix count.")
@click.option("--pos", type=int, default=None, help="Real positives of a slice.")
@click.option("--neg", type=int, default=None, help="Real negatives of a slice.")
@_format_option(svg=True)
@_out_option
def lattice(total, count_only, pos, neg, fmt, out) -> None:
    """Enumerate the matrix lattice: one total count, or one (pos, neg) slice."""
    slice_mode = pos is not None or neg is not None
    if (total is None) == (not slice_mode):
        raise click.UsageError("pass either --total or both --pos and --neg")
    if total is not None:
        if count_only:
            _write_text(str(ser.lattice_count_payload(total)["count"]) + "\n", out)
            return
        if fmt == "svg":
            raise click.UsageError("svg output needs a --pos/--neg slice")
        _emit(ser.lattice_total_payload(total), fmt, out)
        return
    if pos is None or neg is None:
        raise click.UsageError("slice mode needs both --pos and --neg")
    if count_only:
        raise click.UsageError("--count-only applies to --total mode")
    check_grid_guard(pos, neg)
    _emit(ser.lattice_slice_payload(pos, neg), fmt, out, svg_ok=True)


@main.command()
@click.option("--kind", type=click.Choice(sorted(PROJECTIONS)), required=True)
@click.option("--total", type=int, default=None, help="Project the full lattice of this total.")
@click.option("--pos", type=int, default=None, help="Project one slice: real positives.")
@click.option("--neg", type=int, default=None, help="Project one slice: real negatives.")
@click.option("--tp", type=int, default=None)
@click.option("--fp", type=int, default=None)
@click.option("--fn", type=int, default=None)
@click.option("--tn", type=int, default=None)
@_format_option()
@_out_option
def project(kind, total, pos, neg, tp, fp, fn, tn, fmt, out) -> None:
    """Project matrices to 3D: a full lattice, a slice, or one matrix."""
    cells = [tp, fp, fn, tn]
    matrix = None
    if any(c is not None for c in cells):
        if any(c is None for c in cells):
            raise click.UsageError("a single matrix needs all of --tp --fp --fn --tn")
        matrix = _matrix(tp, fp, fn, tn)
    if pos is not None or neg is not None:
        if pos is None or neg is None:
            raise click.UsageError("slice projection needs both --pos and --neg")
        check_grid_guard(pos, neg)
    _emit(ser.project_payload(kind, total=total, p=pos, n=neg, matrix=matrix), fmt, out)


@main.command()
@click.option("--metric", required=True, help="Metric id (case-insensitive).")
@click.option("--levels", type=str, default=None,
              help="Comma-separated display-space levels; defaults to the metric's grid.")
@click.option("--pos", type=int, default=None, help="Real positives (prevalence-dependent metrics).")
@click.option("--neg", type=int, default=None, help="Real negatives (prevalence-dependent metrics).")
@click.option("--benefits", type=str, default=None, help="Benefit cells 'tp,fp,fn,tn' (DB only).")
@click.option("--window", type=str, default="0,1,0,1", show_default=True,
              help="Sampling window 'x0,x1,y0,y1' in (fpr, tpr) coordinates.")
@click.option("--steps", type=int, default=256, show_default=True, help="Samples per curve (>= 2).")
@_format_option(svg=True)
@_out_option
def contours(metric, levels, pos, neg, benefits, window, steps, fmt, out) -> None:
    """Sample the level-curve family of a metric into polylines."""
    metric_id = _metric(metric)
    ben = _parse_benefits(benefits)
    level_values = None
    if levels is not None:
        level_values = tuple(
            level_from_display(metric_id, part.strip(), pos, neg)
            for part in levels.split(",")
            if part.strip()
        )
        if not level_values:
            raise click.UsageError("--levels is empty")
    payload = ser.contours_payload(
        metric_id, level_values, pos, neg, ben, _parse_window(window), steps
    )
    _emit(payload, fmt, out, svg_ok=True)


@main.command()
@click.option("--model", type=click.Choice(list(MODELS)), default=BETA_BINOMIAL, show_default=True)
@click.option("--tp", type=int, required=True, help="Observed true positives.")
@click.option("--fp", type=int, required=True, help="Observed false positives.")
@click.option("--fn", type=int, required=True, help="Observed false negatives.")
@click.option("--tn", type=int, required=True, help="Observed true negatives.")
@click.option("--pos", type=int, default=None, help="Future positives; default observed.")
@click.option("--neg", type=int, default=None, help="Future negatives; default observed.")
@click.option("--prior", type=str, default=None, help="Beta prior 'u,v' for both margins [1,1].")
@click.option("--prior-tp", type=str, default=None, help="TP-margin prior override 'u,v'.")
@click.option("--prior-tn", type=str, default=None, help="TN-margin prior override 'u,v'.")
@click.option("--metric", type=str, default=None, help="Group the joint pmf by this metric.")
@click.option("--benefits", type=str, default=None, help="Benefit cells 'tp,fp,fn,tn' (DB only).")
@click.option("--bins", type=int, default=None, help="Also bin the metric pmf into this many bins.")
@_format_option()
@_out_option
def pmf(model, tp, fp, fn, tn, pos, neg, prior, prior_tp, prior_tn, metric, benefits, bins, fmt, out) -> None:
    """Posterior-predictive pmf of future counts, or of a metric of them."""
    joint, *_ = _build_joint(model, tp, fp, fn, tn, pos, neg, prior, prior_tp, prior_tn)
    if metric is None:
        if bins is not None:
            raise click.UsageError("--bins needs --metric")
        payload = ser.pmf_joint_payload(joint)
    else:
        payload = ser.pmf_metric_payload(_metric(metric), joint, _parse_benefits(benefits), bins)
    _emit(payload, fmt, out)


@main.command()
@click.option("--model", type=click.Choice(list(MODELS)), default=BETA_BINOMIAL, show_default=True)
@click.option("--tp", type=int, required=True)
@click.option("--fp", type=int, required=True)
@click.option("--fn", type=int, required=True)
@click.option("--tn", type=int, required=True)
@click.option("--pos", type=int, default=None, help="Future positives; default observed.")
@click.option("--neg", type=int, default=None, help="Future negatives; default observed.")
@click.option("--prior", type=str, default=None)
@click.option("--prior-tp", type=str, default=None)
@click.option("--prior-tn", type=str, default=None)
@click.option("--draws", type=int, required=True, help="Monte-Carlo draw count.")
@click.option("--seed", type=int, required=True, help="Generator seed (determinism).")
@_format_option()
@_out_option
def oracle(model, tp, fp, fn, tn, pos, neg, prior, prior_tp, prior_tn, draws, seed, fmt, out) -> None:
    """Seeded Monte-Carlo frequencies over the future-count grid."""
    _, obs, p, n, tp_prior, tn_prior = _build_joint(
        model, tp, fp, fn, tn, pos, neg, prior, prior_tp, prior_tn
    )
    _emit(ser.oracle_payload(model, obs, p, n, draws, seed, tp_prior, tn_prior), fmt, out)


@main.command(name="pr-map")
@click.option("--fpr", type=str, required=True, help="False positive rate (rational or decimal).")
@click.option("--tpr", type=str, required=True, help="True positive rate (rational or decimal).")
@click.option("--pos", type=int, required=True, help="Real positives.")
@click.option("--neg", type=int, required=True, help="Real negatives.")
@_format_option()
@_out_option
def pr_map(fpr, tpr, pos, neg, fmt, out) -> None:
    """Map an ROC point to precision-recall space."""
    payload = ser.pr_map_payload(
        _parse_fraction(fpr, "--fpr"), _parse_fraction(tpr, "--tpr"), pos, neg
    )
    _emit(payload, fmt, out)


@main.command()
@click.option("--model", type=click.Choice(list(MODELS)), default=BETA_BINOMIAL, show_default=True)
@click.option("--tp", type=int, default=16, show_default=True)
@click.option("--fp", type=int, default=8, show_default=True)
@click.option("--fn", type=int, default=4, show_default=True)
@click.option("--tn", type=int, default=32, show_default=True)
@click.option("--pos", type=int, default=None, help="Future positives; default observed.")
@click.option("--neg", type=int, default=None, help="Future negatives; default observed.")
@click.option("--prior", type=str, default=None)
@click.option("--metric", type=str, default="MCC", show_default=True)
@click.option("--out", "out_dir", type=str, default="report", show_default=True,
              help=f"Output directory (relative paths resolve under ${OUTPUT_DIR_ENV} when set).")
def report(model, tp, fp, fn, tn, pos, neg, prior, metric, out_dir) -> None:
    """Render a figure bundle (PNG) plus the exact data behind it (CSV/JSON)."""
    from .reports import render_report

    joint, *_ = _build_joint(model, tp, fp, fn, tn, pos, neg, prior, None, None)
    target = _resolve_out(out_dir) or out_dir
    paths = render_report(_metric(metric), joint, target)
    for path in paths:
        click.echo(path)


@main.command()
@click.option("--host", type=str, default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--cors", type=str, default=None,
              help="Comma-separated CORS origin allow-list; default '*'.")
@click.option("--memo-size", type=int, default=256, show_default=True,
              help="LRU response-memo entries; 0 disables.")
@click.option("--joint-guard", type=int, default=None,
              help="Override the p*n guard for joint pmfs.")
@click.option("--lattice-guard", type=int, default=None,
              help="Override the N guard for full-lattice dumps.")
def serve(host, port, cors, memo_size, joint_guard, lattice_guard) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    app = create_app(
        cors_origins=cors.split(",") if cors else None,
        memo_size=memo_size,
        joint_guard=joint_guard,
        lattice_guard=lattice_guard,
    )
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":  # pragma: no cover
    main()
