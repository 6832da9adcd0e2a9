"""Stateless HTTP JSON API over the library's computations.

Every successful body is produced by the same payload builders and JSON
writer as the CLI, so identical parameters give byte-identical output.
Query parameters arrive as raw strings and are validated here: invalid
input answers 400 with a machine-readable error code, resource-guard
violations answer 422, and no validated input can reach a 500.

Configuration comes from the app-factory arguments, falling back to
environment variables: ``ROCGRID_CORS_ORIGINS`` (comma-separated
allow-list, default ``*``), ``ROCGRID_MEMO_SIZE`` (LRU response memo,
0 disables), ``ROCGRID_JOINT_GUARD`` (p*n cap for grids), and
``ROCGRID_LATTICE_GUARD`` (total-count cap for full-lattice dumps).
An optional in-memory memo keyed by the canonical query string caches
full response bodies; it is size-bounded and never changes content.
"""

from __future__ import annotations

import os
import threading
from collections import OrderedDict
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import Response, StreamingResponse

from . import serialization as ser
from .contours import level_from_display
from .errors import DomainError, GuardError, RocgridError
from .lattice import PROJECTIONS
from .matrices import BenefitMatrix, ConfusionMatrix
from .metrics import parse_metric_id
from .uncertainty import (
    GRID_GUARD,
    MODELS,
    UNIFORM_PRIOR,
    BetaPrior,
    joint_predictive,
)

LATTICE_GUARD = 10_000
_STREAM_THRESHOLD = 200
_STEPS_GUARD = 100_000
_BINS_GUARD = 10_000

_TRUTHY = {"1", "true", "yes", "on"}
_FALSY = {"0", "false", "no", "off"}


# ---------------------------------------------------------------------------
# raw-string parameter parsing (failures -> 400 invalid_parameter)
# ---------------------------------------------------------------------------


class _Params:
    def __init__(self, request: Request) -> None:
        self.raw: Dict[str, str] = dict(request.query_params)

    def str_(self, name: str, default: Optional[str] = None) -> Optional[str]:
        return self.raw.get(name, default)

    def int_(
        self,
        name: str,
        default: Optional[int] = None,
        minimum: Optional[int] = None,
        required: bool = False,
    ) -> Optional[int]:
        text = self.raw.get(name)
        if text is None:
            if required:
                raise DomainError(f"missing required parameter {name!r}")
            return default
        try:
            value = int(text)
        except ValueError as exc:
            raise DomainError(f"parameter {name!r} must be an integer, got {text!r}") from exc
        if minimum is not None and value < minimum:
            raise DomainError(f"parameter {name!r} must be >= {minimum}, got {value}")
        return value

    def bool_(self, name: str) -> bool:
        text = self.raw.get(name)
        if text is None:
            return False
        lowered = text.lower()
        if lowered in _TRUTHY:
            return True
        if lowered in _FALSY:
            return False
        raise DomainError(f"parameter {name!r} must be a boolean flag, got {text!r}")

    def fraction(self, name: str, required: bool = False) -> Optional[Fraction]:
        text = self.raw.get(name)
        if text is None:
            if required:
                raise DomainError(f"missing required parameter {name!r}")
            return None
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"parameter {name!r} must be a rational, got {text!r}") from exc

    def prior(self, name: str) -> Optional[BetaPrior]:
        text = self.raw.get(name)
        if text is None:
            return None
        parts = text.split(",")
        if len(parts) != 2:
            raise DomainError(f"parameter {name!r} must look like 'u,v', got {text!r}")
        try:
            u, v = (Fraction(t.strip()) for t in parts)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse prior {name!r} from {text!r}") from exc
        return BetaPrior(u, v)

    def benefits(self, name: str = "benefits") -> Optional[BenefitMatrix]:
        text = self.raw.get(name)
        if text is None:
            return None
        parts = text.split(",")
        if len(parts) != 4:
            raise DomainError(f"parameter {name!r} must list four rationals, got {text!r}")
        try:
            return BenefitMatrix.of(*(Fraction(t.strip()) for t in parts))
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse benefits from {text!r}") from exc

    def window(self, name: str = "window") -> Tuple[float, float, float, float]:
        text = self.raw.get(name)
        if text is None:
            return (0.0, 1.0, 0.0, 1.0)
        parts = text.split(",")
        if len(parts) != 4:
            raise DomainError(f"parameter {name!r} must be 'x0,x1,y0,y1', got {text!r}")
        try:
            x0, x1, y0, y1 = (float(t) for t in parts)
        except ValueError as exc:
            raise DomainError(f"cannot parse window {text!r}") from exc
        if not (x0 < x1 and y0 < y1):
            raise DomainError(f"window must have positive extent, got {text!r}")
        return (x0, x1, y0, y1)

    def metric(self, required: bool = True) -> Optional[str]:
        text = self.raw.get("metric")
        if text is None:
            if required:
                raise DomainError("missing required parameter 'metric'")
            return None
        return parse_metric_id(text)

    def matrix(self) -> ConfusionMatrix:
        cells = [self.int_(k, required=True, minimum=0) for k in ("tp", "fp", "fn", "tn")]
        return ConfusionMatrix(*cells)

    def model(self) -> str:
        text = self.raw.get("model")
        if text is None:
            raise DomainError("missing required parameter 'model'")
        if text not in MODELS:
            raise DomainError(f"model must be one of {', '.join(MODELS)}, got {text!r}")
        return text


def _check_guard(condition: bool, message: str) -> None:
    if not condition:
        raise GuardError(message)


# ---------------------------------------------------------------------------
# app factory
# ---------------------------------------------------------------------------


def _env_int(name: str, fallback: int) -> int:
    text = os.environ.get(name)
    return fallback if text is None else int(text)


def _env_list(name: str) -> Optional[List[str]]:
    text = os.environ.get(name)
    return None if text is None else [t.strip() for t in text.split(",") if t.strip()]


class _Memo:
    """Size-bounded LRU for full response bodies; content-neutral."""

    def __init__(self, size: int) -> None:
        self.size = size
        self._data: "OrderedDict[Tuple[str, Tuple[Tuple[str, str], ...]], bytes]" = OrderedDict()
        self._lock = threading.Lock()

    def key(self, request: Request) -> Tuple[str, Tuple[Tuple[str, str], ...]]:
        return (request.url.path, tuple(sorted(request.query_params.multi_items())))

    def get(self, key) -> Optional[bytes]:
        if self.size <= 0:
            return None
        with self._lock:
            body = self._data.get(key)
            if body is not None:
                self._data.move_to_end(key)
            return body

    def put(self, key, body: bytes) -> None:
        if self.size <= 0:
            return
        with self._lock:
            self._data[key] = body
            self._data.move_to_end(key)
            while len(self._data) > self.size:
                self._data.popitem(last=False)


def create_app(
    cors_origins: Optional[List[str]] = None,
    memo_size: Optional[int] = None,
    joint_guard: Optional[int] = None,
    lattice_guard: Optional[int] = None,
) -> FastAPI:
    """Build the service with explicit or environment-driven settings."""
    origins = cors_origins or _env_list("ROCGRID_CORS_ORIGINS") or ["*"]
    memo = _Memo(memo_size if memo_size is not None else _env_int("ROCGRID_MEMO_SIZE", 256))
    p_n_guard = joint_guard if joint_guard is not None else _env_int("ROCGRID_JOINT_GUARD", GRID_GUARD)
    n_guard = (
        lattice_guard if lattice_guard is not None else _env_int("ROCGRID_LATTICE_GUARD", LATTICE_GUARD)
    )

    app = FastAPI(title="rocgrid", docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=origins, allow_methods=["GET"], allow_headers=["*"]
    )

    def error_response(exc: RocgridError) -> Response:
        status = 422 if isinstance(exc, GuardError) else 400
        body = ser.to_json({"error": {"code": exc.code, "message": str(exc)}})
        return Response(content=body, status_code=status, media_type="application/json")

    def json_response(payload: Dict[str, object]) -> bytes:
        return ser.to_json(payload).encode("utf-8")

    def respond(
        request: Request, build: Callable[[], Dict[str, object]]
    ) -> Response:
        key = memo.key(request)
        cached = memo.get(key)
        if cached is None:
            cached = json_response(build())
            memo.put(key, cached)
        return Response(content=cached, media_type="application/json")

    def stream(chunks: Iterable[str]) -> StreamingResponse:
        def encoded():
            for chunk in chunks:
                yield chunk.encode("utf-8")
            yield b"\n"

        return StreamingResponse(encoded(), media_type="application/json")

    def check_slice_guard(p: int, n: int) -> None:
        _check_guard(
            p * n <= p_n_guard, f"slice size {p}*{n} exceeds the grid guard {p_n_guard}"
        )

    @app.exception_handler(RocgridError)
    async def _handle(request: Request, exc: RocgridError) -> Response:
        return error_response(exc)

    @app.get("/api/metrics")
    def api_metrics(request: Request) -> Response:
        return respond(request, ser.metrics_payload)

    @app.get("/api/lattice")
    def api_lattice(request: Request) -> Response:
        params = _Params(request)
        total = params.int_("total", minimum=0)
        pos = params.int_("pos", minimum=0)
        neg = params.int_("neg", minimum=0)
        slice_mode = pos is not None or neg is not None
        if (total is None) == (not slice_mode):
            raise DomainError("pass either total= or both pos= and neg=")
        if total is not None:
            if params.bool_("count_only"):
                return respond(request, lambda: ser.lattice_count_payload(total))
            _check_guard(
                total <= n_guard, f"total {total} exceeds the lattice dump guard {n_guard}"
            )
            if total > _STREAM_THRESHOLD:
                return stream(ser.to_json_chunks(ser.lattice_total_payload(total)))
            return respond(request, lambda: ser.lattice_total_payload(total))
        if pos is None or neg is None:
            raise DomainError("slice mode needs both pos= and neg=")
        check_slice_guard(pos, neg)
        return respond(request, lambda: ser.lattice_slice_payload(pos, neg))

    @app.get("/api/project")
    def api_project(request: Request) -> Response:
        params = _Params(request)
        kind = params.str_("kind")
        if kind not in PROJECTIONS:
            raise DomainError(f"kind must be one of {', '.join(sorted(PROJECTIONS))}, got {kind!r}")
        total = params.int_("total", minimum=0)
        pos = params.int_("pos", minimum=0)
        neg = params.int_("neg", minimum=0)
        matrix = None
        if any(k in params.raw for k in ("tp", "fp", "fn", "tn")):
            matrix = params.matrix()
        if total is not None:
            _check_guard(
                total <= n_guard, f"total {total} exceeds the lattice dump guard {n_guard}"
            )
            if total > _STREAM_THRESHOLD:
                return stream(ser.to_json_chunks(ser.project_payload(kind, total=total)))
        if pos is not None and neg is not None:
            check_slice_guard(pos, neg)
        return respond(
            request, lambda: ser.project_payload(kind, total=total, p=pos, n=neg, matrix=matrix)
        )

    @app.get("/api/contours")
    def api_contours(request: Request) -> Response:
        params = _Params(request)
        metric_id = params.metric()
        pos = params.int_("pos", minimum=1)
        neg = params.int_("neg", minimum=1)
        benefits = params.benefits()
        window = params.window()
        steps = params.int_("steps", default=256, minimum=2)
        _check_guard(steps <= _STEPS_GUARD, f"steps {steps} exceeds the guard {_STEPS_GUARD}")
        levels_text = params.str_("levels")
        levels = None
        if levels_text is not None:
            parts = [t.strip() for t in levels_text.split(",") if t.strip()]
            if not parts:
                raise DomainError("levels= is empty")
            levels = tuple(level_from_display(metric_id, t, pos, neg) for t in parts)
        return respond(
            request,
            lambda: ser.contours_payload(metric_id, levels, pos, neg, benefits, window, steps),
        )

    def build_joint(params: _Params):
        model = params.model()
        obs = params.matrix()
        p = params.int_("pos", default=obs.pos, minimum=0)
        n = params.int_("neg", default=obs.neg, minimum=0)
        check_slice_guard(p, n)
        base = params.prior("prior") or UNIFORM_PRIOR
        prior_tp = params.prior("prior_tp") or base
        prior_tn = params.prior("prior_tn") or base
        return joint_predictive(model, obs, p, n, prior_tp, prior_tn)

    @app.get("/api/pmf/joint")
    def api_pmf_joint(request: Request) -> Response:
        params = _Params(request)
        return respond(request, lambda: ser.pmf_joint_payload(build_joint(params)))

    @app.get("/api/pmf/metric")
    def api_pmf_metric(request: Request) -> Response:
        params = _Params(request)
        metric_id = params.metric()
        benefits = params.benefits()
        bins = params.int_("bins", minimum=1)
        if bins is not None:
            _check_guard(bins <= _BINS_GUARD, f"bins {bins} exceeds the guard {_BINS_GUARD}")
        joint = build_joint(params)
        return respond(
            request, lambda: ser.pmf_metric_payload(metric_id, joint, benefits, bins)
        )

    @app.get("/api/pr-map")
    def api_pr_map(request: Request) -> Response:
        params = _Params(request)
        fpr = params.fraction("fpr", required=True)
        tpr = params.fraction("tpr", required=True)
        pos = params.int_("pos", required=True, minimum=0)
        neg = params.int_("neg", required=True, minimum=0)
        return respond(request, lambda: ser.pr_map_payload(fpr, tpr, pos, neg))

    return app
