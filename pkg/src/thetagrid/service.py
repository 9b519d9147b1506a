"""Local JSON-over-HTTP service backing the explorer UI and scripts.

Single-user, loopback-by-default, stateless except for the table of
asynchronous solve jobs.  All geometric verdicts are computed server-side
in exact integer arithmetic; the UI only renders.  Every response body is
produced by :mod:`thetagrid.jsonio`, so answers match the CLI byte for
byte.
"""

from __future__ import annotations

import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from . import analysis, jsonio
from .angles import (
    AngleSpec,
    NotPeacefulError,
    blocked_report,
    parse_theta,
    verify,
)
from .constructions import two_rows, witness
from .grid import Construction, GridDim
from .solver import SOLVER_MAX_SIDE, SearchConfig, SolveReport, solve


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, extra: Optional[dict] = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.extra = extra or {}


def _json_response(payload: Any, status: int = 200) -> Response:
    return Response(
        content=jsonio.dumps(payload), status_code=status, media_type="application/json"
    )


def _int_field(obj: Mapping, key: str, default: Optional[int] = None, required: bool = False) -> Optional[int]:
    if key not in obj:
        if required:
            raise ApiError(422, "missing-field", f"missing field {key!r}")
        return default
    v = obj[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise ApiError(422, "bad-field", f"field {key!r} must be an integer")
    return v


def _parse_theta(text: Any) -> AngleSpec:
    if not isinstance(text, str):
        raise ApiError(422, "bad-theta", "theta must be a string like deg=135 or tan=-3/2")
    try:
        return parse_theta(text)
    except ValueError as exc:
        raise ApiError(422, "bad-theta", str(exc))


def _check_side(n: int, max_side: int) -> None:
    if not 1 <= n <= max_side:
        raise ApiError(422, "bad-n", f"n must be between 1 and {max_side}")


def _parse_construction(obj: Mapping, max_side: int) -> Construction:
    n = _int_field(obj, "n", required=True)
    _check_side(n, max_side)
    try:
        return jsonio.construction_from_obj({"n": n, "points": obj.get("points", [])})
    except ValueError as exc:
        raise ApiError(422, "bad-construction", str(exc))


@dataclass
class _Job:
    id: str
    status: str = "queued"  # queued | running | done | failed | cancelled
    cancel: threading.Event = field(default_factory=threading.Event)
    report: Optional[SolveReport] = None
    error: Optional[str] = None


class JobTable:
    """Bounded worker pool plus an in-memory job registry.

    Jobs survive only for the process lifetime; cancellation is observed by
    the running search through its stop callback.
    """

    def __init__(self, workers: int = 2):
        self.pool = ThreadPoolExecutor(max_workers=workers)
        self.lock = threading.Lock()
        self.jobs: dict[str, _Job] = {}

    def submit(self, dim: GridDim, theta: AngleSpec, cfg: SearchConfig) -> _Job:
        job = _Job(id=uuid.uuid4().hex)
        with self.lock:
            self.jobs[job.id] = job
        self.pool.submit(self._run, job, dim, theta, cfg)
        return job

    def _run(self, job: _Job, dim: GridDim, theta: AngleSpec, cfg: SearchConfig) -> None:
        with self.lock:
            if job.cancel.is_set():
                job.status = "cancelled"
                return
            job.status = "running"
        try:
            report = solve(dim, theta, cfg, should_stop=job.cancel.is_set)
            with self.lock:
                job.report = report
                job.status = "cancelled" if job.cancel.is_set() else "done"
        except Exception as exc:  # surfaced through the job status
            with self.lock:
                job.error = str(exc)
                job.status = "failed"

    def get(self, job_id: str) -> _Job:
        with self.lock:
            job = self.jobs.get(job_id)
        if job is None:
            raise ApiError(404, "unknown-job", f"no job {job_id!r}")
        return job

    def cancel(self, job_id: str) -> _Job:
        job = self.get(job_id)
        job.cancel.set()
        with self.lock:
            if job.status == "queued":
                job.status = "cancelled"
        return job

    def shutdown(self) -> None:
        self.pool.shutdown(wait=False, cancel_futures=True)


def _job_obj(job: _Job) -> dict:
    return {
        "id": job.id,
        "status": job.status,
        "result": None if job.report is None else jsonio.report_obj(job.report),
        "error": job.error,
    }


def create_app(
    max_side: int = 64,
    solve_max_side: int = SOLVER_MAX_SIDE,
    workers: int = 2,
    ui_dir: Optional[str] = None,
) -> FastAPI:
    app = FastAPI(title="thetagrid", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    jobs = JobTable(workers=workers)
    app.state.jobs = jobs

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError) -> Response:
        body = {"error": exc.code, "message": exc.message, **exc.extra}
        return _json_response(body, status=exc.status)

    async def _body(request: Request) -> Mapping:
        try:
            obj = await request.json()
        except Exception:
            raise ApiError(400, "bad-json", "request body is not valid JSON")
        if not isinstance(obj, Mapping):
            raise ApiError(400, "bad-json", "request body must be a JSON object")
        return obj

    @app.post("/api/verify")
    async def api_verify(request: Request) -> Response:
        obj = await _body(request)
        theta = _parse_theta(obj.get("theta"))
        c = _parse_construction(obj, max_side)
        limit = _int_field(obj, "limit")
        return _json_response(jsonio.verify_obj(verify(c, theta, limit=limit)))

    @app.post("/api/blocked")
    async def api_blocked(request: Request) -> Response:
        obj = await _body(request)
        theta = _parse_theta(obj.get("theta"))
        c = _parse_construction(obj, max_side)
        try:
            report = blocked_report(c, theta)
        except NotPeacefulError as exc:
            raise ApiError(
                422,
                "not-peaceful",
                str(exc),
                {"violation": jsonio.triple_obj(exc.violation)},
            )
        return _json_response(jsonio.blocked_obj(report))

    @app.get("/api/bounds")
    async def api_bounds(n: int, theta: str) -> Response:
        _check_side(n, max_side)
        spec = _parse_theta(theta)
        return _json_response(jsonio.bounds_obj(analysis.bounds(spec, GridDim(n))))

    @app.get("/api/construct")
    async def api_construct(
        kind: str, n: Optional[int] = None, theta: Optional[str] = None, transpose: bool = False
    ) -> Response:
        if kind == "two-rows":
            if n is None:
                raise ApiError(422, "missing-field", "two-rows needs n")
            _check_side(n, max_side)
            try:
                c = two_rows(GridDim(n), transpose=transpose)
            except ValueError as exc:
                raise ApiError(422, "bad-n", str(exc))
            return _json_response(jsonio.construction_obj(c))
        if kind == "witness":
            if theta is None:
                raise ApiError(422, "missing-field", "witness needs theta")
            return _json_response(jsonio.witness_obj(witness(_parse_theta(theta))))
        raise ApiError(422, "bad-kind", f"unknown construction kind {kind!r}")

    @app.post("/api/solve")
    async def api_solve(request: Request) -> Response:
        obj = await _body(request)
        theta = _parse_theta(obj.get("theta"))
        n = _int_field(obj, "n", required=True)
        _check_side(n, min(max_side, solve_max_side))
        mode = obj.get("mode", "branch_and_bound")
        if mode not in ("oracle", "branch_and_bound", "greedy"):
            raise ApiError(422, "bad-mode", f"unknown mode {mode!r}")
        cfg = SearchConfig(
            mode=mode,
            node_budget=_int_field(obj, "budget_nodes"),
            time_budget=obj.get("budget_seconds"),
            symmetry_breaking=bool(obj.get("symmetry_breaking", True)),
            rng_seed=_int_field(obj, "seed", default=0),
            restarts=_int_field(obj, "restarts", default=8),
            oracle_cap=_int_field(obj, "oracle_cap", default=4),
        )
        if cfg.time_budget is not None and not isinstance(cfg.time_budget, (int, float)):
            raise ApiError(422, "bad-field", "budget_seconds must be a number")
        if mode == "oracle" and n > cfg.oracle_cap:
            raise ApiError(
                422, "bad-n", f"oracle refuses n={n} (cap {cfg.oracle_cap})"
            )
        job = jobs.submit(GridDim(n), theta, cfg)
        return _json_response(_job_obj(job), status=202)

    @app.get("/api/solve/{job_id}")
    async def api_solve_status(job_id: str) -> Response:
        return _json_response(_job_obj(jobs.get(job_id)))

    @app.delete("/api/solve/{job_id}")
    async def api_solve_cancel(job_id: str) -> Response:
        return _json_response(_job_obj(jobs.cancel(job_id)))

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
