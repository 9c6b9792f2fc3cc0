"""Local HTTP service for the verify/edit/reanalyze loop.

Sessions live in memory. Model versions are immutable once created and the
verification history is append-only, so reruns and diffs always refer to
exactly the inputs they were computed from. Requests touching one session
are serialized by a per-session lock; distinct sessions are independent.
"""

from __future__ import annotations

import itertools
import json
import threading
from dataclasses import dataclass, field

from fastapi import APIRouter, FastAPI, HTTPException
from fastapi.responses import JSONResponse

from .. import model as core
from ..crawler import CrawlConfig, crawl_run
from ..effort import Context, ContextError, builtin_context, is_infeasible, load_context
from ..simulator import AppSpecError, load_app
from ..verify import (
    EditError,
    SuiteResult,
    Thresholds,
    ThresholdError,
    builtin_thresholds,
    apply_edit,
    suite_to_doc,
    verify_suite,
)
from . import schemas


@dataclass
class VerificationRun:
    run_id: str
    model_version: str
    context_name: str
    thresholds: Thresholds
    result: SuiteResult


@dataclass
class Session:
    session_id: str
    versions: dict[str, core.InteractionModel]
    current_version: str
    scenarios: list[core.Scenario] = field(default_factory=list)
    context: Context = field(default_factory=lambda: builtin_context("adjusted"))
    thresholds: Thresholds = field(default_factory=Thresholds)
    runs: list[VerificationRun] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)
    _version_counter: itertools.count = field(default_factory=lambda: itertools.count(2))
    _run_counter: itertools.count = field(default_factory=lambda: itertools.count(1))

    @property
    def model(self) -> core.InteractionModel:
        return self.versions[self.current_version]

    def add_version(self, model: core.InteractionModel) -> str:
        version = f"v{next(self._version_counter)}"
        self.versions[version] = model
        self.current_version = version
        return version

    def add_run(self, result: SuiteResult) -> VerificationRun:
        run = VerificationRun(
            run_id=f"r{next(self._run_counter)}",
            model_version=self.current_version,
            context_name=self.context.name,
            thresholds=self.thresholds,
            result=result,
        )
        self.runs.append(run)
        return run


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._counter = itertools.count(1)

    def create(self, model: core.InteractionModel) -> Session:
        with self._lock:
            session = Session(
                session_id=f"s{next(self._counter)}",
                versions={"v1": model},
                current_version="v1",
            )
            self._sessions[session.session_id] = session
            return session

    def get(self, session_id: str) -> Session:
        session = self._sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
        return session

    def ids(self) -> list[str]:
        return list(self._sessions)


def _context_doc(ctx: Context) -> schemas.ContextDoc:
    return schemas.ContextDoc(
        name=ctx.name,
        delta={a.value: v for a, v in ctx.delta.items()},
        uc={a.value: v for a, v in ctx.uc.items()},
        device_factor=ctx.device_factor,
        env_factor=ctx.env_factor,
    )


def _run_doc(run: VerificationRun) -> dict:
    doc = suite_to_doc(run.result)
    doc["run_id"] = run.run_id
    doc["model_version"] = run.model_version
    return doc


def create_app(static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="tvusability service", version="1")
    store = SessionStore()
    router = APIRouter(prefix="/api/v1")

    @app.exception_handler(core.ModelError)
    async def _model_error(request, exc: core.ModelError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(AppSpecError)
    async def _app_error(request, exc: AppSpecError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(ContextError)
    async def _context_error(request, exc: ContextError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(ThresholdError)
    async def _threshold_error(request, exc: ThresholdError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(EditError)
    async def _edit_error(request, exc: EditError):
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @router.post("/sessions", response_model=schemas.SessionCreated, status_code=201)
    def create_session(body: schemas.SessionCreate):
        if body.model is not None:
            model = schemas.to_core_model(body.model)
        else:
            spec = load_app(json.dumps(body.app))
            model = crawl_run(spec, CrawlConfig(node_budget=body.budget)).model
        session = store.create(model)
        session.scenarios = [schemas.to_core_scenario(s) for s in body.scenarios]
        session.context = builtin_context(body.context)
        return schemas.SessionCreated(session_id=session.session_id, model_version=session.current_version)

    @router.get("/sessions")
    def list_sessions():
        return {"sessions": store.ids()}

    @router.get("/sessions/{session_id}", response_model=schemas.SessionInfo)
    def session_info(session_id: str):
        session = store.get(session_id)
        with session.lock:
            return schemas.SessionInfo(
                session_id=session.session_id,
                model_version=session.current_version,
                versions=list(session.versions),
                scenario_ids=[s.id for s in session.scenarios],
                context_name=session.context.name,
                thresholds=schemas.thresholds_doc(session.thresholds),
                run_ids=[r.run_id for r in session.runs],
            )

    @router.get("/sessions/{session_id}/model")
    def export_model(session_id: str, version: str | None = None):
        session = store.get(session_id)
        with session.lock:
            version = version or session.current_version
            model = session.versions.get(version)
            if model is None:
                raise HTTPException(status_code=404, detail=f"unknown model version {version!r}")
            return {"model_version": version, "model": core.model_to_doc(model)}

    @router.get("/sessions/{session_id}/scenarios")
    def get_scenarios(session_id: str):
        session = store.get(session_id)
        with session.lock:
            return {
                "model_version": session.current_version,
                "scenarios": [core.scenario_to_doc(s) for s in session.scenarios],
            }

    @router.put("/sessions/{session_id}/scenarios")
    def put_scenarios(session_id: str, body: list[schemas.ScenarioDoc]):
        session = store.get(session_id)
        scenarios = [schemas.to_core_scenario(s) for s in body]
        ids = [s.id for s in scenarios]
        if len(set(ids)) != len(ids):
            raise HTTPException(status_code=400, detail="scenario ids must be unique")
        with session.lock:
            session.scenarios = scenarios
            return {"model_version": session.current_version, "scenario_ids": ids}

    @router.get("/sessions/{session_id}/context")
    def get_context(session_id: str):
        session = store.get(session_id)
        with session.lock:
            return {"model_version": session.current_version, "context": _context_doc(session.context).model_dump()}

    @router.put("/sessions/{session_id}/context")
    def put_context(session_id: str, body: schemas.ContextUpdate):
        session = store.get(session_id)
        if body.name is not None:
            ctx = builtin_context(body.name)
        else:
            ctx = load_context(body.delta_csv or "", body.factors_csv or "", name="custom")
        with session.lock:
            session.context = ctx
            return {"model_version": session.current_version, "context": _context_doc(ctx).model_dump()}

    @router.get("/sessions/{session_id}/thresholds")
    def get_thresholds(session_id: str):
        session = store.get(session_id)
        with session.lock:
            return {
                "model_version": session.current_version,
                "thresholds": schemas.thresholds_doc(session.thresholds).model_dump(),
            }

    @router.put("/sessions/{session_id}/thresholds")
    def put_thresholds(session_id: str, body: schemas.ThresholdsUpdate):
        session = store.get(session_id)
        if body.name is not None:
            thresholds = builtin_thresholds(body.name)
        else:
            thresholds = Thresholds(
                nr_threshold=body.nr_threshold or 0,
                path_len_threshold=body.path_len_threshold or 0,
                effort_threshold=body.effort_threshold or 0,
            )
        with session.lock:
            session.thresholds = thresholds
            return {
                "model_version": session.current_version,
                "thresholds": schemas.thresholds_doc(thresholds).model_dump(),
            }

    @router.post("/sessions/{session_id}/verify")
    def run_verification(session_id: str):
        session = store.get(session_id)
        with session.lock:
            result = verify_suite(session.model, session.scenarios, session.context, session.thresholds)
            run = session.add_run(result)
            return _run_doc(run)

    @router.get("/sessions/{session_id}/runs")
    def list_runs(session_id: str):
        session = store.get(session_id)
        with session.lock:
            return {
                "model_version": session.current_version,
                "runs": [
                    {
                        "run_id": r.run_id,
                        "model_version": r.model_version,
                        "context": r.context_name,
                        "findings": sum(len(rep.findings) for rep in r.result.reports),
                    }
                    for r in session.runs
                ],
            }

    @router.get("/sessions/{session_id}/runs/{run_id}")
    def get_run(session_id: str, run_id: str):
        session = store.get(session_id)
        with session.lock:
            run = _find_run(session, run_id)
            return _run_doc(run)

    @router.post("/sessions/{session_id}/edits", response_model=schemas.EditResponse)
    def post_edit(session_id: str, body: schemas.EditRequest):
        session = store.get(session_id)
        try:
            edit = schemas.to_edit(body)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        with session.lock:
            new_model = apply_edit(session.model, edit)  # EditError -> 409, version unchanged
            version = session.add_version(new_model)
            return schemas.EditResponse(session_id=session.session_id, model_version=version)

    @router.get("/sessions/{session_id}/diff")
    def diff_runs(session_id: str, base: str, other: str):
        session = store.get(session_id)
        with session.lock:
            base_run = _find_run(session, base)
            other_run = _find_run(session, other)
            return {
                "model_version": session.current_version,
                "base": base_run.run_id,
                "other": other_run.run_id,
                "scenarios": _diff(base_run.result, other_run.result),
            }

    @router.get("/sessions/{session_id}/snapshot")
    def snapshot(session_id: str):
        session = store.get(session_id)
        with session.lock:
            return {
                "session_id": session.session_id,
                "model_version": session.current_version,
                "versions": {v: core.model_to_doc(m) for v, m in session.versions.items()},
                "scenarios": [core.scenario_to_doc(s) for s in session.scenarios],
                "context": _context_doc(session.context).model_dump(),
                "thresholds": schemas.thresholds_doc(session.thresholds).model_dump(),
                "runs": [_run_doc(r) for r in session.runs],
            }

    app.include_router(router)

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def _find_run(session: Session, run_id: str) -> VerificationRun:
    for run in session.runs:
        if run.run_id == run_id:
            return run
    raise HTTPException(status_code=404, detail=f"unknown run {run_id!r}")


def _diff(base: SuiteResult, other: SuiteResult) -> list[dict]:
    """Per-scenario deltas between two verification runs (other minus base)."""
    base_reports = {r.scenario_id: r for r in base.reports}
    other_reports = {r.scenario_id: r for r in other.reports}
    rows = []
    for scenario_id in sorted(set(base_reports) | set(other_reports)):
        b = base_reports.get(scenario_id)
        o = other_reports.get(scenario_id)
        row: dict = {"scenario": scenario_id}
        if b is None or o is None:
            row["note"] = "only in other run" if b is None else "only in base run"
            rows.append(row)
            continue
        if b.resolved is not None and o.resolved is not None:
            if not is_infeasible(b.resolved.effort) and not is_infeasible(o.resolved.effort):
                row["effort_delta"] = o.resolved.effort - b.resolved.effort
            row["length_delta"] = o.resolved.length - b.resolved.length
        base_rules = {f.rule.value for f in b.findings}
        other_rules = {f.rule.value for f in o.findings}
        row["findings_added"] = sorted(other_rules - base_rules)
        row["findings_removed"] = sorted(base_rules - other_rules)
        rows.append(row)
    return rows
