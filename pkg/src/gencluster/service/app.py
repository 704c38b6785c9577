"""HTTP session API over the exact engine."""

from __future__ import annotations

import json
from typing import Optional

from fastapi import FastAPI, HTTPException, Query

from .. import io as gio
from ..gca import SeedError, explore
from ..quiver import is_two_acyclic
from .models import (
    CreateSessionRequest,
    CreateSessionResponse,
    GraphResponse,
    InvariantCheck,
    InvariantsResponse,
    MutateRequest,
    PreviewResponse,
    StateResponse,
)
from .sessions import SessionError, SessionStore, UnknownSession, state_view


def create_app(state_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="gencluster session service", version="0.1.0")
    store = SessionStore(state_dir)
    app.state.store = store

    def _get(session_id: str):
        try:
            return store.get(session_id)
        except UnknownSession:
            raise HTTPException(status_code=404, detail=f"no session {session_id}")

    def _state_response(session) -> StateResponse:
        return StateResponse(
            id=session.id,
            kind=session.kind,
            data=json.loads(session.current),
            path=list(session.path),
            history_length=len(session.undo_stack),
            view=state_view(session, store),
            state_hash=session.state_hash(),
        )

    @app.post("/session", response_model=CreateSessionResponse)
    def create_session(request: CreateSessionRequest):
        try:
            session = store.create(request.data, request.rng_seed)
        except (SessionError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return CreateSessionResponse(id=session.id, kind=session.kind)

    @app.get("/session/{session_id}/state", response_model=StateResponse)
    def get_state(session_id: str):
        return _state_response(_get(session_id))

    @app.post("/session/{session_id}/mutate", response_model=StateResponse)
    def mutate(session_id: str, request: MutateRequest):
        _get(session_id)
        try:
            session = store.mutate(session_id, request.k)
        except (SessionError, SeedError) as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        return _state_response(session)

    @app.post("/session/{session_id}/undo", response_model=StateResponse)
    def undo(session_id: str):
        _get(session_id)
        try:
            session = store.undo(session_id)
        except SessionError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        return _state_response(session)

    @app.get("/session/{session_id}/preview", response_model=PreviewResponse)
    def preview(session_id: str, k: int = Query(ge=1)):
        session = _get(session_id)
        try:
            session, diff = store.preview(session_id, k)
        except (SessionError, SeedError) as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        return PreviewResponse(
            k=k, kind=session.kind, diff=diff, state_hash=session.state_hash()
        )

    @app.get("/session/{session_id}/invariants", response_model=InvariantsResponse)
    def invariants(session_id: str):
        session = _get(session_id)
        obj = store.object_of(session)
        checks = []
        if session.kind == "seed":
            from ..gca import mutate_seed

            ok = True
            detail = ""
            for k in range(1, obj.n + 1):
                twice = mutate_seed(mutate_seed(obj, k), k)
                if not (twice.x == obj.x and twice.y == obj.y and twice.b == obj.b):
                    ok = False
                    detail = f"mutation at {k} is not an involution"
                    break
            checks.append(InvariantCheck(name="mutation involution", passed=ok,
                                         details=detail))
            integer = all(
                getattr(c, "denominator", 1) == 1
                for p in obj.x
                for c in p.terms.values()
            )
            checks.append(InvariantCheck(
                name="integer coefficients", passed=integer))
        else:
            ok, witness = is_two_acyclic(obj.quiver)
            checks.append(InvariantCheck(
                name="2-acyclic", passed=ok,
                details="" if ok else f"2-cycle at {witness}"))
            checks.append(InvariantCheck(
                name="reduced", passed=obj.is_reduced()))
            if obj.quiver.n <= 4:
                from ..jacobian import locally_free_check, stable_quotient
                from ..reps import RepresentationError

                try:
                    report = locally_free_check(stable_quotient(obj, 4))
                    details = "" if report.agree else (
                        f"left/right disagree: {report.left} vs {report.right}"
                    )
                    checks.append(InvariantCheck(
                        name="locally free (both sides)",
                        passed=report.locally_free and report.agree,
                        details=details))
                except RepresentationError as exc:
                    checks.append(InvariantCheck(
                        name="locally free (both sides)", passed=False,
                        details=str(exc)))
        return InvariantsResponse(id=session.id, checks=checks)

    @app.get("/session/{session_id}/graph", response_model=GraphResponse)
    def graph(session_id: str, depth: int = Query(default=3, ge=0, le=12),
              mode: str = Query(default="labeled")):
        session = _get(session_id)
        if session.kind != "seed":
            raise HTTPException(status_code=409,
                                detail="exchange graphs require a seed session")
        obj = store.object_of(session)
        try:
            result = explore(obj, depth, mode)
        except SeedError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        return GraphResponse(
            id=session.id, depth=depth, mode=mode,
            graph=gio.graph_to_dict(result),
        )

    return app
