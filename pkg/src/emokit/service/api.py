"""HTTP+JSON API over the session manager, plus the server-push stream.

All payloads use the canonical label order. The stream endpoint is
server-sent events carrying the stabilized face label, the smoothed
distribution, and the movement intensity at capture cadence.
"""
from __future__ import annotations

import asyncio
import json

from fastapi import FastAPI, HTTPException
from fastapi.responses import StreamingResponse
from pydantic import BaseModel, Field

from ..evalharness.trials import Component
from .sessions import (
    CaptureFailedError,
    ConsentRecord,
    DeviceReport,
    IllegalTransitionError,
    SessionManager,
    SessionState,
)


class CreateSessionBody(BaseModel):
    phase: int = 1


class ConsentBody(BaseModel):
    camera: bool = False
    microphone: bool = False
    analysis: bool = False
    retention_notice: bool = False


class EnvCheckBody(BaseModel):
    camera_width: int
    camera_height: int
    mic_sample_rate: int
    confirmations: list[str] = Field(default_factory=list)


class SurveyBody(BaseModel):
    answers: dict[str, str | None]


class TrialBody(BaseModel):
    component: str | None = None  # required for phase 1
    target: str


class FeedbackBody(BaseModel):
    correct: bool


def _session_view(session) -> dict:
    return {
        "id": session.id,
        "phase": session.phase,
        "state": session.state.value,
        "trial_count": len(session.trials),
        "pending_trial": (
            session.pending_trial().trial_id if session.pending_trial() else None
        ),
    }


def create_app(manager: SessionManager) -> FastAPI:
    app = FastAPI(title="emokit session service")

    def _get_session(session_id: str):
        try:
            return manager.sessions[session_id]
        except KeyError:
            raise HTTPException(404, f"unknown session {session_id}")

    @app.exception_handler(IllegalTransitionError)
    async def _illegal(request, exc):
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.post("/sessions")
    def create_session(body: CreateSessionBody):
        try:
            session = manager.create_session(body.phase)
        except ValueError as exc:
            raise HTTPException(422, str(exc))
        return _session_view(session)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return _session_view(_get_session(session_id))

    @app.post("/sessions/{session_id}/consent")
    def record_consent(session_id: str, body: ConsentBody):
        _get_session(session_id)
        try:
            session = manager.record_consent(session_id, ConsentRecord(
                camera=body.camera, microphone=body.microphone,
                analysis=body.analysis, retention_notice=body.retention_notice,
            ))
        except ValueError as exc:
            raise HTTPException(422, str(exc))
        return _session_view(session)

    @app.post("/sessions/{session_id}/env-check")
    def env_check(session_id: str, body: EnvCheckBody):
        session = _get_session(session_id)
        failures = manager.run_environment_check(session_id, DeviceReport(
            camera_width=body.camera_width,
            camera_height=body.camera_height,
            mic_sample_rate=body.mic_sample_rate,
            confirmations=frozenset(body.confirmations),
        ))
        return {"passed": not failures, "failures": failures,
                "state": session.state.value}

    @app.post("/sessions/{session_id}/survey")
    def survey(session_id: str, body: SurveyBody):
        _get_session(session_id)
        manager.submit_survey(session_id, body.answers)
        return {"ok": True}

    @app.post("/sessions/{session_id}/trials")
    def run_trial(session_id: str, body: TrialBody):
        session = _get_session(session_id)
        try:
            if session.phase == 1:
                if body.component is None:
                    raise HTTPException(422, "phase-1 trials need a component")
                trial = manager.run_phase1_trial(
                    session_id, Component(body.component), body.target
                )
            else:
                trial = manager.run_phase2_trial(session_id, body.target)
        except CaptureFailedError as exc:
            raise HTTPException(502, f"trial voided: {exc}")
        except ValueError as exc:
            raise HTTPException(422, str(exc))
        return {
            "trial_id": trial.trial_id,
            "component": trial.component.value,
            "target": trial.target_class,
            "prediction": trial.prediction,
        }

    @app.post("/trials/{trial_id}/feedback")
    def feedback(trial_id: str, body: FeedbackBody):
        try:
            record = manager.submit_feedback(trial_id, body.correct)
        except KeyError as exc:
            raise HTTPException(404, str(exc))
        return record.to_dict()

    @app.post("/sessions/{session_id}/finalize")
    def finalize(session_id: str):
        _get_session(session_id)
        session = manager.finalize_session(session_id)
        return _session_view(session)

    @app.post("/sessions/{session_id}/abandon")
    def abandon(session_id: str):
        _get_session(session_id)
        session = manager.abandon_session(session_id)
        return _session_view(session)

    @app.get("/sessions/{session_id}/profile")
    def profile(session_id: str):
        _get_session(session_id)
        try:
            return manager.get_profile(session_id).to_dict()
        except KeyError as exc:
            raise HTTPException(404, str(exc))

    @app.get("/reports/tallies")
    def tallies():
        table, demographics = manager.get_reports()
        return {"tallies": table.to_dict(), "demographics": demographics}

    @app.get("/sessions/{session_id}/stream")
    async def stream(session_id: str, once: bool = False):
        session = _get_session(session_id)

        async def generate():
            sent = 0
            while True:
                events = session.stream_events
                while sent < len(events):
                    yield f"data: {json.dumps(events[sent])}\n\n"
                    sent += 1
                if once or session.state in (SessionState.CLOSED, SessionState.ABANDONED):
                    break
                await asyncio.sleep(0.1)

        return StreamingResponse(generate(), media_type="text/event-stream")

    return app
