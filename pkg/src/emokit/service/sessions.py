"""Session lifecycle orchestration: consent, environment gating, trials,
fusion, privacy finalization.

The legal state order is created -> consented -> env_checked ->
(recording -> processing -> reviewed)* -> closed; trials repeat the
middle cycle. No capture happens before consent and the environment
check; audio lives only in the session's ephemeral area and is securely
destroyed at finalize (or by the startup recovery sweep).
"""
from __future__ import annotations

import time
import uuid
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Callable

from ..body.movement import Intensity, IntensityThresholds, MovementSummary, movement_report
from ..body.pose import PoseFrame
from ..core import EmotionDistribution, argmax_label
from ..evalharness.demographics import demographic_summary
from ..evalharness.trials import (
    Component,
    TrialRecord,
    TrialTable,
    append_trial_log,
    read_trial_log,
    tally_trials,
    valid_targets,
)
from ..face.realtime import FrameQueue, session_face_summary, stabilized_prediction
from ..fusion.engine import FusionWeights, Modality, ModalityOutput, UnifiedProfile, fuse
from ..speech.audio import AudioClip
from ..speech.recording import AudioDevice, DeviceUnavailableError, record_session_audio
from ..text.transcribe import TranscriberUnavailableError
from .storage import SessionStorage

# Trial targets name the middle intensity band "moderate".
_INTENSITY_TO_TARGET = {
    Intensity.LOW: "low",
    Intensity.MEDIUM: "moderate",
    Intensity.HIGH: "high",
}


class SessionState(Enum):
    CREATED = "created"
    CONSENTED = "consented"
    ENV_CHECKED = "env_checked"
    RECORDING = "recording"
    PROCESSING = "processing"
    REVIEWED = "reviewed"
    CLOSED = "closed"
    ABANDONED = "abandoned"


class IllegalTransitionError(RuntimeError):
    pass


class CaptureFailedError(RuntimeError):
    """Capture failure voids the trial; it is not counted."""


@dataclass(frozen=True)
class ConsentRecord:
    camera: bool
    microphone: bool
    analysis: bool
    retention_notice: bool
    timestamp: float = field(default_factory=time.time)

    def missing(self) -> list[str]:
        return [
            name
            for name in ("camera", "microphone", "analysis", "retention_notice")
            if not getattr(self, name)
        ]


@dataclass(frozen=True)
class EnvironmentChecklist:
    min_camera_width: int = 1280
    min_camera_height: int = 720
    min_mic_sample_rate: int = 16_000
    confirmations: tuple[str, ...] = (
        "lighting",
        "background",
        "framing",
        "camera_angle",
        "microphone_placement",
    )


@dataclass(frozen=True)
class DeviceReport:
    camera_width: int
    camera_height: int
    mic_sample_rate: int
    confirmations: frozenset[str] = frozenset()


def check_environment(report: DeviceReport, checklist: EnvironmentChecklist) -> list[str]:
    failures = []
    if (report.camera_width < checklist.min_camera_width
            or report.camera_height < checklist.min_camera_height):
        failures.append("camera_resolution")
    if report.mic_sample_rate < checklist.min_mic_sample_rate:
        failures.append("mic_sample_rate")
    failures.extend(c for c in checklist.confirmations if c not in report.confirmations)
    return failures


@dataclass
class Trial:
    trial_id: str
    session_id: str
    phase: int
    component: Component
    target_class: str
    prediction: dict
    feedback: bool | None = None
    record: TrialRecord | None = None


@dataclass
class ComponentRunners:
    """Pluggable capture/inference adapters the service orchestrates.

    ``face_frames``/``body_frames`` return one trial's capture stream;
    ``capture_audio`` is the microphone device; the predictors map their
    inputs to 7-label distributions.
    """

    face_frames: Callable[[], list[EmotionDistribution]]
    body_frames: Callable[[], list[PoseFrame]]
    audio_device: AudioDevice
    speech_predict: Callable[[AudioClip], EmotionDistribution]
    transcribe: Callable[[AudioClip], str]
    text_predict: Callable[[str], EmotionDistribution]


@dataclass
class Session:
    id: str
    phase: int
    state: SessionState = SessionState.CREATED
    consent: ConsentRecord | None = None
    survey: dict | None = None
    trials: list[Trial] = field(default_factory=list)
    profile: UnifiedProfile | None = None
    stream_events: list[dict] = field(default_factory=list)

    def pending_trial(self) -> Trial | None:
        for trial in self.trials:
            if trial.feedback is None:
                return trial
        return None


_LEGAL_TRANSITIONS: dict[SessionState, set[SessionState]] = {
    SessionState.CREATED: {SessionState.CONSENTED, SessionState.ABANDONED},
    SessionState.CONSENTED: {SessionState.ENV_CHECKED, SessionState.ABANDONED},
    SessionState.ENV_CHECKED: {SessionState.RECORDING, SessionState.CLOSED,
                               SessionState.ABANDONED},
    SessionState.RECORDING: {SessionState.PROCESSING, SessionState.ABANDONED},
    SessionState.PROCESSING: {SessionState.REVIEWED, SessionState.ABANDONED},
    SessionState.REVIEWED: {SessionState.RECORDING, SessionState.CLOSED,
                            SessionState.ABANDONED},
    SessionState.CLOSED: set(),
    SessionState.ABANDONED: set(),
}


class SessionManager:
    """Owns all sessions of one service instance; single writer per session."""

    def __init__(
        self,
        root: str | Path,
        runners: ComponentRunners,
        checklist: EnvironmentChecklist = EnvironmentChecklist(),
        thresholds: IntensityThresholds = IntensityThresholds(),
        fusion_weights: FusionWeights = FusionWeights(),
        frame_queue_capacity: int = 15,
        frame_queue_persistence: int = 10,
    ):
        self.storage = SessionStorage(root)
        self.storage.sweep_orphans()
        self.runners = runners
        self.checklist = checklist
        self.thresholds = thresholds
        self.fusion_weights = fusion_weights
        self.frame_queue_capacity = frame_queue_capacity
        self.frame_queue_persistence = frame_queue_persistence
        self.sessions: dict[str, Session] = {}
        self._trials: dict[str, Trial] = {}

    # -- lifecycle ---------------------------------------------------------

    def _transition(self, session: Session, new_state: SessionState) -> None:
        if new_state not in _LEGAL_TRANSITIONS[session.state]:
            raise IllegalTransitionError(
                f"illegal transition {session.state.value} -> {new_state.value}"
            )
        session.state = new_state
        self.storage.append_event(session.id, "state", {"state": new_state.value})

    def create_session(self, phase: int = 1) -> Session:
        if phase not in (1, 2):
            raise ValueError("phase must be 1 or 2")
        session = Session(id=uuid.uuid4().hex[:12], phase=phase)
        self.sessions[session.id] = session
        self.storage.append_event(session.id, "created", {"phase": phase})
        return session

    def _get(self, session_id: str) -> Session:
        if session_id not in self.sessions:
            raise KeyError(f"unknown session {session_id}")
        return self.sessions[session_id]

    def record_consent(self, session_id: str, consent: ConsentRecord) -> Session:
        session = self._get(session_id)
        missing = consent.missing()
        if missing:
            raise ValueError(f"consent incomplete: missing {missing}")
        self._transition(session, SessionState.CONSENTED)
        session.consent = consent
        self.storage.append_event(session_id, "consent", {
            "camera": consent.camera, "microphone": consent.microphone,
            "analysis": consent.analysis, "retention_notice": consent.retention_notice,
        })
        return session

    def run_environment_check(self, session_id: str, report: DeviceReport) -> list[str]:
        session = self._get(session_id)
        if session.state is not SessionState.CONSENTED:
            raise IllegalTransitionError(
                f"environment check requires consented state, session is {session.state.value}"
            )
        failures = check_environment(report, self.checklist)
        if not failures:
            self._transition(session, SessionState.ENV_CHECKED)
        self.storage.append_event(session_id, "env_check", {"failures": failures})
        return failures

    def submit_survey(self, session_id: str, survey: dict) -> None:
        session = self._get(session_id)
        if session.state in (SessionState.CLOSED, SessionState.ABANDONED):
            raise IllegalTransitionError("session already finished")
        session.survey = dict(survey)
        self.storage.append_event(session_id, "survey", {"survey": session.survey})

    # -- trial execution ---------------------------------------------------

    def _begin_trial(self, session: Session) -> None:
        if session.state not in (SessionState.ENV_CHECKED, SessionState.REVIEWED):
            raise IllegalTransitionError(
                f"no trial allowed in state {session.state.value}"
            )
        if session.pending_trial() is not None:
            raise IllegalTransitionError("previous trial still awaits feedback")
        self._transition(session, SessionState.RECORDING)

    def _push_stream_event(self, session: Session, payload: dict) -> None:
        event = {"timestamp": time.time(), **payload}
        session.stream_events.append(event)

    def _run_face_stream(self, session: Session) -> EmotionDistribution:
        frames = self.runners.face_frames()
        if not frames:
            raise CaptureFailedError("camera produced no frames")
        queue = FrameQueue(self.frame_queue_capacity, self.frame_queue_persistence)
        for dist in frames:
            label, smoothed = stabilized_prediction(queue, dist)
            self._push_stream_event(session, {
                "kind": "face",
                "stable_label": label.label if label else None,
                "smoothed": smoothed.to_dict(),
            })
        return session_face_summary(frames)

    def _run_body_stream(self, session: Session) -> MovementSummary:
        frames = self.runners.body_frames()
        if len(frames) < 2:
            raise CaptureFailedError("pose tracker produced too few frames")
        summary = movement_report(frames, self.thresholds)
        self._push_stream_event(session, {
            "kind": "body",
            "intensity": summary.intensity.value,
            "most_moved": summary.most_moved,
        })
        return summary

    def _capture_audio(self, session: Session) -> AudioClip:
        store = self.storage.ephemeral_store(session.id)
        clip, _ = record_session_audio(self.runners.audio_device, store)
        return clip

    def run_phase1_trial(self, session_id: str, component: Component, target: str) -> Trial:
        session = self._get(session_id)
        if session.phase != 1:
            raise IllegalTransitionError("phase-1 trial on a phase-2 session")
        if target not in valid_targets(component):
            raise ValueError(f"invalid target {target!r} for {component.value}")
        if component is Component.MULTIMODAL:
            raise ValueError("phase 1 exercises single components only")
        self._begin_trial(session)
        try:
            prediction = self._execute_component(session, component)
        except (CaptureFailedError, DeviceUnavailableError) as exc:
            # voided: not counted, session returns to a trial-ready state
            self._transition(session, SessionState.PROCESSING)
            self._transition(session, SessionState.REVIEWED)
            self.storage.append_event(session_id, "trial_voided", {"reason": str(exc)})
            raise CaptureFailedError(str(exc)) from exc
        self._transition(session, SessionState.PROCESSING)
        trial = Trial(
            trial_id=uuid.uuid4().hex[:12],
            session_id=session_id,
            phase=1,
            component=component,
            target_class=target,
            prediction=prediction,
        )
        session.trials.append(trial)
        self._trials[trial.trial_id] = trial
        self._transition(session, SessionState.REVIEWED)
        self.storage.append_event(session_id, "trial", {
            "trial_id": trial.trial_id, "component": component.value,
            "target": target, "prediction": prediction,
        })
        return trial

    def _execute_component(self, session: Session, component: Component) -> dict:
        if component is Component.FACE:
            dist = self._run_face_stream(session)
            return {"label": argmax_label(dist).label, "dist": dist.to_dict()}
        if component is Component.BODY:
            summary = self._run_body_stream(session)
            return {
                "label": _INTENSITY_TO_TARGET[summary.intensity],
                "most_moved": summary.most_moved,
            }
        clip = self._capture_audio(session)
        if component is Component.SPEECH:
            dist = self.runners.speech_predict(clip)
            return {"label": argmax_label(dist).label, "dist": dist.to_dict()}
        if component is Component.TEXT:
            transcript = self.runners.transcribe(clip)
            dist = self.runners.text_predict(transcript)
            return {"label": argmax_label(dist).label, "dist": dist.to_dict()}
        raise ValueError(f"unsupported component {component}")

    def run_phase2_trial(self, session_id: str, target: str) -> Trial:
        session = self._get(session_id)
        if session.phase != 2:
            raise IllegalTransitionError("phase-2 trial on a phase-1 session")
        if target not in valid_targets(Component.MULTIMODAL):
            raise ValueError(f"invalid target {target!r}")
        self._begin_trial(session)
        try:
            face_dist = self._run_face_stream(session)
            movement = self._run_body_stream(session)
            clip = self._capture_audio(session)
        except (CaptureFailedError, DeviceUnavailableError) as exc:
            self._transition(session, SessionState.PROCESSING)
            self._transition(session, SessionState.REVIEWED)
            self.storage.append_event(session_id, "trial_voided", {"reason": str(exc)})
            raise CaptureFailedError(str(exc)) from exc
        self._transition(session, SessionState.PROCESSING)
        outputs = [
            ModalityOutput(Modality.FACE, face_dist),
            ModalityOutput(Modality.SPEECH, self.runners.speech_predict(clip)),
        ]
        try:
            transcript = self.runners.transcribe(clip)
            outputs.append(ModalityOutput(Modality.TEXT, self.runners.text_predict(transcript)))
        except TranscriberUnavailableError:
            # coverage degradation: text weight is redistributed by fusion
            self.storage.append_event(session_id, "modality_missing", {"modality": "text"})
        profile = fuse(outputs, self.fusion_weights, movement=movement)
        session.profile = profile
        trial = Trial(
            trial_id=uuid.uuid4().hex[:12],
            session_id=session_id,
            phase=2,
            component=Component.MULTIMODAL,
            target_class=target,
            prediction={"label": profile.top_label.label, "fused": profile.fused.to_dict()},
        )
        session.trials.append(trial)
        self._trials[trial.trial_id] = trial
        self._transition(session, SessionState.REVIEWED)
        self.storage.append_event(session_id, "trial", {
            "trial_id": trial.trial_id, "component": "multimodal",
            "target": target, "prediction": trial.prediction,
            "profile": profile.to_dict(),
        })
        return trial

    def submit_feedback(self, trial_id: str, correct: bool) -> TrialRecord:
        if trial_id not in self._trials:
            raise KeyError(f"unknown trial {trial_id}")
        trial = self._trials[trial_id]
        if trial.feedback is not None:
            raise IllegalTransitionError("feedback already submitted")
        trial.feedback = bool(correct)
        trial.record = TrialRecord(
            session_id=trial.session_id,
            phase=trial.phase,
            component=trial.component,
            target_class=trial.target_class,
            correct=trial.feedback,
        )
        self.storage.append_event(trial.session_id, "feedback", {
            "trial_id": trial_id, "correct": trial.feedback,
        })
        return trial.record

    def finalize_session(self, session_id: str) -> Session:
        session = self._get(session_id)
        if session.pending_trial() is not None:
            raise IllegalTransitionError("finalize rejected: a trial awaits feedback")
        self._transition(session, SessionState.CLOSED)
        store = self.storage.ephemeral_store(session_id)
        store.wipe()
        if not store.is_empty():
            raise RuntimeError("ephemeral area not empty after finalize")
        records = [t.record for t in session.trials if t.record is not None]
        if records:
            append_trial_log(records, self.storage.trial_log_path)
        self.storage.append_event(session_id, "finalized", {
            "trial_count": len(records), "ephemeral_empty": True,
        })
        return session

    def abandon_session(self, session_id: str) -> Session:
        """Incomplete sessions keep no media and never enter the tallies."""
        session = self._get(session_id)
        self._transition(session, SessionState.ABANDONED)
        self.storage.ephemeral_store(session_id).wipe()
        self.storage.append_event(session_id, "abandoned", {})
        return session

    # -- reporting ---------------------------------------------------------

    def get_profile(self, session_id: str) -> UnifiedProfile:
        session = self._get(session_id)
        if session.profile is None:
            raise KeyError("no profile: phase-2 processing has not completed")
        return session.profile

    def get_reports(self) -> tuple[TrialTable, dict]:
        table = tally_trials(read_trial_log(self.storage.trial_log_path))
        surveys = [
            s.survey for s in self.sessions.values()
            if s.survey is not None and s.state is SessionState.CLOSED
        ]
        demographics = demographic_summary(surveys) if surveys else {}
        return table, demographics
