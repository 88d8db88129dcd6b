from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emokit.body import (
    Intensity,
    IntensityThresholds,
    Landmark,
    PART_ORDER,
    PoseFrame,
    aggregate_movement,
    classify_intensity,
    frames_from_csv,
    frames_to_csv,
    landmark_displacement,
    most_moved_part,
    movement_report,
    validate_track,
)

TORSO = {
    "left_shoulder": (0.4, 0.3),
    "right_shoulder": (0.6, 0.3),
    "left_hip": (0.4, 0.6),
    "right_hip": (0.6, 0.6),
}
# torso length: shoulder midpoint (0.5, 0.3) to hip midpoint (0.5, 0.6) = 0.3
TORSO_LENGTH = 0.3


def make_frame(timestamp: float, wrist=(0.7, 0.3), extra=None, wrist_vis=1.0) -> PoseFrame:
    lms = {part: Landmark(x, y) for part, (x, y) in TORSO.items()}
    lms["right_wrist"] = Landmark(wrist[0], wrist[1], wrist_vis)
    for part, (x, y) in (extra or {}).items():
        lms[part] = Landmark(x, y)
    return PoseFrame(timestamp, lms)


class TestPoseSchema:
    def test_part_order(self):
        assert len(PART_ORDER) == 13
        assert PART_ORDER[0] == "head"
        sides = [p for p in PART_ORDER if p != "head"]
        assert all(p.startswith(("left_", "right_")) for p in sides)

    def test_landmark_range(self):
        with pytest.raises(ValueError):
            Landmark(1.2, 0.5)
        with pytest.raises(ValueError):
            Landmark(0.5, 0.5, -0.1)

    def test_unknown_part_rejected(self):
        with pytest.raises(ValueError, match="unknown parts"):
            PoseFrame(0.0, {"tail": Landmark(0.5, 0.5)})

    def test_timestamps_strictly_increasing(self):
        frames = [make_frame(0.0), make_frame(0.0)]
        with pytest.raises(ValueError, match="strictly increasing"):
            validate_track(frames)

    def test_csv_round_trip(self):
        frames = [make_frame(0.0), make_frame(0.5, wrist=(0.72, 0.31))]
        assert frames_from_csv(frames_to_csv(frames)) == frames


class TestDisplacement:
    def test_three_four_five(self):
        a = make_frame(0.0, wrist=(0.1, 0.1))
        b = make_frame(1.0, wrist=(0.1 + 0.3, 0.1 + 0.4))
        d = landmark_displacement(a, b)
        assert d["right_wrist"] == pytest.approx(0.5, abs=1e-12)
        for part in TORSO:
            assert d[part] == 0.0

    def test_low_visibility_omitted(self):
        a = make_frame(0.0, wrist_vis=0.4)
        b = make_frame(1.0, wrist=(0.9, 0.9))
        assert "right_wrist" not in landmark_displacement(a, b)

    def test_visibility_floor_boundary_kept(self):
        a = make_frame(0.0, wrist_vis=0.5)
        b = make_frame(1.0, wrist=(0.8, 0.3), wrist_vis=0.5)
        assert "right_wrist" in landmark_displacement(a, b)

    def test_schema_mismatch(self):
        a = make_frame(0.0)
        b = PoseFrame(1.0, {p: Landmark(x, y) for p, (x, y) in TORSO.items()})
        with pytest.raises(ValueError, match="schema mismatch"):
            landmark_displacement(a, b)


class TestAggregate:
    def test_oscillating_wrist_closed_form(self):
        # wrist alternates +/- 0.06 in x each frame over 11 frames: every
        # consecutive displacement is 0.12, so the metric is
        # 0.12 / TORSO_LENGTH regardless of frame count.
        frames = [
            make_frame(t / 10.0, wrist=(0.7 + (0.06 if t % 2 else -0.06), 0.3))
            for t in range(11)
        ]
        metrics = aggregate_movement(frames)
        assert metrics["right_wrist"] == pytest.approx(0.12 / TORSO_LENGTH, abs=1e-12)
        assert metrics["left_shoulder"] == 0.0

    @given(
        st.floats(min_value=0.05, max_value=0.3),
        st.floats(min_value=-0.2, max_value=0.2),
    )
    @settings(max_examples=60, deadline=None)
    def test_scale_and_translation_invariance(self, scale_factor, dx):
        def scaled_frame(t, wrist):
            lms = {}
            for part, (x, y) in {**TORSO, "right_wrist": wrist}.items():
                # scale about (0.5, 0.5), then translate in x
                sx = 0.5 + (x - 0.5) * scale_factor + dx
                sy = 0.5 + (y - 0.5) * scale_factor
                lms[part] = Landmark(min(max(sx, 0.0), 1.0), min(max(sy, 0.0), 1.0))
            return PoseFrame(t, lms)

        base = [make_frame(0.0, wrist=(0.6, 0.35)), make_frame(1.0, wrist=(0.65, 0.40))]
        transformed = [scaled_frame(0.0, (0.6, 0.35)), scaled_frame(1.0, (0.65, 0.40))]
        m_base = aggregate_movement(base)
        m_t = aggregate_movement(transformed)
        assert m_t["right_wrist"] == pytest.approx(m_base["right_wrist"], rel=1e-9)

    def test_no_scale_reference(self):
        lms = {"head": Landmark(0.5, 0.1)}
        frames = [PoseFrame(0.0, lms), PoseFrame(1.0, lms)]
        with pytest.raises(ValueError, match="no scale reference"):
            aggregate_movement(frames)

    def test_needs_two_frames(self):
        with pytest.raises(ValueError, match="at least 2"):
            aggregate_movement([make_frame(0.0)])


class TestIntensity:
    def test_boundaries_assigned_downward(self):
        th = IntensityThresholds()
        assert classify_intensity(0.0, th) is Intensity.LOW
        assert classify_intensity(0.02, th) is Intensity.LOW
        assert classify_intensity(0.020000001, th) is Intensity.MEDIUM
        assert classify_intensity(0.08, th) is Intensity.MEDIUM
        assert classify_intensity(0.080000001, th) is Intensity.HIGH

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            classify_intensity(-0.01)

    def test_threshold_validation(self):
        with pytest.raises(ValueError):
            IntensityThresholds(low_max=0.1, medium_max=0.05)

    def test_most_moved_tie_breaks_schema_order(self):
        metrics = {"right_wrist": 0.5, "left_elbow": 0.5, "head": 0.1}
        assert most_moved_part(metrics) == "left_elbow"
        with pytest.raises(ValueError):
            most_moved_part({})


class TestReport:
    def test_report_fields(self):
        frames = [
            make_frame(t / 10.0, wrist=(0.7 + (0.06 if t % 2 else -0.06), 0.3))
            for t in range(11)
        ]
        rep = movement_report(frames)
        assert rep.most_moved == "right_wrist"
        assert rep.frame_count == 11
        overall = sum(rep.per_part_metric.values()) / len(rep.per_part_metric)
        assert rep.intensity is classify_intensity(overall)
        d = rep.to_dict()
        assert d["intensity"] == rep.intensity.value
        assert d["most_moved"] == "right_wrist"

    def test_still_subject_is_low(self):
        frames = [make_frame(t / 10.0) for t in range(5)]
        assert movement_report(frames).intensity is Intensity.LOW

    def test_agitated_subject_is_high(self):
        frames = [
            make_frame(
                t / 10.0,
                wrist=(0.5 + (0.25 if t % 2 else -0.25), 0.3),
                extra={"left_wrist": (0.5 - (0.25 if t % 2 else -0.25), 0.3)},
            )
            for t in range(10)
        ]
        assert movement_report(frames).intensity is Intensity.HIGH
