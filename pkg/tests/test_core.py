from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emokit.core import (
    DROP,
    DegenerateWeightsError,
    EmotionDistribution,
    argmax_label,
    normalize,
    EmotionLabel,
    LabelMap,
    TEXT_LABEL_NAMES,
    TEXT_LABELS,
    TextEmotionLabel,
    UNIFIED_LABEL_NAMES,
    UNIFIED_LABELS,
    UnmappedLabelError,
    dump_label_map,
    embed_distribution,
    harmonize_label,
    identity_label_map,
    parse_label_map,
)

positive_weights = st.lists(
    st.floats(min_value=1e-6, max_value=1e6, allow_nan=False, allow_infinity=False),
    min_size=7,
    max_size=7,
)


class TestTaxonomy:
    def test_unified_labels_alphabetical(self):
        assert UNIFIED_LABEL_NAMES == (
            "anger",
            "disgust",
            "fear",
            "happiness",
            "neutral",
            "sadness",
            "surprise",
        )
        assert [label.value for label in UNIFIED_LABELS] == list(range(7))

    def test_text_labels(self):
        assert TEXT_LABEL_NAMES == (
            "anger",
            "disgust",
            "joy",
            "sadness",
            "surprise",
            "fear",
        )

    def test_joy_maps_to_happiness(self):
        assert TextEmotionLabel.JOY.unified is EmotionLabel.HAPPINESS
        for label in TEXT_LABELS:
            if label is not TextEmotionLabel.JOY:
                assert label.unified.name == label.name


class TestDistribution:
    def test_one_hot(self):
        d = EmotionDistribution.one_hot(EmotionLabel.FEAR)
        assert d.probs[EmotionLabel.FEAR.value] == 1.0
        assert d.probs.sum() == 1.0
        assert argmax_label(d) is EmotionLabel.FEAR

    def test_uniform(self):
        d = EmotionDistribution.uniform()
        assert np.allclose(d.probs, 1.0 / 7.0)

    def test_rejects_negative(self):
        probs = np.full(7, 1.0 / 7.0)
        probs[0] = -probs[0]
        probs[1] += 2.0 / 7.0
        with pytest.raises(ValueError):
            EmotionDistribution(probs, UNIFIED_LABELS)

    def test_rejects_bad_sum(self):
        with pytest.raises(ValueError):
            EmotionDistribution(np.full(7, 0.2), UNIFIED_LABELS)

    def test_probs_read_only(self):
        d = EmotionDistribution.uniform()
        with pytest.raises(ValueError):
            d.probs[0] = 0.5

    def test_normalize_degenerate(self):
        with pytest.raises(DegenerateWeightsError):
            normalize(np.zeros(7), UNIFIED_LABELS)

    def test_argmax_tie_breaks_to_lowest_index(self):
        probs = np.zeros(7)
        probs[EmotionLabel.DISGUST.value] = 0.5
        probs[EmotionLabel.SADNESS.value] = 0.5
        d = EmotionDistribution(probs, UNIFIED_LABELS)
        assert argmax_label(d) is EmotionLabel.DISGUST

    @given(positive_weights)
    @settings(max_examples=200)
    def test_normalize_always_valid(self, weights):
        d = normalize(np.array(weights), UNIFIED_LABELS)
        assert np.all(d.probs >= 0)
        assert abs(float(d.probs.sum()) - 1.0) <= 1e-6


class TestEmbedDistribution:
    def test_confident_prediction_keeps_mass(self):
        probs = np.array([0.7, 0.06, 0.06, 0.06, 0.06, 0.06])
        d = EmotionDistribution(probs, TEXT_LABELS)
        out = embed_distribution(d)
        assert out.label_set == UNIFIED_LABELS
        assert argmax_label(out) is EmotionLabel.ANGER
        assert out.probs[EmotionLabel.NEUTRAL.value] == 0.0
        # joy column lands on happiness
        assert out.probs[EmotionLabel.HAPPINESS.value] == pytest.approx(0.06)

    def test_low_confidence_becomes_neutral(self):
        # max prob 0.3 < 0.5 threshold
        probs = np.array([0.3, 0.2, 0.15, 0.15, 0.1, 0.1])
        d = EmotionDistribution(probs, TEXT_LABELS)
        out = embed_distribution(d)
        assert argmax_label(out) is EmotionLabel.NEUTRAL
        assert out.probs[EmotionLabel.NEUTRAL.value] == 1.0

    def test_boundary_is_not_neutral(self):
        probs = np.array([0.5, 0.1, 0.1, 0.1, 0.1, 0.1])
        out = embed_distribution(EmotionDistribution(probs, TEXT_LABELS))
        assert argmax_label(out) is EmotionLabel.ANGER

    @given(positive_weights.map(lambda w: w[:6]))
    @settings(max_examples=200)
    def test_embed_always_valid_unified(self, weights):
        d = normalize(np.array(weights), TEXT_LABELS)
        out = embed_distribution(d)
        assert out.label_set == UNIFIED_LABELS
        assert abs(float(out.probs.sum()) - 1.0) <= 1e-6


class TestLabelMap:
    def test_harmonize_case_insensitive(self):
        lm = LabelMap({"Happy": EmotionLabel.HAPPINESS, "contempt": DROP})
        assert harmonize_label("HAPPY", lm) is EmotionLabel.HAPPINESS
        assert harmonize_label("Contempt", lm) is DROP

    def test_unmapped_raises(self):
        lm = identity_label_map()
        with pytest.raises(UnmappedLabelError):
            harmonize_label("boredom", lm)

    def test_identity_map_covers_unified(self):
        lm = identity_label_map()
        for label in UNIFIED_LABELS:
            assert harmonize_label(label.name.lower(), lm) is label

    def test_parse_and_dump_round_trip(self):
        text = "happy -> happiness\ncontempt -> DROP\n# comment\n\nangry -> anger\n"
        lm = parse_label_map(text)
        assert harmonize_label("happy", lm) is EmotionLabel.HAPPINESS
        assert harmonize_label("contempt", lm) is DROP
        assert harmonize_label("angry", lm) is EmotionLabel.ANGER
        round_trip = parse_label_map(dump_label_map(lm))
        assert round_trip.mapping == lm.mapping
