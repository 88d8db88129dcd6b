"""Acceptance suite: one test per release criterion, each printing PASS/FAIL.

Every test prints a single ``ACCEPTANCE <name>: PASS`` line on success
(pytest -s shows them); failures surface as ordinary assertion errors.
"""
from __future__ import annotations

import time
from pathlib import Path

import numpy as np
import pytest
from scipy import signal as sp_signal

from emokit.core import EmotionDistribution, UNIFIED_LABELS
from emokit.evalharness import (
    Component,
    MetricReport,
    TrialRecord,
    diff_against_reference,
    tally_trials,
)
from emokit.face import (
    ImageSample,
    augment_image,
    build_face_cnn,
    fer_forward,
    fer_train,
    laplacian_variance,
)
from emokit.face.realtime import FrameQueue, stabilized_prediction, UNDECIDED
from emokit.fusion import Modality, ModalityOutput, aggregate_metric_rows, fuse, fuse_confusion
from emokit.speech import (
    AudioClip,
    AugmentationKind,
    CANONICAL_RATE,
    ManifestEntry,
    add_noise,
    build_speech_training_set,
    dynamic_compression,
    mfcc,
    pitch_shift,
    rms,
    save_wav,
    speech_train,
    SpeechCnnConfig,
    zcr,
)
from emokit.text import clean_text, fit_tokenizer, keyword_classify, text_train, tokenize_and_pad
from emokit.text.keywords import KeywordDictionary, UNLABELED
from emokit.core import EmotionLabel, TextEmotionLabel
from tests.conftest import random_distribution, synthetic_portrait

FIXTURES = Path(__file__).parent / "fixtures"


def _report(name: str) -> None:
    print(f"\nACCEPTANCE {name}: PASS")


# -- summary-table aggregation ----------------------------------------------

MODEL_ROWS = [
    MetricReport(0.8521, 0.6857, 0.8504, 0.8521, 0.8496, 0.9759),
    MetricReport(0.9965, 0.0127, 0.9965, 0.9965, 0.9965, 0.99997),
    MetricReport(0.9792, 0.0555, 0.9794, 0.9792, 0.9791, 0.9994),
]
MULTIMODAL_ROW = (0.9426, 0.2513, 0.9421, 0.9426, 0.9417, 0.9917)


def test_summary_row_aggregation():
    agg = aggregate_metric_rows(MODEL_ROWS)
    for got, expected, field in zip(
        agg.as_row(), MULTIMODAL_ROW,
        ("accuracy", "loss", "precision", "recall", "f1", "auc"),
    ):
        assert abs(got - expected) <= 0.0001, (field, got, expected)
    _report("summary-row aggregation (±0.0001/field)")


# -- trial tallies ------------------------------------------------------------

# (component, class): (true, false, printed accuracy)
TRIAL_REFERENCE = {
    ("face", "anger"): (48, 4, "92.31%"),
    ("face", "disgust"): (36, 16, "73.08%"),
    ("face", "fear"): (32, 20, "61.54%"),
    ("face", "happiness"): (52, 0, "100.00%"),
    ("face", "neutral"): (44, 8, "84.62%"),
    ("face", "sadness"): (47, 5, "90.38%"),
    ("face", "surprise"): (43, 9, "82.70%"),
    ("face", "overall"): (302, 62, "82.97%"),
    ("body", "low"): (49, 3, "94.23%"),
    ("body", "moderate"): (48, 4, "92.31%"),
    ("body", "high"): (51, 1, "98.08%"),
    ("body", "overall"): (148, 8, "94.72%"),
    ("speech", "anger"): (49, 3, "94.23%"),
    ("speech", "disgust"): (42, 10, "80.77%"),
    ("speech", "fear"): (48, 4, "92.31%"),
    ("speech", "happiness"): (49, 3, "94.23%"),
    ("speech", "neutral"): (43, 9, "82.70%"),
    ("speech", "sadness"): (44, 8, "84.62%"),
    ("speech", "surprise"): (37, 15, "71.15%"),
    ("speech", "overall"): (312, 52, "85.71%"),
    ("text", "anger"): (49, 3, "94.23%"),
    ("text", "disgust"): (50, 2, "96.15%"),
    ("text", "fear"): (50, 2, "96.15%"),
    ("text", "happiness"): (51, 1, "98.08%"),
    ("text", "neutral"): (25, 27, "46.15%"),
    ("text", "sadness"): (49, 3, "94.23%"),
    ("text", "surprise"): (45, 7, "86.54%"),
    ("text", "overall"): (319, 45, "87.64%"),
    ("multimodal", "anger"): (51, 1, "98.08%"),
    ("multimodal", "disgust"): (50, 2, "96.15%"),
    ("multimodal", "fear"): (50, 2, "96.15%"),
    ("multimodal", "happiness"): (52, 0, "100.00%"),
    ("multimodal", "neutral"): (48, 4, "92.31%"),
    ("multimodal", "sadness"): (51, 1, "98.08%"),
    ("multimodal", "surprise"): (49, 3, "94.23%"),
    ("multimodal", "overall"): (351, 13, "96.43%"),
}


def _records_from_reference() -> list[TrialRecord]:
    records = []
    for (component_name, cls), (true_n, false_n, _) in TRIAL_REFERENCE.items():
        if cls == "overall":
            continue
        component = Component(component_name)
        phase = 2 if component is Component.MULTIMODAL else 1
        for correct, n in ((True, true_n), (False, false_n)):
            records.extend(
                TrialRecord("ref", phase, component, cls, correct, timestamp=0.0)
                for _ in range(n)
            )
    return records


def test_trial_tallies_match_reference():
    table = tally_trials(_records_from_reference())
    mismatches = []
    for (component_name, cls), (true_n, false_n, printed) in TRIAL_REFERENCE.items():
        component = Component(component_name)
        row = table.overall(component) if cls == "overall" else table.rows[component][cls]
        assert (row.true_count, row.false_count) == (true_n, false_n)
        computed_pp = row.accuracy * 100
        printed_pp = float(printed.rstrip("%"))
        if abs(computed_pp - printed_pp) > 0.01 + 1e-9:
            mismatches.append((component_name, cls, row.accuracy_pct, printed))
    # every accuracy matches within 0.01pp except three rows whose reference
    # percentages are inconsistent with their own true/false counts; these must
    # be surfaced, never silently patched
    known_typos = [
        ("face", "disgust", "69.23%", "73.08%"),
        ("body", "overall", "94.87%", "94.72%"),
        ("text", "neutral", "48.08%", "46.15%"),
    ]
    assert mismatches == known_typos, mismatches
    body_overall = table.overall(Component.BODY)
    assert body_overall.accuracy_pct == "94.87%"
    # the discrepancies must be surfaced and logged, never silently patched
    reference = {k: v[2] for k, v in TRIAL_REFERENCE.items()}
    diffs = diff_against_reference(table, reference)
    beyond_tolerance = [
        d
        for d in diffs
        if abs(float(d["computed"].rstrip("%")) - float(d["reference"].rstrip("%")))
        > 0.01 + 1e-9
    ]
    assert {(d["component"], d["class"]) for d in beyond_tolerance} == {
        (c, cls) for c, cls, _, _ in known_typos
    }
    by_key = {(d["component"], d["class"]): d for d in beyond_tolerance}
    body_diff = by_key[("body", "overall")]
    assert body_diff["computed"] == "94.87%" and body_diff["reference"] == "94.72%"
    _report("trial tallies (±0.01pp; body overall 94.87% with logged discrepancy)")


# -- DSP oracles ---------------------------------------------------------------

def test_dsp_oracles():
    rng = np.random.default_rng(20240501)
    for _ in range(1000):
        n = int(rng.integers(2, 128))
        frame = rng.uniform(-1, 1, n)
        signs = [1 if v >= 0 else -1 for v in frame]
        crossings = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
        assert zcr(frame) == crossings / (n - 1)
        assert rms(frame) == pytest.approx(float(np.sqrt(np.mean(frame**2))), rel=1e-12)

    kernel = np.array([[0, 1, 0], [1, -4, 1], [0, 1, 0]], dtype=np.float64)
    for _ in range(100):
        img = rng.integers(0, 256, (int(rng.integers(3, 64)), int(rng.integers(3, 64))))
        oracle = float(sp_signal.convolve2d(img.astype(np.float64), kernel, mode="valid").var())
        assert abs(laplacian_variance(img) - oracle) <= 1e-9

    golden = np.load(FIXTURES / "mfcc_golden.npz")
    got = mfcc(AudioClip(golden["signal"]))
    assert got.shape == golden["mfcc"].shape
    assert np.max(np.abs(got - golden["mfcc"])) <= 1e-6
    _report("DSP oracles (zcr/rms exact ×1000; laplacian 1e-9; mfcc golden 1e-6)")


# -- augmentation invariants ----------------------------------------------------

def test_augmentation_invariants(tmp_path):
    img = ImageSample(synthetic_portrait())
    assert np.array_equal(augment_image(img).pixels, img.pixels)
    flipped_twice = augment_image(augment_image(img, horizontal_flip=True),
                                  horizontal_flip=True)
    assert np.array_equal(flipped_twice.pixels, img.pixels)

    t = np.arange(CANONICAL_RATE)
    clip = AudioClip(0.6 * np.sin(2 * np.pi * 440.0 * t / CANONICAL_RATE))
    assert np.array_equal(add_noise(clip, 0.0).samples, clip.samples)
    shifted = pitch_shift(clip, 0.0)
    assert np.corrcoef(shifted.samples, clip.samples)[0, 1] >= 0.99
    rng = np.random.default_rng(2)
    noisy = AudioClip(np.clip(rng.uniform(-1, 1, 8000), -1, 1))
    compressed = dynamic_compression(noisy, 0.5, 4.0)
    assert np.max(np.abs(compressed.samples)) <= np.max(np.abs(noisy.samples))

    path = save_wav(clip, tmp_path / "clip.wav")
    entries = [ManifestEntry(str(path), "happiness", "d")]
    X, y, stats = build_speech_training_set(entries)
    assert X.shape[0] == 6 and len(y) == 6
    assert len(AugmentationKind) == 6
    assert stats.per_dataset["d"]["kept"] == 1
    _report("augmentation invariants (identities, involution, pitch corr, 6 rows/clip)")


# -- fusion properties -----------------------------------------------------------

def test_fusion_properties(rng):
    modalities = (Modality.FACE, Modality.SPEECH, Modality.TEXT)
    for _ in range(1000):
        dists = [random_distribution(rng) for _ in range(3)]
        w = rng.uniform(0.1, 5.0, 3)
        outputs = [ModalityOutput(m, d, wi) for m, d, wi in zip(modalities, dists, w)]
        combined = sum(wi * d.probs for wi, d in zip(w, dists))
        expected = combined / combined.sum()
        assert np.max(np.abs(fuse(outputs).fused.probs - expected)) <= 1e-12
        scaled = [ModalityOutput(m, d, wi * 3.7) for m, d, wi in zip(modalities, dists, w)]
        assert np.max(np.abs(fuse(scaled).fused.probs - expected)) <= 1e-9

    d = random_distribution(rng)
    unanimous = [ModalityOutput(m, d) for m in modalities]
    assert np.allclose(fuse(unanimous).fused.probs, d.probs, atol=1e-12)

    from emokit.evalharness import ConfusionMatrix

    a = ConfusionMatrix(rng.integers(0, 20, (7, 7)))
    b = ConfusionMatrix(rng.integers(0, 20, (7, 7)))
    assert fuse_confusion([a, b]).total == a.total + b.total
    _report("fusion properties (oracle 1e-12 ×1000, scale invariance, unanimity, counts)")


# -- stabilization -----------------------------------------------------------------

def test_stabilization_thresholds():
    def run(labels):
        queue = FrameQueue(capacity=15, persistence=10)
        out = None
        for label in labels:
            out, _ = stabilized_prediction(queue, EmotionDistribution.one_hot(label))
        return out

    H, A = EmotionLabel.HAPPINESS, EmotionLabel.ANGER
    assert run([H] * 14 + [A]) is H          # 14-of-15 agreement
    assert run([H] * 9 + [A] * 6) is UNDECIDED  # 9-of-15 is not enough
    assert run([A] * 15) is A                # constant stream is a fixed point
    queue = FrameQueue(15, 10)
    final = None
    for label in [A] * 30:
        final, smoothed = stabilized_prediction(queue, EmotionDistribution.one_hot(label))
        assert smoothed.probs[A.index] == 1.0
    assert final is A
    _report("stabilization (14-of-15 emits, ≤9-of-15 undecided, constant fixed point)")


# -- session lifecycle --------------------------------------------------------------

def test_session_lifecycle_properties(tmp_path):
    from emokit.evalharness import Component as C
    from emokit.service import (
        ConsentRecord, DeviceReport, IllegalTransitionError, SessionManager,
        SessionState, assert_no_media, demo_runners,
    )

    consent = ConsentRecord(camera=True, microphone=True, analysis=True,
                            retention_notice=True)
    report = DeviceReport(1280, 720, 16_000, frozenset(
        {"lighting", "background", "framing", "camera_angle", "microphone_placement"}
    ))
    rng = np.random.default_rng(99)
    actions = ["consent", "env", "trial", "feedback", "finalize", "abandon"]
    for case in range(25):
        mgr = SessionManager(tmp_path / f"run{case}", demo_runners(seed=case))
        session = mgr.create_session()
        pending = None
        for action in rng.choice(actions, size=10):
            try:
                if action == "consent":
                    mgr.record_consent(session.id, consent)
                elif action == "env":
                    mgr.run_environment_check(session.id, report)
                elif action == "trial":
                    pending = mgr.run_phase1_trial(session.id, C.FACE, "anger").trial_id
                elif action == "feedback" and pending:
                    mgr.submit_feedback(pending, True)
                    pending = None
                elif action == "finalize":
                    mgr.finalize_session(session.id)
                elif action == "abandon":
                    mgr.abandon_session(session.id)
            except (IllegalTransitionError, ValueError, KeyError):
                pass  # illegal calls must be rejected, never partially applied
            assert session.state in SessionState
            if session.state in (SessionState.CLOSED, SessionState.ABANDONED):
                assert mgr.storage.ephemeral_store(session.id).is_empty()
        for event in mgr.storage.read_events(session.id):
            assert_no_media(event)

    # recovery sweep destroys orphaned media
    from emokit.service import SessionStorage

    storage = SessionStorage(tmp_path / "crashed")
    orphan = storage.ephemeral_store("dead").register("audio.wav")
    orphan.write_bytes(b"\x01" * 256)
    SessionManager(tmp_path / "crashed", demo_runners())
    assert not orphan.exists()
    _report("session lifecycle (random walks, ephemeral emptiness, media guard)")


# -- text weak labeling ---------------------------------------------------------------

def test_text_weak_labeling_oracle():
    rng = np.random.default_rng(7)
    vocab = ["w" + chr(97 + i // 26) + chr(97 + i % 26) for i in range(120)]
    keywords = {
        label: tuple(rng.choice(vocab, size=12, replace=False))
        for label in TextEmotionLabel
    }
    dictionary = KeywordDictionary(keywords)
    labels = list(TextEmotionLabel)
    for _ in range(10_000):
        doc = " ".join(rng.choice(vocab, size=int(rng.integers(1, 20))))
        tokens = set(doc.split())
        scores = [len(set(keywords[l]) & tokens) for l in labels]
        best = max(scores)
        expected = UNLABELED if best == 0 else labels[scores.index(best)]
        assert keyword_classify(doc, dictionary) == expected

    for raw in ("", "Hello!!", "a" * 300, "@user https://x.io 77", "ünïcode mixed"):
        once = clean_text(raw)
        assert clean_text(once) == once
    for _ in range(500):
        raw = "".join(chr(int(c)) for c in rng.integers(32, 1000, int(rng.integers(0, 80))))
        once = clean_text(raw)
        assert clean_text(once) == once
    _report("text weak labeling (10k-doc scan oracle; clean_text idempotent)")


# -- model properties (desk-scale substitutes for full-corpus training runs) ---------

def _overfit_batch_face(seed=0):
    rng = np.random.default_rng(seed)
    images = rng.integers(0, 256, (64, 48, 48), dtype=np.uint8)
    labels = np.arange(64) % 7
    start = time.monotonic()
    _, history = fer_train(images, labels, epochs=200, seed=seed,
                           validation_fraction=0.0, stop_at_accuracy=0.99)
    return history, time.monotonic() - start


def test_forward_pass_validity_fuzzed(rng):
    face = build_face_cnn()
    for _ in range(5):
        dist = fer_forward(rng.integers(0, 256, (48, 48), dtype=np.uint8), face)
        assert np.all(dist.probs >= 0)
        assert abs(float(dist.probs.sum()) - 1.0) <= 1e-6
    from emokit.speech import build_speech_cnn, speech_forward

    speech = build_speech_cnn()
    for scale in (1e-3, 1.0, 50.0):
        dist = speech_forward(rng.normal(scale=scale, size=4048), speech)
        assert np.all(dist.probs >= 0)
        assert abs(float(dist.probs.sum()) - 1.0) <= 1e-6
    from emokit.text import BiLstmClassifier, TextModelConfig, text_forward

    tok = fit_tokenizer(["alpha beta gamma delta epsilon zeta"], max_len=10)
    model = BiLstmClassifier(TextModelConfig(vocab_size=len(tok.vocabulary) + 2,
                                             embedding_dim=8, lstm_units=8,
                                             dense_units=8))
    model.eval()
    for text in ("alpha beta", "unseen words only", ""):
        dist = text_forward(text, tok, model)
        assert np.all(dist.probs >= 0)
        assert abs(float(dist.probs.sum()) - 1.0) <= 1e-6
    _report("forward-pass validity under fuzzed inputs (all three models)")


def test_single_batch_overfit_face():
    history, elapsed = _overfit_batch_face()
    assert history.train_accuracy[-1] >= 0.99, history.train_accuracy[-5:]
    assert len(history.train_accuracy) <= 200
    assert elapsed <= 600
    _report(f"single-batch overfit, face CNN "
            f"({len(history.train_accuracy)} epochs, {elapsed:.0f}s)")


def test_single_batch_overfit_speech():
    rng = np.random.default_rng(1)
    # shortened feature vectors keep the full 7-conv architecture inside the
    # single-CPU time budget; filter schedule and head are unchanged
    config = SpeechCnnConfig(input_length=1024)
    features = rng.normal(size=(64, 1024)).astype(np.float64)
    labels = np.arange(64) % 7
    start = time.monotonic()
    _, history = speech_train(features, labels, config, epochs=200, seed=1,
                              validation_fraction=0.0, stop_at_accuracy=0.99)
    elapsed = time.monotonic() - start
    assert history.train_accuracy[-1] >= 0.99, history.train_accuracy[-5:]
    assert len(history.train_accuracy) <= 200
    assert elapsed <= 600
    _report(f"single-batch overfit, speech CNN "
            f"({len(history.train_accuracy)} epochs, {elapsed:.0f}s)")


def test_single_batch_overfit_text():
    rng = np.random.default_rng(2)
    words = ["t" + chr(97 + i // 26) + chr(97 + i % 26) for i in range(200)]
    texts = [" ".join(rng.choice(words, size=8)) for _ in range(64)]
    labels = np.arange(64) % 6
    tok = fit_tokenizer(texts, max_len=8)
    sequences = tokenize_and_pad(texts, tok)
    from emokit.text import TextModelConfig

    config = TextModelConfig(vocab_size=len(tok.vocabulary) + 2)
    start = time.monotonic()
    _, history = text_train(sequences, labels, config, epochs=200, seed=2,
                            validation_fraction=0.0, stop_at_accuracy=0.99)
    elapsed = time.monotonic() - start
    assert history.train_accuracy[-1] >= 0.99, history.train_accuracy[-5:]
    assert len(history.train_accuracy) <= 200
    assert elapsed <= 600
    _report(f"single-batch overfit, text BiLSTM "
            f"({len(history.train_accuracy)} epochs, {elapsed:.0f}s)")


def _class_image(label: int, rng: np.random.Generator) -> np.ndarray:
    """Synthetic 48x48 class-distinctive pattern with noise and jitter."""
    img = np.zeros((48, 48), dtype=np.float64)
    yy, xx = np.mgrid[0:48, 0:48]
    phase = rng.uniform(0, 2 * np.pi)
    freq = 0.25 + 0.12 * label
    angle = label * np.pi / 7
    wave = np.sin(freq * (xx * np.cos(angle) + yy * np.sin(angle)) + phase)
    img = 127.5 + 90.0 * wave + rng.normal(0, 28, (48, 48))
    return np.clip(img, 0, 255).astype(np.uint8)


def test_face_subset_validation_accuracy():
    rng = np.random.default_rng(3)
    images = np.stack([_class_image(i % 7, rng) for i in range(700)])
    labels = np.arange(700) % 7
    start = time.monotonic()
    _, history = fer_train(images, labels, epochs=12, seed=3,
                           validation_fraction=0.2, batch_size=64)
    elapsed = time.monotonic() - start
    best_val = max(history.val_accuracy)
    assert best_val >= 0.40, history.val_accuracy
    assert elapsed <= 900
    _report(f"700-image 7-class subset: best val accuracy {best_val:.2%} "
            f"in {elapsed:.0f}s (target ≥40%, ≤15 min)")
