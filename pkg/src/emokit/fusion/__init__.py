from .engine import (
    FULL_COVERAGE,
    TEXT_COVERAGE,
    FusionWeights,
    Modality,
    ModalityOutput,
    UnifiedProfile,
    fuse,
    renormalize_masked,
)
from .aggregate import aggregate_metric_rows, fuse_confusion
