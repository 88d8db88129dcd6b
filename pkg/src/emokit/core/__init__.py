from .taxonomy import (
    EmotionLabel,
    TextEmotionLabel,
    UNIFIED_LABELS,
    TEXT_LABELS,
    UNIFIED_LABEL_NAMES,
    TEXT_LABEL_NAMES,
)
from .distribution import (
    EmotionDistribution,
    DegenerateWeightsError,
    normalize,
    argmax_label,
    embed_distribution,
)
from .labelmap import (
    DROP,
    LabelMap,
    UnmappedLabelError,
    harmonize_label,
    identity_label_map,
    parse_label_map,
    load_label_map,
    dump_label_map,
)

__all__ = [
    "EmotionLabel",
    "TextEmotionLabel",
    "UNIFIED_LABELS",
    "TEXT_LABELS",
    "UNIFIED_LABEL_NAMES",
    "TEXT_LABEL_NAMES",
    "EmotionDistribution",
    "DegenerateWeightsError",
    "normalize",
    "argmax_label",
    "embed_distribution",
    "DROP",
    "LabelMap",
    "UnmappedLabelError",
    "harmonize_label",
    "identity_label_map",
    "parse_label_map",
    "load_label_map",
    "dump_label_map",
]
