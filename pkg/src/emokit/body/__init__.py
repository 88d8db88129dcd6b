from .pose import (
    PART_ORDER,
    Landmark,
    PoseFrame,
    frames_from_csv,
    frames_to_csv,
    load_track,
    validate_track,
)
from .movement import (
    VISIBILITY_FLOOR,
    Intensity,
    IntensityThresholds,
    MovementSummary,
    aggregate_movement,
    classify_intensity,
    landmark_displacement,
    most_moved_part,
    movement_report,
)
