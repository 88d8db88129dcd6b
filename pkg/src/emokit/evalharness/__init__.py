from .metrics import (
    ConfusionMatrix,
    MetricReport,
    PerClassReport,
    compute_metrics,
    format_percent,
    per_class_report,
)
from .trials import (
    BODY_TARGETS,
    Component,
    TallyRow,
    TrialRecord,
    TrialTable,
    append_trial_log,
    diff_against_reference,
    read_trial_log,
    tally_trials,
    valid_targets,
)
from .demographics import NON_DISCLOSURE, demographic_summary
