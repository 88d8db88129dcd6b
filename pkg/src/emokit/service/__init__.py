from .sessions import (
    CaptureFailedError,
    ComponentRunners,
    ConsentRecord,
    DeviceReport,
    EnvironmentChecklist,
    IllegalTransitionError,
    Session,
    SessionManager,
    SessionState,
    Trial,
    check_environment,
)
from .storage import MediaInArtifactError, SessionStorage, assert_no_media
from .api import create_app
from .demo import demo_runners
