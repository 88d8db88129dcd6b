from .detect import (
    BlobFaceDetector,
    DetectorUnavailableError,
    FaceBox,
    FaceDetector,
    FixtureDetector,
    HaarCascadeDetector,
    detect_faces,
)
from .quality import FilterResult, RejectReason, filter_sample, laplacian_variance
from .preprocess import (
    CropKind,
    CropStrategy,
    FacePreprocessConfig,
    ImageSample,
    IngestionStats,
    augment_image,
    build_face_training_set,
    combine_training_sets,
    crop_face,
    expand_box,
)
from .model import (
    FaceCnnConfig,
    build_face_cnn,
    fer_forward,
    fer_train,
    load_face_model,
    save_face_model,
)
from .realtime import UNDECIDED, FrameQueue, session_face_summary, stabilized_prediction
