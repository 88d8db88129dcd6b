from .audio import (
    CANONICAL_RATE,
    AudioClip,
    NoAudioStreamError,
    save_wav,
    standardize_audio,
    standardize_samples,
)
from .augment import (
    AugmentationKind,
    AugmentationParams,
    add_noise,
    apply_augmentation,
    dynamic_compression,
    pitch_shift,
)
from .features import (
    FeatureConfig,
    LOG_FLOOR,
    extract_features,
    frame_signal,
    mel_filterbank,
    mfcc,
    rms,
    zcr,
)
from .dataset import (
    VARIANTS_PER_CLIP,
    ManifestEntry,
    build_speech_training_set,
    load_feature_cache,
    read_manifest,
    save_feature_cache,
    write_manifest,
)
from .model import SpeechCnnConfig, build_speech_cnn, speech_forward, speech_train
from .recording import (
    AudioDevice,
    DeviceUnavailableError,
    EmptyRecordingError,
    FakeAudioDevice,
    record_session_audio,
)
