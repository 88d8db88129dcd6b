"""Image quality gating: Laplacian blur score and the keep/reject filter."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .detect import FaceDetector, detect_faces


def laplacian_variance(image: np.ndarray) -> float:
    """Variance of the 3x3 Laplacian response over interior pixels.

    Kernel: center -4, four edge neighbors +1, corners 0. Low values
    indicate a blurry image (the second derivative is nearly constant).
    """
    img = np.asarray(image, dtype=np.float64)
    if img.ndim != 2 or img.shape[0] < 3 or img.shape[1] < 3:
        raise ValueError("image too small: need at least 3x3 grayscale")
    response = (
        img[:-2, 1:-1] + img[2:, 1:-1] + img[1:-1, :-2] + img[1:-1, 2:]
        - 4.0 * img[1:-1, 1:-1]
    )
    return float(response.var())


class RejectReason(Enum):
    NO_FACE = "no_face"
    BLURRY = "blurry"


@dataclass(frozen=True)
class FilterResult:
    keep: bool
    reason: RejectReason | None = None


def filter_sample(
    image: np.ndarray, blur_threshold: float, detector: FaceDetector
) -> FilterResult:
    """Reject samples with no detectable face or below the blur threshold."""
    if blur_threshold <= 0:
        raise ValueError("blur_threshold must be positive")
    if not detect_faces(image, detector):
        return FilterResult(False, RejectReason.NO_FACE)
    if laplacian_variance(image) < blur_threshold:
        return FilterResult(False, RejectReason.BLURRY)
    return FilterResult(True)
