from __future__ import annotations

import numpy as np
import pytest

from emokit.core import EmotionDistribution, TEXT_LABELS, UNIFIED_LABELS


def random_distribution(rng: np.random.Generator, label_set=UNIFIED_LABELS):
    w = rng.uniform(0.01, 1.0, len(label_set))
    return EmotionDistribution(w / w.sum(), label_set)


def assert_valid_distribution(dist: EmotionDistribution):
    assert np.all(dist.probs >= 0)
    assert abs(float(dist.probs.sum()) - 1.0) <= 1e-6


def synthetic_portrait(
    height: int = 120,
    width: int = 100,
    center=None,
    radii=(25, 35),
    bg: int = 20,
    fg: int = 200,
) -> np.ndarray:
    """A bright head-shaped ellipse with eye/mouth marks on dark ground."""
    img = np.full((height, width), bg, dtype=np.uint8)
    cy, cx = center or (height // 2, width // 2)
    rx, ry = radii
    yy, xx = np.mgrid[0:height, 0:width]
    face = ((xx - cx) / rx) ** 2 + ((yy - cy) / ry) ** 2 <= 1.0
    img[face] = fg
    # eyes and mouth (kept inside the ellipse so it stays one component)
    for ex in (cx - rx // 2, cx + rx // 2):
        img[cy - ry // 3 : cy - ry // 3 + 4, ex - 2 : ex + 2] = bg + 40
    img[cy + ry // 2 : cy + ry // 2 + 3, cx - rx // 2 : cx + rx // 2] = bg + 40
    return img


@pytest.fixture
def portrait() -> np.ndarray:
    return synthetic_portrait()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0)
