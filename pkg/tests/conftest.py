from pathlib import Path

import numpy as np
import pytest

from thermoscan.imgproc import BinaryMask

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def random_mask(rng: np.random.Generator, h: int, w: int, p: float = 0.5) -> BinaryMask:
    return BinaryMask((rng.random((h, w)) < p).astype(np.uint8))
