from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from .models import RecurrenceMatrix

logger = logging.getLogger(__name__)

RECURRENT = 0
EMPTY = 255


def encode_pgm(R: RecurrenceMatrix) -> bytes:
    """Binary PGM (P5), one byte per cell, black recurrences, matrix row 0 drawn at the bottom."""
    pixels = np.where(R.bits, RECURRENT, EMPTY).astype(np.uint8)[::-1]
    header = f"P5\n{R.size} {R.size}\n255\n".encode("ascii")
    return header + pixels.tobytes()


def write_pgm(R: RecurrenceMatrix, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_pgm(R))
    logger.info("Wrote %dx%d recurrence plot to %s", R.size, R.size, path)
    return path
