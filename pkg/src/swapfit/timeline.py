"""Causal-direction timeline: smoothing the indicator and cutting segments."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatchError
from .ingest import QuarterIndex

X_DRIVES = "XDrives"
Y_DRIVES = "YDrives"


@dataclass(frozen=True)
class Segment:
    start: QuarterIndex
    end: QuarterIndex
    driver: str

    def to_json_dict(self) -> dict:
        return {
            "start": str(self.start), "end": str(self.end), "driver": self.driver,
        }


def median_smooth(z, window: int) -> np.ndarray:
    """Centered median filter with edge padding; window 1 is the identity."""
    if window < 1 or window % 2 == 0:
        raise ValueError("smoothing window must be an odd positive count")
    z = np.asarray(z, dtype=int)
    if window == 1 or z.size == 0:
        return z.copy()
    half = window // 2
    padded = np.concatenate([np.full(half, z[0]), z, np.full(half, z[-1])])
    out = np.empty_like(z)
    for i in range(z.size):
        out[i] = int(np.median(padded[i:i + window]))
    return out


def timeline_segments(z, index, smooth_window: int = 1) -> list[Segment]:
    """Smooth the indicator and return maximal constant runs as segments.

    z=1 marks x as the explanatory variable (XDrives), z=0 the reverse.
    """
    z = np.asarray(z, dtype=int)
    index = tuple(index)
    if z.size != len(index):
        raise LengthMismatchError(f"{z.size} indicators vs {len(index)} quarters")
    smoothed = median_smooth(z, smooth_window)
    segments: list[Segment] = []
    start = 0
    for i in range(1, smoothed.size + 1):
        if i == smoothed.size or smoothed[i] != smoothed[start]:
            driver = X_DRIVES if smoothed[start] == 1 else Y_DRIVES
            segments.append(Segment(start=index[start], end=index[i - 1], driver=driver))
            start = i
    return segments


def segments_to_sequence(segments, index) -> np.ndarray:
    """Expand segments back to a per-quarter indicator sequence."""
    index = tuple(index)
    lookup = {q: i for i, q in enumerate(index)}
    out = np.full(len(index), -1, dtype=int)
    for seg in segments:
        lo, hi = lookup[seg.start], lookup[seg.end]
        out[lo:hi + 1] = 1 if seg.driver == X_DRIVES else 0
    return out
