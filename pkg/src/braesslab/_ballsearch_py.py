"""Pure-python (numpy) fallback for the best-ball density search.

Same contract as the compiled kernel; centers are processed in chunks so
the distance matrix stays bounded in memory.
"""

from __future__ import annotations

import numpy as np

_CHUNK = 128


def max_ball_count(
    points: np.ndarray, centers: np.ndarray, radius: float
) -> tuple[int, int]:
    """Return (best_count, best_center_index)."""
    points = np.ascontiguousarray(points, dtype=float)
    centers = np.ascontiguousarray(centers, dtype=float)
    # same boundary pad as the compiled kernel
    r2 = radius * radius + 1e-9 * (1.0 + radius * radius)
    pnorm2 = np.einsum("ij,ij->i", points, points)
    best, best_idx = -1, 0
    for start in range(0, centers.shape[0], _CHUNK):
        chunk = centers[start : start + _CHUNK]
        cnorm2 = np.einsum("ij,ij->i", chunk, chunk)
        # ||p - c||^2 = |p|^2 - 2 p.c + |c|^2, one dgemm per chunk
        d2 = pnorm2[:, None] - 2.0 * (points @ chunk.T) + cnorm2[None, :]
        counts = np.count_nonzero(d2 <= r2, axis=0)
        i = int(np.argmax(counts))
        if counts[i] > best:
            best = int(counts[i])
            best_idx = start + i
    return best, best_idx
