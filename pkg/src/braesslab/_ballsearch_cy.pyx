# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for the best-ball density search.

For each candidate center, counts sample points within a fixed Euclidean
radius and returns the maximum count.  This is the hot inner loop of the
Monte Carlo concentration estimator (candidates x samples pair scan).
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def max_ball_count(
    double[:, ::1] points,
    double[:, ::1] centers,
    double radius,
):
    """Return (best_count, best_center_index)."""
    cdef Py_ssize_t n = points.shape[0]
    cdef Py_ssize_t k = points.shape[1]
    cdef Py_ssize_t m = centers.shape[0]
    # tiny pad keeps boundary points (exact lattice distances) inside the
    # ball regardless of summation order, matching the fallback backend
    cdef double r2 = radius * radius + 1e-9 * (1.0 + radius * radius)
    cdef Py_ssize_t i, j, c
    cdef double d2, diff
    cdef long count, best = -1
    cdef Py_ssize_t best_idx = 0

    for c in range(m):
        count = 0
        for i in range(n):
            d2 = 0.0
            for j in range(k):
                diff = points[i, j] - centers[c, j]
                d2 += diff * diff
                if d2 > r2:
                    break
            if d2 <= r2:
                count += 1
        if count > best:
            best = count
            best_idx = c
    return int(best), int(best_idx)
