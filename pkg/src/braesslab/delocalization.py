"""Entry-magnitude profiles of eigenvectors.

A profile records how much of a unit eigenvector's mass sits on entries
of magnitude at least 1/(sqrt(n) log(n)^C), together with norm ratios and
a fixed-bin histogram of sqrt(n)*|v(i)| so profiles are comparable across
sizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .graph import Graph
from .spectral import DEGENERACY_GAP, adjacency_matrix, eig_sym

__all__ = [
    "DelocalizationProfile",
    "profile",
    "adjacency_profiles",
    "linf_family_check",
    "sweep_exponent",
    "HIST_BINS",
]

#: fixed log-spaced histogram bins of sqrt(n)*|v(i)|
HIST_BINS = np.logspace(-6, 2, 65)


@dataclass
class DelocalizationProfile:
    n: int
    threshold: float
    fraction_above: float
    linf_ratio: float  # ||v||_inf * sqrt(n)
    lq_norms: dict
    histogram: np.ndarray = field(repr=False)
    vector_id: tuple | None = None  # (matrix kind, eigenvector index)
    degenerate: bool = False

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "threshold": self.threshold,
            "fraction_above": self.fraction_above,
            "linf_ratio": self.linf_ratio,
            "lq_norms": {str(k): v for k, v in self.lq_norms.items()},
            "histogram": self.histogram.tolist(),
            "vector_id": list(self.vector_id) if self.vector_id else None,
            "degenerate": self.degenerate,
        }

    def histogram_rows(self):
        """(bin_low, bin_high, count) rows for CSV output."""
        for i, c in enumerate(self.histogram):
            yield float(HIST_BINS[i]), float(HIST_BINS[i + 1]), int(c)


def profile(
    v: np.ndarray,
    C_exponent: float,
    vector_id: tuple | None = None,
    degenerate: bool = False,
) -> DelocalizationProfile:
    """Profile a unit vector at threshold 1/(sqrt(n) log(n)^C)."""
    v = np.asarray(v, dtype=float)
    n = v.size
    nrm = float(np.linalg.norm(v))
    if abs(nrm - 1.0) > 1e-8:
        raise ParameterError(f"vector is not unit (norm {nrm})")
    threshold = 1.0 / (math.sqrt(n) * math.log(n) ** C_exponent)
    mags = np.abs(v)
    scaled = math.sqrt(n) * mags
    hist, _ = np.histogram(scaled, bins=HIST_BINS)
    return DelocalizationProfile(
        n=n,
        threshold=threshold,
        fraction_above=float(np.mean(mags >= threshold)),
        linf_ratio=float(scaled.max()),
        lq_norms={
            2: nrm,
            4: float(np.sum(mags**4) ** 0.25),
            "inf": float(mags.max()),
        },
        histogram=hist,
        vector_id=vector_id,
        degenerate=degenerate,
    )


def adjacency_profiles(g: Graph, C_exponent: float) -> list[DelocalizationProfile]:
    """One profile per eigenvector of A with index >= 2 (descending
    eigenvalue order).  Eigenvectors inside a near-degenerate cluster are
    flagged: the profiled basis is then solver-dependent."""
    dec = eig_sym(adjacency_matrix(g), ordering="descending")
    vals = dec.eigenvalues
    out = []
    for j in range(1, g.n):
        near_prev = abs(vals[j] - vals[j - 1]) < DEGENERACY_GAP
        near_next = j + 1 < g.n and abs(vals[j + 1] - vals[j]) < DEGENERACY_GAP
        out.append(
            profile(
                dec.eigenvectors[:, j],
                C_exponent,
                vector_id=("A", j + 1),
                degenerate=near_prev or near_next,
            )
        )
    return out


def linf_family_check(g: Graph, C: float) -> tuple[bool, float]:
    """Whether every unit eigenvector of A has sup-norm at most
    log(n)^C / sqrt(n); returns (verdict, worst ratio to the bound)."""
    dec = eig_sym(adjacency_matrix(g), ordering="descending")
    bound = math.log(g.n) ** C / math.sqrt(g.n)
    worst = float(np.max(np.abs(dec.eigenvectors)) / bound)
    return worst <= 1.0, worst


def sweep_exponent(v: np.ndarray, exponents) -> list[tuple[float, float]]:
    """(C, fraction_above) table over a grid of threshold exponents."""
    return [(float(c), profile(v, float(c)).fraction_above) for c in exponents]
