"""Concentration-function estimation for weighted Bernoulli sums.

The 1-D integer-weight case is solved exactly: the probability mass
function of X = sum a_i * Ber(p) lives on an integer lattice, so the
supremum over ball centers is attained on a sliding window over that
lattice and can be enumerated.  The multi-dimensional case (a random
isometric embedding followed by a hyperplane projection) is estimated by
Monte Carlo with candidate ball centers at sample points; this search
under-estimates the true supremum, which is the safe direction when the
quantity is compared against an upper bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import ballsearch
from .errors import ParameterError

__all__ = [
    "BernoulliSumSpec",
    "ConcEstimate",
    "LoBoundResult",
    "ProjectionCheckResult",
    "conc_exact_1d",
    "conc_monte_carlo",
    "lo_bound_check",
    "rv_projection_check",
]

#: reference constant for the 1-D small-ball bound (observed ~1.2 on the
#: all-ones family; 2 leaves headroom)
REFERENCE_C = 2.0
#: largest exact pmf support handled by the convolution path
MAX_SUPPORT = 10_000_000


@dataclass(frozen=True)
class BernoulliSumSpec:
    """X = sum_i weights[i] * Ber(p), independent draws."""

    weights: tuple
    p: float

    def __post_init__(self):
        if not (0.0 < self.p < 1.0):
            raise ParameterError(f"p must lie in (0,1), got {self.p}")
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))

    @property
    def large_weight_count(self) -> int:
        return sum(1 for w in self.weights if abs(w) >= 1.0)

    @property
    def magnitude_bound(self) -> float:
        lo = sum(min(w, 0.0) for w in self.weights)
        hi = sum(max(w, 0.0) for w in self.weights)
        return max(abs(lo), abs(hi))


@dataclass
class ConcEstimate:
    t: float
    value: float
    method: str  # "exact_convolution" | "monte_carlo"
    trials: int | None = None
    seed: int | None = None
    standard_error: float = 0.0

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def exact_pmf(spec: BernoulliSumSpec) -> tuple[np.ndarray, int]:
    """Exact pmf of X on consecutive integers; returns (pmf, offset) with
    pmf[k] = P(X = offset + k).  Integer weights only."""
    weights = np.asarray(spec.weights)
    ints = np.rint(weights)
    if not np.all(np.abs(weights - ints) < 1e-12):
        raise ParameterError(
            "exact convolution needs integer weights; use monte_carlo"
        )
    ints = ints.astype(np.int64)
    ints = ints[ints != 0]
    lo = int(ints[ints < 0].sum()) if np.any(ints < 0) else 0
    hi = int(ints[ints > 0].sum()) if np.any(ints > 0) else 0
    if hi - lo + 1 > MAX_SUPPORT:
        raise ParameterError("pmf support too large for exact convolution")
    p = spec.p
    pmf = np.ones(1)
    for a in ints:
        step = np.zeros(abs(int(a)) + 1)
        if a > 0:
            step[0], step[-1] = 1.0 - p, p
        else:
            step[0], step[-1] = p, 1.0 - p
        pmf = np.convolve(pmf, step)
    return pmf, lo


def _window_max(pmf: np.ndarray, t: float) -> float:
    """max over real centers q of P(|X - q| <= t) for a lattice pmf: the
    best closed interval of length 2t covers floor(2t)+1 consecutive
    lattice points."""
    if t < 0:
        raise ParameterError("radius must be >= 0")
    w = int(math.floor(2.0 * t + 1e-12)) + 1
    w = min(w, pmf.size)
    window = np.convolve(pmf, np.ones(w), mode="valid")
    return float(window.max())


def conc_exact_1d(spec: BernoulliSumSpec, t: float) -> ConcEstimate:
    """Exact concentration function of an integer-weight Bernoulli sum."""
    pmf, _ = exact_pmf(spec)
    return ConcEstimate(t=t, value=_window_max(pmf, t), method="exact_convolution")


def sample_sums(
    spec: BernoulliSumSpec, shape, rng: np.random.Generator
) -> np.ndarray:
    """Draw iid copies of X with the given array shape.  Weights are
    grouped by value, one binomial draw per group."""
    out = np.zeros(shape)
    uniq, counts = np.unique(np.asarray(spec.weights), return_counts=True)
    for w, k in zip(uniq, counts):
        if w == 0.0:
            continue
        out += w * rng.binomial(int(k), spec.p, size=shape)
    return out


def conc_monte_carlo(
    points: np.ndarray,
    t: float,
    max_candidates: int = 4096,
) -> tuple[float, float]:
    """(estimate, standard_error) of the best-ball mass among candidate
    centers placed at the first sample points."""
    points = np.ascontiguousarray(points, dtype=float)
    if points.ndim == 1:
        points = points[:, None]
    n = points.shape[0]
    centers = points[: min(n, max_candidates)]
    best, _ = ballsearch.max_ball_count(points, centers, t)
    value = best / n
    return value, math.sqrt(value * (1.0 - value) / n)


@dataclass
class LoBoundResult:
    estimate: ConcEstimate
    bound: float  # REFERENCE_C * r / sqrt(m p (1-p))
    implied_C: float
    m: int


def lo_bound_check(spec: BernoulliSumSpec, r: float) -> LoBoundResult:
    """Compare conc(X, r) against the small-ball bound C*r/sqrt(m p(1-p)),
    where m counts weights of magnitude >= 1.  Reports the constant the
    instance actually implies."""
    if r < 1.0:
        raise ParameterError("radius r must be >= 1")
    m = spec.large_weight_count
    if m < 1:
        raise ParameterError("no weights of magnitude >= 1")
    est = conc_exact_1d(spec, r)
    denom = math.sqrt(m * spec.p * (1.0 - spec.p))
    return LoBoundResult(
        estimate=est,
        bound=REFERENCE_C * r / denom,
        implied_C=est.value * denom / r,
        m=m,
    )


@dataclass
class ProjectionCheckResult:
    estimate: ConcEstimate
    q: float  # per-coordinate conc(X_i, t)
    K: float  # almost-sure bound on |X_i|
    radius: float  # t * sqrt(d)
    fitted_C: float
    d: int
    n: int

    def bound(self, C: float) -> float:
        return (
            (C * self.q) ** self.d
            * (self.K / self.estimate.t + 1.0)
            * math.sqrt(self.d)
        )


def _random_isometry(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    m = rng.standard_normal((n, d))
    q, r = np.linalg.qr(m)
    return q * np.sign(np.diag(r))


def rv_projection_check(
    d: int,
    n: int,
    coord_spec: BernoulliSumSpec,
    t: float,
    trials: int,
    seed: int,
    max_candidates: int = 4096,
    embedding: np.ndarray | None = None,
    hyperplane_normal: np.ndarray | None = None,
) -> ProjectionCheckResult:
    """Monte Carlo check of the projected small-ball bound: embed the
    d-coordinate Bernoulli-sum vector isometrically into R^n, project onto
    a hyperplane, and estimate the concentration at radius t*sqrt(d).

    The constant in the bound is fitted from the estimate and reported,
    not asserted.
    """
    if not (1 <= d < n):
        raise ParameterError("need 1 <= d < n")
    if n > 20:
        raise ParameterError("n too large for the Monte Carlo setup")
    if t <= 0:
        raise ParameterError("t must be positive")
    rng = np.random.Generator(np.random.Philox(key=seed))
    T = embedding if embedding is not None else _random_isometry(n, d, rng)
    if hyperplane_normal is not None:
        h = np.asarray(hyperplane_normal, dtype=float)
        h = h / np.linalg.norm(h)
    else:
        h = rng.standard_normal(n)
        h /= np.linalg.norm(h)
    # P_H T as an n x d map, then an orthonormal basis of its column span
    # so distances are computed in at most d coordinates
    m = T - np.outer(h, h @ T)
    qbasis, r = np.linalg.qr(m)
    keep = np.abs(np.diag(r)) > 1e-12
    coord_map = (qbasis[:, keep]).T @ m  # rank x d

    x = sample_sums(coord_spec, (trials, d), rng)
    points = x @ coord_map.T
    radius = t * math.sqrt(d)
    value, se = conc_monte_carlo(points, radius, max_candidates)

    q = conc_exact_1d(coord_spec, t).value
    K = coord_spec.magnitude_bound
    est = ConcEstimate(
        t=t, value=value, method="monte_carlo", trials=trials, seed=seed,
        standard_error=se,
    )
    fitted_C = (value / ((K / t + 1.0) * math.sqrt(d))) ** (1.0 / d) / q
    return ProjectionCheckResult(
        estimate=est, q=q, K=K, radius=radius, fitted_C=fitted_C, d=d, n=n
    )
