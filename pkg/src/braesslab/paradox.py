"""Edge-perturbation predicates and Monte Carlo gap-change estimators.

The central objects:

* a closed form for the quadratic form of the second eigenvector in the
  graph with one extra edge (checked against direct materialization);
* a computable test predicate that certifies, from the unperturbed graph
  alone, that adding a given non-edge strictly decreases the spectral gap;
* an explicit sufficient inequality in terms of the two eigenvector
  entries and (n, p) only, plus the magnitude-window predicate;
* the exact-recompute oracle: for each perturbed pair the spectral gap is
  recomputed from scratch by a dense eigensolve of the perturbed
  normalized Laplacian (no incremental eigenvalue updates).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import DegenerateInputError, ParameterError, PreconditionError
from .graph import Graph, non_edges
from .spectral import (
    DEGENERACY_GAP,
    combinatorial_laplacian,
    fix_signs,
    normalized_adjacency,
)

__all__ = [
    "PerturbationVerdict",
    "ParadoxEstimate",
    "GapContext",
    "dirichlet_form_plus",
    "projection_pf",
    "lemma_predicate",
    "sufficient_predicate",
    "window_predicate",
    "exact_gap_change",
    "estimate_add",
    "estimate_remove",
]

#: strict-inequality margin for the analytic predicates
PREDICATE_MARGIN = 1e-12
#: |gap_delta| below this is classified "zero" rather than +/-
ZERO_TOL = 1e-10


@dataclass
class PerturbationVerdict:
    pair: tuple[int, int]
    kind: str  # "addition" | "removal"
    lemma_predicate: bool | None  # additions only
    sufficient_predicate: bool | None  # additions only
    gap_before: float
    gap_after: float
    gap_delta: float
    degenerate: bool
    comb_gap_before: float | None = None  # removals: lambda_2 of D - A
    comb_gap_after: float | None = None
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "pair": list(self.pair),
            "kind": self.kind,
            "lemma_predicate": self.lemma_predicate,
            "sufficient_predicate": self.sufficient_predicate,
            "gap_before": self.gap_before,
            "gap_after": self.gap_after,
            "gap_delta": self.gap_delta,
            "degenerate": self.degenerate,
            "comb_gap_before": self.comb_gap_before,
            "comb_gap_after": self.comb_gap_after,
            "error": self.error,
        }


@dataclass
class ParadoxEstimate:
    sample_count: int
    zero_tolerance: float
    seed: int
    a_minus: float | None = None
    a_plus: float | None = None
    a_zero: float | None = None
    r_minus: float | None = None
    r_plus: float | None = None
    r_zero: float | None = None  # reported separately; folded into r_minus

    def to_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items()}


class GapContext:
    """Cached spectral data of one graph, shared across many perturbations."""

    def __init__(self, g: Graph, p: float | None = None):
        self.graph = g
        self.n = g.n
        self.degrees = g.degrees.astype(np.int64)
        if np.any(self.degrees == 0):
            v = int(np.argmin(self.degrees))
            raise DegenerateInputError(f"vertex {v} is isolated")
        self.ahat = normalized_adjacency(g)
        lap = np.eye(self.n) - self.ahat
        vals, vecs = np.linalg.eigh(lap)
        self.lap_eigenvalues = vals
        self.gap = float(vals[1])
        self.f = fix_signs(vecs[:, 1:2])[:, 0]
        self.degenerate = self.n > 2 and (vals[2] - vals[1]) < DEGENERACY_GAP
        self.sum_deg = int(self.degrees.sum())
        # empirical edge density unless the model p is supplied
        self.p = p if p is not None else self.sum_deg / (self.n * (self.n - 1))
        self._comb_lap = None
        self._comb_gap = None

    @property
    def comb_lap(self) -> np.ndarray:
        if self._comb_lap is None:
            self._comb_lap = combinatorial_laplacian(self.graph)
        return self._comb_lap

    @property
    def comb_gap(self) -> float:
        if self._comb_gap is None:
            self._comb_gap = float(
                scipy.linalg.eigh(
                    self.comb_lap, eigvals_only=True, subset_by_index=(1, 1)
                )[0]
            )
        return self._comb_gap

    # -- perturbed operators ------------------------------------------------

    def perturbed_lap(self, u: int, v: int, kind: str) -> np.ndarray:
        """Normalized Laplacian of the graph with the pair added/removed,
        built from scratch out of the cached dense operator."""
        d = self.degrees
        b = self.ahat.copy()
        if kind == "addition":
            su = math.sqrt(d[u] / (d[u] + 1.0))
            sv = math.sqrt(d[v] / (d[v] + 1.0))
            new_uv = 1.0 / math.sqrt((d[u] + 1.0) * (d[v] + 1.0))
        elif kind == "removal":
            if d[u] == 1 or d[v] == 1:
                raise DegenerateInputError(
                    f"removing ({u},{v}) isolates a vertex"
                )
            su = math.sqrt(d[u] / (d[u] - 1.0))
            sv = math.sqrt(d[v] / (d[v] - 1.0))
            new_uv = 0.0
        else:
            raise ParameterError(f"unknown kind {kind!r}")
        b[u, :] *= su
        b[:, u] *= su
        b[v, :] *= sv
        b[:, v] *= sv
        b[u, v] = new_uv
        b[v, u] = new_uv
        np.negative(b, out=b)
        b[np.diag_indices(self.n)] += 1.0
        return b

    def perturbed_gap(self, u: int, v: int, kind: str) -> float:
        lap = self.perturbed_lap(u, v, kind)
        return float(
            scipy.linalg.eigh(lap, eigvals_only=True, subset_by_index=(1, 1))[0]
        )

    def perturbed_comb_gap(self, u: int, v: int) -> float:
        """lambda_2 of D - A after removing edge (u, v)."""
        lp = self.comb_lap.copy()
        lp[u, u] -= 1.0
        lp[v, v] -= 1.0
        lp[u, v] += 1.0
        lp[v, u] += 1.0
        return float(
            scipy.linalg.eigh(lp, eigvals_only=True, subset_by_index=(1, 1))[0]
        )

    # -- analytic predicates ------------------------------------------------

    def dirichlet_form_plus(self, u: int, v: int) -> float:
        d, f, lam = self.degrees, self.f, self.gap
        tu = (math.sqrt(d[u] + 1.0) - math.sqrt(d[u])) / math.sqrt(d[u] + 1.0)
        tv = (math.sqrt(d[v] + 1.0) - math.sqrt(d[v])) / math.sqrt(d[v] + 1.0)
        return (
            lam
            + 2.0 * (1.0 - lam) * (tu * f[u] ** 2 + tv * f[v] ** 2)
            - 2.0 * f[u] * f[v] / math.sqrt((d[u] + 1.0) * (d[v] + 1.0))
        )

    def projection_pf(self, u: int, v: int) -> float:
        d, f = self.degrees, self.f
        num = f[u] * (math.sqrt(d[u] + 1.0) - math.sqrt(d[u])) + f[v] * (
            math.sqrt(d[v] + 1.0) - math.sqrt(d[v])
        )
        return float(num / math.sqrt(2.0 + self.sum_deg))

    def lemma_predicate(self, u: int, v: int) -> bool:
        d, f, lam = self.degrees, self.f, self.gap
        pf = self.projection_pf(u, v)
        tu = (math.sqrt(d[u] + 1.0) - math.sqrt(d[u])) / math.sqrt(d[u] + 1.0)
        tv = (math.sqrt(d[v] + 1.0) - math.sqrt(d[v])) / math.sqrt(d[v] + 1.0)
        lhs = pf * pf * lam + 2.0 * (1.0 - lam) * (tu * f[u] ** 2 + tv * f[v] ** 2)
        rhs = 2.0 * f[u] * f[v] / math.sqrt((d[u] + 1.0) * (d[v] + 1.0))
        return bool(rhs - lhs > PREDICATE_MARGIN)


def _check_non_edge(g: Graph, u: int, v: int) -> None:
    if u == v or g.has_edge(u, v):
        raise PreconditionError(f"({u},{v}) is not a non-edge")


def dirichlet_form_plus(g: Graph, f: np.ndarray, u: int, v: int) -> float:
    """Quadratic form of f in the graph with edge (u, v) added, via the
    closed form in terms of f(u), f(v), the degrees, and the gap of g."""
    _check_non_edge(g, u, v)
    ctx = GapContext(g)
    ctx.f = np.asarray(f, dtype=float)
    return ctx.dirichlet_form_plus(u, v)


def projection_pf(g: Graph, f: np.ndarray, u: int, v: int) -> float:
    """Projection of f onto the top eigenvector of the perturbed graph."""
    _check_non_edge(g, u, v)
    ctx = GapContext(g)
    ctx.f = np.asarray(f, dtype=float)
    return ctx.projection_pf(u, v)


def lemma_predicate(g: Graph, u: int, v: int) -> bool:
    """True when the computable test certifies that adding (u, v) strictly
    decreases the spectral gap."""
    _check_non_edge(g, u, v)
    return GapContext(g).lemma_predicate(u, v)


def sufficient_predicate(f_u: float, f_v: float, n: int, p: float) -> bool:
    """Explicit sufficient inequality in terms of the two eigenvector
    entries and (n, p): 8(np)^-2 + 32(np)^-1/2 (f_u^2 + f_v^2) < f_u f_v."""
    if n < 2 or not (0.0 < p < 1.0):
        raise ParameterError("need n >= 2 and p in (0,1)")
    np_ = n * p
    lhs = 8.0 * np_**-2 + 32.0 * np_**-0.5 * (f_u**2 + f_v**2)
    return bool(f_u * f_v - lhs > 1e-15)


def window_predicate(f_u: float, f_v: float, n: int) -> bool:
    """Both entry magnitudes in [n^-0.51, n^-0.49] with a positive product."""
    if n < 2:
        raise ParameterError("need n >= 2")
    lo, hi = n**-0.51, n**-0.49
    return bool(
        lo <= abs(f_u) <= hi and lo <= abs(f_v) <= hi and f_u * f_v > 0.0
    )


def exact_gap_change(
    g: Graph,
    u: int,
    v: int,
    kind: str,
    ctx: GapContext | None = None,
    batch: bool = False,
) -> PerturbationVerdict:
    """Ground-truth verdict for one perturbation: full dense re-solve of the
    perturbed normalized Laplacian.  For removals the combinatorial
    Laplacian gap is recomputed as well (monotonicity cross-check)."""
    if kind not in ("addition", "removal"):
        raise ParameterError(f"unknown kind {kind!r}")
    if kind == "addition":
        _check_non_edge(g, u, v)
    elif not g.has_edge(u, v):
        raise PreconditionError(f"({u},{v}) is not an edge")
    if ctx is None:
        ctx = GapContext(g)
    verdict = PerturbationVerdict(
        pair=(min(u, v), max(u, v)),
        kind=kind,
        lemma_predicate=None,
        sufficient_predicate=None,
        gap_before=ctx.gap,
        gap_after=math.nan,
        gap_delta=math.nan,
        degenerate=ctx.degenerate,
    )
    try:
        gap_after = ctx.perturbed_gap(u, v, kind)
    except DegenerateInputError as exc:
        if not batch:
            raise
        verdict.error = str(exc)
        return verdict
    verdict.gap_after = gap_after
    verdict.gap_delta = gap_after - ctx.gap
    if kind == "addition":
        verdict.lemma_predicate = ctx.lemma_predicate(u, v)
        verdict.sufficient_predicate = sufficient_predicate(
            float(ctx.f[u]), float(ctx.f[v]), ctx.n, ctx.p
        )
    else:
        verdict.comb_gap_before = ctx.comb_gap
        verdict.comb_gap_after = ctx.perturbed_comb_gap(u, v)
    return verdict


_WORKER_CTX: GapContext | None = None


def _pool_init(graph: Graph, p: float | None):
    global _WORKER_CTX
    _WORKER_CTX = GapContext(graph, p=p)


def _pool_verdict(args) -> PerturbationVerdict:
    u, v, kind = args
    return exact_gap_change(
        _WORKER_CTX.graph, u, v, kind, ctx=_WORKER_CTX, batch=True
    )


def _batch_verdicts(
    g: Graph, pairs: np.ndarray, kind: str, ctx: GapContext, jobs: int
) -> list[PerturbationVerdict]:
    tasks = [(int(a), int(b), kind) for a, b in pairs]
    if jobs <= 1:
        return [
            exact_gap_change(g, u, v, kind, ctx=ctx, batch=True)
            for u, v, kind in tasks
        ]
    import concurrent.futures

    with concurrent.futures.ProcessPoolExecutor(
        max_workers=jobs, initializer=_pool_init, initargs=(g, ctx.p)
    ) as pool:
        chunk = max(1, len(tasks) // (8 * jobs))
        return list(pool.map(_pool_verdict, tasks, chunksize=chunk))


def _sample_pairs(pairs: np.ndarray, sample_size: int, seed: int) -> np.ndarray:
    """Uniform sample without replacement from the lexicographic pair list."""
    if sample_size >= pairs.shape[0]:
        return pairs
    rng = np.random.Generator(np.random.Philox(key=seed))
    idx = rng.choice(pairs.shape[0], size=sample_size, replace=False)
    return pairs[np.sort(idx)]


def estimate_add(
    g: Graph,
    sample_size: int,
    seed: int,
    p: float | None = None,
    ctx: GapContext | None = None,
    jobs: int = 1,
) -> tuple[ParadoxEstimate, list[PerturbationVerdict]]:
    """Classify sampled non-edges by the sign of the exact gap change."""
    if sample_size < 1:
        raise ParameterError("sample_size must be positive")
    pairs = non_edges(g)
    if pairs.shape[0] == 0:
        raise ParameterError("graph is complete: no non-edges to sample")
    pairs = _sample_pairs(pairs, sample_size, seed)
    if ctx is None:
        ctx = GapContext(g, p=p)
    verdicts = _batch_verdicts(g, pairs, "addition", ctx, jobs)
    deltas = np.array([w.gap_delta for w in verdicts])
    minus = int(np.count_nonzero(deltas < -ZERO_TOL))
    plus = int(np.count_nonzero(deltas > ZERO_TOL))
    total = len(verdicts)
    est = ParadoxEstimate(
        sample_count=total,
        zero_tolerance=ZERO_TOL,
        seed=seed,
        a_minus=minus / total,
        a_plus=plus / total,
        a_zero=(total - minus - plus) / total,
    )
    return est, verdicts


def estimate_remove(
    g: Graph,
    sample_size: int,
    seed: int,
    p: float | None = None,
    ctx: GapContext | None = None,
    jobs: int = 1,
) -> tuple[ParadoxEstimate, list[PerturbationVerdict]]:
    """Classify sampled edges by the sign of the exact gap change after
    removal.  The zero class is folded into r_minus (binary convention)
    but reported separately as r_zero."""
    if sample_size < 1:
        raise ParameterError("sample_size must be positive")
    edges = g.edges
    if edges.shape[0] == 0:
        raise ParameterError("graph has no edges to sample")
    edges = _sample_pairs(edges, sample_size, seed)
    if ctx is None:
        ctx = GapContext(g, p=p)
    verdicts = _batch_verdicts(g, edges, "removal", ctx, jobs)
    ok = [w for w in verdicts if w.error is None]
    deltas = np.array([w.gap_delta for w in ok])
    total = len(verdicts)
    plus = int(np.count_nonzero(deltas > ZERO_TOL))
    zero = int(np.count_nonzero(np.abs(deltas) <= ZERO_TOL))
    est = ParadoxEstimate(
        sample_count=total,
        zero_tolerance=ZERO_TOL,
        seed=seed,
        r_plus=plus / total,
        r_minus=(total - plus) / total,
        r_zero=zero / total,
    )
    return est, verdicts
