"""The acceptance suite: one callable per criterion, shared by the test
module and the `reproduce` CLI subcommand.

Each criterion returns a CriterionResult with a deterministic `details`
payload; the manifest digest hashes those payloads (never timings), so
two runs of the same profile must produce the same digest.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import delocalization, paradox, smallball, spectral, typicality
from .errors import ParameterError
from .graph import Graph, GnpSpec, add_edge, non_edges, sample_gnp

__all__ = ["Profile", "FULL", "SMOKE", "CriterionResult", "run_criteria", "digest"]


@dataclass(frozen=True)
class Profile:
    """Scale parameters of the suite.  FULL matches the stated criteria;
    SMOKE is a fast deterministic subset used for plumbing checks."""

    name: str
    c1_instances: int = 300
    # (n, graphs, pairs_per_graph) plan covering n in [50, 500]
    c2_plan: tuple = (
        (50, 4, 700),
        (100, 4, 700),
        (150, 3, 600),
        (200, 3, 600),
        (300, 2, 500),
        (400, 2, 400),
        (500, 2, 300),
    )
    c3_n: int = 2000
    c3_samples: int = 250
    c45_n: int = 1000
    c45_seeds: int = 20
    c4_sample: int = 2000
    c5_sample: int = 100
    c6_n: int = 2000
    c6_seeds: int = 20
    c7_n: int = 1000
    c7_seeds: int = 20
    c8_n: int = 2000
    c8_seeds: int = 50
    c8_subset_samples: int = 200
    c10_trials: int = 1_000_000
    c11_matrices: int = 50


FULL = Profile(name="full")

SMOKE = Profile(
    name="smoke",
    c1_instances=20,
    c2_plan=((50, 2, 60), (80, 1, 60)),
    c3_n=300,
    c3_samples=20,
    c45_n=200,
    c45_seeds=3,
    c4_sample=60,
    c5_sample=20,
    c6_n=300,
    c6_seeds=3,
    c7_n=200,
    c7_seeds=3,
    c8_n=300,
    c8_seeds=5,
    c8_subset_samples=30,
    c10_trials=50_000,
    c11_matrices=10,
)


@dataclass
class CriterionResult:
    cid: int
    description: str
    passed: bool
    seconds: float
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.cid:2d}: {self.description} ({self.seconds:.1f}s)"


def _round(x: float, digits: int = 12) -> float:
    return float(f"{x:.{digits}g}")


PVALUES = (0.3, 0.5, 0.7)


def _gnp_min_degree(n: int, p: float, seed: int) -> tuple[Graph, int]:
    """Sample, skipping (deterministically) any draw with an isolated
    vertex; returns the graph and the seed actually used."""
    s = seed
    while True:
        g = sample_gnp(GnpSpec(n, p, s))
        if np.all(g.degrees > 0):
            return g, s
        s += 1_000_003


def criterion_1(profile: Profile) -> CriterionResult:
    """Closed-form quadratic form after edge addition vs direct
    materialization, |diff| <= 1e-9."""
    t0 = time.time()
    rng = np.random.Generator(np.random.Philox(key=101))
    worst = 0.0
    checked = 0
    while checked < profile.c1_instances:
        n = int(rng.integers(10, 201))
        p = PVALUES[checked % len(PVALUES)]
        g, _ = _gnp_min_degree(n, p, int(rng.integers(1 << 40)))
        ne = non_edges(g)
        if ne.shape[0] == 0:
            continue
        u, v = map(int, ne[int(rng.integers(ne.shape[0]))])
        ctx = paradox.GapContext(g)
        closed = ctx.dirichlet_form_plus(u, v)
        direct = float(
            ctx.f @ spectral.normalized_laplacian(add_edge(g, u, v)) @ ctx.f
        )
        worst = max(worst, abs(closed - direct))
        checked += 1
    return CriterionResult(
        1,
        "quadratic-form identity for edge addition",
        worst <= 1e-9,
        time.time() - t0,
        {"instances": checked, "worst_abs_diff": _round(worst, 6)},
    )


def criterion_2(profile: Profile) -> CriterionResult:
    """Soundness of the gap-decrease test predicate: whenever it fires on
    a non-degenerate instance, the exact gap change is < -1e-12."""
    t0 = time.time()
    total = fired = failures = degenerate = 0
    for i, (n, graphs, pairs) in enumerate(profile.c2_plan):
        for k in range(graphs):
            p = PVALUES[(i + k) % len(PVALUES)]
            g, _ = _gnp_min_degree(n, p, 7_000 + 97 * i + k)
            est, verdicts = paradox.estimate_add(g, pairs, seed=13 + i, p=p)
            for w in verdicts:
                total += 1
                if w.degenerate:
                    degenerate += 1
                    continue
                if w.lemma_predicate:
                    fired += 1
                    if not (w.gap_delta < -1e-12):
                        failures += 1
    return CriterionResult(
        2,
        "gap-decrease predicate soundness",
        total >= (10_000 if profile.name == "full" else 1) and failures == 0,
        time.time() - t0,
        {
            "pairs": total,
            "predicate_fired": fired,
            "failures": failures,
            "degenerate_excluded": degenerate,
        },
    )


def criterion_3(profile: Profile) -> CriterionResult:
    """Magnitude-window claim on a certified-typical instance: among
    non-edges with both eigenvector entries in the window and a positive
    product, >= 99% of additions decrease the gap."""
    t0 = time.time()
    n, p = profile.c3_n, 0.5
    seed = 0
    while True:
        g, seed = _gnp_min_degree(n, p, seed + 1)
        report = typicality.check_definition_typical(g, p, subset_samples=50, seed=5)
        if report.passed():
            break
    ctx = paradox.GapContext(g, p=p)
    f = ctx.f
    lo, hi = n**-0.51, n**-0.49
    eligible = np.where((np.abs(f) >= lo) & (np.abs(f) <= hi))[0]
    rng = np.random.Generator(np.random.Philox(key=31))
    tested = decreased = 0
    log = []
    attempts = 0
    while tested < profile.c3_samples and attempts < 100 * profile.c3_samples:
        attempts += 1
        u, v = (int(x) for x in rng.choice(eligible, 2, replace=False))
        if f[u] * f[v] <= 0 or g.has_edge(u, v):
            continue
        w = paradox.exact_gap_change(g, u, v, "addition", ctx=ctx)
        tested += 1
        if w.gap_delta < 0:
            decreased += 1
        else:
            log.append({"pair": [u, v], "gap_delta": w.gap_delta,
                        "f_u": float(f[u]), "f_v": float(f[v])})
    frac = decreased / tested if tested else 0.0
    return CriterionResult(
        3,
        "window predicate implies gap decrease on typical instance",
        tested > 0 and frac >= 0.99,
        time.time() - t0,
        {"graph_seed": seed, "tested": tested, "decreased": decreased,
         "fraction": _round(frac), "violations": log},
    )


def criterion_4_5(profile: Profile) -> tuple[CriterionResult, CriterionResult]:
    """Addition estimate (mean fraction of gap-decreasing non-edges) and
    the removal checks, sharing the per-seed spectral context."""
    t0 = time.time()
    n, p = profile.c45_n, 0.5
    a_minus = []
    r_plus_seen = False
    removals = 0
    monotone_failures = 0
    for k in range(profile.c45_seeds):
        g, _ = _gnp_min_degree(n, p, 40_000 + k)
        ctx = paradox.GapContext(g, p=p)
        est, _ = paradox.estimate_add(g, profile.c4_sample, seed=900 + k, ctx=ctx)
        a_minus.append(est.a_minus)
        rest, rverd = paradox.estimate_remove(
            g, profile.c5_sample, seed=1900 + k, ctx=ctx
        )
        r_plus_seen = r_plus_seen or rest.r_plus > 0
        for w in rverd:
            if w.error is not None:
                continue
            removals += 1
            if not (w.comb_gap_after <= w.comb_gap_before + 1e-10):
                monotone_failures += 1
    t1 = time.time()
    mean_a_minus = float(np.mean(a_minus))
    c4 = CriterionResult(
        4,
        "mean fraction of gap-decreasing additions >= 0.05",
        mean_a_minus >= 0.05,
        t1 - t0,
        {"mean_a_minus": _round(mean_a_minus),
         "per_seed": [_round(x) for x in a_minus]},
    )
    c5 = CriterionResult(
        5,
        "gap-increasing removals observed; combinatorial gap never rises",
        r_plus_seen and monotone_failures == 0 and removals > 0,
        0.0,
        {"removals": removals, "r_plus_seen": r_plus_seen,
         "monotonicity_failures": monotone_failures},
    )
    return c4, c5


def _deloc_fraction(v: np.ndarray) -> float:
    n = v.size
    return float(np.mean(np.abs(v) >= 0.1 / math.sqrt(n)))


def criterion_6(profile: Profile) -> CriterionResult:
    """Second eigenvector of the normalized operator is spread: fraction
    of entries >= 0.1/sqrt(n) is >= 0.4 on nearly all seeds."""
    t0 = time.time()
    n, p = profile.c6_n, 0.5
    ok = 0
    fractions = []
    for k in range(profile.c6_seeds):
        g, _ = _gnp_min_degree(n, p, 60_000 + k)
        f, _ = spectral.second_eigenvector(g)
        frac = _deloc_fraction(f)
        fractions.append(_round(frac))
        ok += frac >= 0.4
    return CriterionResult(
        6,
        "second-eigenvector delocalization fraction",
        ok >= (18 if profile.name == "full" else 1),
        time.time() - t0,
        {"seeds": profile.c6_seeds, "passing": ok, "fractions": fractions},
    )


def criterion_7(profile: Profile) -> CriterionResult:
    """All adjacency eigenvectors beyond the top one are spread."""
    t0 = time.time()
    n, p = profile.c7_n, 0.5
    ok = 0
    minima = []
    for k in range(profile.c7_seeds):
        g, _ = _gnp_min_degree(n, p, 70_000 + k)
        _, vecs = np.linalg.eigh(spectral.adjacency_matrix(g))
        mags = np.abs(vecs[:, :-1])  # drop the top eigenvector (last column)
        fracs = np.mean(mags >= 0.1 / math.sqrt(n), axis=0)
        m = float(fracs.min())
        minima.append(_round(m))
        ok += m >= 0.4
    return CriterionResult(
        7,
        "adjacency eigenvector delocalization (all j >= 2)",
        ok >= (18 if profile.name == "full" else 1),
        time.time() - t0,
        {"seeds": profile.c7_seeds, "passing": ok, "min_fractions": minima},
    )


def criterion_8(profile: Profile) -> CriterionResult:
    """Typicality frequency plus deterministic counterexample refutation."""
    t0 = time.time()
    n, p = profile.c8_n, 0.5
    passing = 0
    for k in range(profile.c8_seeds):
        g = sample_gnp(GnpSpec(n, p, 80_000 + k))
        rep = typicality.check_definition_typical(
            g, p, subset_samples=profile.c8_subset_samples, seed=17
        )
        passing += rep.passed()
    # deterministic counterexamples
    m = 60
    kn = Graph.from_edges(m, [(i, j) for i in range(m) for j in range(i + 1, m)])
    kn_refuted = not typicality.check_definition_typical(
        kn, 0.1, subset_samples=10, seed=1
    ).passed()
    half = 30
    kbip = Graph.from_edges(
        2 * half, [(i, half + j) for i in range(half) for j in range(half)]
    )
    bip_failed = not typicality.check_ev2_lower(kbip, 0.5).holds
    frac = passing / profile.c8_seeds
    return CriterionResult(
        8,
        "typicality frequency and counterexample refutation",
        frac >= 0.9 and kn_refuted and bip_failed,
        time.time() - t0,
        {"seeds": profile.c8_seeds, "passing": passing,
         "complete_graph_refuted": kn_refuted,
         "bipartite_ev2_refuted": bip_failed},
    )


def criterion_9(profile: Profile) -> CriterionResult:
    """Exact 1-D small-ball values on the all-ones family match the
    binomial oracle; implied constants and the 1/sqrt(m) scaling law."""
    t0 = time.time()
    from scipy.stats import binom

    values = {}
    worst_oracle = 0.0
    implied = {}
    for m in (25, 100, 400):
        spec = smallball.BernoulliSumSpec((1.0,) * m, 0.5)
        res = smallball.lo_bound_check(spec, 1.0)
        pmf = binom.pmf(np.arange(m + 1), m, 0.5)
        oracle = float(max(pmf[k] + pmf[k + 1] + pmf[k + 2] for k in range(m - 1)))
        worst_oracle = max(worst_oracle, abs(res.estimate.value - oracle))
        values[m] = res.estimate.value
        implied[m] = res.implied_C
    r1 = values[100] / values[25]
    r2 = values[400] / values[100]
    ratios_ok = abs(r1 - 0.5) <= 0.075 and abs(r2 - 0.5) <= 0.075
    passed = (
        worst_oracle <= 1e-12
        and all(c <= 2.0 for c in implied.values())
        and ratios_ok
    )
    return CriterionResult(
        9,
        "exact small-ball values, constants, and scaling",
        passed,
        time.time() - t0,
        {"worst_oracle_diff": _round(worst_oracle, 6),
         "implied_C": {str(k): _round(v) for k, v in implied.items()},
         "ratios": [_round(r1), _round(r2)]},
    )


def criterion_10(profile: Profile) -> CriterionResult:
    """Projected small-ball Monte Carlo vs the product bound, plus the
    1-D Monte Carlo vs exact cross-check."""
    t0 = time.time()
    spec = smallball.BernoulliSumSpec((1.0,) * 50, 0.5)
    res = smallball.rv_projection_check(
        3, 8, spec, t=1.0, trials=profile.c10_trials, seed=404
    )
    bound10 = res.bound(10.0)
    # 1-D cross-check
    rng = np.random.Generator(np.random.Philox(key=505))
    pts = smallball.sample_sums(spec, (profile.c10_trials,), rng)
    mc, se = smallball.conc_monte_carlo(pts, 1.0)
    exact = smallball.conc_exact_1d(spec, 1.0).value
    z = abs(mc - exact) / se
    passed = (
        res.fitted_C <= 10.0 and res.estimate.value <= bound10 and z <= 4.0
    )
    return CriterionResult(
        10,
        "projected small-ball bound and 1-D Monte Carlo cross-check",
        passed,
        time.time() - t0,
        {"estimate": _round(res.estimate.value),
         "fitted_C": _round(res.fitted_C),
         "bound_at_C10": _round(bound10),
         "cross_check_z": _round(z, 4)},
    )


def criterion_11(profile: Profile) -> CriterionResult:
    """Eigensolver invariants on random matrices and closed-form fixtures."""
    t0 = time.time()
    rng = np.random.Generator(np.random.Philox(key=606))
    worst_recon = worst_ortho = worst_resid = 0.0
    for _ in range(profile.c11_matrices):
        n = int(rng.integers(10, 501))
        m = rng.standard_normal((n, n))
        m = (m + m.T) / 2.0
        dec = spectral.eig_sym(m)
        recon = np.abs(dec.eigenvectors * dec.eigenvalues @ dec.eigenvectors.T - m)
        worst_recon = max(worst_recon, float(recon.max() / np.abs(m).max()))
        gram = np.abs(dec.eigenvectors.T @ dec.eigenvectors - np.eye(n))
        worst_ortho = max(worst_ortho, float(gram.max()))
        radius = float(np.max(np.abs(dec.eigenvalues)))
        worst_resid = max(worst_resid, dec.max_residual / max(radius, 1e-300))
    fixtures_ok = True
    k4 = Graph.from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    vals = np.linalg.eigvalsh(spectral.normalized_laplacian(k4))
    fixtures_ok &= bool(np.allclose(vals, [0, 4 / 3, 4 / 3, 4 / 3], atol=1e-10))
    p3 = Graph.from_edges(3, [(0, 1), (1, 2)])
    vals = np.linalg.eigvalsh(spectral.normalized_laplacian(p3))
    fixtures_ok &= bool(np.allclose(vals, [0, 1, 2], atol=1e-10))
    k33 = Graph.from_edges(6, [(i, 3 + j) for i in range(3) for j in range(3)])
    vals = np.linalg.eigvalsh(spectral.normalized_laplacian(k33))
    fixtures_ok &= bool(np.allclose(vals, [0, 1, 1, 1, 1, 2], atol=1e-10))
    passed = (
        worst_recon <= 1e-10
        and worst_ortho <= 1e-10
        and worst_resid <= 1e-9
        and fixtures_ok
    )
    return CriterionResult(
        11,
        "eigensolver reconstruction, orthonormality, residual, fixtures",
        passed,
        time.time() - t0,
        {"worst_reconstruction": _round(worst_recon, 4),
         "worst_orthonormality": _round(worst_ortho, 4),
         "worst_residual_rel": _round(worst_resid, 4),
         "fixtures_ok": fixtures_ok},
    )


def run_criteria(profile: Profile, ids=None, log=None) -> list[CriterionResult]:
    """Run the requested criteria (1..11; 12 is the determinism check that
    compares digests of two such runs) in order."""
    wanted = set(ids) if ids else set(range(1, 12))
    bad = wanted - set(range(1, 12))
    if bad:
        raise ParameterError(f"unknown criterion ids: {sorted(bad)}")
    results = []

    def emit(r):
        results.append(r)
        if log:
            log(r.line())

    singles = {
        1: criterion_1, 2: criterion_2, 3: criterion_3, 6: criterion_6,
        7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
        11: criterion_11,
    }
    for cid in sorted(wanted):
        if cid == 4:
            c4, c5 = criterion_4_5(profile)
            emit(c4)
            if 5 in wanted:
                emit(c5)
        elif cid == 5:
            if 4 not in wanted:
                c4, c5 = criterion_4_5(profile)
                emit(c5)
        else:
            emit(singles[cid](profile))
    return results


def digest(results: list[CriterionResult]) -> str:
    """Stable digest of the outcome payloads (timings excluded)."""
    doc = [
        {"cid": r.cid, "passed": r.passed, "details": r.details}
        for r in results
    ]
    def default(obj):
        if isinstance(obj, np.bool_):
            return bool(obj)
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        raise TypeError(f"not JSON serializable: {type(obj).__name__}")

    blob = json.dumps(
        doc, sort_keys=True, separators=(",", ":"), default=default
    ).encode()
    return hashlib.sha256(blob).hexdigest()
