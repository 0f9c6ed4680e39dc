"""Command-line entry point.

Subcommands:
  sample     draw a G(n,p) instance and write it as JSON
  perturb    classify sampled edge perturbations by exact gap change
  typical    certify or refute typicality (exit 0 certified, 2 refuted)
  deloc      eigenvector entry-magnitude profiles, sweeps, histograms
  conc       concentration-function checks (exact 1-D and projected MC)
  reproduce  run the acceptance suite and emit a digest manifest

Every run writes a manifest (config echo, package version, duration, and
a sha256 digest of the deterministic payload).  Timings are excluded from
digests: two runs with the same config produce the same digest.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
import time

import numpy as np

from . import __version__, acceptance, delocalization, paradox, smallball, typicality
from .errors import ParameterError
from .graph import GnpSpec, graph_from_json, graph_to_json, sample_gnp

SCHEMA_VERSION = 1


def _json_default(obj):
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _sha256_doc(doc) -> str:
    blob = json.dumps(
        doc, sort_keys=True, separators=(",", ":"), default=_json_default
    ).encode()
    return hashlib.sha256(blob).hexdigest()


def _manifest(args, payload_digest: str, t0: float) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("func", "out", "config")}
    return {
        "schema_version": SCHEMA_VERSION,
        "version": __version__,
        "command": args.command,
        "config": cfg,
        "duration_seconds": round(time.time() - t0, 3),
        "digest": payload_digest,
    }


def _write(doc: dict, out: str | None):
    text = json.dumps(doc, indent=2, sort_keys=True, default=_json_default)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_graph(args):
    if getattr(args, "graph", None):
        with open(args.graph) as fh:
            return graph_from_json(fh.read())
    return sample_gnp(GnpSpec(args.n, args.p, args.seed))


def cmd_sample(args) -> int:
    t0 = time.time()
    g = sample_gnp(GnpSpec(args.n, args.p, args.seed))
    doc = json.loads(graph_to_json(g))
    doc["manifest"] = _manifest(args, _sha256_doc(doc), t0)
    _write(doc, args.out)
    return 0


def cmd_perturb(args) -> int:
    t0 = time.time()
    g = _load_graph(args)
    ctx = paradox.GapContext(g, p=args.p)
    kinds = ["addition", "removal"] if args.kind == "both" else [args.kind]
    verdict_rows = []
    summaries = {}
    for kind in kinds:
        fn = paradox.estimate_add if kind == "addition" else paradox.estimate_remove
        est, verdicts = fn(g, args.sample, seed=args.seed, ctx=ctx, jobs=args.jobs)
        summaries[kind] = est.to_dict()
        verdict_rows += [w.to_dict() for w in verdicts]
    payload = {"summaries": summaries, "verdicts": verdict_rows}
    doc = dict(payload)
    doc["manifest"] = _manifest(args, _sha256_doc(payload), t0)
    if args.out and args.format == "json":
        # JSON-lines verdicts next to the summary document
        base = os.path.splitext(args.out)[0]
        with open(base + ".verdicts.jsonl", "w") as fh:
            for row in verdict_rows:
                fh.write(json.dumps(row, sort_keys=True, default=_json_default) + "\n")
    _write(doc, args.out)
    return 0


def cmd_typical(args) -> int:
    t0 = time.time()
    g = _load_graph(args)
    p = args.p if args.p is not None else g.num_edges / (g.n * (g.n - 1) / 2)
    report = typicality.typicality_report(
        g, p, subset_samples=args.subset_samples, seed=args.seed,
        families=tuple(args.families.split(",")),
    )
    payload = report.to_dict()
    doc = dict(payload)
    doc["manifest"] = _manifest(args, _sha256_doc(payload), t0)
    _write(doc, args.out)
    return 0 if report.passed() else 2


def cmd_deloc(args) -> int:
    t0 = time.time()
    g = _load_graph(args)
    profiles = delocalization.adjacency_profiles(g, args.exponent)
    payload = {"profiles": [pr.to_dict() for pr in profiles]}
    if args.sweep:
        lo, hi, steps = args.sweep.split(":")
        grid = np.linspace(float(lo), float(hi), int(steps))
        # sweep over the second eigenvector of the normalized Laplacian
        from .spectral import second_eigenvector

        f, degen = second_eigenvector(g)
        payload["sweep"] = {
            "vector_id": ["Lhat", 2],
            "degenerate": degen,
            "table": delocalization.sweep_exponent(f, grid),
        }
    doc = dict(payload)
    doc["manifest"] = _manifest(args, _sha256_doc(payload), t0)
    if args.format == "csv" and args.out:
        base = os.path.splitext(args.out)[0]
        with open(base + ".histograms.csv", "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["vector", "index", "bin_low", "bin_high", "count"])
            for pr in profiles:
                for lo_, hi_, c in pr.histogram_rows():
                    w.writerow([pr.vector_id[0], pr.vector_id[1], lo_, hi_, c])
        if "sweep" in payload:
            with open(base + ".sweep.csv", "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["exponent", "fraction_above"])
                w.writerows(payload["sweep"]["table"])
    _write(doc, args.out)
    return 0


def cmd_conc(args) -> int:
    t0 = time.time()
    if args.weights:
        weights = tuple(float(w) for w in args.weights.split(","))
    else:
        weights = (1.0,) * args.ones
    spec = smallball.BernoulliSumSpec(weights, args.p)
    if args.projection:
        d, n = args.projection
        res = smallball.rv_projection_check(
            d, n, spec, t=args.radius, trials=args.trials, seed=args.seed
        )
        payload = {
            "mode": "projection",
            "estimate": res.estimate.to_dict(),
            "q": res.q,
            "K": res.K,
            "radius": res.radius,
            "fitted_C": res.fitted_C,
            "d": res.d,
            "n": res.n,
        }
    else:
        res = smallball.lo_bound_check(spec, args.radius)
        payload = {
            "mode": "exact_1d",
            "estimate": res.estimate.to_dict(),
            "bound": res.bound,
            "implied_C": res.implied_C,
            "m": res.m,
        }
    doc = dict(payload)
    doc["manifest"] = _manifest(args, _sha256_doc(payload), t0)
    _write(doc, args.out)
    return 0


def cmd_reproduce(args) -> int:
    t0 = time.time()
    profile = acceptance.FULL if args.profile == "full" else acceptance.SMOKE
    ids = None
    if args.criteria:
        ids = [int(x) for x in args.criteria.split(",")]
    results = acceptance.run_criteria(profile, ids=ids, log=print)
    payload = {
        "profile": profile.name,
        "results": [
            {"cid": r.cid, "description": r.description, "passed": r.passed,
             "details": r.details}
            for r in results
        ],
    }
    doc = dict(payload)
    doc["manifest"] = _manifest(args, acceptance.digest(results), t0)
    _write(doc, args.out)
    return 0 if all(r.passed for r in results) else 2


def _add_common(sp, graph_opts=True):
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None, help="output file (default stdout)")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    if graph_opts:
        sp.add_argument("--n", type=int, default=200)
        sp.add_argument("--graph", default=None, help="read graph JSON instead of sampling")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="braesslab",
        description="Numerical laboratory for spectral-gap edge paradoxes in random graphs",
    )
    ap.add_argument("--config", default=None, help="JSON file of default options")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sample", help="draw a G(n,p) graph")
    _add_common(sp)
    sp.add_argument("--p", type=float, default=0.5)
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("perturb", help="exact gap-change classification")
    _add_common(sp)
    sp.add_argument("--p", type=float, default=None)
    sp.add_argument("--sample", type=int, default=500)
    sp.add_argument("--kind", choices=("addition", "removal", "both"), default="addition")
    sp.add_argument(
        "--jobs", type=int,
        default=int(os.environ.get("BRAESSLAB_JOBS", "1")),
    )
    sp.set_defaults(func=cmd_perturb)

    sp = sub.add_parser("typical", help="certify or refute typicality")
    _add_common(sp)
    sp.add_argument("--p", type=float, default=None)
    sp.add_argument("--subset-samples", type=int, default=50)
    sp.add_argument("--families", default="definition")
    sp.set_defaults(func=cmd_typical)

    sp = sub.add_parser("deloc", help="eigenvector magnitude profiles")
    _add_common(sp)
    sp.add_argument("--p", type=float, default=0.5)
    sp.add_argument("--exponent", type=float, default=1.0)
    sp.add_argument("--sweep", default=None, metavar="LO:HI:STEPS")
    sp.set_defaults(func=cmd_deloc)

    sp = sub.add_parser("conc", help="concentration-function checks")
    _add_common(sp, graph_opts=False)
    sp.add_argument("--p", type=float, default=0.5)
    sp.add_argument("--ones", type=int, default=100, help="number of unit weights")
    sp.add_argument("--weights", default=None, help="comma-separated weights")
    sp.add_argument("--radius", type=float, default=1.0)
    sp.add_argument("--trials", type=int, default=100_000)
    sp.add_argument(
        "--projection", type=int, nargs=2, metavar=("D", "N"), default=None,
        help="estimate the projected d-dimensional concentration in R^n",
    )
    sp.set_defaults(func=cmd_conc)

    sp = sub.add_parser("reproduce", help="run the acceptance suite")
    sp.add_argument("--profile", choices=("full", "smoke"), default="full")
    sp.add_argument("--criteria", default=None, help="comma-separated ids (default all)")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.config:
        with open(args.config) as fh:
            defaults = json.load(fh)
        for k, v in defaults.items():
            key = k.replace("-", "_")
            if hasattr(args, key) and f"--{k}" not in (argv or sys.argv[1:]):
                setattr(args, key, v)
    try:
        return args.func(args)
    except (ParameterError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
