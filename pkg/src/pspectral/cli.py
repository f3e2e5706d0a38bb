"""Command line front end.

Exit codes: 0 success / verified pass, 1 verified fail (including a golden
count mismatch), 2 usage or input format errors, 3 failure caused by
non-convergence, 4 refusal by a resource guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .berge import enumerate_berge
from .errors import (
    FormatError,
    NonConvergenceError,
    ParameterDomainError,
    PSpectralError,
    ResourceGuardError,
)
from .hgraph import (
    UniformHypergraph,
    as_hypergraph,
    brute_force_canonical_edges,
    construct_graph,
    parse_graph,
    parse_uhg,
)
from .spectral import SolverOptions, p_spectral_radius
from . import verify as verify_mod

_DEFAULTS = SolverOptions()

_FAMILY_ALIASES = {"k2": ("path", 2)}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pspectral", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add_solver_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=int, default=_DEFAULTS.seed)
        p.add_argument("--tol", type=float, default=_DEFAULTS.tol)
        p.add_argument("--restarts", type=int, default=_DEFAULTS.restarts)
        p.add_argument("--tie-eps", type=float, default=_DEFAULTS.tie_eps)
        p.add_argument("--json", metavar="FILE", default=None, help="also write the JSON result to FILE")

    lam = sub.add_parser("lambda", help="estimate the p-spectral radius of a hypergraph file")
    lam.add_argument("file", help=".uhg hypergraph or .g graph file")
    lam.add_argument("--p", type=float, required=True)
    add_solver_flags(lam)

    enum = sub.add_parser("enumerate", help="enumerate Berge copies of a base graph")
    enum.add_argument("--family", default="path", help="path|cycle|star|k2")
    enum.add_argument("--k", type=int, default=None, help="base vertex count (ignored for k2)")
    enum.add_argument("--r", type=int, default=3)
    enum.add_argument("--extra", type=int, default=1)
    enum.add_argument("--jobs", type=int, default=1)
    enum.add_argument("--out", metavar="DIR", default=None, help="save the catalog to DIR")
    enum.add_argument("--golden-dir", metavar="DIR", default="golden")
    enum.add_argument("--update-golden", action="store_true")
    enum.add_argument("--force", action="store_true", help="override the raw-space guard")
    # enumeration is deterministic; the solver flags are accepted for interface
    # uniformity and ignored
    add_solver_flags(enum)

    ver = sub.add_parser("verify", help="run a verification scenario")
    ver.add_argument(
        "scenario",
        help="path|cycle|star|suspension|p-monotonicity|move-edges|merge-vertex|"
        "path-exchange|expansion-minimum|star-crossover",
    )
    ver.add_argument("--k", type=int, default=None)
    ver.add_argument("--p", type=float, default=None)
    ver.add_argument("--samples", type=int, default=None)
    ver.add_argument("--jobs", type=int, default=1)
    ver.add_argument("--family", default="path", help="base family for expansion-minimum")
    add_solver_flags(ver)

    return ap


def _read_hypergraph(path: str) -> UniformHypergraph:
    text = Path(path).read_text()
    if path.endswith(".g"):
        return as_hypergraph(parse_graph(text))
    if path.endswith(".uhg"):
        return parse_uhg(text)
    try:
        return parse_uhg(text)
    except FormatError:
        return as_hypergraph(parse_graph(text))


def _emit(payload: dict | str, json_file: str | None) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, sort_keys=True, indent=2)
    print(text)
    if json_file:
        Path(json_file).write_text(text + "\n")


def _options(args) -> SolverOptions:
    return SolverOptions(tol=args.tol, restarts=args.restarts, seed=args.seed, tie_eps=args.tie_eps)


def cmd_lambda(args) -> int:
    try:
        H = _read_hypergraph(args.file)
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc}", file=sys.stderr)
        return 2
    est = p_spectral_radius(H, args.p, _options(args))
    payload = est.to_json_dict()
    payload["p"] = args.p
    _emit(payload, args.json)
    if not est.converged:
        print("error: solver did not converge", file=sys.stderr)
        return 3
    print(
        f"lambda_{args.p:g} = {est.lambda_:.12g}  (residual {est.residual:.3g}, "
        f"{est.iterations} iterations)",
        file=sys.stderr,
    )
    return 0


def _resolve_base(args) -> tuple[str, int]:
    fam = args.family
    if fam in _FAMILY_ALIASES:
        return _FAMILY_ALIASES[fam]
    if args.k is None:
        raise ParameterDomainError(f"--k is required for family {fam!r}")
    return fam, args.k


def _golden_key(family: str, k: int, r: int, extra: int) -> str:
    return f"{family}[{k}]:r{r}:extra{extra}"


def _brute_force_class_count(catalog) -> int:
    # Independent dedup: all-permutation canonical keys, no color refinement.
    keys = {brute_force_canonical_edges(e.hypergraph) for e in catalog.entries}
    return len(keys)


def cmd_enumerate(args) -> int:
    family, k = _resolve_base(args)
    base = construct_graph(family, [k])
    catalog = enumerate_berge(base, args.r, args.extra, jobs=args.jobs, force=args.force)
    if args.out:
        catalog.save(args.out)

    golden_path = Path(args.golden_dir) / "counts.json"
    key = _golden_key(family, k, args.r, args.extra)
    golden: dict = {}
    if golden_path.exists():
        golden = json.loads(golden_path.read_text())
    expected = golden.get(key)

    updated = False
    if args.update_golden:
        oracle_count = _brute_force_class_count(catalog)
        if oracle_count != catalog.count:
            print(
                f"error: refusing to update golden: brute-force dedup found "
                f"{oracle_count} classes, catalog has {catalog.count}",
                file=sys.stderr,
            )
            return 1
        golden[key] = catalog.count
        golden_path.parent.mkdir(parents=True, exist_ok=True)
        golden_path.write_text(json.dumps(golden, sort_keys=True, indent=2) + "\n")
        expected = catalog.count
        updated = True

    payload = {
        "family": family,
        "k": k,
        "r": args.r,
        "extra": args.extra,
        "count": catalog.count,
        "golden": {"expected": expected, "match": (None if expected is None else expected == catalog.count)},
        "updated": updated,
        "diagnostic": catalog.diagnostic,
    }
    _emit(payload, args.json)
    if expected is not None and expected != catalog.count:
        print(f"error: count {catalog.count} != golden {expected}", file=sys.stderr)
        return 1
    print(f"{key}: {catalog.count} classes", file=sys.stderr)
    return 0


_SCENARIO_DEFAULTS = {
    "path": {"k": 6, "p": 3.0},
    "cycle": {"k": 6, "p": 3.0},
    "star": {"k": 6, "p": 1.0, "samples": 10_000},
    "suspension": {"samples": 64},
    "p-monotonicity": {"samples": 64},
    "move-edges": {"samples": 64},
    "merge-vertex": {"samples": 64},
    "path-exchange": {"samples": 64},
    "expansion-minimum": {"k": 3, "p": 3.0},
    "star-crossover": {},
}


def cmd_verify(args) -> int:
    scenario = args.scenario
    if scenario not in _SCENARIO_DEFAULTS:
        print(f"error: unknown scenario {scenario!r}", file=sys.stderr)
        return 2
    d = _SCENARIO_DEFAULTS[scenario]
    k = args.k if args.k is not None else d.get("k")
    p = args.p if args.p is not None else d.get("p")
    samples = args.samples if args.samples is not None else d.get("samples")
    opts = _options(args)
    jobs = args.jobs

    if scenario == "path":
        report = verify_mod.verify_path_theorem(k, p, opts, jobs=jobs)
    elif scenario == "cycle":
        report = verify_mod.verify_cycle_theorem(k, p, opts, jobs=jobs)
    elif scenario == "star":
        report = verify_mod.verify_star_theorem(k, p, opts, jobs=jobs, samples=samples)
    elif scenario == "suspension":
        report = verify_mod.verify_suspension_lemma(samples=samples, opts=opts, jobs=jobs)
    elif scenario == "p-monotonicity":
        report = verify_mod.verify_p_monotonicity(samples=samples, opts=opts, jobs=jobs)
    elif scenario == "move-edges":
        report = verify_mod.verify_move_edge_lemma(samples=samples, opts=opts, jobs=jobs)
    elif scenario == "merge-vertex":
        report = verify_mod.verify_merge_lemma(samples=samples, opts=opts, jobs=jobs)
    elif scenario == "path-exchange":
        report = verify_mod.verify_path_exchange(samples=samples, opts=opts, jobs=jobs)
    elif scenario == "expansion-minimum":
        base = construct_graph(args.family, [k])
        report = verify_mod.verify_expansion_minimum(base, p, opts, jobs=jobs)
    else:
        report = verify_mod.verify_star_crossover(opts=opts, jobs=jobs)

    _emit(report.canonical_json(), args.json)
    failed = [c for c in report.details["checks"] if not verify_mod.check_holds(c)]
    print(
        f"{scenario}: {report.outcome} (winner={report.winner_name or '-'}, "
        f"lambda={report.lambda_max if report.lambda_max is not None else float('nan'):.9g}, "
        f"{report.wall_ms:.0f} ms)",
        file=sys.stderr,
    )
    for c in failed:
        print(f"  failed: {c['label']} (lhs={c['lhs']!r}, rhs={c['rhs']!r}, tol={c['tol']!r})", file=sys.stderr)
    if report.outcome == "pass":
        return 0
    if failed and all("converged" in c["label"] for c in failed):
        return 3
    return 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "lambda":
            return cmd_lambda(args)
        if args.command == "enumerate":
            return cmd_enumerate(args)
        return cmd_verify(args)
    except FormatError as exc:
        print(f"error: bad input format: {exc}", file=sys.stderr)
        return 2
    except ParameterDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceGuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 4
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PSpectralError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
