"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or parse error,
3 inconclusive (an exact search ran out of budget).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .colorings import is_proper
from .errors import DatasetError, Graph6Error, Inconclusive
from .exact_chroma import DEFAULT_BUDGET, chromatic_index, chromatic_number
from .graph_core import (
    Graph,
    degree_profile,
    from_graph6,
    is_biconnected,
    is_hamiltonian,
    is_planar,
    join,
    line_graph,
    read_graph6_lines,
    to_graph6,
)
from .ks_dataset import bases_graph, dataset_from_vectorset, load_dataset, shared_vector_edge_coloring
from .numeric_search import SolveConfig, search_ortho_coloring, search_ortho_edge_coloring
from .ortho_core import format_vectorset, ks_decide, parse_vectorset, verify_ortho_coloring

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def _manifest(cmd: str, inputs: list[str], config: dict) -> dict:
    return {
        "subcommand": cmd,
        "inputs": inputs,
        "config": config,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def _emit(obj: dict, as_json: bool, human: str, out=None):
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(obj, sort_keys=True) + "\n")
    else:
        out.write(human.rstrip("\n") + "\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _read_graphs(path: str) -> list[Graph]:
    return list(read_graph6_lines(_read_text(path).splitlines()))


# --------------------------------------------------------------------------
# dataset

def cmd_dataset(args) -> int:
    t0 = time.perf_counter()
    steps: list[dict] = []

    def step(name, ok, **info):
        steps.append({"step": name, "ok": bool(ok), **info})
        return ok

    try:
        if args.override:
            ds = dataset_from_vectorset(parse_vectorset(_read_text(args.override)))
        else:
            ds = load_dataset()
        step("load_and_validate", True, vectors=len(ds.vectors), bases=len(ds.bases))
    except (DatasetError, ValueError) as exc:
        step("load_and_validate", False, error=str(exc))
        return _finish_dataset(args, steps, {}, t0)

    g, _ = bases_graph(ds)
    prof = degree_profile(g)
    step("bases_graph", True, n=g.n, m=g.m, max_degree=prof.max_degree, regular=prof.regular)

    pi_prime = None
    try:
        f = shared_vector_edge_coloring(ds)
        rep = verify_ortho_coloring(g, f)
        if step("orthogonal_edge_coloring", rep.passed, d=f.d, mode=rep.mode):
            pi_prime = f.d if f.d == prof.max_degree else None
    except DatasetError as exc:
        step("orthogonal_edge_coloring", False, error=str(exc))
    step("pi_prime_certified", pi_prime is not None, value=pi_prime,
         lower_bound="max-degree", lower=prof.max_degree)

    chi = chromatic_index(g, budget=args.budget)
    if not chi.exact:
        step("chromatic_index", False, inconclusive=True, lower=chi.lower, upper=chi.upper)
        return _finish_dataset(args, steps, {"pi_prime_certified": pi_prime}, t0,
                               code=EXIT_INCONCLUSIVE)
    step("chromatic_index", is_proper(chi.certificate), value=chi.value,
         lower_reason=chi.lower_reason)

    ks = ks_decide(ds.vectors)
    step("ks_decide", ks.is_ks, bases=len(ks.bases), nodes=ks.nodes)
    if pi_prime is not None:
        step("strict_gap", chi.value > pi_prime, pi_prime=pi_prime, chi_prime=chi.value)

    summary = {"chromatic_index": chi.value, "pi_prime_certified": pi_prime, "ks": ks.is_ks}
    if args.export_vectors:
        Path(args.export_vectors).write_text(format_vectorset(ds.vectors))
    if args.export_graph6:
        Path(args.export_graph6).write_text(to_graph6(g) + "\n")
    return _finish_dataset(args, steps, summary, t0)


def _finish_dataset(args, steps, summary, t0, code=None) -> int:
    failed = [s["step"] for s in steps if not s["ok"]]
    if code is None:
        code = EXIT_FAIL if failed else EXIT_OK
    report = {
        **summary,
        "passed": not failed and code == EXIT_OK,
        "failed_steps": failed,
        "steps": steps,
        "seconds": round(time.perf_counter() - t0, 4),
        "manifest": _manifest("dataset", [args.override] if args.override else [],
                              {"budget": args.budget}),
    }
    lines = [f"[{'ok' if s['ok'] else 'FAIL'}] {s['step']}: "
             + ", ".join(f"{k}={v}" for k, v in s.items() if k not in ("step", "ok"))
             for s in steps]
    if summary:
        lines.append(
            f"chromatic index = {summary.get('chromatic_index')}, "
            f"orthogonal index certified = {summary.get('pi_prime_certified')}, "
            f"Kochen-Specker = {summary.get('ks')}"
        )
    _emit(report, args.json, "\n".join(lines))
    return code


# --------------------------------------------------------------------------
# chroma

def cmd_chroma(args) -> int:
    graphs = _read_graphs(args.input)
    code = EXIT_OK
    for i, g in enumerate(graphs):
        if args.edge:
            if g.m == 0:
                _emit({"index": i, "error": "graph has no edges"}, args.json,
                      f"#{i}: graph has no edges")
                code = max(code, EXIT_FAIL)
                continue
            res = chromatic_index(g, budget=args.budget)
        else:
            res = chromatic_number(g, budget=args.budget)
        rec = {
            "index": i,
            "graph6": to_graph6(g),
            "parameter": "chromatic_index" if args.edge else "chromatic_number",
            **res.to_json(),
            "manifest": _manifest("chroma", [args.input],
                                  {"edge": args.edge, "budget": args.budget}),
        }
        if res.exact:
            human = f"#{i} {rec['parameter']} = {res.value} (lower bound: {res.lower_reason})"
        else:
            human = f"#{i} {rec['parameter']} inconclusive, in [{res.lower}, {res.upper}]"
            code = EXIT_INCONCLUSIVE
        _emit(rec, args.json, human)
    return code


# --------------------------------------------------------------------------
# search

def _solve_config(args) -> SolveConfig:
    return SolveConfig(
        d=args.d,
        restarts=args.restarts,
        max_iter=args.max_iter,
        tol=args.tol,
        seed=args.seed,
        round_denominator=args.round_denominator or None,
    )


def cmd_search(args) -> int:
    graphs = _read_graphs(args.input)
    cfg = _solve_config(args)
    csv_parts = []
    for i, g in enumerate(graphs):
        if args.edge:
            rep = search_ortho_edge_coloring(g, cfg)
        else:
            rep = search_ortho_coloring(g, cfg)
        rec = {
            "index": i,
            "graph6": to_graph6(g),
            **rep.to_json(include_assignment=args.json),
            "manifest": _manifest("search", [args.input], {
                "edge": args.edge, "d": cfg.d, "restarts": cfg.restarts,
                "max_iter": cfg.max_iter, "tol": cfg.tol, "seed": cfg.seed,
                "round_denominator": cfg.round_denominator,
            }),
        }
        verdict = (
            f"certified: orthogonal {'index' if args.edge else 'number'} <= {cfg.d}"
            if rep.certified else "no exact certificate"
        )
        _emit(rec, args.json,
              f"#{i} d={cfg.d} {rep.status} best residual {rep.residual:.3e} "
              f"over {rep.restarts} restarts; {verdict}")
        csv_parts.append(rep.to_csv())
    if args.csv:
        Path(args.csv).write_text("".join(csv_parts))
    return EXIT_OK


# --------------------------------------------------------------------------
# snark scan

def scan_record(index: int, g: Graph, budget: int, cfg: SolveConfig) -> dict:
    """Run the Class-2 cubic pipeline on one graph; never raises."""
    rec: dict = {"index": index, "graph6": to_graph6(g), "n": g.n, "m": g.m,
                 "status": "ok", "flags": []}
    try:
        prof = degree_profile(g)
        rec["cubic"] = prof.regular and prof.max_degree == 3 and g.n > 0
        if not rec["cubic"]:
            rec["dismissed"] = "not 3-regular"
            return rec
        rec["biconnected"] = is_biconnected(g)
        if not rec["biconnected"]:
            rec["dismissed"] = "not 2-connected"
            return rec
        chi = chromatic_index(g, budget=budget)
        if not chi.exact:
            rec["status"] = "inconclusive"
            rec["chromatic_index_interval"] = [chi.lower, chi.upper]
            return rec
        rec["chromatic_index"] = chi.value
        rec["class"] = 1 if chi.value == 3 else 2
        if chi.value == 3:
            rec["dismissed"] = "Class 1 (chromatic index 3)"
            return rec
        try:
            cyc = is_hamiltonian(g, budget=budget)
            rec["hamiltonian"] = cyc is not None
        except Inconclusive:
            rec["hamiltonian"] = None
            rec["status"] = "inconclusive"
        if rec["hamiltonian"]:
            rec["flags"].append("Class 2 cubic graph reported Hamiltonian: solver bug")
        rec["planar"] = is_planar(g)
        if rec["planar"]:
            rec["flags"].append("planar 2-connected Class 2 cubic graph: solver bug")
        rep = search_ortho_edge_coloring(g, cfg)
        rec["search"] = {
            "d": cfg.d,
            "status": rep.status,
            "residual": rep.residual,
            "restarts": rep.restarts,
            "seed": rep.seed,
            "rounding": rep.rounding.to_json() if rep.rounding else {"attempted": False},
        }
        if rep.certified:
            rec["flags"].append(
                "exact rational orthogonal 3-edge-coloring of a Class 2 cubic graph: "
                "re-verify independently"
            )
    except Exception as exc:  # per-record isolation
        rec["status"] = "error"
        rec["error"] = f"{type(exc).__name__}: {exc}"
    return rec


def _scan_worker(job):
    return scan_record(*job)


def cmd_snark_scan(args) -> int:
    text = _read_text(args.input)
    cfg = SolveConfig(d=3, restarts=args.restarts, max_iter=args.max_iter, tol=args.tol,
                      seed=args.seed, round_denominator=args.round_denominator or None)
    jobs, errors = [], {}
    idx = 0
    for line in text.splitlines():
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        try:
            jobs.append((idx, from_graph6(s), args.budget, cfg))
        except Graph6Error as exc:
            errors[idx] = {"index": idx, "status": "error", "error": str(exc), "flags": []}
        idx += 1

    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_scan_worker, jobs))
    else:
        results = [_scan_worker(j) for j in jobs]
    by_index = {r["index"]: r for r in results}
    by_index.update(errors)

    manifest = _manifest("snark-scan", [args.input], {
        "budget": args.budget, "restarts": cfg.restarts, "max_iter": cfg.max_iter,
        "seed": cfg.seed, "tol": cfg.tol, "round_denominator": cfg.round_denominator,
    })
    code = EXIT_OK
    for i in sorted(by_index):
        rec = by_index[i]
        rec["manifest"] = manifest
        if rec["flags"] or rec["status"] == "error":
            code = EXIT_FAIL
        elif rec["status"] == "inconclusive" and code == EXIT_OK:
            code = EXIT_INCONCLUSIVE
        if "dismissed" in rec:
            human = f"#{i} {rec['graph6']}: dismissed ({rec['dismissed']})"
        elif rec["status"] == "error":
            human = f"#{i}: error {rec['error']}"
        elif "search" in rec:
            srch = rec["search"]
            human = (
                f"#{i} {rec['graph6']}: Class 2, hamiltonian={rec['hamiltonian']}, "
                f"planar={rec['planar']}, d=3 residual {srch['residual']:.4e}, "
                f"certified={srch['rounding'].get('certified', False)}"
            )
        else:
            human = f"#{i} {rec['graph6']}: {rec['status']}"
        for fl in rec["flags"]:
            human += f"\n    FLAG: {fl}"
        _emit(rec, args.json, human)
    return code


# --------------------------------------------------------------------------
# small graph transforms and KS verification

def _single(path: str) -> Graph:
    gs = _read_graphs(path)
    if len(gs) != 1:
        raise ValueError(f"{path}: expected exactly one graph, found {len(gs)}")
    return gs[0]


def cmd_join(args) -> int:
    g = join(_single(args.first), _single(args.second))
    sys.stdout.write(to_graph6(g) + "\n")
    return EXIT_OK


def cmd_linegraph(args) -> int:
    for g in _read_graphs(args.input):
        sys.stdout.write(to_graph6(line_graph(g)[0]) + "\n")
    return EXIT_OK


def cmd_ks_verify(args) -> int:
    s = parse_vectorset(_read_text(args.input))
    t0 = time.perf_counter()
    dec = ks_decide(s)
    rec = {
        **dec.to_json(),
        "vectors": len(s),
        "d": s.d,
        "seconds": round(time.perf_counter() - t0, 4),
        "manifest": _manifest("ks-verify", [args.input], {}),
    }
    if dec.is_ks:
        human = (f"Kochen-Specker: yes ({len(s)} vectors in R^{s.d}, {len(dec.bases)} bases, "
                 f"search exhausted after {dec.nodes} nodes)")
    else:
        marked = [i for i, x in enumerate(dec.witness) if x]
        human = (f"Kochen-Specker: no; marking {marked} hits each of the "
                 f"{len(dec.bases)} bases exactly once")
    _emit(rec, args.json, human)
    return EXIT_OK


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orthocolor", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, budget=True):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if budget:
            sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                            help="node budget for exact searches")

    def search_opts(sp, with_d=True):
        if with_d:
            sp.add_argument("-d", type=int, required=True, help="target dimension")
        sp.add_argument("--restarts", type=int, default=100)
        sp.add_argument("--max-iter", type=int, default=10_000)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--tol", type=float, default=1e-9)
        sp.add_argument("--round-denominator", type=int, default=10**6,
                        help="max denominator for rational rounding (0 disables)")

    sp = sub.add_parser("dataset", help="reproduce the 18-vector / 9-basis gap example")
    common(sp)
    sp.add_argument("--override", help="vector-set file (with bases) to use instead")
    sp.add_argument("--export-vectors", help="write the vector set to this file")
    sp.add_argument("--export-graph6", help="write the bases graph to this file")
    sp.set_defaults(func=cmd_dataset)

    sp = sub.add_parser("chroma", help="exact chromatic number or index")
    sp.add_argument("input", nargs="?", default="-")
    sp.add_argument("--edge", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_chroma)

    sp = sub.add_parser("search", help="numerical orthogonal coloring search")
    sp.add_argument("input", nargs="?", default="-")
    sp.add_argument("--edge", action="store_true")
    search_opts(sp)
    sp.add_argument("--csv", help="write per-restart loss/residual CSV here")
    common(sp, budget=False)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("snark-scan", help="Class-2 cubic pipeline over a graph6 stream")
    sp.add_argument("input", nargs="?", default="-")
    search_opts(sp, with_d=False)
    sp.add_argument("--jobs", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_snark_scan, restarts=50)

    sp = sub.add_parser("join", help="join of two graphs (graph6 files)")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.set_defaults(func=cmd_join)

    sp = sub.add_parser("linegraph", help="line graph of each input graph")
    sp.add_argument("input", nargs="?", default="-")
    sp.set_defaults(func=cmd_linegraph)

    sp = sub.add_parser("ks-verify", help="Kochen-Specker decision on a vector-set file")
    sp.add_argument("input")
    common(sp, budget=False)
    sp.set_defaults(func=cmd_ks_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (Graph6Error, ValueError, OSError) as exc:
        sys.stderr.write(f"orthocolor {args.command}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
