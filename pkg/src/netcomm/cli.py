"""Command-line driver: analyze, modify, bound, generate, bench, compare.

Every run writes a JSON manifest describing the input, the configuration,
and any selected modification plan (with per-step timings), plus a
trajectory CSV with one metric snapshot per modification step.  A manifest
can be replayed (``--replay``) to reproduce the trajectory CSV byte for
byte: the recorded plan is re-applied and the deterministic metric columns
are recomputed, while the timing column is copied from the manifest.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, asdict
from pathlib import Path

from . import __version__
from .graph import Graph, GraphError, ModificationRecord, edge
from .io import load_graph, write_matrix_market
from .datasets import NAMED_DATASETS, DatasetMissingError, load_named
from .generators import GenSpec, generate, parse_genspec
from .bounds import degree_moments, graph_tc_bounds
from .spectral import SpectralError
from .centrality import total_communicability
from .heuristics import (ModificationPlan, StrategyConfig, chan_select,
                         escalate_candidates, rewire, select_downdates,
                         select_updates)
from .robustness import MetricSnapshot, thermo_profile, track_trajectory

TRAJECTORY_HEADER = ("step,kind,i,j,tc_normalized,natural_connectivity,"
                     "lambda1,lambda2,gap,selection_ms")

MODES = ("analyze", "downdate", "update", "rewire", "bounds", "generate",
         "bench", "compare")

_BENCH_SIZES = (1000, 2000, 3000, 4000, 5000, 6000, 7000)
_BENCH_METHODS = ("nodeTC", "nodeTC.no", "eigenvector", "eigenvector.no")
_COMPARE_METHODS = ("eigenvector", "eigenvector.no", "nodeTC", "nodeTC.no", "random")


@dataclass
class ExperimentConfig:
    """One CLI invocation, in dataclass form (what the manifest echoes)."""

    mode: str = "analyze"
    input: str | None = None
    generate: str | None = None
    method: str = "eigenvector"
    budget: int = 10
    pct: float = 0.1
    seed: int = 0
    greedy: bool = True
    chan_t: int = 50
    beta: float = 1.0
    out_prefix: str = "netcomm_run"
    oracle_cap: int = 2000
    strict_io: bool = False
    self_loops: bool = False
    data_dir: str | None = None
    candidate_mode: str = "induced"
    quad_steps: int = 5
    tol: float = 1e-8
    op: str | None = None
    sizes: tuple[int, ...] = ()
    methods: tuple[str, ...] = ()
    replay: str | None = None
    write_graph: bool = False


def parse_method(name: str, greedy_flag: bool = True) -> tuple[str, bool]:
    """Split the ``.no`` one-shot suffix off a method name."""
    if name.endswith(".no"):
        return name[:-3], False
    return name, greedy_flag


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _snapshot_row(s: MetricSnapshot) -> str:
    i = "" if s.edge is None else str(s.edge.i)
    j = "" if s.edge is None else str(s.edge.j)
    return (f"{s.step},{s.kind},{i},{j},{_fmt(s.tc_normalized)},"
            f"{_fmt(s.natural_connectivity)},{_fmt(s.lambda1)},{_fmt(s.lambda2)},"
            f"{_fmt(s.gap)},{s.selection_ms:.3f}")


def write_trajectory_csv(path: Path, snaps: list[MetricSnapshot]) -> None:
    with open(path, "w") as fh:
        fh.write(TRAJECTORY_HEADER + "\n")
        for s in snaps:
            fh.write(_snapshot_row(s) + "\n")


def _plan_dict(plan: ModificationPlan) -> dict:
    return {
        "mode": plan.mode,
        "method": plan.method,
        "greedy": plan.greedy,
        "requested": plan.requested,
        "selected": plan.selected,
        "selection_seconds": plan.selection_seconds,
        "warnings": list(plan.warnings),
        "records": [
            {"step": r.step, "kind": r.kind, "i": r.edge.i, "j": r.edge.j,
             "selection_ms": r.selection_ms}
            for r in plan.records
        ],
    }


def _records_from_dict(d: dict) -> list[ModificationRecord]:
    return [ModificationRecord(r["step"], r["kind"], edge(r["i"], r["j"]),
                               float(r["selection_ms"]))
            for r in d["records"]]


def _resolve_input(cfg: ExperimentConfig) -> tuple[Graph, dict]:
    """Load the graph named by the config; returns it plus a manifest stub."""
    if cfg.input:
        p = Path(cfg.input)
        if p.exists():
            g = load_graph(p, allow_self_loops=cfg.self_loops, strict=cfg.strict_io)
            src = {"kind": "path", "value": str(p)}
        elif cfg.input.lower() in NAMED_DATASETS:
            g = load_named(cfg.input, data_dir=cfg.data_dir)
            src = {"kind": "dataset", "value": cfg.input.lower()}
        else:
            raise GraphError(f"--input {cfg.input!r} is neither a file nor a known "
                             f"dataset ({', '.join(NAMED_DATASETS)})")
    elif cfg.generate:
        spec = parse_genspec(cfg.generate, seed=cfg.seed)
        g = generate(spec)
        src = {"kind": "generate", "value": str(spec), "seed": spec.seed}
    else:
        raise GraphError("no input: pass --input FILE|NAME or --generate SPEC")
    src["n"] = g.n
    src["m"] = g.m
    return g, src


def _manifest(cfg: ExperimentConfig, source: dict, plans: list[dict],
              extras: dict | None = None) -> dict:
    man = {
        "tool": "netcomm",
        "version": __version__,
        "config": {k: (list(v) if isinstance(v, tuple) else v)
                   for k, v in asdict(cfg).items()},
        "input": source,
        "plans": plans,
    }
    if extras:
        man.update(extras)
    return man


def _write_manifest(cfg: ExperimentConfig, man: dict) -> Path:
    path = Path(f"{cfg.out_prefix}.manifest.json")
    with open(path, "w") as fh:
        json.dump(man, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _strategy(cfg: ExperimentConfig, method: str, greedy: bool) -> StrategyConfig:
    return StrategyConfig(
        method=method, greedy=greedy, connectivity_check=True, rng_seed=cfg.seed,
        chan_t=cfg.chan_t, candidate_pct=cfg.pct, candidate_mode=cfg.candidate_mode,
        oracle_cap=cfg.oracle_cap, quad_steps=cfg.quad_steps, tol=cfg.tol)


def _select_plan(g: Graph, cfg: ExperimentConfig, mode: str, method_name: str) -> ModificationPlan:
    method, greedy = parse_method(method_name, cfg.greedy)
    if method == "chan":
        if mode != "update":
            raise GraphError("the chan method only performs updates")
        return chan_select(g, cfg.budget, cfg.chan_t, tol=cfg.tol)
    scfg = _strategy(cfg, method, greedy)
    if mode == "downdate":
        return select_downdates(g, scfg, cfg.budget)
    cand = escalate_candidates(g, cfg.pct, mode=cfg.candidate_mode)
    if mode == "update":
        return select_updates(g, scfg, cfg.budget, cand)
    if mode == "rewire":
        return rewire(g, scfg, cfg.budget, cand)
    raise GraphError(f"unknown modification mode {mode!r}")


def _print_summary(g: Graph, snaps: list[MetricSnapshot]) -> None:
    first, last = snaps[0], snaps[-1]
    print(f"n={g.n} m={g.m}")
    print(f"lambda1={first.lambda1:.6g} lambda2={first.lambda2:.6g} "
          f"gap={first.gap:.6g}")
    print(f"tc_normalized: {first.tc_normalized:.6g} -> {last.tc_normalized:.6g}")
    print(f"natural_connectivity: {first.natural_connectivity:.6g} -> "
          f"{last.natural_connectivity:.6g}")


def _run_analyze(g: Graph, cfg: ExperimentConfig, source: dict) -> int:
    snaps = track_trajectory(g, [], tol=cfg.tol, oracle_cap=cfg.oracle_cap,
                             quad_steps=cfg.quad_steps)
    write_trajectory_csv(Path(f"{cfg.out_prefix}.trajectory.csv"), snaps)
    extras: dict = {"metrics": {
        "tc_normalized": snaps[0].tc_normalized,
        "natural_connectivity": snaps[0].natural_connectivity,
        "lambda1": snaps[0].lambda1,
        "lambda2": snaps[0].lambda2,
        "gap": snaps[0].gap,
    }}
    _print_summary(g, snaps)
    if g.n <= cfg.oracle_cap and g.n > 0:
        prof = thermo_profile(g, cfg.beta, cap=cfg.oracle_cap)
        extras["thermodynamics"] = {
            "beta": prof.beta,
            "entropy": prof.entropy,
            "internal_energy": prof.internal_energy,
            "free_energy": prof.free_energy,
        }
        print(f"beta={prof.beta:g} entropy={prof.entropy:.6g} "
              f"internal_energy={prof.internal_energy:.6g} "
              f"free_energy={prof.free_energy:.6g}")
    _write_manifest(cfg, _manifest(cfg, source, [], extras))
    return 0


def _run_bounds(g: Graph, cfg: ExperimentConfig, source: dict) -> int:
    m = degree_moments(g)
    pair = graph_tc_bounds(g)
    tcn = ""
    if g.n <= cfg.oracle_cap:
        _, tc_norm = total_communicability(g, tol=cfg.tol)
        tcn = _fmt(tc_norm)
    path = Path(f"{cfg.out_prefix}.bounds.csv")
    with open(path, "w") as fh:
        fh.write("n,m,omega1,gamma1,alpha,beta,lower,upper,tc_normalized\n")
        fh.write(f"{g.n},{g.m},{_fmt(m.omega1)},{_fmt(m.gamma1)},"
                 f"{_fmt(pair.interval.alpha)},{_fmt(pair.interval.beta)},"
                 f"{_fmt(pair.lower)},{_fmt(pair.upper)},{tcn}\n")
    print(f"omega1={m.omega1:.6g} gamma1={m.gamma1:.6g}")
    print(f"interval=[{pair.interval.alpha:.6g}, {pair.interval.beta:.6g}]")
    print(f"bounds: {pair.lower:.10g} <= TC/n <= {pair.upper:.10g}"
          + (f"  (exact {tcn})" if tcn else ""))
    extras = {"bounds": {"omega1": m.omega1, "gamma1": m.gamma1,
                         "alpha": pair.interval.alpha, "beta": pair.interval.beta,
                         "lower": pair.lower, "upper": pair.upper,
                         "tc_normalized": float(tcn) if tcn else None}}
    _write_manifest(cfg, _manifest(cfg, source, [], extras))
    return 0


def _run_generate(g: Graph, cfg: ExperimentConfig, source: dict) -> int:
    path = Path(f"{cfg.out_prefix}.graph.mtx")
    write_matrix_market(g, path, comments=[
        f"generated by netcomm {__version__}",
        f"spec={source['value']} seed={source.get('seed', cfg.seed)}",
    ])
    print(f"wrote {path}  (n={g.n}, m={g.m})")
    _write_manifest(cfg, _manifest(cfg, source, []))
    return 0


def _run_modify(g: Graph, cfg: ExperimentConfig, source: dict) -> int:
    plan = _select_plan(g, cfg, cfg.mode, cfg.method)
    snaps = track_trajectory(g, plan.records, tol=cfg.tol,
                             oracle_cap=cfg.oracle_cap, quad_steps=cfg.quad_steps)
    write_trajectory_csv(Path(f"{cfg.out_prefix}.trajectory.csv"), snaps)
    man = _manifest(cfg, source, [_plan_dict(plan)])
    _write_manifest(cfg, man)
    if cfg.write_graph:
        final = plan.apply(g)
        write_matrix_market(final, Path(f"{cfg.out_prefix}.graph.mtx"),
                            comments=[f"{cfg.mode} x{plan.selected} via {cfg.method}"])
    _print_summary(g, snaps)
    for w in plan.warnings:
        print(f"warning: {w}", file=sys.stderr)
    done = plan.selected // 2 if plan.mode == "rewire" else plan.selected
    print(f"selected {done}/{plan.requested} in {plan.selection_seconds:.3f}s")
    return 0


def _run_compare(g: Graph, cfg: ExperimentConfig, source: dict) -> int:
    op = cfg.op or "update"
    methods = cfg.methods or _COMPARE_METHODS
    plans: list[tuple[str, ModificationPlan, list[MetricSnapshot]]] = []
    for name in methods:
        plan = _select_plan(g, cfg, op, name)
        snaps = track_trajectory(g, plan.records, tol=cfg.tol,
                                 oracle_cap=cfg.oracle_cap, quad_steps=cfg.quad_steps)
        plans.append((name, plan, snaps))
        print(f"{name}: tc_normalized {snaps[0].tc_normalized:.6g} -> "
              f"{snaps[-1].tc_normalized:.6g} "
              f"({plan.selection_seconds:.3f}s)")
    path = Path(f"{cfg.out_prefix}.compare.csv")
    depth = max(len(s) for _, _, s in plans)
    with open(path, "w") as fh:
        cols = ["step"]
        for name, _, _ in plans:
            cols.append(f"{name}:tc_normalized")
            cols.append(f"{name}:natural_connectivity")
        fh.write(",".join(cols) + "\n")
        for k in range(depth):
            row = [str(k)]
            for _, _, snaps in plans:
                if k < len(snaps):
                    row.append(_fmt(snaps[k].tc_normalized))
                    row.append(_fmt(snaps[k].natural_connectivity))
                else:
                    row.extend(["", ""])
            fh.write(",".join(row) + "\n")
    _write_manifest(cfg, _manifest(
        cfg, source, [_plan_dict(p) for _, p, _ in plans], {"op": op}))
    return 0


def _run_bench(cfg: ExperimentConfig) -> int:
    template = parse_genspec(cfg.generate or "pref(1000,2)", seed=cfg.seed)
    sizes = cfg.sizes or _BENCH_SIZES
    methods = cfg.methods or _BENCH_METHODS
    op = cfg.op or "downdate"
    rows = []
    for n in sizes:
        if template.model == "pref":
            spec = GenSpec("pref", n=int(n), d=template.d, seed=cfg.seed)
        else:
            spec = GenSpec("smallw", n=int(n), k=template.k, p=template.p, seed=cfg.seed)
        g = generate(spec)
        cand = None
        if op in ("update", "rewire"):
            cand = escalate_candidates(g, cfg.pct, mode=cfg.candidate_mode)
        for name in methods:
            plan = _select_plan_bench(g, cfg, op, name, cand)
            rows.append({"model": str(spec), "n": g.n, "m": g.m, "op": op,
                         "method": name, "budget": cfg.budget,
                         "selected": plan.selected,
                         "seconds": plan.selection_seconds})
            print(f"{spec} {op} {name}: {plan.selected}/{cfg.budget} "
                  f"in {plan.selection_seconds:.3f}s")
    path = Path(f"{cfg.out_prefix}.bench.csv")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)  # the model column contains commas; quote properly
        w.writerow(["model", "n", "m", "op", "method", "budget", "selected",
                    "seconds"])
        for r in rows:
            w.writerow([r["model"], r["n"], r["m"], r["op"], r["method"],
                        r["budget"], r["selected"], f"{r['seconds']:.6f}"])
    _write_manifest(cfg, _manifest(cfg, {"kind": "bench"}, [], {"bench": rows}))
    return 0


def _select_plan_bench(g: Graph, cfg: ExperimentConfig, op: str, name: str,
                       cand) -> ModificationPlan:
    method, greedy = parse_method(name, cfg.greedy)
    if method == "chan":
        return chan_select(g, cfg.budget, cfg.chan_t, tol=cfg.tol)
    scfg = _strategy(cfg, method, greedy)
    if op == "downdate":
        return select_downdates(g, scfg, cfg.budget)
    if op == "update":
        return select_updates(g, scfg, cfg.budget, cand)
    return rewire(g, scfg, cfg.budget, cand)


def _run_replay(cfg: ExperimentConfig) -> int:
    with open(cfg.replay) as fh:
        man = json.load(fh)
    stored = man["config"]
    base = ExperimentConfig(**{k: (tuple(v) if isinstance(v, list) else v)
                               for k, v in stored.items()})
    base.out_prefix = cfg.out_prefix
    src = man["input"]
    if src["kind"] == "path":
        g = load_graph(Path(src["value"]), allow_self_loops=base.self_loops,
                       strict=base.strict_io)
    elif src["kind"] == "dataset":
        g = load_named(src["value"], data_dir=base.data_dir or cfg.data_dir)
    elif src["kind"] == "generate":
        g = generate(parse_genspec(src["value"], seed=src.get("seed", base.seed)))
    else:
        raise GraphError(f"cannot replay input of kind {src['kind']!r}")
    if g.n != src.get("n", g.n) or g.m != src.get("m", g.m):
        raise GraphError("replayed input does not match the manifest "
                         f"(expected n={src.get('n')}, m={src.get('m')}; "
                         f"got n={g.n}, m={g.m})")
    plans = man.get("plans", [])
    if len(plans) > 1:
        raise GraphError("replay supports single-plan manifests")
    records = _records_from_dict(plans[0]) if plans else []
    snaps = track_trajectory(g, records, tol=base.tol, oracle_cap=base.oracle_cap,
                             quad_steps=base.quad_steps)
    write_trajectory_csv(Path(f"{cfg.out_prefix}.trajectory.csv"), snaps)
    print(f"replayed {len(records)} modifications -> "
          f"{cfg.out_prefix}.trajectory.csv")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="netcomm",
        description="Total communicability analysis and edge-modification "
                    "strategies for sparse undirected networks.")
    p.add_argument("--input", help="graph file (.mtx or edge list) or a named "
                                   f"dataset: {', '.join(NAMED_DATASETS)}")
    p.add_argument("--generate", metavar="SPEC",
                   help="generator spec, e.g. 'pref(1000,2)' or 'smallw(500,2,0.1)'")
    p.add_argument("--mode", choices=MODES, default="analyze")
    p.add_argument("--method", default="eigenvector",
                   help="selection method; append '.no' for the one-shot variant "
                        "(subgraph, eigenvector, nodeTC, degree, random, optimal, "
                        "node, chan)")
    p.add_argument("--budget", type=int, default=10, metavar="K",
                   help="number of modifications (rewire: steps)")
    p.add_argument("--pct", type=float, default=0.1,
                   help="top fraction of nodes anchoring the update candidate set")
    p.add_argument("--seed", type=int, default=0)
    grd = p.add_mutually_exclusive_group()
    grd.add_argument("--greedy", dest="greedy", action="store_true", default=True,
                     help="recompute scores after each modification (default)")
    grd.add_argument("--no-greedy", dest="greedy", action="store_false",
                     help="rank once on the input graph")
    p.add_argument("--chan-t", type=int, default=50, metavar="T",
                   help="eigenpairs kept by the chan method")
    p.add_argument("--beta", type=float, default=1.0,
                   help="inverse temperature for the thermodynamic summary")
    p.add_argument("--out-prefix", default="netcomm_run")
    p.add_argument("--oracle-cap", type=int, default=2000,
                   help="largest n handled by dense reference paths")
    p.add_argument("--strict-io", action="store_true",
                   help="reject duplicate/malformed input entries instead of "
                        "collapsing them")
    p.add_argument("--self-loops", action="store_true",
                   help="retain diagonal entries as self-loops when reading")
    p.add_argument("--data-dir", help="directory holding named dataset files")
    p.add_argument("--candidate-mode", choices=("induced", "incident"),
                   default="induced")
    p.add_argument("--quad-steps", type=int, default=5,
                   help="Lanczos steps per quadrature estimate")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--op", choices=("downdate", "update", "rewire"),
                   help="operation benched/compared (default: downdate for bench, "
                        "update for compare)")
    p.add_argument("--sizes", help="comma-separated node counts for bench")
    p.add_argument("--methods", help="comma-separated method list for "
                                     "bench/compare")
    p.add_argument("--replay", metavar="MANIFEST",
                   help="re-run a stored manifest and rewrite its trajectory CSV")
    p.add_argument("--write-graph", action="store_true",
                   help="also write the modified graph as Matrix Market")
    return p


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    sizes = tuple(int(s) for s in args.sizes.split(",")) if args.sizes else ()
    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip()) \
        if args.methods else ()
    return ExperimentConfig(
        mode=args.mode, input=args.input, generate=args.generate,
        method=args.method, budget=args.budget, pct=args.pct, seed=args.seed,
        greedy=args.greedy, chan_t=args.chan_t, beta=args.beta,
        out_prefix=args.out_prefix, oracle_cap=args.oracle_cap,
        strict_io=args.strict_io, self_loops=args.self_loops,
        data_dir=args.data_dir, candidate_mode=args.candidate_mode,
        quad_steps=args.quad_steps, tol=args.tol, op=args.op, sizes=sizes,
        methods=methods, replay=args.replay, write_graph=args.write_graph)


def run(cfg: ExperimentConfig) -> int:
    """Execute one configuration; returns a process exit code."""
    try:
        if cfg.replay:
            return _run_replay(cfg)
        if cfg.mode == "bench":
            return _run_bench(cfg)
        g, source = _resolve_input(cfg)
        if cfg.mode == "generate":
            return _run_generate(g, cfg, source)
        if cfg.mode == "analyze":
            return _run_analyze(g, cfg, source)
        if cfg.mode == "bounds":
            return _run_bounds(g, cfg, source)
        if cfg.mode in ("downdate", "update", "rewire"):
            return _run_modify(g, cfg, source)
        if cfg.mode == "compare":
            return _run_compare(g, cfg, source)
        raise GraphError(f"unhandled mode {cfg.mode!r}")
    except (GraphError, ValueError, SpectralError, DatasetMissingError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
