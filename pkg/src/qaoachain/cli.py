"""Command-line entry point.

Bitstrings in text files list qubit (or vertex) 0 first. Relative output
paths are placed under ``$QAOACHAIN_OUT`` when that variable is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import bench
from .anneal import AnnealConfig, encoding_cost, optimize_order
from .circuit import depth, dumps, loads, two_qubit_count
from .graph import WeightedGraph, brute_force_optimum, random_instance
from .lrqaoa import build_qaoa, default_delta, ramp
from .ptc import encode_ptc
from .simulator import (NoiseSpec, approximation_ratio, decoder_for, run_distribution, sample,
                        success_probability)
from .swap import encode_swap

TABLE1_GRID = {
    20: [0.211, 0.298, 0.386, 0.649, 1.0],
    60: [0.068, 0.171, 0.275, 0.586, 1.0],
    120: [0.034, 0.141, 0.248, 0.57, 1.0],
}


def out_path(path: str | None) -> Path | None:
    if path is None or path == "-":
        return None
    p = Path(path)
    base = os.environ.get("QAOACHAIN_OUT")
    if base and not p.is_absolute():
        p = Path(base) / p
        p.parent.mkdir(parents=True, exist_ok=True)
    return p


def emit(text: str, path: str | None) -> None:
    p = out_path(path)
    if p is None:
        sys.stdout.write(text)
    else:
        p.write_text(text)


def load_instance(args) -> WeightedGraph:
    if getattr(args, "instance", None):
        return WeightedGraph.load(args.instance)
    if args.n is None:
        raise ValueError("give --instance or --n/--density/--seed")
    return random_instance(args.n, args.density, args.seed)


def anneal_config(args) -> AnnealConfig:
    return AnnealConfig(args.t0, args.ts, args.cooling, args.max_iter, args.sa_seed)


def pick_order(g, encoder, args):
    if encoder in ("ptc", "swap") and args.sa:
        order, _ = optimize_order(g, encoder, anneal_config(args))
        return order
    return tuple(range(g.n))


def cmd_generate(args):
    g = random_instance(args.n, args.density, args.seed)
    emit(json.dumps(g.to_dict(), indent=1) + "\n", args.out)


def cmd_transpile(args):
    g = load_instance(args)
    order = pick_order(g, args.encoder, args)
    if args.p == 1:
        if args.encoder == "ptc":
            c, _ = encode_ptc(g, order, args.gamma, truncate=args.truncate)
        else:
            c = encode_swap(g, order, args.gamma, truncate=args.truncate)
    else:
        delta = args.delta if args.delta is not None else default_delta(g.n)
        c = build_qaoa(g, args.encoder, ramp(args.p, delta, delta), order, args.truncate)
    if args.emit:
        emit(dumps(c), args.emit)
    metrics = {"encoder": args.encoder, "n_q": g.n, "p": args.p, "order": list(order),
               "n_g": two_qubit_count(c), "depth_2q": depth(c, "two_qubit_only"),
               "depth_all": depth(c, "all_gates")}
    emit(json.dumps(metrics) + "\n", args.metrics)


def cmd_anneal(args):
    g = load_instance(args)
    order, trace = optimize_order(g, args.encoder, anneal_config(args))
    if args.trace:
        trace.write_csv(out_path(args.trace))
    emit(json.dumps({"encoder": args.encoder, "initial_cost": trace.initial_cost,
                     "best_cost": trace.final_best,
                     "check_cost": encoding_cost(g, order, args.encoder),
                     "best_order": list(order)}) + "\n", args.out)


def cmd_simulate(args):
    g = load_instance(args)
    delta = args.delta if args.delta is not None else default_delta(g.n)
    target = "ideal_fc" if args.encoder == "fc" else args.encoder
    order = pick_order(g, args.encoder, args)
    c = build_qaoa(g, target, ramp(args.p, delta, delta), order, args.truncate)
    dist = run_distribution(c, NoiseSpec(args.eps))
    opt = brute_force_optimum(g)
    if args.dist:
        lines = ["bitstring,probability"]
        lines += [f"{''.join(str((k >> q) & 1) for q in range(g.n))},{p!r}" for k, p in enumerate(dist)]
        emit("\n".join(lines) + "\n", args.dist)
    metrics = {"p_gs": success_probability(dist, opt), "r": approximation_ratio(dist, g, opt),
               "n_g": two_qubit_count(c), "depth_2q": depth(c, "two_qubit_only"),
               "depth_all": depth(c, "all_gates")}
    if args.shots:
        shots = sample(dist, args.shots, args.seed)
        metrics["r_sampled"] = approximation_ratio(shots, g, opt)
        if args.samples:
            emit("".join("".join(map(str, s)) + "\n" for s in shots), args.samples)
    emit(json.dumps(metrics) + "\n", args.metrics)


def cmd_sweep(args):
    recs = bench.density_sweep(args.n, args.densities or TABLE1_GRID.get(args.n, [args.density]),
                               args.encoders, tuple(range(args.seeds)), anneal_config(args), args.jobs)
    bench.write_results(recs, out_path(args.out) or "results.csv")


def cmd_noise_sweep(args):
    if args.instance:
        g = WeightedGraph.load(args.instance)
    else:
        g = random_instance(args.n, 1.0, args.seed)
    grid = args.eps_grid or list(np.linspace(0, 0.005, 10))
    rows = bench.noise_sweep(g, args.p, grid, args.delta, jobs=args.jobs)
    bench.write_noise(rows, out_path(args.out) or "noise.csv")


def cmd_crossover(args):
    baseline = bench.import_baseline(args.baseline) if args.baseline else bench.table1()
    grid = {n: args.densities for n in args.n} if args.densities else TABLE1_GRID
    recs = bench.crossover_map(args.n, grid, baseline, tuple(range(args.seeds)), args.encoder, args.method,
                               anneal_config(args), not args.grid_only, args.jobs)
    bench.write_crossover(recs, out_path(args.out) or "crossover.csv")


def cmd_decode(args):
    c = loads(Path(args.circuit).read_text())
    dec = decoder_for(c)
    lines = []
    for raw in Path(args.shots).read_text().split():
        bits = [int(ch) for ch in raw.strip()]
        lines.append("".join(map(str, dec.decode(bits))))
    emit("\n".join(lines) + ("\n" if lines else ""), args.out)


def add_instance(p):
    p.add_argument("--instance", help="instance JSON (overrides --n/--density/--seed)")
    p.add_argument("--n", type=int, help="vertex count for a generated instance")
    p.add_argument("--density", type=float, default=1.0, help="edge density (default: %(default)s)")
    p.add_argument("--seed", type=int, default=0, help="instance / sampling seed (default: %(default)s)")


def add_sa(p, default_on=True):
    p.add_argument("--sa", action=argparse.BooleanOptionalAction, default=default_on,
                   help="optimize the qubit order first (default: %(default)s)")
    p.add_argument("--t0", type=float, default=0.01, help="initial temperature (default: %(default)s)")
    p.add_argument("--ts", type=float, default=1e-30, help="stop temperature (default: %(default)s)")
    p.add_argument("--cooling", type=float, default=0.999, help="cooling factor (default: %(default)s)")
    p.add_argument("--max-iter", type=int, default=50000, help="iteration cap (default: %(default)s)")
    p.add_argument("--sa-seed", type=int, default=0, help="annealer seed (default: %(default)s)")


def add_delta(p):
    p.add_argument("--delta", type=float, default=None,
                   help="ramp magnitude for beta and gamma (default: 0.63 for n <= 15, else 0.3)")


def parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qaoachain", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a random weighted instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--density", type=float, default=1.0, help="edge density (default: %(default)s)")
    p.add_argument("--seed", type=int, default=0, help="(default: %(default)s)")
    p.add_argument("--out", default="-", help="output path (default: stdout)")
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("transpile", help="build a chain circuit and report its resources")
    add_instance(p)
    p.add_argument("--encoder", choices=["ptc", "swap"], default="ptc", help="(default: %(default)s)")
    add_sa(p)
    p.add_argument("--truncate", action=argparse.BooleanOptionalAction, default=True,
                   help="drop trailing steps with no required pair (default: %(default)s)")
    p.add_argument("--p", type=int, default=1, help="layers; 1 emits a single cost layer (default: %(default)s)")
    p.add_argument("--gamma", type=float, default=1.0, help="cost angle for --p 1 (default: %(default)s)")
    add_delta(p)
    p.add_argument("--emit", help="write the circuit dump here")
    p.add_argument("--metrics", default="-", help="metrics JSON path (default: stdout)")
    p.set_defaults(fn=cmd_transpile)

    p = sub.add_parser("anneal", help="optimize the initial qubit order")
    add_instance(p)
    p.add_argument("--encoder", choices=["ptc", "swap"], default="ptc", help="(default: %(default)s)")
    add_sa(p)
    p.add_argument("--trace", help="trace CSV path")
    p.add_argument("--out", default="-", help="summary JSON path (default: stdout)")
    p.set_defaults(fn=cmd_anneal)

    p = sub.add_parser("simulate", help="simulate LR-QAOA and report p_gs and r")
    add_instance(p)
    p.add_argument("--encoder", choices=["fc", "ptc", "swap"], default="ptc", help="(default: %(default)s)")
    add_sa(p, default_on=False)
    p.add_argument("--truncate", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--p", type=int, default=1, help="QAOA layers (default: %(default)s)")
    add_delta(p)
    p.add_argument("--eps", type=float, default=0.0, help="two-qubit depolarizing rate (default: %(default)s)")
    p.add_argument("--shots", type=int, default=0, help="draw this many samples (default: %(default)s)")
    p.add_argument("--samples", help="write sampled bitstrings here")
    p.add_argument("--dist", help="distribution CSV path")
    p.add_argument("--metrics", default="-", help="metrics JSON path (default: stdout)")
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("sweep", help="density sweep of resource counts")
    p.add_argument("--n", type=int, default=20, help="(default: %(default)s)")
    p.add_argument("--density", type=float, default=1.0, help=argparse.SUPPRESS)
    p.add_argument("--densities", type=float, nargs="+", help="(default: the reference grid for --n)")
    p.add_argument("--encoders", nargs="+", choices=["ptc", "swap"], default=["ptc", "swap"])
    p.add_argument("--seeds", type=int, default=3, help="instances per cell (default: %(default)s)")
    add_sa(p)
    p.add_argument("--jobs", type=int, default=1, help="parallel cells (default: %(default)s)")
    p.add_argument("--out", default="results.csv", help="(default: %(default)s)")
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("noise-sweep", help="p_gs and r against depolarizing rate")
    p.add_argument("--instance")
    p.add_argument("--n", type=int, default=6, help="complete weighted instance size (default: %(default)s)")
    p.add_argument("--seed", type=int, default=7, help="(default: %(default)s)")
    p.add_argument("--p", type=int, default=20, help="(default: %(default)s)")
    add_delta(p)
    p.add_argument("--eps-grid", type=float, nargs="+", help="(default: 10 points on [0, 0.005])")
    p.add_argument("--jobs", type=int, default=1, help="(default: %(default)s)")
    p.add_argument("--out", default="noise.csv", help="(default: %(default)s)")
    p.set_defaults(fn=cmd_noise_sweep)

    p = sub.add_parser("crossover", help="density where the encoder beats a baseline")
    p.add_argument("--n", type=int, nargs="+", default=[20, 120], help="(default: %(default)s)")
    p.add_argument("--densities", type=float, nargs="+", help="(default: the reference grid per size)")
    p.add_argument("--baseline", help="baseline CSV (default: bundled reference counts)")
    p.add_argument("--method", default="Qiskit-T", help="baseline method name (default: %(default)s)")
    p.add_argument("--encoder", choices=["ptc", "swap"], default="ptc")
    p.add_argument("--seeds", type=int, default=3, help="(default: %(default)s)")
    p.add_argument("--grid-only", action="store_true", help="report grid points instead of interpolating")
    add_sa(p)
    p.add_argument("--jobs", type=int, default=1, help="(default: %(default)s)")
    p.add_argument("--out", default="crossover.csv", help="(default: %(default)s)")
    p.set_defaults(fn=cmd_crossover)

    p = sub.add_parser("decode", help="map raw shots through a circuit's measurement rows")
    p.add_argument("--circuit", required=True, help="circuit dump with MEASMAP trailer")
    p.add_argument("--shots", required=True, help="one raw bitstring per line")
    p.add_argument("--out", default="-", help="(default: stdout)")
    p.set_defaults(fn=cmd_decode)
    return ap


def main(argv=None) -> int:
    args = parser().parse_args(argv)
    try:
        args.fn(args)
    except (OSError, ValueError, KeyError, RuntimeError) as exc:
        print(f"qaoachain {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
