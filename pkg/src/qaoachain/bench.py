"""Resource sweeps, noise sweeps and crossover maps against baseline transpilers."""

from __future__ import annotations

import csv
import math
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from importlib import resources
from pathlib import Path

import numpy as np

from .anneal import AnnealConfig, optimize_order
from .circuit import depth, two_qubit_count
from .graph import WeightedGraph, brute_force_optimum, random_instance
from .lrqaoa import build_qaoa, default_delta, ramp
from .ptc import encode_ptc
from .simulator import NoiseSpec, approximation_ratio, run_distribution, success_probability
from .swap import encode_swap

RESULT_COLUMNS = ["method", "n_q", "e_d", "seed", "n_g", "depth_2q", "depth_all", "time_s"]
NOISE_COLUMNS = ["target", "eps", "p_gs", "r"]


class BaselineParseError(ValueError):
    pass


class CoverageError(KeyError):
    pass


@dataclass(frozen=True)
class ResourceRecord:
    method: str
    n_q: int
    e_d: float
    n_g: int
    depth_2q: int | None = None
    depth_all: int | None = None
    time_s: float | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.n_g < 0:
            raise ValueError("gate count cannot be negative")
        if not 0 <= self.e_d <= 1:
            raise ValueError(f"edge density {self.e_d} outside [0, 1]")


@dataclass(frozen=True)
class CrossoverRecord:
    n_q: int
    threshold: float
    std: float
    per_seed: tuple[float, ...]


@dataclass(frozen=True)
class NoiseRow:
    target: str
    eps: float
    p_gs: float
    r: float
    n_g: int


def layer_record(method: str, g: WeightedGraph, order, density: float, seed, elapsed: float) -> ResourceRecord:
    """Counts come from the circuit actually built for one truncated cost layer."""
    if method.startswith("ptc"):
        c, _ = encode_ptc(g, order, 1.0, truncate=True)
    elif method.startswith("swap"):
        c = encode_swap(g, order, 1.0, truncate=True)
    else:
        raise ValueError(f"unknown method {method!r}")
    return ResourceRecord(method, g.n, density, two_qubit_count(c), depth(c, "two_qubit_only"),
                          depth(c, "all_gates"), elapsed, seed)


def _round_robin(u: int, v: int, m: int) -> int:
    # circle-method round of edge (u, v) in a complete graph on m (even) vertices
    return (2 * u) % (m - 1) if v == m - 1 else (u + v) % (m - 1)


def fc_record(g: WeightedGraph, density: float, seed) -> ResourceRecord:
    """Native ZZ gates on an all-to-all device.

    The gates commute, so depth is a first-fit edge colouring taken in
    round-robin order (``n - 1`` layers for even complete graphs).
    """
    m = g.n + g.n % 2
    busy = [set() for _ in range(g.n)]
    layers = 0
    for u, v, _ in sorted(g.edges, key=lambda e: _round_robin(e[0], e[1], m)):
        k = 1
        while k in busy[u] or k in busy[v]:
            k += 1
        busy[u].add(k)
        busy[v].add(k)
        layers = max(layers, k)
    return ResourceRecord("fc", g.n, density, len(g.edges), layers, None, None, seed)


def _cell(args):
    n_q, density, encoder, seed, sa = args
    g = random_instance(n_q, density, seed)
    start = time.perf_counter()
    plain = layer_record(encoder, g, tuple(range(n_q)), density, seed, 0.0)
    plain = replace(plain, time_s=time.perf_counter() - start)
    start = time.perf_counter()
    order, _ = optimize_order(g, encoder, sa)
    tuned = layer_record(f"{encoder}+sa", g, order, density, seed, 0.0)
    return [plain, replace(tuned, time_s=time.perf_counter() - start)]


def _map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def density_sweep(n_q: int, densities, encoders=("ptc", "swap"), seeds=(0, 1, 2),
                  sa: AnnealConfig = AnnealConfig(), jobs: int = 1, include_fc: bool = True) -> list[ResourceRecord]:
    """One record per (density, encoder, seed), each with and without annealing.

    The annealer is seeded per instance so cells are reproducible in any execution order.
    """
    cells = [(n_q, d, enc, s, AnnealConfig(sa.t0, sa.ts, sa.cooling, sa.max_iter, sa.seed + s))
             for d in densities for enc in encoders for s in seeds]
    records = [r for rs in _map(_cell, cells, jobs) for r in rs]
    if include_fc:
        records += [fc_record(random_instance(n_q, d, s), d, s) for d in densities for s in seeds]
    return records


def _noise_point(args):
    circuit, eps, g, opt = args
    dist = run_distribution(circuit, NoiseSpec(eps))
    return success_probability(dist, opt), approximation_ratio(dist, g, opt)


def noise_sweep(g: WeightedGraph, p: int, eps_grid, delta: float | None = None, order=None,
                targets=("fc", "ptc", "swap"), jobs: int = 1) -> list[NoiseRow]:
    delta = default_delta(g.n) if delta is None else delta
    sched = ramp(p, delta, delta)
    opt = brute_force_optimum(g)
    names = {"fc": "ideal_fc", "ptc": "ptc", "swap": "swap"}
    rows = []
    for target in targets:
        c = build_qaoa(g, names[target], sched, order)
        results = _map(_noise_point, [(c, e, g, opt) for e in eps_grid], jobs)
        rows += [NoiseRow(target, float(e), pg, r, two_qubit_count(c)) for e, (pg, r) in zip(eps_grid, results)]
    return rows


def _opt_int(text):
    return int(text) if text not in ("", None) else None


def _opt_float(text):
    return float(text) if text not in ("", None) else None


def import_baseline(path) -> list[ResourceRecord]:
    """Read a results-schema CSV; duplicate (method, n_q, e_d, seed) keys keep the last row."""
    text = Path(path).read_text()
    if not text.strip():
        return []
    reader = csv.DictReader(text.splitlines())
    missing = set(RESULT_COLUMNS) - set(reader.fieldnames or [])
    if missing:
        raise BaselineParseError(f"{path}: line 1: missing columns {sorted(missing)}")
    out = {}
    for lineno, row in enumerate(reader, 2):
        try:
            rec = ResourceRecord(row["method"], int(row["n_q"]), float(row["e_d"]), int(row["n_g"]),
                                 _opt_int(row["depth_2q"]), _opt_int(row["depth_all"]),
                                 _opt_float(row["time_s"]), _opt_int(row["seed"]))
        except (TypeError, ValueError) as exc:
            raise BaselineParseError(f"{path}: line {lineno}: {exc}") from exc
        key = (rec.method, rec.n_q, rec.e_d, rec.seed)
        if key in out:
            warnings.warn(f"{path}: line {lineno}: duplicate row for {key}, keeping the later one")
        out[key] = rec
    return list(out.values())


def table1_path() -> Path:
    return Path(str(resources.files("qaoachain") / "data" / "table1.csv"))


def table1() -> list[ResourceRecord]:
    return import_baseline(table1_path())


def write_results(records, path) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(RESULT_COLUMNS)
        for r in records:
            d = asdict(r)
            w.writerow(["" if d[k] is None else d[k] for k in RESULT_COLUMNS])


def write_noise(rows, path) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(NOISE_COLUMNS)
        for r in rows:
            w.writerow([r.target, repr(r.eps), repr(r.p_gs), repr(r.r)])


def write_crossover(records, path) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n_q", "threshold", "std", "per_seed"])
        for r in records:
            w.writerow([r.n_q, repr(r.threshold), repr(r.std), " ".join(map(repr, r.per_seed))])


def crossing(grid, diff, interpolate: bool = True) -> float:
    """Density where ``diff`` (ours minus baseline) first turns negative."""
    for k, d in enumerate(diff):
        if d < 0:
            if k == 0 or not interpolate:
                return float(grid[k])
            x0, x1, y0, y1 = grid[k - 1], grid[k], diff[k - 1], diff[k]
            return float(x0 + (x1 - x0) * y0 / (y0 - y1))
    return math.nan


def _baseline_lookup(baseline, method):
    table = {}
    for r in baseline:
        if r.method == method:
            table[(r.n_q, round(r.e_d, 9))] = r.n_g
    return table


def crossover_map(n_q_list, density_grid, baseline, seeds=(0, 1, 2), encoder: str = "ptc",
                  method: str = "Qiskit-T", sa: AnnealConfig = AnnealConfig(), interpolate: bool = True,
                  jobs: int = 1) -> list[CrossoverRecord]:
    """``density_grid`` is a list shared by all sizes or a dict keyed by ``n_q``.

    A seed whose counts never drop below the baseline yields NaN.
    """
    table = _baseline_lookup(baseline, method)
    out = []
    for n in n_q_list:
        grid = list(density_grid[n] if isinstance(density_grid, dict) else density_grid)
        base = []
        for d in grid:
            key = (n, round(d, 9))
            if key not in table:
                raise CoverageError(f"baseline {method!r} has no cell for n_q={n}, e_d={d}")
            base.append(table[key])
        cells = [(n, d, encoder, s, AnnealConfig(sa.t0, sa.ts, sa.cooling, sa.max_iter, sa.seed + s))
                 for s in seeds for d in grid]
        recs = _map(_cell, cells, jobs)
        per_seed = []
        for k, _ in enumerate(seeds):
            ours = [recs[k * len(grid) + i][1].n_g for i in range(len(grid))]
            per_seed.append(crossing(grid, [a - b for a, b in zip(ours, base)], interpolate))
        vals = np.array(per_seed)
        out.append(CrossoverRecord(n, float(np.mean(vals)), float(np.std(vals)), tuple(per_seed)))
    return out
