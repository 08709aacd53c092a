"""Simulated annealing over initial qubit orders."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graph import WeightedGraph
from .ptc import check_order, ptc_cost, ptc_sweep
from .swap import swap_cost

ENCODERS = ("ptc", "swap")


@dataclass(frozen=True)
class AnnealConfig:
    t0: float = 0.01
    # small enough that max_iter is what stops the run
    ts: float = 1e-30
    cooling: float = 0.999
    max_iter: int = 50000
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.cooling < 1:
            raise ValueError(f"cooling rate must lie in (0, 1), got {self.cooling}")
        if not self.t0 > self.ts > 0:
            raise ValueError("need t0 > ts > 0")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")


@dataclass
class AnnealTrace:
    iteration: np.ndarray
    temperature: np.ndarray
    current_cost: np.ndarray
    best_cost: np.ndarray
    accepted: np.ndarray
    initial_cost: int
    best_order: tuple[int, ...]

    @property
    def final_best(self) -> int:
        return int(self.best_cost[-1]) if self.best_cost.size else self.initial_cost

    def __len__(self):
        return int(self.iteration.size)

    def write_csv(self, path) -> None:
        with Path(path).open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["iteration", "temperature", "current_cost", "best_cost", "accepted"])
            for row in zip(self.iteration.tolist(), self.temperature.tolist(), self.current_cost.tolist(),
                           self.best_cost.tolist(), self.accepted.tolist()):
                w.writerow([row[0], repr(row[1]), row[2], row[3], int(row[4])])


def encoding_cost(g: WeightedGraph, order, encoder: str) -> int:
    """CNOT count of one truncated cost layer under ``order``."""
    order = check_order(order, g.n)
    if encoder == "ptc":
        return ptc_cost(g, order)
    if encoder == "swap":
        return swap_cost(g, order)
    raise ValueError(f"unknown encoder {encoder!r}; choose from {ENCODERS}")


class _PtcDelta:
    """Histogram of ``pos[u] + pos[v]`` over edges, updated per transposition."""

    def __init__(self, g: WeightedGraph, order):
        n = g.n
        self.n = n
        self.order = list(order)
        self.pos = [0] * n
        for p, v in enumerate(self.order):
            self.pos[v] = p
        self.nbrs = [[] for _ in range(n)]
        for u, v, _ in g.edges:
            self.nbrs[u].append(v)
            self.nbrs[v].append(u)
        self.hist = [0] * (2 * n)
        for u, v, _ in g.edges:
            self.hist[self.pos[u] + self.pos[v]] += 1
        self.top = max((s for s, k in enumerate(self.hist) if k), default=0)
        full = n * n - 1
        prefix = np.cumsum([len(s) for s in ptc_sweep(n).steps]).tolist() if n >= 2 else []
        # cost indexed by the largest position sum present
        self.table = [0] + [full if s - 1 >= 2 * n - 4 else prefix[s - 1] for s in range(1, 2 * n)]
        self.empty = not g.edges

    def cost(self) -> int:
        return 0 if self.empty else self.table[self.top]

    def swap(self, i: int, j: int) -> None:
        a, b = self.order[i], self.order[j]
        pos, hist = self.pos, self.hist
        for x, other in ((a, b), (b, a)):
            for y in self.nbrs[x]:
                if y != other:
                    hist[pos[x] + pos[y]] -= 1
        pos[a], pos[b] = j, i
        self.order[i], self.order[j] = b, a
        top = self.top
        for x, other in ((a, b), (b, a)):
            for y in self.nbrs[x]:
                if y != other:
                    s = pos[x] + pos[y]
                    hist[s] += 1
                    if s > top:
                        top = s
        while top > 0 and hist[top] == 0:
            top -= 1
        self.top = top


def accept(delta: float, temperature: float, u: float) -> bool:
    return delta < 0 or u < math.exp(-delta / temperature)


def optimize_order(g: WeightedGraph, encoder: str, cfg: AnnealConfig = AnnealConfig()
                   ) -> tuple[tuple[int, ...], AnnealTrace]:
    n = g.n
    if n < 2:
        raise ValueError("need at least two vertices")
    if encoder not in ENCODERS:
        raise ValueError(f"unknown encoder {encoder!r}")
    cost_fn = ptc_cost if encoder == "ptc" else swap_cost
    rng = np.random.default_rng(cfg.seed)
    # enough iterations for the cooling schedule to reach ts, capped by max_iter
    steps = min(cfg.max_iter, math.ceil(math.log(cfg.ts / cfg.t0) / math.log(cfg.cooling)))
    steps = max(steps, 1)
    first = rng.integers(n, size=steps)
    second = (first + rng.integers(1, n, size=steps)) % n
    draws = rng.random(steps)

    order = np.arange(n)
    if encoder == "ptc":
        state = _PtcDelta(g, order)

        def propose(i, j):
            state.swap(i, j)
            return state.cost()

        def undo(i, j):
            state.swap(i, j)
    else:
        def propose(i, j):
            order[i], order[j] = order[j], order[i]
            return swap_cost(g, order)

        def undo(i, j):
            order[i], order[j] = order[j], order[i]
    cur = cost_fn(g, order)
    best, best_order = cur, order.copy()
    temps = np.empty(steps)
    curs = np.empty(steps, dtype=np.int64)
    bests = np.empty(steps, dtype=np.int64)
    acc = np.zeros(steps, dtype=bool)
    t = cfg.t0
    for k in range(steps):
        i, j = int(first[k]), int(second[k])
        new = propose(i, j)
        if accept(new - cur, t, draws[k]):
            cur = new
            acc[k] = True
            if cur < best:
                best = cur
                best_order = np.array(state.order) if encoder == "ptc" else order.copy()
        else:
            undo(i, j)
        temps[k], curs[k], bests[k] = t, cur, best
        t *= cfg.cooling
    trace = AnnealTrace(np.arange(1, steps + 1), temps, curs, bests, acc, int(cost_fn(g, np.arange(n))),
                        tuple(int(x) for x in best_order))
    return trace.best_order, trace
