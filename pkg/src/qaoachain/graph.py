"""Weighted MaxCut instances, cut costs and an exhaustive optimum oracle."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


class InvalidInstanceError(ValueError):
    pass


class SizeLimitError(ValueError):
    pass


BRUTE_FORCE_LIMIT = 24


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected weighted graph on vertices ``0..n-1``.

    Edges are stored as ``(u, v, w)`` with ``u < v``.
    """

    n: int
    edges: tuple[tuple[int, int, float], ...]
    seed: int | None = None
    _weights: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInstanceError(f"vertex count must be positive, got {self.n}")
        weights = {}
        for u, v, w in self.edges:
            if not (0 <= u < v < self.n):
                raise InvalidInstanceError(f"edge ({u}, {v}) violates 0 <= u < v < n={self.n}")
            if (u, v) in weights:
                raise InvalidInstanceError(f"duplicate edge ({u}, {v})")
            if not math.isfinite(w) or w == 0:
                raise InvalidInstanceError(f"edge ({u}, {v}) has invalid weight {w}")
            weights[(u, v)] = float(w)
        object.__setattr__(self, "_weights", weights)

    @classmethod
    def from_edges(cls, n, edges, seed=None) -> WeightedGraph:
        """Build from ``(u, v)`` or ``(u, v, w)`` items in any vertex order."""
        norm = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            w = float(e[2]) if len(e) > 2 else 1.0
            if u > v:
                u, v = v, u
            norm.append((u, v, w))
        norm.sort()
        return cls(n, tuple(norm), seed)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._weights

    def weight(self, u: int, v: int) -> float:
        return self._weights.get((min(u, v), max(u, v)), 0.0)

    def edge_array(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if not self.edges:
            return np.zeros(0, int), np.zeros(0, int), np.zeros(0)
        u, v, w = zip(*self.edges)
        return np.array(u), np.array(v), np.array(w, dtype=float)

    def scaled(self, factor: float) -> WeightedGraph:
        return WeightedGraph(self.n, tuple((u, v, w * factor) for u, v, w in self.edges), self.seed)

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [[u, v, w] for u, v, w in self.edges], "seed": self.seed}

    @classmethod
    def from_dict(cls, data: dict) -> WeightedGraph:
        return cls.from_edges(data["n"], data["edges"], data.get("seed"))

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=1) + "\n")

    @classmethod
    def load(cls, path) -> WeightedGraph:
        return cls.from_dict(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class CutSolution:
    bits: tuple[int, ...]
    cost: float

    @property
    def complement(self) -> tuple[int, ...]:
        return tuple(1 - b for b in self.bits)


def complete_graph(n: int, weights=None) -> WeightedGraph:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if weights is None:
        weights = [1.0] * len(pairs)
    return WeightedGraph(n, tuple((u, v, float(w)) for (u, v), w in zip(pairs, weights)))


def edge_density(g: WeightedGraph) -> float:
    if g.n < 2:
        raise InvalidInstanceError("edge density needs at least two vertices")
    return 2 * g.num_edges / (g.n * (g.n - 1))


def random_instance(n: int, target_density: float, seed: int) -> WeightedGraph:
    """Uniformly sampled edge set of size ``floor(density * n(n-1)/2)``, weights on (0, 1]."""
    if n < 2:
        raise InvalidInstanceError("need at least two vertices")
    if not 0 < target_density <= 1:
        raise InvalidInstanceError(f"density must lie in (0, 1], got {target_density}")
    total = n * (n - 1) // 2
    # small offset keeps e.g. 0.3 * 10 from flooring to 2
    m = math.floor(target_density * total + 1e-9)
    if m == 0:
        raise InvalidInstanceError(f"density {target_density} yields no edges for n={n}")
    rng = np.random.default_rng(seed)
    chosen = np.sort(rng.choice(total, size=m, replace=False))
    iu, iv = np.triu_indices(n, k=1)
    weights = 1.0 - rng.random(m)
    edges = tuple((int(iu[k]), int(iv[k]), float(w)) for k, w in zip(chosen, weights))
    return WeightedGraph(n, edges, seed)


def cut_cost(g: WeightedGraph, x) -> float:
    """``sum w_kl (2 x_k x_l - x_k - x_l)``; equals minus the cut weight."""
    if len(x) != g.n:
        raise ValueError(f"bit vector has length {len(x)}, graph has {g.n} vertices")
    return float(sum(w * (2 * x[u] * x[v] - x[u] - x[v]) for u, v, w in g.edges))


def index_bits(indices, n: int) -> np.ndarray:
    """Little-endian bit table: ``out[i, k] = (indices[i] >> k) & 1``."""
    indices = np.asarray(indices, dtype=np.int64)
    return ((indices[:, None] >> np.arange(n)) & 1).astype(np.int8)


def cost_table(g: WeightedGraph) -> np.ndarray:
    """Cut cost of every basis index (bit k of the index is vertex k)."""
    idx = np.arange(2 ** g.n, dtype=np.int64)
    out = np.zeros(idx.size)
    for u, v, w in g.edges:
        out -= w * (((idx >> u) ^ (idx >> v)) & 1)
    return out


def brute_force_optimum(g: WeightedGraph) -> CutSolution:
    if g.n > BRUTE_FORCE_LIMIT:
        raise SizeLimitError(f"exhaustive search limited to n <= {BRUTE_FORCE_LIMIT}, got {g.n}")
    n = g.n
    # x_0 = 0 covers one member of each complement pair, and it is the
    # lexicographically smaller one, so argmin order gives the tie-break.
    half = 1 << max(n - 1, 0)
    best_cost, best_idx = math.inf, 0
    chunk = 1 << 20
    for start in range(0, half, chunk):
        idx = np.arange(start, min(half, start + chunk), dtype=np.int64)
        cost = np.zeros(idx.size)
        for u, v, w in g.edges:
            # vertex k is bit (n-1-k) so integer order == lexicographic order
            cost -= w * (((idx >> (n - 1 - u)) ^ (idx >> (n - 1 - v))) & 1)
        k = int(np.argmin(cost))
        if cost[k] < best_cost - 1e-12:
            best_cost, best_idx = float(cost[k]), int(idx[k])
    bits = tuple((best_idx >> (n - 1 - k)) & 1 for k in range(n))
    return CutSolution(bits, cut_cost(g, bits))
