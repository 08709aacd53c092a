"""Brickwork SWAP network with fused ZZ-SWAP gates.

Step 0 and step ``n-1`` only apply ZZ terms (no swap is needed there); the
``n-2`` steps in between are full swap layers alternating between even and
odd bonds. Bond ``b`` couples chain qubits ``b`` and ``b+1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .circuit import Circuit, Gate, h, rx, rzz, swap, zzswap
from .graph import WeightedGraph
from .ptc import check_order


@dataclass(frozen=True)
class EncodingSchedule:
    """Steps of bond indices; ``swaps[k]`` tells whether step ``k`` exchanges qubits."""

    n: int
    steps: tuple[tuple[int, ...], ...]
    swaps: tuple[bool, ...]
    realization_time: dict
    realization_bond: dict

    @property
    def swap_layers(self) -> int:
        return sum(self.swaps)


def _bonds(n: int, parity: int) -> tuple[int, ...]:
    return tuple(range(parity, n - 1, 2))


@lru_cache(maxsize=None)
def swap_schedule(n: int) -> EncodingSchedule:
    if n < 2:
        raise ValueError("the network needs at least two qubits")
    steps, swaps = [_bonds(n, 1)], [False]
    for k in range(1, n - 1):
        steps.append(_bonds(n, (k - 1) % 2))
        swaps.append(True)
    steps.append(_bonds(n, (n - 2) % 2))
    swaps.append(False)
    # n = 2 has no odd bond, so the opening step is empty
    keep = [k for k, bonds in enumerate(steps) if bonds]
    steps, swaps = [steps[k] for k in keep], [swaps[k] for k in keep]
    at = list(range(n))
    when, where = {}, {}
    for t, (bonds, sw) in enumerate(zip(steps, swaps)):
        for b in bonds:
            pair = (min(at[b], at[b + 1]), max(at[b], at[b + 1]))
            if pair in when:
                raise AssertionError(f"pair {pair} met twice")
            when[pair] = t
            where[pair] = b
            if sw:
                at[b], at[b + 1] = at[b + 1], at[b]
    return EncodingSchedule(n, tuple(steps), tuple(swaps), when, where)


def swap_resources_fc(n: int) -> tuple[int, int]:
    """Closed-form CNOT count and two-qubit depth of one complete-graph layer."""
    if n < 2:
        raise ValueError("need at least two qubits")
    return (3 * n * n - 5 * n + 2) // 2, 3 * n - 2


def _raw_layer(g: WeightedGraph, order, gamma: float) -> list[list[Gate]]:
    sched = swap_schedule(g.n)
    at = list(order)
    out = []
    for bonds, sw in zip(sched.steps, sched.swaps):
        step = []
        for b in bonds:
            u, v = at[b], at[b + 1]
            w = g.weight(u, v)
            if w:
                step.append(zzswap(b, b + 1, 2 * gamma * w) if sw else rzz(b, b + 1, 2 * gamma * w))
            elif sw:
                step.append(swap(b, b + 1))
            if sw:
                at[b], at[b + 1] = v, u
        out.append(step)
    return out


def _absorb_tail(gates: list[Gate]) -> list[Gate]:
    """Drop swaps whose qubits see no later gate; fused ones shrink to RZZ."""
    live = set()
    kept = []
    for gt in reversed(gates):
        a, b = gt.qubits
        quiet = a not in live and b not in live
        if gt.kind == "SWAP" and quiet:
            continue
        if gt.kind == "ZZSWAP" and quiet:
            gt = rzz(a, b, gt.angle)
        kept.append(gt)
        live.update((a, b))
    return kept[::-1]


def _carry(gates, at) -> list[int]:
    at = list(at)
    for gt in gates:
        if gt.kind in ("SWAP", "ZZSWAP"):
            a, b = gt.qubits
            at[a], at[b] = at[b], at[a]
    return at


def layer_gates(g: WeightedGraph, order, gamma: float, truncate: bool) -> list[Gate]:
    steps = _raw_layer(g, order, gamma)
    if not truncate:
        return [gt for s in steps for gt in s]
    last = max((k for k, s in enumerate(steps) if any(gt.kind != "SWAP" for gt in s)), default=-1)
    return _absorb_tail([gt for s in steps[: last + 1] for gt in s])


def encode_swap(g: WeightedGraph, order=None, gamma: float = 1.0, truncate: bool = True) -> Circuit:
    n = g.n
    order = check_order(range(n) if order is None else order, n)
    c = Circuit(n, layout=order)
    c.extend(layer_gates(g, order, gamma, truncate))
    c.measurement = tuple(1 << u for u in _carry(c.gates, order))
    return c


def _with_angle(gt: Gate, gamma_ratio: float) -> Gate:
    if gt.angle is None:
        return gt
    return Gate(gt.kind, gt.qubits, gt.angle * gamma_ratio)


def build_swap_qaoa(g: WeightedGraph, order, gammas, betas, truncate: bool = True) -> Circuit:
    """Full LR-QAOA circuit; odd-indexed layers replay the previous layer's gates backward."""
    n = g.n
    order = check_order(order, n)
    c = Circuit(n, layout=order)
    for q in range(n):
        c.append(h(q))
    base = layer_gates(g, order, 1.0, truncate)
    at = list(order)
    for k, (gamma, beta) in enumerate(zip(gammas, betas)):
        gates = base if k % 2 == 0 else base[::-1]
        c.extend(_with_angle(gt, gamma) for gt in gates)
        at = _carry(gates, at)
        for q in range(n):
            c.append(rx(q, -2 * beta))
    c.measurement = tuple(1 << u for u in at)
    return c


@lru_cache(maxsize=None)
def _tables(n: int):
    sched = swap_schedule(n)
    tau = np.full((n, n), -1, dtype=np.int64)
    bond = np.full((n, n), -1, dtype=np.int64)
    for (i, j), t in sched.realization_time.items():
        tau[i, j] = tau[j, i] = t
        b = sched.realization_bond[(i, j)]
        bond[i, j] = bond[j, i] = b
    masks = [sum(1 << b for b in bonds) for bonds in sched.steps]
    return tau, bond, masks, sched.swaps


def swap_cost(g: WeightedGraph, order) -> int:
    """CNOT count of ``encode_swap(g, order, truncate=True)`` without building gates."""
    n = g.n
    if not g.edges:
        return 0
    tau, bond, masks, swaps = _tables(n)
    pos = np.empty(n, dtype=np.int64)
    pos[np.asarray(order)] = np.arange(n)
    u, v, _ = g.edge_array()
    pu, pv = pos[u], pos[v]
    ts, bs = tau[pu, pv], bond[pu, pv]
    last = int(ts.max())
    req = [0] * (last + 1)
    for t, b in zip(ts.tolist(), bs.tolist()):
        req[t] |= 1 << b
    live, cost = 0, 0
    for t in range(last, -1, -1):
        r = req[t]
        if swaps[t]:
            near = (live | (live >> 1)) & masks[t]
            cost += 3 * near.bit_count() + 2 * (r & ~near).bit_count()
            kept = r | near
        else:
            cost += 2 * r.bit_count()
            kept = r
        live |= kept | (kept << 1)
    return cost
