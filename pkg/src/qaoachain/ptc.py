"""Parity twine chain encoding.

The sweep is a diamond-shaped brickwork of CNOTs. At step ``t`` the active
window is qubits ``0..top(t)`` with ``top(t) = min(t+1, 2n-1-t, n-1)``; every
qubit of parity ``(t+1) % 2`` inside the window acts as control onto both
window neighbours. Labels stay of weight one or two throughout, every pair of
initial positions ``(i, j)`` appears once (at step ``i + j - 1`` on qubit
``j - i - 1``) and the sweep ends with the chain reversed. The whole sweep
costs ``n**2 - 1`` CNOTs and is its own inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import gf2
from .circuit import Circuit, ParityDecoder, cnot, h, rx, rz
from .graph import WeightedGraph


def check_order(order, n: int) -> tuple[int, ...]:
    order = tuple(int(k) for k in order)
    if len(order) != n or sorted(order) != list(range(n)):
        raise ValueError(f"order {order} is not a permutation of 0..{n - 1}")
    return order


def step_top(n: int, t: int) -> int:
    return min(t + 1, 2 * n - 1 - t, n - 1)


def step_gates(n: int, t: int) -> list[tuple[int, int]]:
    top = step_top(n, t)
    par = (t + 1) % 2
    return [(c, tg) for c in range(par, top + 1, 2) for tg in (c - 1, c + 1) if 0 <= tg <= top]


@dataclass(frozen=True)
class PtcSweep:
    """Canonical full sweep; pairs are keyed by initial chain position."""

    n: int
    steps: tuple[tuple[tuple[int, int], ...], ...]
    states: tuple[tuple[int, ...], ...]
    realization_time: dict
    realization_site: dict

    @property
    def num_steps(self) -> int:
        return len(self.steps)

    @property
    def last_realization(self) -> int:
        return max(self.realization_time.values(), default=-1)

    @property
    def cnots(self) -> list[tuple[int, int, int]]:
        """Flattened ``(step, control, target)`` list."""
        return [(t, c, tg) for t, gates in enumerate(self.steps) for c, tg in gates]

    @property
    def num_cnots(self) -> int:
        return sum(len(s) for s in self.steps)

    def prefix_cost(self, last_step: int) -> int:
        return sum(len(s) for s in self.steps[: last_step + 1])

    def state_after(self, step: int) -> tuple[int, ...]:
        return self.states[step + 1]


@lru_cache(maxsize=None)
def ptc_sweep(n: int) -> PtcSweep:
    if n < 2:
        raise ValueError("the sweep needs at least two qubits")
    rows = [1 << q for q in range(n)]
    steps, states = [], [tuple(rows)]
    when, where = {}, {}
    for t in range(2 * n - 1):
        gates = tuple(step_gates(n, t))
        for c, tg in gates:
            rows[tg] ^= rows[c]
        for q, r in enumerate(rows):
            if gf2.weight(r) == 2:
                pair = ((r & -r).bit_length() - 1, r.bit_length() - 1)
                if pair not in when:
                    when[pair] = t
                    where[pair] = q
        steps.append(gates)
        states.append(tuple(rows))
    return PtcSweep(n, tuple(steps), tuple(states), when, where)


@lru_cache(maxsize=None)
def _prefix_costs(n: int) -> np.ndarray:
    return np.cumsum([len(s) for s in ptc_sweep(n).steps])


def truncation_step(g: WeightedGraph, order) -> int:
    """Last sweep step that realizes a pair required by ``g`` under ``order``."""
    n = g.n
    if not g.edges:
        return -1
    pos = np.empty(n, dtype=np.int64)
    pos[np.asarray(order)] = np.arange(n)
    u, v, _ = g.edge_array()
    return int((pos[u] + pos[v]).max()) - 1


def ptc_cost(g: WeightedGraph, order) -> int:
    """CNOT count of one truncated layer measured in the parity basis."""
    n = g.n
    t = truncation_step(g, order)
    if t >= 2 * n - 4:
        return n * n - 1
    if t < 0:
        return 0
    return int(_prefix_costs(n)[t])


def _to_logical(rows, order) -> tuple[int, ...]:
    out = []
    for r in rows:
        m = 0
        for a, logical in enumerate(order):
            if r >> a & 1:
                m |= 1 << logical
        out.append(m)
    return tuple(out)


def exit_gates(rows) -> list[tuple[int, int]]:
    """Greedy CNOTs returning a twine state to single labels, one per pair label."""
    rows = list(rows)
    gates = []
    while True:
        pending = [q for q, r in enumerate(rows) if gf2.weight(r) == 2]
        if not pending:
            return gates
        for q in pending:
            for nb in (q - 1, q + 1):
                if 0 <= nb < len(rows) and gf2.weight(rows[nb]) == 1 and rows[nb] & rows[q]:
                    rows[q] ^= rows[nb]
                    gates.append((nb, q))
                    break
            else:
                continue
            break
        else:
            raise RuntimeError("twine state has no single-label neighbour to peel")


@dataclass
class LayerPlan:
    """CNOT steps of one cost layer, in position labels, starting from ``start``."""

    steps: list[list[tuple[int, int]]]
    start: tuple[int, ...]
    closed: bool

    def reversed(self) -> LayerPlan:
        end = list(self.start)
        for gates in self.steps:
            for c, tg in gates:
                end[tg] ^= end[c]
        return LayerPlan([list(reversed(s)) for s in reversed(self.steps)], tuple(end), True)


def forward_plan(n: int, last_step: int, close: bool) -> LayerPlan:
    sweep = ptc_sweep(n)
    full = [list(s) for s in sweep.steps]
    start = tuple(1 << q for q in range(n))
    if last_step >= 2 * n - 4:
        return LayerPlan(full, start, True)
    if last_step < 0:
        return LayerPlan([], start, True)
    steps = full[: last_step + 1]
    if not close:
        return LayerPlan(steps, start, False)
    peel = exit_gates(sweep.state_after(last_step))
    if sweep.prefix_cost(last_step) + len(peel) >= n * n - 1:
        return LayerPlan(full, start, True)
    return LayerPlan(steps + [[g] for g in peel], start, True)


def emit_layer(c: Circuit, plan: LayerPlan, weights: dict, gamma: float, order) -> tuple[int, ...]:
    """Append CNOTs and RZs for one layer; returns final position labels."""
    rows = list(plan.start)
    done = set()

    def rotate():
        for q, r in enumerate(rows):
            if gf2.weight(r) != 2 or r in done:
                continue
            a, b = (r & -r).bit_length() - 1, r.bit_length() - 1
            key = (min(order[a], order[b]), max(order[a], order[b]))
            if key in weights:
                done.add(r)
                c.append(rz(q, 2 * gamma * weights[key]))

    rotate()
    for gates in plan.steps:
        for ctl, tg in gates:
            c.append(cnot(ctl, tg))
            rows[tg] ^= rows[ctl]
        rotate()
    missing = set(weights) - {_pair_of(r, order) for r in done}
    if missing:
        raise RuntimeError(f"layer left pairs unrealized: {sorted(missing)[:5]}")
    return tuple(rows)


def _pair_of(r, order):
    a, b = (r & -r).bit_length() - 1, r.bit_length() - 1
    return (min(order[a], order[b]), max(order[a], order[b]))


def _weights(g: WeightedGraph) -> dict:
    return {(u, v): w for u, v, w in g.edges}


def encode_ptc(g: WeightedGraph, order=None, gamma: float = 1.0, truncate: bool = True,
               direction: str = "forward") -> tuple[Circuit, ParityDecoder]:
    """One cost layer; RZ(2*gamma*w) fires on the qubit holding each required parity."""
    n = g.n
    order = check_order(range(n) if order is None else order, n)
    if direction not in ("forward", "backward"):
        raise ValueError(f"direction must be forward or backward, got {direction!r}")
    if direction == "forward":
        plan = forward_plan(n, truncation_step(g, order) if truncate else 2 * n, close=False)
    else:
        plan = forward_plan(n, 2 * n, close=True).reversed()
        if truncate:
            plan = _truncate_plan(plan, g, order)
    layout = tuple(order[a] for a in _single_positions(plan.start))
    c = Circuit(n, layout=layout)
    final = emit_layer(c, plan, _weights(g), gamma, order)
    c.measurement = _to_logical(final, order)
    return c, ParityDecoder.from_rows(c.measurement)


def _single_positions(rows) -> list[int]:
    return [r.bit_length() - 1 for r in rows]


def _truncate_plan(plan: LayerPlan, g: WeightedGraph, order) -> LayerPlan:
    """Drop trailing steps of ``plan`` that realize no new required pair."""
    weights = _weights(g)
    rows = list(plan.start)
    seen = {_pair_of(r, order) for r in rows if gf2.weight(r) == 2} & set(weights)
    last = -1
    for k, gates in enumerate(plan.steps):
        for ctl, tg in gates:
            rows[tg] ^= rows[ctl]
        new = {_pair_of(r, order) for r in rows if gf2.weight(r) == 2} & set(weights)
        if new - seen:
            last = k
            seen |= new
    if last == len(plan.steps) - 1:
        return plan
    return LayerPlan(plan.steps[: last + 1], plan.start, False)


def build_ptc_qaoa(g: WeightedGraph, order, gammas, betas, truncate: bool = True) -> Circuit:
    """Full LR-QAOA circuit.

    Even-indexed layers sweep forward up to the last required step and then
    peel back to single labels, odd-indexed layers replay the previous layer
    backward. Every layer closes because the mixer acts on logical qubits.
    """
    n = g.n
    order = check_order(order, n)
    weights = _weights(g)
    c = Circuit(n, layout=order)
    for q in range(n):
        c.append(h(q))
    t_last = truncation_step(g, order) if truncate else 2 * n
    plan = forward_plan(n, t_last, close=True)
    rows = plan.start
    for k, (gamma, beta) in enumerate(zip(gammas, betas)):
        if k % 2:
            plan = plan.reversed()
        else:
            plan = forward_plan(n, t_last, close=True) if k else plan
        if plan.start != rows:
            raise RuntimeError("layer plan does not continue from the current labels")
        rows = emit_layer(c, plan, weights, gamma, order)
        for q in range(n):
            c.append(rx(q, -2 * beta))
    c.measurement = _to_logical(rows, order)
    return c
