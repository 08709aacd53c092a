"""Linear-ramp QAOA schedules and full circuit assembly."""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import Circuit, h, rx, rzz
from .graph import WeightedGraph
from .ptc import build_ptc_qaoa, check_order
from .swap import build_swap_qaoa

TARGETS = ("ideal_fc", "ptc", "swap")


@dataclass(frozen=True)
class RampSchedule:
    p: int
    delta_beta: float
    delta_gamma: float
    betas: tuple[float, ...]
    gammas: tuple[float, ...]


def ramp(p: int, delta_beta: float, delta_gamma: float) -> RampSchedule:
    if p < 1:
        raise ValueError(f"need at least one layer, got p={p}")
    betas = tuple((1 - i / p) * delta_beta for i in range(p))
    gammas = tuple((i + 1) / p * delta_gamma for i in range(p))
    return RampSchedule(p, delta_beta, delta_gamma, betas, gammas)


def default_delta(n: int) -> float:
    return 0.63 if n <= 15 else 0.3


def build_ideal(g: WeightedGraph, sched: RampSchedule) -> Circuit:
    """All-to-all reference: RZZ(2*gamma*w) on every edge, no routing."""
    c = Circuit(g.n, chain_local=False)
    for q in range(g.n):
        c.append(h(q))
    for gamma, beta in zip(sched.gammas, sched.betas):
        for u, v, w in g.edges:
            c.append(rzz(u, v, 2 * gamma * w))
        for q in range(g.n):
            c.append(rx(q, -2 * beta))
    return c


def build_qaoa(g: WeightedGraph, target: str, sched: RampSchedule, order=None,
               truncate: bool = True) -> Circuit:
    """Measurement rows of the result map physical outcomes to logical bits."""
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; choose from {TARGETS}")
    if target == "ideal_fc":
        return build_ideal(g, sched)
    order = check_order(range(g.n) if order is None else order, g.n)
    build = build_ptc_qaoa if target == "ptc" else build_swap_qaoa
    return build(g, order, sched.gammas, sched.betas, truncate)
