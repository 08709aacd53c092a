"""State-vector and depolarizing density-matrix simulation.

Basis index bit ``q`` is qubit ``q`` (little endian); in the ``(2,)*n``
tensor view that qubit sits on axis ``n - 1 - q``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate, ParityDecoder, decompose
from .graph import CutSolution, WeightedGraph, cost_table, index_bits

STATE_CAP = 24
DENSITY_CAP = 10


class SimulationSizeError(ValueError):
    pass


class UndefinedMetricError(ValueError):
    pass


_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def gate_matrix(g: Gate) -> np.ndarray:
    if g.kind == "H":
        return _H
    if g.kind == "RZ":
        return np.diag([np.exp(-0.5j * g.angle), np.exp(0.5j * g.angle)])
    if g.kind == "RX":
        c, s = np.cos(g.angle / 2), np.sin(g.angle / 2)
        return np.array([[c, -1j * s], [-1j * s, c]])
    raise ValueError(f"no single-qubit matrix for {g.kind}")


def _apply_1q(t: np.ndarray, u: np.ndarray, axis: int) -> np.ndarray:
    t = np.tensordot(u, t, axes=([1], [axis]))
    return np.moveaxis(t, 0, axis)


def _apply_cnot(t: np.ndarray, ca: int, ta: int) -> np.ndarray:
    t = t.copy()
    idx = [slice(None)] * t.ndim
    idx[ca] = 1
    sub = t[tuple(idx)]
    # the control axis is gone from ``sub``, shift the target axis if needed
    tt = ta - (ta > ca)
    t[tuple(idx)] = np.flip(sub, axis=tt).copy()
    return t


@dataclass
class StateVector:
    amplitudes: np.ndarray

    @property
    def width(self) -> int:
        return int(np.log2(self.amplitudes.size))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        return float(np.sqrt(self.probabilities().sum()))


@dataclass
class DensityMatrix:
    rho: np.ndarray

    @property
    def width(self) -> int:
        return int(np.log2(self.rho.shape[0]))

    def probabilities(self) -> np.ndarray:
        return np.real(np.diag(self.rho)).clip(min=0)

    def trace(self) -> float:
        return float(np.real(np.trace(self.rho)))

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        return bool(np.abs(self.rho - self.rho.conj().T).max() < tol)

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.rho).min())


@dataclass(frozen=True)
class NoiseSpec:
    eps_2q: float = 0.0

    def __post_init__(self):
        if not 0 <= self.eps_2q <= 1:
            raise ValueError(f"depolarizing rate must lie in [0, 1], got {self.eps_2q}")


def simulate_ideal(c: Circuit, initial=None, cap: int = STATE_CAP) -> StateVector:
    n = c.width
    if n > cap:
        raise SimulationSizeError(f"state vector limited to {cap} qubits, got {n}")
    if initial is None:
        psi = np.zeros(2 ** n, dtype=complex)
        psi[0] = 1
    else:
        psi = np.asarray(initial, dtype=complex).copy()
    t = psi.reshape((2,) * n) if n else psi
    for g in decompose(c).gates:
        if g.kind == "CNOT":
            t = _apply_cnot(t, n - 1 - g.qubits[0], n - 1 - g.qubits[1])
        else:
            t = _apply_1q(t, gate_matrix(g), n - 1 - g.qubits[0])
    return StateVector(t.reshape(-1))


def _depolarize(t: np.ndarray, axes: list[int], eps: float) -> np.ndarray:
    t = np.moveaxis(t, axes, [0, 1, 2, 3])
    tr = t[0, 0, 0, 0] + t[0, 1, 0, 1] + t[1, 0, 1, 0] + t[1, 1, 1, 1]
    out = (1 - eps) * t
    for a in range(2):
        for b in range(2):
            out[a, b, a, b] += eps / 4 * tr
    return np.moveaxis(out, [0, 1, 2, 3], axes)


def simulate_noisy(c: Circuit, noise: NoiseSpec, cap: int = DENSITY_CAP) -> DensityMatrix:
    """Each CNOT is followed by the two-qubit depolarizing channel on its pair."""
    n = c.width
    if n > cap:
        raise SimulationSizeError(f"density matrix limited to {cap} qubits, got {n}")
    rho = np.zeros((2 ** n, 2 ** n), dtype=complex)
    rho[0, 0] = 1
    t = rho.reshape((2,) * (2 * n))
    eps = noise.eps_2q
    for g in decompose(c).gates:
        if g.kind == "CNOT":
            ca, ta = n - 1 - g.qubits[0], n - 1 - g.qubits[1]
            t = _apply_cnot(t, ca, ta)
            t = _apply_cnot(t, n + ca, n + ta)
            if eps:
                t = _depolarize(t, [ca, ta, n + ca, n + ta], eps)
        else:
            u = gate_matrix(g)
            ax = n - 1 - g.qubits[0]
            t = _apply_1q(t, u, ax)
            t = _apply_1q(t, u.conj(), n + ax)
    return DensityMatrix(t.reshape(2 ** n, 2 ** n))


def decoder_for(c: Circuit) -> ParityDecoder:
    return ParityDecoder.from_rows(c.measurement)


def logical_distribution(c: Circuit, physical: np.ndarray) -> np.ndarray:
    """Reindex a physical outcome distribution by decoded logical bitstring."""
    physical = np.asarray(physical, dtype=float)
    idx = np.arange(physical.size, dtype=np.int64)
    logical = decoder_for(c).decode_indices(idx)
    out = np.zeros_like(physical)
    out[logical] = physical
    return out


def logical_amplitudes(c: Circuit, state: StateVector) -> np.ndarray:
    idx = np.arange(state.amplitudes.size, dtype=np.int64)
    out = np.zeros_like(state.amplitudes)
    out[decoder_for(c).decode_indices(idx)] = state.amplitudes
    return out


def run_distribution(c: Circuit, noise: NoiseSpec | None = None) -> np.ndarray:
    """Logical outcome distribution; the density matrix backend is used only when noisy."""
    if noise is None or noise.eps_2q == 0:
        probs = simulate_ideal(c).probabilities()
    else:
        probs = simulate_noisy(c, noise).probabilities()
    return logical_distribution(c, probs / probs.sum())


def total_variation(p, q) -> float:
    return 0.5 * float(np.abs(np.asarray(p) - np.asarray(q)).sum())


def bits_to_index(bits) -> int:
    return sum(int(b) << k for k, b in enumerate(bits))


def success_probability(dist, opt: CutSolution) -> float:
    """Mass on the optimum and its global flip."""
    dist = np.asarray(dist)
    a, b = bits_to_index(opt.bits), bits_to_index(opt.complement)
    return float(dist[a] + (dist[b] if b != a else 0.0))


def approximation_ratio(data, g: WeightedGraph, opt: CutSolution) -> float:
    """Mean cost over a distribution array or a list of bit vectors, over the optimum cost."""
    if opt.cost == 0:
        raise UndefinedMetricError("approximation ratio needs a nonzero optimum")
    if isinstance(data, np.ndarray) and data.ndim == 1 and data.size == 2 ** g.n and data.dtype.kind == "f":
        mean = float(data @ cost_table(g))
    else:
        table = cost_table(g)
        mean = float(np.mean([table[bits_to_index(x)] for x in data]))
    return mean / opt.cost


def sample(data, shots: int, seed=None, decoder: ParityDecoder | None = None) -> list[tuple[int, ...]]:
    """Seeded multinomial draws of bit vectors from a distribution or state.

    With a decoder, ``data`` is over physical outcomes and each draw is decoded.
    """
    if isinstance(data, (StateVector, DensityMatrix)):
        probs = data.probabilities()
    else:
        probs = np.asarray(data, dtype=float)
    probs = probs / probs.sum()
    n = int(np.log2(probs.size))
    rng = np.random.default_rng(seed)
    idx = rng.choice(probs.size, size=shots, p=probs)
    if decoder is not None:
        idx = decoder.decode_indices(idx)
    return [tuple(int(b) for b in row) for row in index_bits(idx, n)]
