import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qaoachain.graph import WeightedGraph

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=2, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=1, unique=True))
    weights = draw(st.lists(st.floats(0.05, 1.0), min_size=len(chosen), max_size=len(chosen)))
    return WeightedGraph.from_edges(n, [(u, v, w) for (u, v), w in zip(chosen, weights)])


@st.composite
def graph_and_order(draw, min_n=2, max_n=7):
    g = draw(graphs(min_n, max_n))
    order = draw(st.permutations(range(g.n)))
    return g, tuple(order)


@pytest.fixture
def triangle():
    return WeightedGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


def dense_unitary(circuit):
    """Independent reference: multiply full 2^n matrices built with kron."""
    n = circuit.width
    eye = np.eye(2)
    x = np.array([[0, 1], [1, 0]])
    p0, p1 = np.diag([1, 0]), np.diag([0, 1])

    def embed(ops):
        # ops maps qubit -> 2x2; qubit n-1 is the leftmost kron factor
        m = np.array([[1.0 + 0j]])
        for q in reversed(range(n)):
            m = np.kron(m, ops.get(q, eye))
        return m

    def one(kind, angle):
        if kind == "H":
            return np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        if kind == "RZ":
            return np.diag([np.exp(-0.5j * angle), np.exp(0.5j * angle)])
        c, s = np.cos(angle / 2), np.sin(angle / 2)
        return np.array([[c, -1j * s], [-1j * s, c]])

    u = np.eye(2 ** n, dtype=complex)
    for g in circuit.gates:
        if g.kind in ("H", "RZ", "RX"):
            m = embed({g.qubits[0]: one(g.kind, g.angle)})
        else:
            a, b = g.qubits
            cx_ab = embed({a: p0}) + embed({a: p1, b: x})
            cx_ba = embed({b: p0}) + embed({b: p1, a: x})
            zz = np.diag([np.exp(-0.5j * g.angle * (1 - 2 * (((k >> a) ^ (k >> b)) & 1)))
                          for k in range(2 ** n)]) if g.angle is not None else None
            if g.kind == "CNOT":
                m = cx_ab
            elif g.kind == "SWAP":
                m = cx_ab @ cx_ba @ cx_ab
            elif g.kind == "RZZ":
                m = zz
            else:
                m = cx_ab @ cx_ba @ cx_ab @ zz
        u = m @ u
    return u
