import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import dense_unitary
from qaoachain import gf2
from qaoachain.circuit import (Circuit, CircuitFormatError, Gate, ParityDecoder, TrackingUnsupportedError, cnot,
                               decompose, depth, dumps, h, loads, rx, rz, rzz, swap, track_labels, two_qubit_count,
                               zzswap)
from qaoachain.simulator import simulate_ideal


def test_fig1_prefix_labels():
    c = Circuit(3, [cnot(1, 0), cnot(0, 1), cnot(2, 1), cnot(1, 0)])
    assert track_labels(c).final == (0b110, 0b101, 0b100)


def test_empty_and_involution():
    assert track_labels(Circuit(4)).final == (1, 2, 4, 8)
    assert track_labels(Circuit(2, [cnot(0, 1), cnot(0, 1)])).final == (1, 2)


def test_swaps_exchange_rows():
    labels = track_labels(Circuit(3, [swap(0, 1), zzswap(1, 2, 0.3), rzz(0, 1, 0.2), rz(0, 1.0)]))
    assert labels.final == (2, 4, 1)


def test_tracking_rejects_basis_changes():
    with pytest.raises(TrackingUnsupportedError):
        track_labels(Circuit(1, [h(0)]))


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate("CNOT", (0, 0))
    with pytest.raises(ValueError):
        Gate("RZ", (0,))
    with pytest.raises(ValueError):
        Circuit(3, [cnot(0, 2)])
    Circuit(3, [cnot(0, 2)], chain_local=False)
    with pytest.raises(ValueError):
        Circuit(2, [cnot(1, 2)])


def test_decompose_counts():
    assert [g.kind for g in decompose(Circuit(2, [rzz(0, 1, 0.1)])).gates] == ["CNOT", "RZ", "CNOT"]
    assert [g.kind for g in decompose(Circuit(2, [swap(0, 1)])).gates] == ["CNOT"] * 3
    kinds = [g.kind for g in decompose(Circuit(2, [zzswap(0, 1, 0.1)])).gates]
    assert kinds.count("CNOT") == 3 and kinds.count("RZ") == 1
    assert two_qubit_count(Circuit(2, [rzz(0, 1, 0.1)] * 5)) == 10


def test_depth_examples():
    assert depth(Circuit(4)) == 0
    assert depth(Circuit(4, [cnot(0, 1), cnot(2, 3)])) == 1
    assert depth(Circuit(4, [cnot(0, 1), cnot(1, 2)])) == 2
    c = Circuit(2, [h(0), cnot(0, 1), rz(1, 0.3)])
    assert depth(c, "two_qubit_only") == 1
    assert depth(c, "all_gates") == 3
    with pytest.raises(ValueError):
        depth(c, "nonsense")


_kinds = st.sampled_from(["CNOT", "RZ", "RX", "H", "RZZ", "SWAP", "ZZSWAP"])


@st.composite
def circuits(draw, max_width=4):
    n = draw(st.integers(2, max_width))
    gates = []
    for _ in range(draw(st.integers(0, 12))):
        kind = draw(_kinds)
        angle = draw(st.floats(-3, 3)) if kind in ("RZ", "RX", "RZZ", "ZZSWAP") else None
        if kind in ("RZ", "RX", "H"):
            gates.append(Gate(kind, (draw(st.integers(0, n - 1)),), angle))
        else:
            a = draw(st.integers(0, n - 2))
            pair = (a, a + 1) if draw(st.booleans()) else (a + 1, a)
            gates.append(Gate(kind, pair, angle))
    return Circuit(n, gates)


def _phase_equal(u, v):
    k = np.unravel_index(np.argmax(np.abs(u)), u.shape)
    phase = v[k] / u[k]
    return np.abs(u * phase - v).max()


@given(circuits())
def test_decompose_preserves_unitary(c):
    assert _phase_equal(dense_unitary(c), dense_unitary(decompose(c))) < 1e-10
    assert two_qubit_count(decompose(c)) == two_qubit_count(c)
    assert {g.kind for g in decompose(c).gates} <= {"CNOT", "RZ", "RX", "H"}


@given(circuits())
def test_simulator_matches_dense_unitary(c):
    psi = simulate_ideal(c).amplitudes
    assert np.abs(psi - dense_unitary(c)[:, 0]).max() < 1e-10


@given(circuits())
def test_labels_stay_invertible(c):
    c.gates = [g for g in c.gates if g.kind not in ("H", "RX")]
    labels = track_labels(c)
    assert labels.initial == tuple(1 << q for q in range(c.width))
    assert labels.all_invertible()
    assert all(r for rows in labels.history for r in rows)


@given(circuits())
def test_labels_predict_basis_states(c):
    """A CNOT/SWAP circuit maps |x> to the basis state whose bit q is row_q . x."""
    c.gates = [g for g in c.gates if g.kind in ("CNOT", "SWAP")]
    rows = track_labels(c).final
    u = dense_unitary(c)
    for x in range(2 ** c.width):
        bits = [(x >> q) & 1 for q in range(c.width)]
        m = gf2.matvec(rows, bits)
        assert abs(u[sum(b << q for q, b in enumerate(m)), x]) == pytest.approx(1)


@given(circuits())
def test_dump_round_trip(c):
    c.measurement = tuple(reversed(c.measurement))
    back = loads(dumps(c))
    assert back.gates == c.gates
    assert back.measurement == c.measurement
    assert back.width == c.width


def test_dump_format():
    text = dumps(Circuit(2, [cnot(0, 1), rz(1, 0.5), rx(0, -1.0)]))
    assert text.splitlines() == ["WIDTH 2", "CNOT 0 1", "RZ 1 0.5", "RX 0 -1.0", "MEASMAP 1 2"]
    with pytest.raises(CircuitFormatError):
        loads("WIDTH 2\nCNOT 0\n")
    with pytest.raises(CircuitFormatError):
        loads("CNOT 0 1\n")


def test_decoder_fig1_matrix():
    dec = ParityDecoder.from_rows((0b110, 0b101, 0b100))
    for m in range(8):
        m0, m1, m2 = (m >> 0) & 1, (m >> 1) & 1, (m >> 2) & 1
        assert dec.decode((m0, m1, m2)) == (m1 ^ m2, m0 ^ m2, m2)
    assert ParityDecoder.from_rows((1, 2, 4)).decode((1, 0, 1)) == (1, 0, 1)


@given(st.integers(1, 8).flatmap(lambda n: st.lists(st.integers(1, 2 ** n - 1), min_size=n, max_size=n)))
def test_gf2_inverse_against_numpy(rows):
    n = len(rows)
    a = np.array([[(r >> j) & 1 for j in range(n)] for r in rows])
    if gf2.rank(rows) < n:
        with pytest.raises(gf2.SingularMatrixError):
            gf2.inverse(rows)
        return
    inv = gf2.inverse(rows)
    b = np.array([[(r >> j) & 1 for j in range(n)] for r in inv])
    assert np.array_equal((a @ b) % 2, np.eye(n, dtype=int))


@given(st.integers(1, 8).flatmap(lambda n: st.permutations([1 << k for k in range(n)])))
def test_decode_vectorised_matches_scalar(rows):
    dec = ParityDecoder.from_rows(rows)
    n = len(rows)
    idx = np.arange(2 ** n)
    vec = dec.decode_indices(idx)
    for k in idx:
        bits = dec.decode([(k >> q) & 1 for q in range(n)])
        assert vec[k] == sum(b << q for q, b in enumerate(bits))
