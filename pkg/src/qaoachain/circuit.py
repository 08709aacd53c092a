"""Gate-level circuits on a physical qubit chain.

Measurement semantics: ``Circuit.measurement[q]`` is a bit mask over logical
qubits; measuring physical qubit ``q`` returns the parity of those logical
bits. A plain permutation has one bit per row.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import gf2

TWO_QUBIT = {"CNOT", "RZZ", "SWAP", "ZZSWAP"}
ANGLED = {"RZ", "RX", "RZZ", "ZZSWAP"}
KINDS = {"CNOT", "RZ", "RX", "H", "RZZ", "SWAP", "ZZSWAP"}


class TrackingUnsupportedError(ValueError):
    pass


class CircuitFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity = 2 if self.kind in TWO_QUBIT else 1
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind} acts on {arity} qubit(s), got {self.qubits}")
        if arity == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError(f"{self.kind} needs distinct qubits, got {self.qubits}")
        if (self.kind in ANGLED) != (self.angle is not None):
            raise ValueError(f"angle mismatch for {self.kind}")

    @property
    def is_two_qubit(self) -> bool:
        return self.kind in TWO_QUBIT

    def __str__(self):
        parts = [self.kind, *map(str, self.qubits)]
        if self.angle is not None:
            parts.append(repr(float(self.angle)))
        return " ".join(parts)


def cnot(c, t):
    return Gate("CNOT", (c, t))


def rz(q, theta):
    return Gate("RZ", (q,), float(theta))


def rx(q, theta):
    return Gate("RX", (q,), float(theta))


def h(q):
    return Gate("H", (q,))


def rzz(a, b, theta):
    return Gate("RZZ", (a, b), float(theta))


def swap(a, b):
    return Gate("SWAP", (a, b))


def zzswap(a, b, theta):
    return Gate("ZZSWAP", (a, b), float(theta))


@dataclass
class Circuit:
    width: int
    gates: list[Gate] = field(default_factory=list)
    measurement: tuple[int, ...] | None = None
    layout: tuple[int, ...] | None = None
    chain_local: bool = True

    def __post_init__(self):
        if self.layout is None:
            self.layout = tuple(range(self.width))
        if self.measurement is None:
            self.measurement = tuple(1 << q for q in self.layout)
        self.measurement = tuple(self.measurement)
        self.layout = tuple(self.layout)
        if sorted(self.layout) != list(range(self.width)):
            raise ValueError(f"layout {self.layout} is not a permutation")
        if len(self.measurement) != self.width:
            raise ValueError("measurement map must have one row per physical qubit")
        for g in self.gates:
            self._check(g)

    def _check(self, g: Gate):
        if any(not 0 <= q < self.width for q in g.qubits):
            raise ValueError(f"{g} exceeds width {self.width}")
        if self.chain_local and g.is_two_qubit and abs(g.qubits[0] - g.qubits[1]) != 1:
            raise ValueError(f"{g} is not nearest-neighbour on the chain")

    def append(self, g: Gate) -> None:
        self._check(g)
        self.gates.append(g)

    def extend(self, gates) -> None:
        for g in gates:
            self.append(g)

    def copy(self) -> Circuit:
        return Circuit(self.width, list(self.gates), self.measurement, self.layout, self.chain_local)

    def is_permutation_map(self) -> bool:
        return all(gf2.weight(r) == 1 for r in self.measurement) and gf2.rank(self.measurement) == self.width

    def measurement_permutation(self) -> tuple[int, ...]:
        """Logical qubit read out by each physical qubit (permutation maps only)."""
        if not self.is_permutation_map():
            raise ValueError("measurement map is not a permutation")
        return tuple(r.bit_length() - 1 for r in self.measurement)

    def count(self, kind: str) -> int:
        return sum(g.kind == kind for g in self.gates)

    def __len__(self):
        return len(self.gates)


@dataclass(frozen=True)
class ParityLabelMatrix:
    """Label rows per physical qubit, one snapshot per applied gate (index 0 = start)."""

    width: int
    history: tuple[tuple[int, ...], ...]

    @property
    def initial(self) -> tuple[int, ...]:
        return self.history[0]

    @property
    def final(self) -> tuple[int, ...]:
        return self.history[-1]

    def max_weight(self) -> int:
        return max(gf2.weight(r) for rows in self.history for r in rows)

    def all_invertible(self) -> bool:
        return all(gf2.rank(rows) == self.width for rows in self.history)

    def realized_pairs(self) -> dict[tuple[int, int], int]:
        """First snapshot index at which each weight-2 parity appears."""
        seen = {}
        for t, rows in enumerate(self.history):
            for r in rows:
                if gf2.weight(r) == 2 and r not in seen:
                    lo = (r & -r).bit_length() - 1
                    hi = r.bit_length() - 1
                    seen[r] = (lo, hi, t)
        return {(lo, hi): t for lo, hi, t in seen.values()}


@dataclass(frozen=True)
class ParityDecoder:
    """Maps measured physical bits back to logical bits via the inverse label matrix."""

    label_matrix: tuple[int, ...]
    inverse: tuple[int, ...]

    @classmethod
    def from_rows(cls, rows) -> ParityDecoder:
        rows = tuple(rows)
        return cls(rows, tuple(gf2.inverse(rows, len(rows))))

    @property
    def n(self) -> int:
        return len(self.label_matrix)

    def is_permutation(self) -> bool:
        return all(gf2.weight(r) == 1 for r in self.label_matrix)

    def decode(self, measured) -> tuple[int, ...]:
        if len(measured) != self.n:
            raise ValueError(f"expected {self.n} measured bits, got {len(measured)}")
        return tuple(gf2.matvec(self.inverse, measured))

    def encode(self, logical) -> tuple[int, ...]:
        return tuple(gf2.matvec(self.label_matrix, logical))

    def decode_indices(self, indices) -> np.ndarray:
        """Vectorised decode of little-endian physical basis indices."""
        indices = np.asarray(indices, dtype=np.int64)
        out = np.zeros_like(indices)
        for i, row in enumerate(self.inverse):
            bit = np.zeros_like(indices)
            q = 0
            while row:
                if row & 1:
                    bit ^= (indices >> q) & 1
                row >>= 1
                q += 1
            out |= bit << i
        return out


def track_labels(c: Circuit, initial=None) -> ParityLabelMatrix:
    """Propagate GF(2) labels: CNOT xors control into target, SWAP/ZZSWAP exchange rows."""
    rows = list(initial) if initial is not None else [1 << q for q in range(c.width)]
    history = [tuple(rows)]
    for g in c.gates:
        if g.kind == "CNOT":
            ctl, tgt = g.qubits
            rows[tgt] ^= rows[ctl]
        elif g.kind in ("SWAP", "ZZSWAP"):
            a, b = g.qubits
            rows[a], rows[b] = rows[b], rows[a]
        elif g.kind in ("RZ", "RZZ"):
            pass
        else:
            # H and RX leave the computational basis, so labels stop being meaningful
            raise TrackingUnsupportedError(f"cannot track labels through {g.kind}")
        history.append(tuple(rows))
    return ParityLabelMatrix(c.width, tuple(history))


def decompose_gate(g: Gate) -> list[Gate]:
    if g.kind == "RZZ":
        a, b = g.qubits
        return [cnot(a, b), rz(b, g.angle), cnot(a, b)]
    if g.kind == "SWAP":
        a, b = g.qubits
        return [cnot(a, b), cnot(b, a), cnot(a, b)]
    if g.kind == "ZZSWAP":
        # RZZ * SWAP with the middle CNOT pair cancelled
        a, b = g.qubits
        return [cnot(a, b), rz(b, g.angle), cnot(b, a), cnot(a, b)]
    return [g]


def decompose(c: Circuit) -> Circuit:
    out = Circuit(c.width, [], c.measurement, c.layout, c.chain_local)
    out.gates = [d for g in c.gates for d in decompose_gate(g)]
    return out


_CNOT_COST = {"CNOT": 1, "RZZ": 2, "SWAP": 3, "ZZSWAP": 3}


def two_qubit_count(c: Circuit) -> int:
    """Number of CNOTs after decomposition."""
    return sum(_CNOT_COST.get(g.kind, 0) for g in c.gates)


def depth(c: Circuit, convention: str = "two_qubit_only") -> int:
    """ASAP layer count of the decomposed circuit."""
    if convention not in ("two_qubit_only", "all_gates"):
        raise ValueError(f"unknown depth convention {convention!r}")
    level = [0] * c.width
    for g in decompose(c).gates:
        if convention == "two_qubit_only" and not g.is_two_qubit:
            continue
        d = max(level[q] for q in g.qubits) + 1
        for q in g.qubits:
            level[q] = d
    return max(level, default=0)


def dumps(c: Circuit) -> str:
    lines = [f"WIDTH {c.width}"]
    if c.layout != tuple(range(c.width)):
        lines.append("LAYOUT " + " ".join(map(str, c.layout)))
    lines += [str(g) for g in c.gates]
    lines.append("MEASMAP " + " ".join(gf2.to_hex(c.measurement)))
    return "\n".join(lines) + "\n"


def loads(text: str) -> Circuit:
    width, layout, meas, gates = None, None, None, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *args = line.split()
        try:
            if head == "WIDTH":
                width = int(args[0])
            elif head == "LAYOUT":
                layout = tuple(map(int, args))
            elif head == "MEASMAP":
                meas = tuple(gf2.from_hex(args))
            else:
                arity = 2 if head in TWO_QUBIT else 1
                qubits = tuple(int(a) for a in args[:arity])
                angle = float(args[arity]) if head in ANGLED else None
                gates.append(Gate(head, qubits, angle))
        except (ValueError, IndexError) as exc:
            raise CircuitFormatError(f"line {lineno}: {exc}") from exc
    if width is None:
        raise CircuitFormatError("missing WIDTH header")
    chain = all(abs(g.qubits[0] - g.qubits[1]) == 1 for g in gates if g.is_two_qubit)
    return Circuit(width, gates, meas, layout, chain_local=chain)

