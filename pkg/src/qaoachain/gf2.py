"""GF(2) matrices stored as lists of integer row masks."""

from __future__ import annotations


class SingularMatrixError(ValueError):
    pass


def weight(mask: int) -> int:
    return bin(mask).count("1")


def unit(i: int) -> int:
    return 1 << i


def rank(rows) -> int:
    pivots = {}
    r = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top not in pivots:
                pivots[top] = row
                r += 1
                break
            row ^= pivots[top]
    return r


def inverse(rows, n: int | None = None) -> list[int]:
    """Gauss-Jordan inverse of a square matrix; row ``i`` bit ``j`` is entry ``(i, j)``."""
    n = len(rows) if n is None else n
    a = list(rows)
    inv = [1 << i for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r] >> col & 1), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular over GF(2)")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        for r in range(n):
            if r != col and a[r] >> col & 1:
                a[r] ^= a[col]
                inv[r] ^= inv[col]
    return inv


def matvec(rows, bits) -> list[int]:
    """``rows @ bits`` over GF(2) for a bit sequence."""
    x = 0
    for j, b in enumerate(bits):
        if b:
            x |= 1 << j
    return [weight(row & x) & 1 for row in rows]


def identity(n: int) -> list[int]:
    return [1 << i for i in range(n)]


def to_hex(rows) -> list[str]:
    return [format(r, "x") for r in rows]


def from_hex(tokens) -> list[int]:
    return [int(t, 16) for t in tokens]
