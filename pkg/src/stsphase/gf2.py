"""Packed GF(2) row operations.

Matrices are ``uint64`` arrays of shape (rows, words); bit ``b`` of a row
lives in word ``b // 64`` at position ``b % 64``.  Elimination routines take
an explicit sequence of bit positions to pivot on, which lets callers choose
column orders (for example "complement qubits first") without permuting
data.

Symplectic rows use the layout ``[x words | z words]`` with equal block
widths; :func:`symplectic_row` and friends build and read that layout.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

WORD_BITS = 64
_ONE = np.uint64(1)


def words_for(n_bits: int) -> int:
    return max(1, (n_bits + WORD_BITS - 1) // WORD_BITS)


def pack_rows(dense: np.ndarray, n_words: int | None = None) -> np.ndarray:
    """Pack a 0/1 matrix of shape (r, c) into (r, words) uint64."""
    dense = np.atleast_2d(np.asarray(dense, dtype=np.uint8)) & 1
    r, c = dense.shape
    w = words_for(c) if n_words is None else n_words
    padded = np.zeros((r, w * WORD_BITS), dtype=np.uint8)
    padded[:, :c] = dense
    return np.packbits(padded, axis=1, bitorder="little").view(np.uint64).reshape(r, w)


def unpack_rows(packed: np.ndarray, n_bits: int) -> np.ndarray:
    packed = np.ascontiguousarray(packed, dtype=np.uint64)
    r = packed.shape[0]
    if r == 0:
        return np.zeros((0, n_bits), dtype=np.uint8)
    bits = np.unpackbits(packed.view(np.uint8).reshape(r, -1), axis=1, bitorder="little")
    return bits[:, :n_bits]


def int_to_row(value: int, n_words: int) -> np.ndarray:
    return np.frombuffer(value.to_bytes(n_words * 8, "little"), dtype=np.uint64).copy()


def row_to_int(row: np.ndarray) -> int:
    return int.from_bytes(np.ascontiguousarray(row, dtype=np.uint64).tobytes(), "little")


def get_bit(rows: np.ndarray, pos: int) -> np.ndarray:
    """Boolean column ``pos`` of a packed matrix."""
    return ((rows[:, pos >> 6] >> np.uint64(pos & 63)) & _ONE).astype(bool)


def parity_rows(rows: np.ndarray) -> np.ndarray:
    """Parity of each row's popcount, as uint8."""
    return (np.bitwise_count(rows).sum(axis=1, dtype=np.int64) & 1).astype(np.uint8)


def column_mask(positions: Iterable[int], n_words: int) -> np.ndarray:
    mask = np.zeros(n_words, dtype=np.uint64)
    for p in positions:
        mask[p >> 6] |= _ONE << np.uint64(p & 63)
    return mask


def eliminate(
    rows: np.ndarray,
    columns: Iterable[int],
    *,
    reduced: bool = False,
    phase: np.ndarray | None = None,
    x_words: int | None = None,
) -> list[int]:
    """Gaussian elimination in place, pivoting on ``columns`` in order.

    Returns the pivot positions; pivot ``i`` sits in row ``i``.  With
    ``reduced`` the pivot columns are cleared above as well (RREF).

    When ``phase`` is given the rows are symplectic Pauli rows whose XZ-form
    phases are tracked: replacing row j by row_j·row_p adds
    ``phase[p] + 2·(z_j·x_p)`` (mod 4).
    """
    n = rows.shape[0]
    pivots: list[int] = []
    r = 0
    for pos in columns:
        if r == n:
            break
        col = get_bit(rows[r:], pos)
        hits = np.flatnonzero(col)
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            rows[[r, p]] = rows[[p, r]]
            if phase is not None:
                phase[[r, p]] = phase[[p, r]]
        targets = get_bit(rows, pos)
        targets[r] = False
        if not reduced:
            targets[:r] = False
        idx = np.flatnonzero(targets)
        if idx.size:
            if phase is not None:
                assert x_words is not None
                cross = np.bitwise_count(rows[idx, x_words:] & rows[r, :x_words])
                sign = cross.sum(axis=1, dtype=np.int64) & 1
                phase[idx] = (phase[idx] + phase[r] + 2 * sign) % 4
            rows[idx] ^= rows[r]
        pivots.append(pos)
        r += 1
    return pivots


def all_positions(n_bits: int) -> range:
    return range(n_bits)


def rank(rows: np.ndarray, columns: Iterable[int]) -> int:
    work = np.array(rows, dtype=np.uint64, copy=True)
    return len(eliminate(work, columns))


def nullspace(rows: np.ndarray, columns: Sequence[int], n_words: int) -> np.ndarray:
    """Basis of {v supported on ``columns`` : rows · v = 0}.

    Basis vectors come out in the order of the free columns within
    ``columns``; each has a single 1 among the free columns.
    """
    columns = list(columns)
    work = np.array(rows, dtype=np.uint64, copy=True).reshape(-1, n_words)
    pivots = eliminate(work, columns, reduced=True)
    piv_set = set(pivots)
    free = [c for c in columns if c not in piv_set]
    out = np.zeros((len(free), n_words * WORD_BITS), dtype=np.uint8)
    if not free:
        return np.zeros((0, n_words), dtype=np.uint64)
    if pivots:
        dense = unpack_rows(work[: len(pivots)], n_words * WORD_BITS)
        sub = dense[:, free]  # (rank, n_free)
        for i, p in enumerate(pivots):
            out[:, p] = sub[i]
    out[np.arange(len(free)), free] = 1
    return pack_rows(out, n_words)


def solve(
    rows: np.ndarray, target: np.ndarray, columns: Sequence[int]
) -> np.ndarray | None:
    """Coefficients c (0/1 per row) with c·rows = target, or None."""
    m = rows.shape[0]
    n_words = rows.shape[1]
    tag_words = words_for(m)
    aug = np.zeros((m, n_words + tag_words), dtype=np.uint64)
    aug[:, :n_words] = rows
    aug[:, n_words:] = pack_rows(np.eye(m, dtype=np.uint8), tag_words) if m else 0
    pivots = eliminate(aug, columns, reduced=True)
    t = np.zeros(n_words + tag_words, dtype=np.uint64)
    t[:n_words] = target
    for i, p in enumerate(pivots):
        if (int(t[p >> 6]) >> (p & 63)) & 1:
            t ^= aug[i]
    if np.any(t[:n_words]):
        return None
    return unpack_rows(t[n_words:].reshape(1, -1), m)[0]


def same_row_space(a: np.ndarray, b: np.ndarray, n_bits: int) -> bool:
    cols = range(n_bits)
    ra, rb = rank(a, cols), rank(b, cols)
    return ra == rb == rank(np.vstack([a, b]), cols)


# symplectic helpers ---------------------------------------------------------

def symplectic_row(x_bits: int, z_bits: int, x_words: int) -> np.ndarray:
    return np.concatenate([int_to_row(x_bits, x_words), int_to_row(z_bits, x_words)])


def split_row(row: np.ndarray, x_words: int) -> tuple[int, int]:
    return row_to_int(row[:x_words]), row_to_int(row[x_words:])


def swap_halves(rows: np.ndarray, x_words: int) -> np.ndarray:
    return np.concatenate([rows[:, x_words:], rows[:, :x_words]], axis=1)


def symplectic_products(rows: np.ndarray, vec: np.ndarray, x_words: int) -> np.ndarray:
    """<row_i, vec> for every row, as booleans."""
    both = (rows[:, :x_words] & vec[x_words:]) ^ (rows[:, x_words:] & vec[:x_words])
    return parity_rows(both).astype(bool)


def qubit_positions(qubits: Iterable[int], x_words: int) -> list[int]:
    """Bit positions of (x, z) per qubit, interleaved."""
    stride = x_words * WORD_BITS
    out: list[int] = []
    for q in qubits:
        out.append(q)
        out.append(stride + q)
    return out
