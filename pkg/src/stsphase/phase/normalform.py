"""Reduction of 1D STS models to ferromagnet copies plus decoupled qubits.

Work happens on single-cell symplectic vectors of length 2v laid out as
``[x bits of the v sites | z bits]``.  Let a two-cell stabilizer on cells
(j, j+1) split as alpha (cell j part) and beta (cell j+1 part).

* Symplectic Gram-Schmidt on the alpha parts yields t pairs (a_i, b_i).
* The radical of the alpha span, modulo single-cell stabilizers M, gives
  the k ferromagnetic vectors f_p; f_p (x) f_p must be a stabilizer.
* A cell map sends alpha_a -> Z_A, alpha_b -> X_A, beta_a -> Z_B,
  beta_b -> X_B, f_p -> Z_F, s -> Z_S, completed by solved partners.
* A pair map of CNOTs (control B_i in cell j+1, target A_i in cell j) then
  turns Z_A Z_B into Z_A and X_A X_B into X_B.

The result is checked by comparing row spans with the normal-form group.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .. import gf2
from ..errors import PreconditionError, StructuralError
from ..lattice import LatticeSpec
from ..pauli import PauliOperator
from ..stabilizer import StabilizerGroup, build, pauli_rows
from .shapes import require_sts

__all__ = ["NormalForm", "disentangle_1d", "apply_script", "normal_form_rows"]


@dataclass(frozen=True)
class NormalForm:
    ferromagnetic_pairs: int
    short_range_pairs: int
    single_cell: int
    cellmap: np.ndarray
    pairmap: np.ndarray | None
    cnots: tuple[tuple[int, int], ...]
    script: tuple[str, ...]
    verified: bool


def _omega(a: np.ndarray, b: np.ndarray, v: int) -> int:
    return int((a[:v] & b[v:]).sum() + (a[v:] & b[:v]).sum()) & 1


def _cell_vec(p: PauliOperator, cell: int, v: int) -> np.ndarray:
    base = cell * v
    out = np.zeros(2 * v, dtype=np.uint8)
    for s in range(v):
        out[s] = (p.x_bits >> (base + s)) & 1
        out[v + s] = (p.z_bits >> (base + s)) & 1
    return out


def _span_rank(vecs: list[np.ndarray], n_bits: int) -> int:
    if not vecs:
        return 0
    return gf2.rank(gf2.pack_rows(np.array(vecs)), range(n_bits))


def _combination(rows: list[np.ndarray], target: np.ndarray) -> np.ndarray | None:
    """0/1 coefficients c with sum c_i rows_i = target, or None."""
    n = target.size
    if not rows:
        return np.zeros(0, dtype=np.uint8) if not target.any() else None
    w = gf2.words_for(n)
    return gf2.solve(gf2.pack_rows(np.array(rows), w), gf2.pack_rows(target[None, :], w)[0], range(n))


def _solve_omega(constraints: list[np.ndarray], values: list[int], v: int) -> np.ndarray | None:
    """y with omega(y, c_i) = values_i for all i."""
    # omega(y, c) = y . swap(c); solve A y = values via rows of A^T
    a = np.array([np.concatenate([c[v:], c[:v]]) for c in constraints], dtype=np.uint8)
    at = [a[:, col] for col in range(2 * v)]
    return _combination(at, np.array(values, dtype=np.uint8))


def _cnot_pairs_matrix(q: int, pairs: Sequence[tuple[int, int]]) -> np.ndarray:
    """2q x 2q row-vector map of CNOTs (control, target) on q sites."""
    m = np.eye(2 * q, dtype=np.uint8)
    for c, t in pairs:
        step = np.eye(2 * q, dtype=np.uint8)
        step[c, t] ^= 1  # x_c feeds x_t
        step[q + t, q + c] ^= 1  # z_t feeds z_c
        m = (m.astype(np.int64) @ step) % 2
    return m.astype(np.uint8)


def _rows_text(m: np.ndarray) -> str:
    return " ".join("".join(str(int(b)) for b in row) for row in m)


def normal_form_rows(v: int, n: int, k: int, t: int, m: int) -> list[PauliOperator]:
    """Generators Z_F Z_F', Z_A, X_B, Z_S on n cells of the normal-form layout."""
    N = v * n
    out = []
    for j in range(n):
        base, nxt = j * v, ((j + 1) % n) * v
        for p in range(k):
            out.append(PauliOperator.from_letters(N, {base + p: "Z"}) * PauliOperator.from_letters(N, {nxt + p: "Z"}))
        for i in range(t):
            out.append(PauliOperator.from_letters(N, {base + k + 2 * i: "Z"}))
            out.append(PauliOperator.from_letters(N, {base + k + 2 * i + 1: "X"}))
        for s in range(m):
            out.append(PauliOperator.from_letters(N, {base + k + 2 * t + s: "Z"}))
    return out


def apply_script(
    g: StabilizerGroup, cellmap: np.ndarray, cnots: Sequence[tuple[int, int]]
) -> np.ndarray:
    """Dense rows (r, 2N) of the basis after the cell maps and then the pair maps.

    ``cnots`` holds (control, target) sites on the two-cell block (j, j+1);
    on a single-cell ring both cells are the same cell.
    """
    lat = g.lattice
    assert lat is not None
    v, n, N = lat.cell_size, lat.extent[0], lat.n_qubits
    dense = gf2.unpack_rows(g.basis, 2 * g.x_words * gf2.WORD_BITS).astype(np.int64)
    x, z = dense[:, :N], dense[:, g.x_words * 64 : g.x_words * 64 + N]
    x = x.copy()
    z = z.copy()
    for j in range(n):
        cols = slice(j * v, (j + 1) * v)
        cell = np.concatenate([x[:, cols], z[:, cols]], axis=1) @ cellmap.astype(np.int64) % 2
        x[:, cols], z[:, cols] = cell[:, :v], cell[:, v:]
    if cnots and n == 1:
        folded = _cnot_pairs_matrix(v, [(c % v, t % v) for c, t in cnots])
        return (np.concatenate([x, z], axis=1) @ folded.astype(np.int64) % 2).astype(np.uint8)
    if cnots:
        pairmap = _cnot_pairs_matrix(2 * v, cnots)
        for j in range(n):
            idx = list(range(j * v, (j + 1) * v)) + list(range(((j + 1) % n) * v, ((j + 1) % n + 1) * v))
            two = np.concatenate([x[:, idx], z[:, idx]], axis=1) @ pairmap.astype(np.int64) % 2
            x[:, idx], z[:, idx] = two[:, : 2 * v], two[:, 2 * v :]
    return np.concatenate([x, z], axis=1).astype(np.uint8)


def disentangle_1d(g: StabilizerGroup) -> NormalForm:
    lat = g.lattice
    if lat is None or lat.dim != 1:
        raise PreconditionError("the 1D normal form needs a 1D lattice-built group")
    require_sts(g)
    v = lat.cell_size
    n = lat.extent[0]
    k = g.logical_count

    ref = g if n >= 4 else build(g.templates, LatticeSpec(1, v, (4,)))
    two = ref.restricted_basis(range(2 * v))
    elems = [(_cell_vec(p, 0, v), _cell_vec(p, 1, v)) for p in two]
    singles = [_cell_vec(p, 0, v) for p in ref.restricted_basis(range(v))]

    # Gram-Schmidt on the alpha parts, carrying beta along
    alive = [(a.copy(), b.copy()) for a, b in elems]
    pairs: list[tuple[tuple[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]]] = []
    radical: list[np.ndarray] = []
    while alive:
        u = alive.pop(0)
        hit = next((i for i, w in enumerate(alive) if _omega(u[0], w[0], v)), None)
        if hit is None:
            if u[0].any():
                radical.append(u[0])
            continue
        w = alive.pop(hit)
        updated = []
        for c in alive:
            cw, cu = _omega(c[0], w[0], v), _omega(c[0], u[0], v)
            a, b = c[0].copy(), c[1].copy()
            if cw:
                a ^= u[0]
                b ^= u[1]
            if cu:
                a ^= w[0]
                b ^= w[1]
            updated.append((a, b))
        alive = updated
        pairs.append((u, w))
    t = len(pairs)

    m_basis: list[np.ndarray] = []
    for s in singles:
        if _span_rank(m_basis + [s], 2 * v) > len(m_basis):
            m_basis.append(s)
    m = len(m_basis)
    ferro: list[np.ndarray] = []
    for r in radical:
        if _span_rank(m_basis + ferro + [r], 2 * v) > len(m_basis) + len(ferro):
            ferro.append(r)
    if len(ferro) != k:
        raise StructuralError(f"found {len(ferro)} ferromagnetic vectors, expected k={k}")
    if (v - k - m) % 2 or v != 2 * t + k + m:
        raise StructuralError(
            f"v={v}, k={k}, single-cell stabilizers={m}: v-k is not an even number of paired qubits"
        )
    for f in ferro:
        op = _vecs_to_pauli([(0, f), (1, f)], v, ref.n_qubits)
        if not ref.contains(op, ignore_sign=True):
            raise StructuralError("a ferromagnetic vector does not form a two-cell stabilizer")

    # source basis and images
    src: list[np.ndarray] = []
    dst: list[np.ndarray] = []

    def unit(q: int, letter: str) -> np.ndarray:
        e = np.zeros(2 * v, dtype=np.uint8)
        e[q if letter == "X" else v + q] = 1
        return e

    for p, f in enumerate(ferro):
        src.append(f)
        dst.append(unit(p, "Z"))
    for i, ((aa, ba), (ab, bb)) in enumerate(pairs):
        qa, qb = k + 2 * i, k + 2 * i + 1
        src += [aa, ab, ba, bb]
        dst += [unit(qa, "Z"), unit(qa, "X"), unit(qb, "Z"), unit(qb, "X")]
    for q, s in enumerate(m_basis):
        src.append(s)
        dst.append(unit(k + 2 * t + q, "Z"))

    iso = ferro + m_basis
    iso_q = list(range(k)) + [k + 2 * t + q for q in range(m)]
    pair_vecs = [vec for (aa, ba), (ab, bb) in pairs for vec in (aa, ab, ba, bb)]
    partners: list[np.ndarray] = []
    for j in range(len(iso)):
        y = _solve_omega(pair_vecs + iso, [0] * len(pair_vecs) + [int(i == j) for i in range(len(iso))], v)
        if y is None:
            raise StructuralError("cannot complete the cell basis")
        partners.append(y.astype(np.uint8))
    for j in range(len(partners)):
        for jj in range(j):
            if _omega(partners[j], partners[jj], v):
                partners[j] = partners[j] ^ iso[jj]
    for y, q in zip(partners, iso_q):
        src.append(y)
        dst.append(unit(q, "X"))

    if _span_rank(src, 2 * v) != 2 * v:
        raise StructuralError("cell basis is not full rank")
    cellmap = np.zeros((2 * v, 2 * v), dtype=np.uint8)
    dst_arr = np.array(dst, dtype=np.int64)
    for c in range(2 * v):
        coef = _combination(src, np.eye(2 * v, dtype=np.uint8)[c])
        assert coef is not None
        cellmap[c] = (coef.astype(np.int64) @ dst_arr % 2).astype(np.uint8)

    cnots = tuple((v + k + 2 * i + 1, k + 2 * i) for i in range(t))
    pairmap = _cnot_pairs_matrix(2 * v, cnots) if t else None

    script: list[str] = []
    if not np.array_equal(cellmap, np.eye(2 * v, dtype=np.uint8)):
        script += [f"cellmap {j} {_rows_text(cellmap)}" for j in range(n)]
    if pairmap is not None:
        script += [f"pairmap {j} {(j + 1) % n} {_rows_text(pairmap)}" for j in range(n)]

    verified = _verify(g, cellmap, cnots, k, t, m)
    if not verified:
        raise StructuralError("transformed generators do not match the normal form")
    return NormalForm(k, t, m, cellmap, pairmap, cnots, tuple(script), verified)


def _vecs_to_pauli(parts: list[tuple[int, np.ndarray]], v: int, n_qubits: int) -> PauliOperator:
    x = z = 0
    for cell, vec in parts:
        for s in range(v):
            x |= int(vec[s]) << (cell * v + s)
            z |= int(vec[v + s]) << (cell * v + s)
    return PauliOperator(n_qubits, x, z)


def _verify(
    g: StabilizerGroup, cellmap: np.ndarray, cnots: Sequence[tuple[int, int]], k: int, t: int, m: int
) -> bool:
    lat = g.lattice
    assert lat is not None
    v, n, N = lat.cell_size, lat.extent[0], lat.n_qubits
    got = apply_script(g, cellmap, cnots)
    target = normal_form_rows(v, n, k, t, m)
    target_rows = pauli_rows(target, N)
    dense_t = gf2.unpack_rows(target_rows, 2 * g.x_words * 64)
    want = np.concatenate([dense_t[:, :N], dense_t[:, g.x_words * 64 : g.x_words * 64 + N]], axis=1)
    return gf2.same_row_space(gf2.pack_rows(got), gf2.pack_rows(want), 2 * N)
