"""Splitting a strip-supported centralizer element into periodic and local parts."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import gf2
from ..entanglement import Region
from ..errors import InputError, PreconditionError
from ..lattice import LatticeSpec, translate
from ..pauli import PauliOperator
from ..stabilizer import StabilizerGroup, pauli_rows

__all__ = ["PeriodicDecomposition", "extract_periodic_part", "strip_of"]


@dataclass(frozen=True)
class PeriodicDecomposition:
    """u ~ alpha * beta with beta invariant under ``period`` translations."""

    alpha: PauliOperator
    beta: PauliOperator
    period: int
    direction: int
    window: Region | None
    stalled: bool = False


def strip_of(p: PauliOperator, lat: LatticeSpec) -> tuple[int, list[tuple[int, ...]]]:
    """Direction and ordered cells of the row or column holding ``p``."""
    cells = {lat.cell_coord(q // lat.cell_size) for q in p.support}
    if lat.dim == 1:
        return 1, [(i,) for i in range(lat.extent[0])]
    rows = {c[1] for c in cells}
    cols = {c[0] for c in cells}
    if len(rows) <= 1:
        j = rows.pop() if rows else 0
        return 1, [(i, j) for i in range(lat.extent[0])]
    if len(cols) == 1:
        i = cols.pop()
        return 2, [(i, j) for j in range(lat.extent[1])]
    raise InputError("operator is not supported inside a single row or column of cells")


def _cell_pattern(p: PauliOperator, lat: LatticeSpec, cell: tuple[int, ...]) -> tuple[int, int]:
    base = lat.qubit(cell, 0)
    mask = (1 << lat.cell_size) - 1
    return (p.x_bits >> base) & mask, (p.z_bits >> base) & mask


def _periodic_space(
    g: StabilizerGroup, strip: list[tuple[int, ...]], direction: int, b: int
) -> list[PauliOperator]:
    """Strip operators of period b that commute with every stabilizer."""
    lat = g.lattice
    assert lat is not None
    n = len(strip)
    v = lat.cell_size
    seeds = []
    for c in range(b):
        for site in range(v):
            for letter in ("X", "Z"):
                op = PauliOperator.single(lat.n_qubits, lat.qubit(strip[c], site), letter)
                acc = op
                for t in range(1, n // b):
                    acc = acc * translate(op, direction, t * b, lat)
                seeds.append(acc.unsigned())
    if g.rank == 0:
        return seeds
    w = g.x_words
    seed_rows = pauli_rows(seeds, lat.n_qubits)
    # symplectic products with the basis: columns of a constraint matrix
    constraint = np.zeros((len(seeds), g.rank), dtype=np.uint8)
    for i, row in enumerate(seed_rows):
        constraint[i] = gf2.symplectic_products(g.basis, row, w)
    cw = gf2.words_for(len(seeds))
    packed_t = gf2.pack_rows(constraint.T, cw)
    kernel = gf2.unpack_rows(gf2.nullspace(packed_t, range(len(seeds)), cw), len(seeds))
    out = []
    for vec in kernel:
        acc = PauliOperator.identity(lat.n_qubits)
        for i in np.flatnonzero(vec):
            acc = acc * seeds[i]
        out.append(acc.unsigned())
    return out


def _decompose(
    g: StabilizerGroup,
    u: PauliOperator,
    betas: list[PauliOperator],
    local: list[PauliOperator],
) -> tuple[PauliOperator, PauliOperator] | None:
    n = g.n_qubits
    parts = [pauli_rows(betas, n), pauli_rows(local, n), g.basis]
    rows = np.vstack([p for p in parts if p.shape[0]]) if any(p.shape[0] for p in parts) else None
    if rows is None:
        return (PauliOperator.identity(n), PauliOperator.identity(n)) if u.is_identity else None
    target = gf2.symplectic_row(u.x_bits, u.z_bits, g.x_words)
    coef = gf2.solve(rows, target, range(2 * g.x_words * gf2.WORD_BITS))
    if coef is None:
        return None
    beta = PauliOperator.identity(n)
    alpha = PauliOperator.identity(n)
    for i in np.flatnonzero(coef[: len(betas)]):
        beta = beta * betas[i]
    for i in np.flatnonzero(coef[len(betas) : len(betas) + len(local)]):
        alpha = alpha * local[i]
    return alpha.unsigned(), beta.unsigned()


def extract_periodic_part(g: StabilizerGroup, u: PauliOperator) -> PeriodicDecomposition:
    """Find beta periodic along the strip of ``u`` and alpha in a short window.

    Candidate periods: the distance to the first cell repeating the first
    cell's operator, then every divisor of the strip length up to 2^(2v).
    For each period, alpha = I is tried first and then windows of
    min(2v, n) cells at every offset.  If nothing fits, the result is
    ``alpha = u, beta = I`` with ``stalled`` set.
    """
    lat = g.lattice
    if lat is None:
        raise PreconditionError("periodicity extraction needs a lattice-built group")
    if not g.commutes_with_all(u):
        raise InputError("operator does not commute with the stabilizer group")
    direction, strip = strip_of(u, lat)
    n = len(strip)
    v = lat.cell_size
    ident = PauliOperator.identity(lat.n_qubits)
    if u.is_identity:
        return PeriodicDecomposition(ident, ident, 1, direction, None)

    pats = [_cell_pattern(u, lat, c) for c in strip]
    candidates: list[int] = []
    for b in range(1, n + 1):
        if pats[b % n] == pats[0]:
            if n % b == 0:
                candidates.append(b)
            break
    limit = 2 ** (2 * v)
    for b in range(1, n + 1):
        if n % b == 0 and b <= limit and b not in candidates:
            candidates.append(b)

    width = min(2 * v, n)
    for b in candidates:
        betas = _periodic_space(g, strip, direction, b)
        found = _decompose(g, u, betas, [])
        if found is not None:
            return PeriodicDecomposition(ident, found[1], b, direction, None)
        for start in range(n):
            cells = [strip[(start + d) % n] for d in range(width)]
            window = Region(lat, frozenset(cells))
            local = [
                PauliOperator.single(lat.n_qubits, q, letter)
                for q in window.support
                for letter in ("X", "Z")
            ]
            found = _decompose(g, u, betas, local)
            if found is not None:
                return PeriodicDecomposition(found[0], found[1], b, direction, window)
    return PeriodicDecomposition(u, ident, 1, direction, None, stalled=True)

