"""Independent reference computations used only by the tests.

Everything here avoids the package's GF(2) kernels: ranks use a Python-int
xor basis, Pauli products use dense matrices, entropies use state vectors.
"""

from __future__ import annotations

import itertools
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from stsphase.pauli import PauliOperator

I2 = np.eye(2, dtype=complex)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
Z2 = np.array([[1, 0], [0, -1]], dtype=complex)
Y2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
LETTER = {"I": I2, "X": X2, "Y": Y2, "Z": Z2}


def xor_rank(rows: Iterable[int]) -> int:
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = r
                break
            r ^= basis[top]
    return len(basis)


def sym_int(p: PauliOperator) -> int:
    return p.x_bits | (p.z_bits << p.n_qubits)


def dense(p: PauliOperator) -> np.ndarray:
    """Matrix with qubit 0 as the most significant tensor factor."""
    mats = [LETTER[p.letter(q)] for q in range(p.n_qubits)]
    return (1j ** p.phase_exp) * reduce(np.kron, mats, np.eye(1, dtype=complex))


def apply_pauli(p: PauliOperator, psi: np.ndarray) -> np.ndarray:
    """P|b> = i^e i^{#Y} (-1)^{popcount(b & z)} |b xor x>, bit q of b = qubit q."""
    idx = np.arange(psi.size, dtype=np.int64)
    parity = np.zeros(psi.size, dtype=np.int64)
    zb = idx & p.z_bits
    while zb.any():
        parity ^= zb & 1
        zb >>= 1
    factor = (1j ** ((p.phase_exp + p.y_count) % 4)) * (1 - 2 * parity)
    out = np.zeros_like(psi)
    out[idx ^ p.x_bits] = factor * psi
    return out


def ground_state(gens: Sequence[PauliOperator], n: int) -> np.ndarray:
    """Normalized joint +1 eigenvector of ``gens`` (assumed to fix one state)."""
    for seed in range(2**n):
        psi = np.zeros(2**n, dtype=complex)
        psi[seed] = 1.0
        for g in gens:
            psi = 0.5 * (psi + apply_pauli(g, psi))
        norm = np.linalg.norm(psi)
        if norm > 1e-6:
            return psi / norm
    raise ValueError("no common +1 eigenvector")


def state_entropy(psi: np.ndarray, n: int, region: Iterable[int]) -> float:
    """Von Neumann entropy in bits; numpy axis a holds qubit n-1-a."""
    qs = sorted(set(region))
    if not qs or len(qs) == n:
        return 0.0
    axes = [n - 1 - q for q in qs]
    rest = [a for a in range(n) if a not in axes]
    t = psi.reshape((2,) * n).transpose(axes + rest).reshape(2 ** len(axes), -1)
    s = np.linalg.svd(t, compute_uv=False) ** 2
    s = s[s > 1e-14]
    return float(-(s * np.log2(s)).sum())


def group_elements(gens: Sequence[PauliOperator], n: int) -> list[int]:
    """All 2^r symplectic vectors of the group generated by ``gens``."""
    basis: list[int] = []
    for g in gens:
        v = sym_int(g)
        if xor_rank(basis + [v]) > len(basis):
            basis.append(v)
    out = []
    for coeffs in itertools.product((0, 1), repeat=len(basis)):
        acc = 0
        for c, b in zip(coeffs, basis):
            if c:
                acc ^= b
        out.append(acc)
    return out


def _outside_mask(n: int, region: Iterable[int]) -> int:
    inside = 0
    for q in region:
        inside |= 1 << q
    out = ((1 << n) - 1) & ~inside
    return out | (out << n)


def brute_restriction_rank(gens: Sequence[PauliOperator], n: int, region: Iterable[int]) -> int:
    """log2 of the number of group elements supported inside ``region``."""
    mask = _outside_mask(n, region)
    count = sum(1 for e in group_elements(gens, n) if not e & mask)
    return count.bit_length() - 1


def _commutes_int(a: int, b: int, n: int) -> bool:
    lo = (1 << n) - 1
    ax, az, bx, bz = a & lo, a >> n, b & lo, b >> n
    return bin((ax & bz) ^ (az & bx)).count("1") % 2 == 0


def brute_region_logicals(gens: Sequence[PauliOperator], n: int, region: Sequence[int]) -> int:
    """g_A by enumerating every Pauli on the region."""
    qs = sorted(region)
    gen_ints = [sym_int(g) for g in gens]
    centralizer_count = 0
    for letters in itertools.product(range(4), repeat=len(qs)):
        v = 0
        for q, l in zip(qs, letters):
            if l & 1:
                v |= 1 << q
            if l & 2:
                v |= 1 << (q + n)
        if all(_commutes_int(v, g, n) for g in gen_ints):
            centralizer_count += 1
    g_c = centralizer_count.bit_length() - 1
    return g_c - brute_restriction_rank(gens, n, qs)


def formula_region_logicals(gens: Sequence[PauliOperator], n: int, region: Sequence[int]) -> int:
    """g_A = G(C_A) - G(S_A) with G(C_A) = 2|A| - rank(S restricted to A)."""
    qs = set(region)
    rows = []
    for g in gens:
        v = 0
        for q in qs:
            v |= ((g.x_bits >> q) & 1) << q
            v |= ((g.z_bits >> q) & 1) << (q + n)
        rows.append(v)
    g_c = 2 * len(qs) - xor_rank(rows)
    return g_c - brute_restriction_rank(gens, n, qs)


def brute_distance(gens: Sequence[PauliOperator], n: int, max_weight: int) -> int | None:
    """Smallest weight of a Pauli commuting with all gens and outside the group."""
    gen_ints = [sym_int(g) for g in gens]
    group = set(group_elements(gens, n))
    for w in range(1, max_weight + 1):
        for qs in itertools.combinations(range(n), w):
            for letters in itertools.product((1, 2, 3), repeat=w):
                v = 0
                for q, l in zip(qs, letters):
                    if l & 1:
                        v |= 1 << q
                    if l & 2:
                        v |= 1 << (q + n)
                if v not in group and all(_commutes_int(v, g, n) for g in gen_ints):
                    return w
    return None


def small_catalog_cases(max_qubits: int = 12):
    """(label, group) for every catalog model form and size with N <= max_qubits."""
    from stsphase import catalog
    from stsphase.stabilizer import build

    out = []
    for name in catalog.names():
        entry = catalog.get(name)
        forms = [("raw", entry.model)]
        if entry.grouping is not None:
            forms.append(("sts", entry.sts_model()))
        for tag, model in forms:
            top = max_qubits // model.cell_size
            if model.dim == 1:
                sizes = [(n,) for n in range(1, top + 1)]
            else:
                sizes = [(a, b) for a in range(1, top + 1) for b in range(1, top // a + 1)]
            for s in sizes:
                g = build(model.templates, model.lattice(s), name=name)
                out.append((f"{name}/{tag}/{'x'.join(map(str, s))}", g))
    return out


def contiguous_regions(g) -> list[tuple[int, ...]]:
    """Distinct qubit sets of cyclic cell intervals (1D) or wrapped rectangles (2D)."""
    lat = g.lattice
    seen = set()
    if lat.dim == 1:
        (n,) = lat.extent
        shapes = [((o,), (s,)) for o in range(n) for s in range(1, n + 1)]
    else:
        n1, n2 = lat.extent
        shapes = [
            ((o1, o2), (s1, s2))
            for o1 in range(n1) for o2 in range(n2)
            for s1 in range(1, n1 + 1) for s2 in range(1, n2 + 1)
        ]
    for origin, size in shapes:
        cells = set()
        for d in itertools.product(*(range(s) for s in size)):
            cells.add(tuple((o + x) % n for o, x, n in zip(origin, d, lat.extent)))
        seen.add(tuple(lat.cells_to_qubits(cells)))
    return sorted(seen)
