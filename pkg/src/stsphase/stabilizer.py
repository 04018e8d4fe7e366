"""Stabilizer groups over GF(2): validity, membership, centralizers, logicals.

A :class:`StabilizerGroup` keeps its generators as given and a reduced
row-echelon basis of their binary symplectic rows together with the XZ-form
phase of every basis row.  Ranks and memberships only look at bits; the
phases are used once at build time to reject groups containing -I or iI and
afterwards for sign-sensitive membership queries.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .errors import DimensionError, InconsistentSignsError, NotStabilizerError, StructuralError
from .lattice import GeneratorTemplate, LatticeSpec, all_generators
from .pauli import PauliOperator, SupportSet

__all__ = [
    "StabilizerGroup",
    "CentralizerBasis",
    "CanonicalLogicalSet",
    "build",
    "from_generators",
    "contains",
    "centralizer",
    "canonical_logicals",
    "restriction_rank",
    "logical_count_in_region",
    "pauli_rows",
    "row_to_pauli",
]


def pauli_rows(ops: Sequence[PauliOperator], n_qubits: int) -> np.ndarray:
    """Pack operators as symplectic rows ``[x words | z words]``."""
    w = gf2.words_for(n_qubits)
    out = np.zeros((len(ops), 2 * w), dtype=np.uint64)
    for i, p in enumerate(ops):
        if p.n_qubits != n_qubits:
            raise DimensionError(f"operator on {p.n_qubits} qubits, expected {n_qubits}")
        out[i] = gf2.symplectic_row(p.x_bits, p.z_bits, w)
    return out


def row_to_pauli(row: np.ndarray, n_qubits: int, xz_phase: int = 0) -> PauliOperator:
    """Inverse of :func:`pauli_rows`; ``xz_phase`` is the exponent of i·X^x Z^z."""
    x, z = gf2.split_row(row, gf2.words_for(n_qubits))
    return PauliOperator(n_qubits, x, z, xz_phase - (x & z).bit_count())


def _support_positions(s: SupportSet | Iterable[int], n_qubits: int) -> list[int]:
    if not isinstance(s, SupportSet):
        s = SupportSet.of(s)
    if s.indices and s.indices[-1] >= n_qubits:
        raise DimensionError(f"qubit {s.indices[-1]} out of range for N={n_qubits}")
    return gf2.qubit_positions(s, gf2.words_for(n_qubits))


def _complement(s: SupportSet | Iterable[int], n_qubits: int) -> SupportSet:
    if not isinstance(s, SupportSet):
        s = SupportSet.of(s)
    return s.complement(n_qubits)


@dataclass(frozen=True)
class CentralizerBasis:
    n_qubits: int
    rows: np.ndarray

    @property
    def size(self) -> int:
        return int(self.rows.shape[0])

    def operators(self) -> list[PauliOperator]:
        return [row_to_pauli(r, self.n_qubits) for r in self.rows]


@dataclass(frozen=True)
class CanonicalLogicalSet:
    """k anticommuting pairs (l_p, r_p); all other pairs commute."""

    pairs: tuple[tuple[PauliOperator, PauliOperator], ...]

    @property
    def k(self) -> int:
        return len(self.pairs)

    @property
    def ells(self) -> list[PauliOperator]:
        return [p[0] for p in self.pairs]

    @property
    def rs(self) -> list[PauliOperator]:
        return [p[1] for p in self.pairs]

    def operators(self) -> list[PauliOperator]:
        return [op for pair in self.pairs for op in pair]

    def commutation_matrix(self) -> np.ndarray:
        ops = self.operators()
        m = np.zeros((len(ops), len(ops)), dtype=np.uint8)
        for i, a in enumerate(ops):
            for j, b in enumerate(ops):
                m[i, j] = 0 if a.commutes_with(b) else 1
        return m


class StabilizerGroup:
    """Validated stabilizer group with an RREF basis.

    Build with :func:`build` (from templates on a lattice) or
    :func:`from_generators`.  Instances are treated as immutable.
    """

    def __init__(
        self,
        generators: Sequence[PauliOperator],
        n_qubits: int,
        *,
        lattice: LatticeSpec | None = None,
        templates: Sequence[GeneratorTemplate] = (),
        name: str = "",
    ) -> None:
        self.n_qubits = n_qubits
        self.generators = tuple(generators)
        self.lattice = lattice
        self.templates = tuple(templates)
        self.name = name
        self._words = gf2.words_for(n_qubits)
        _check_commutation(self.generators)
        for i, g in enumerate(self.generators):
            if not g.is_hermitian:
                raise InconsistentSignsError(
                    f"inconsistent signs: generator {i} ({g}) is not Hermitian"
                )
        rows = pauli_rows(self.generators, n_qubits)
        phase = np.array([g.xz_phase for g in self.generators], dtype=np.int64)
        cols = list(range(n_qubits)) + [64 * self._words + q for q in range(n_qubits)]
        piv = gf2.eliminate(rows, cols, reduced=True, phase=phase, x_words=self._words)
        bad = np.flatnonzero(phase[len(piv):] % 4)
        if bad.size:
            e = int(phase[len(piv) + bad[0]])
            what = "-I" if e == 2 else ("iI" if e == 1 else "-iI")
            raise InconsistentSignsError(f"inconsistent signs: the generators produce {what}")
        self.basis = rows[: len(piv)].copy()
        self.basis_phase = phase[: len(piv)].copy()
        self.pivots = tuple(piv)
        self._basis_ints = [gf2.row_to_int(r) for r in self.basis]

    # sizes ------------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def logical_count(self) -> int:
        return self.n_qubits - self.rank

    k = logical_count

    @property
    def x_words(self) -> int:
        return self._words

    def basis_operators(self) -> list[PauliOperator]:
        return [row_to_pauli(r, self.n_qubits, int(e)) for r, e in zip(self.basis, self.basis_phase)]

    # queries ----------------------------------------------------------
    def _row_int(self, p: PauliOperator) -> int:
        if p.n_qubits != self.n_qubits:
            raise DimensionError(f"operator on {p.n_qubits} qubits, group on {self.n_qubits}")
        return p.x_bits | (p.z_bits << (64 * self._words))

    def contains(self, p: PauliOperator, ignore_sign: bool = False) -> bool:
        t = self._row_int(p)
        stride = 64 * self._words
        low = (1 << stride) - 1
        acc_x = acc_z = 0
        e = 0
        for i, pos in enumerate(self.pivots):
            if (t >> pos) & 1:
                row = self._basis_ints[i]
                t ^= row
                if not ignore_sign:
                    rx, rz = row & low, row >> stride
                    e += int(self.basis_phase[i]) + 2 * (acc_z & rx).bit_count()
                    acc_x ^= rx
                    acc_z ^= rz
        if t:
            return False
        return ignore_sign or (e - p.xz_phase) % 4 == 0

    def equivalent(self, a: PauliOperator, b: PauliOperator) -> bool:
        """a and b differ by an element of <iI, S>."""
        return self.contains(a * b, ignore_sign=True)

    def commutes_with_all(self, p: PauliOperator) -> bool:
        if self.rank == 0:
            return True
        vec = gf2.symplectic_row(p.x_bits, p.z_bits, self._words)
        return not gf2.symplectic_products(self.basis, vec, self._words).any()

    def is_logical(self, p: PauliOperator) -> bool:
        return self.commutes_with_all(p) and not self.contains(p, ignore_sign=True)

    def restricted_rank(self, s: SupportSet | Iterable[int]) -> int:
        """Rank of the basis rows projected onto ``s``."""
        return gf2.rank(self.basis, _support_positions(s, self.n_qubits))

    def restricted_basis(self, s: SupportSet | Iterable[int]) -> list[PauliOperator]:
        """Basis of the subgroup of elements supported inside ``s``, with signs."""
        outside = _support_positions(_complement(s, self.n_qubits), self.n_qubits)
        rows = self.basis.copy()
        phase = self.basis_phase.copy()
        piv = gf2.eliminate(rows, outside, phase=phase, x_words=self._words)
        return [
            row_to_pauli(rows[i], self.n_qubits, int(phase[i]))
            for i in range(len(piv), self.rank)
        ]

    @cached_property
    def centralizer_basis(self) -> "CentralizerBasis":
        w = self._words
        n = self.n_qubits
        swapped = gf2.swap_halves(self.basis, w) if self.rank else np.zeros((0, 2 * w), np.uint64)
        cols = [64 * w + q for q in range(n)] + list(range(n))
        null = gf2.nullspace(swapped, cols, 2 * w)
        if null.shape[0] != n + self.logical_count:
            raise StructuralError(
                f"centralizer has dimension {null.shape[0]}, expected {n + self.logical_count}"
            )
        return CentralizerBasis(n, null)

    @cached_property
    def canonical_set(self) -> CanonicalLogicalSet:
        return _symplectic_gram_schmidt(self)

    def restriction_rank(self, s: SupportSet | Iterable[int]) -> int:
        return restriction_rank(self, s)

    def logical_count_in_region(self, s: SupportSet | Iterable[int]) -> int:
        return logical_count_in_region(self, s)

    def with_generators(self, extra: Sequence[PauliOperator], name: str | None = None) -> "StabilizerGroup":
        return StabilizerGroup(
            self.generators + tuple(extra),
            self.n_qubits,
            lattice=self.lattice,
            templates=self.templates,
            name=self.name if name is None else name,
        )

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<StabilizerGroup{label} N={self.n_qubits} rank={self.rank} k={self.logical_count}>"


def _check_commutation(gens: Sequence[PauliOperator]) -> None:
    """Test only pairs that share a qubit; report the first offending pair."""
    touching: dict[int, list[int]] = defaultdict(list)
    bad: tuple[int, int] | None = None
    for j, g in enumerate(gens):
        seen: set[int] = set()
        mask = g.x_bits | g.z_bits
        while mask:
            low = mask & -mask
            q = low.bit_length() - 1
            mask ^= low
            for i in touching[q]:
                if i in seen:
                    continue
                seen.add(i)
                if not gens[i].commutes_with(g) and (bad is None or (i, j) < bad):
                    bad = (i, j)
            touching[q].append(j)
    if bad is not None:
        raise NotStabilizerError(*bad)


def build(
    templates: Sequence[GeneratorTemplate], lat: LatticeSpec, name: str = ""
) -> StabilizerGroup:
    """Instantiate every template at every cell and validate the group."""
    gens = all_generators(templates, lat)
    return StabilizerGroup(gens, lat.n_qubits, lattice=lat, templates=templates, name=name)


def from_generators(
    gens: Sequence[PauliOperator], n_qubits: int | None = None, name: str = ""
) -> StabilizerGroup:
    if n_qubits is None:
        if not gens:
            raise DimensionError("cannot infer N from an empty generator list")
        n_qubits = gens[0].n_qubits
    return StabilizerGroup(gens, n_qubits, name=name)


def contains(g: StabilizerGroup, p: PauliOperator, ignore_sign: bool = False) -> bool:
    return g.contains(p, ignore_sign=ignore_sign)


def centralizer(g: StabilizerGroup) -> CentralizerBasis:
    return g.centralizer_basis


def canonical_logicals(g: StabilizerGroup) -> CanonicalLogicalSet:
    return g.canonical_set


def restriction_rank(g: StabilizerGroup, s: SupportSet | Iterable[int]) -> int:
    """G(S_A): rank of the elements supported entirely inside ``s``."""
    outside = _complement(s, g.n_qubits)
    return g.rank - g.restricted_rank(outside)


def logical_count_in_region(g: StabilizerGroup, s: SupportSet | Iterable[int]) -> int:
    """g_A = G(C_A) - G(S_A)."""
    c = g.centralizer_basis
    outside = _support_positions(_complement(s, g.n_qubits), g.n_qubits)
    gc_a = c.size - gf2.rank(c.rows, outside)
    return gc_a - restriction_rank(g, s)


def _symplectic_gram_schmidt(g: StabilizerGroup) -> CanonicalLogicalSet:
    w = g.x_words
    n = g.n_qubits
    alive = g.centralizer_basis.rows.copy()
    pairs: list[tuple[PauliOperator, PauliOperator]] = []
    while alive.shape[0]:
        u = alive[0]
        rest = alive[1:]
        hits = np.flatnonzero(gf2.symplectic_products(rest, u, w)) if rest.shape[0] else []
        if len(hits) == 0:
            alive = rest
            continue
        j = int(hits[0])
        partner = rest[j].copy()
        rest = np.delete(rest, j, axis=0)
        if rest.shape[0]:
            with_w = gf2.symplectic_products(rest, partner, w)
            with_u = gf2.symplectic_products(rest, u, w)
            rest[with_w] ^= u
            rest[with_u] ^= partner
        pairs.append((row_to_pauli(u, n, 0).unsigned(), row_to_pauli(partner, n, 0).unsigned()))
        alive = rest
    if len(pairs) != g.logical_count:
        raise StructuralError(f"found {len(pairs)} logical pairs, expected k={g.logical_count}")
    return CanonicalLogicalSet(tuple(pairs))
