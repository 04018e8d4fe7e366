"""Lattices of composite particles and translation-invariant generators.

A composite particle (cell) holds ``cell_size`` qubits; qubit ids are
``site + v*(r1 + n1*r2)``.  A :class:`GeneratorTemplate` lists Pauli letters
at (cell offset, site) pairs.  Placing a template at an origin reduces each
offset modulo the extent, so when an extent is smaller than the template
(in particular n_m = 1) several letters land on one qubit and are
multiplied together in term order.  That is the folding rule.

Templates whose offsets stay inside {0,1}^D are *local*.  Larger offsets
are accepted so that raw qubit-level models can be written down before they
are grouped into composite cells with :meth:`Model.regroup`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError, TemplateError
from .pauli import PauliOperator

__all__ = [
    "LatticeSpec",
    "Term",
    "GeneratorTemplate",
    "Model",
    "instantiate",
    "translate",
    "all_generators",
    "origins",
]

Coord = tuple[int, ...]


@dataclass(frozen=True, slots=True)
class LatticeSpec:
    dim: int
    cell_size: int
    extent: Coord

    def __post_init__(self) -> None:
        extent = tuple(int(n) for n in self.extent)
        object.__setattr__(self, "extent", extent)
        if self.dim not in (1, 2):
            raise DimensionError(f"dimension must be 1 or 2, got {self.dim}")
        if len(extent) != self.dim:
            raise DimensionError(f"extent {extent} does not match dimension {self.dim}")
        if self.cell_size < 1 or any(n < 1 for n in extent):
            raise DimensionError("cell size and extents must be positive")

    @property
    def n_cells(self) -> int:
        return prod(self.extent)

    @property
    def n_qubits(self) -> int:
        return self.cell_size * self.n_cells

    def cell_index(self, coord: Sequence[int]) -> int:
        idx = 0
        stride = 1
        for c, n in zip(coord, self.extent):
            idx += (c % n) * stride
            stride *= n
        return idx

    def cell_coord(self, index: int) -> Coord:
        out = []
        for n in self.extent:
            out.append(index % n)
            index //= n
        return tuple(out)

    def qubit(self, coord: Sequence[int], site: int) -> int:
        return site + self.cell_size * self.cell_index(coord)

    def cell_qubits(self, coord: Sequence[int]) -> range:
        base = self.cell_size * self.cell_index(coord)
        return range(base, base + self.cell_size)

    def cells_to_qubits(self, cells: Iterable[Sequence[int]]) -> list[int]:
        qs: set[int] = set()
        for c in cells:
            qs.update(self.cell_qubits(c))
        return sorted(qs)

    def label(self) -> str:
        return "x".join(str(n) for n in self.extent)


def origins(lat: LatticeSpec) -> Iterator[Coord]:
    """Cell coordinates in qubit-id order (first coordinate fastest)."""
    for i in range(lat.n_cells):
        yield lat.cell_coord(i)


@dataclass(frozen=True, slots=True)
class Term:
    offset: Coord
    site: int
    letter: str


def _merge_letter(a: str, b: str) -> str:
    bits = {"X": (1, 0), "Y": (1, 1), "Z": (0, 1), "I": (0, 0)}
    x = bits[a][0] ^ bits[b][0]
    z = bits[a][1] ^ bits[b][1]
    return {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}[(x, z)]


@dataclass(frozen=True)
class GeneratorTemplate:
    """A local stabilizer term: letters on (offset, site) pairs."""

    id: str
    terms: tuple[Term, ...]

    def __post_init__(self) -> None:
        terms = tuple(
            t if isinstance(t, Term) else Term(tuple(t[0]), int(t[1]), str(t[2]))
            for t in self.terms
        )
        if not terms:
            raise TemplateError(f"template {self.id!r} has no terms")
        dims = {len(t.offset) for t in terms}
        if len(dims) != 1:
            raise TemplateError(f"template {self.id!r} mixes offset dimensions")
        seen: set[tuple[Coord, int]] = set()
        for t in terms:
            if t.letter not in ("X", "Y", "Z"):
                raise TemplateError(f"template {self.id!r}: bad letter {t.letter!r}")
            if t.site < 0 or any(o < 0 for o in t.offset):
                raise TemplateError(f"template {self.id!r}: negative offset or site")
            key = (t.offset, t.site)
            if key in seen:
                raise TemplateError(
                    f"template {self.id!r}: duplicate term at offset {t.offset} site {t.site}"
                )
            seen.add(key)
        object.__setattr__(self, "terms", tuple(sorted(terms, key=lambda t: (t.offset, t.site))))

    @classmethod
    def merged(cls, id: str, terms: Iterable[tuple[Sequence[int], int, str]]) -> "GeneratorTemplate":
        """Build a template, combining repeated (offset, site) letters bitwise."""
        acc: dict[tuple[Coord, int], str] = {}
        for off, site, letter in terms:
            key = (tuple(off), int(site))
            acc[key] = _merge_letter(acc.get(key, "I"), letter)
        return cls(id, tuple(Term(k[0], k[1], v) for k, v in acc.items() if v != "I"))

    @property
    def dim(self) -> int:
        return len(self.terms[0].offset)

    @property
    def span(self) -> Coord:
        return tuple(max(t.offset[m] for t in self.terms) + 1 for m in range(self.dim))

    @property
    def is_local(self) -> bool:
        return all(s <= 2 for s in self.span)

    @property
    def max_site(self) -> int:
        return max(t.site for t in self.terms)


def instantiate(t: GeneratorTemplate, origin: Sequence[int], lat: LatticeSpec) -> PauliOperator:
    """Place ``t`` with its zero offset at ``origin``; folds when extents are small."""
    if t.dim != lat.dim:
        raise TemplateError(f"template {t.id!r} is {t.dim}D but lattice is {lat.dim}D")
    if t.max_site >= lat.cell_size:
        raise TemplateError(
            f"template {t.id!r} uses site {t.max_site + 1} but cells hold {lat.cell_size} qubits"
        )
    n = lat.n_qubits
    op = PauliOperator.identity(n)
    for term in t.terms:
        cell = tuple(o + d for o, d in zip(origin, term.offset))
        q = lat.qubit(cell, term.site)
        op = op * PauliOperator.single(n, q, term.letter)
    return op


def all_generators(
    templates: Sequence[GeneratorTemplate], lat: LatticeSpec
) -> list[PauliOperator]:
    """Every template at every origin: template order, then cell order."""
    cells = list(origins(lat))
    return [instantiate(t, r, lat) for t in templates for r in cells]


def _rotate_blocks(bits: int, block: int, count: int, shift: int) -> int:
    """Rotate each of ``count`` consecutive ``block``-bit fields left by ``shift``."""
    shift %= block
    if shift == 0 or bits == 0:
        return bits
    low_mask = 0
    field = (1 << (block - shift)) - 1
    for b in range(count):
        low_mask |= field << (b * block)
    high_mask = low_mask ^ (((1 << (block * count)) - 1))
    return ((bits & low_mask) << shift) | ((bits & high_mask) >> (block - shift))


def translate(
    p: PauliOperator, direction: int, steps: int, lat: LatticeSpec
) -> PauliOperator:
    """Cyclically shift ``p`` by ``steps`` cells along ``direction`` (1-based)."""
    if p.n_qubits != lat.n_qubits:
        raise DimensionError("operator size does not match the lattice")
    if not 1 <= direction <= lat.dim:
        raise DimensionError(f"direction {direction} invalid for a {lat.dim}D lattice")
    v = lat.cell_size
    if direction == 1:
        block = v * lat.extent[0]
        count = lat.n_cells // lat.extent[0]
        shift = v * (steps % lat.extent[0])
    else:
        block = lat.n_qubits
        count = 1
        shift = v * lat.extent[0] * (steps % lat.extent[1])
    return PauliOperator(
        p.n_qubits,
        _rotate_blocks(p.x_bits, block, count, shift),
        _rotate_blocks(p.z_bits, block, count, shift),
        p.phase_exp,
    )


@dataclass(frozen=True)
class Model:
    """Named set of templates on a D-dimensional lattice of v-qubit cells."""

    name: str
    dim: int
    cell_size: int
    templates: tuple[GeneratorTemplate, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "templates", tuple(self.templates))
        if self.dim not in (1, 2):
            raise DimensionError(f"dimension must be 1 or 2, got {self.dim}")
        ids = [t.id for t in self.templates]
        if len(set(ids)) != len(ids):
            raise TemplateError(f"model {self.name!r} repeats template ids")
        for t in self.templates:
            if t.dim != self.dim:
                raise TemplateError(f"template {t.id!r} does not match dimension {self.dim}")
            if t.max_site >= self.cell_size:
                raise TemplateError(
                    f"template {t.id!r} uses site {t.max_site + 1} beyond cell size {self.cell_size}"
                )

    def lattice(self, extent: Sequence[int] | int) -> LatticeSpec:
        if isinstance(extent, int):
            extent = (extent,)
        return LatticeSpec(self.dim, self.cell_size, tuple(extent))

    def generators(self, extent: Sequence[int] | int) -> list[PauliOperator]:
        return all_generators(self.templates, self.lattice(extent))

    @property
    def is_local(self) -> bool:
        return all(t.is_local for t in self.templates)

    @property
    def span(self) -> Coord:
        return tuple(max(t.span[m] for t in self.templates) for m in range(self.dim))

    def template(self, template_id: str) -> GeneratorTemplate:
        for t in self.templates:
            if t.id == template_id:
                return t
        raise TemplateError(f"model {self.name!r} has no template {template_id!r}")

    def regroup(self, factors: Sequence[int] | int, name: str | None = None) -> "Model":
        """Group ``factors`` cells per direction into one composite cell.

        Old cell R maps to new cell R // f with sub-position p = R % f; the
        new site is ``site + v*(p1 + f1*p2)``.  Each template yields one new
        template per sub-position.
        """
        if isinstance(factors, int):
            factors = (factors,)
        factors = tuple(int(f) for f in factors)
        if len(factors) != self.dim or any(f < 1 for f in factors):
            raise DimensionError(f"bad grouping factors {factors} for a {self.dim}D model")
        v = self.cell_size
        new_v = v * prod(factors)
        subs = [
            tuple(reversed(p))
            for p in itertools.product(*(range(f) for f in reversed(factors)))
        ]
        out: list[GeneratorTemplate] = []
        for t in self.templates:
            for p in subs:
                terms = []
                for term in t.terms:
                    pos = [a + b for a, b in zip(p, term.offset)]
                    new_off = tuple(x // f for x, f in zip(pos, factors))
                    sub = [x % f for x, f in zip(pos, factors)]
                    sub_idx = sub[0] + (factors[0] * sub[1] if self.dim == 2 else 0)
                    terms.append(Term(new_off, term.site + v * sub_idx, term.letter))
                suffix = ",".join(str(c) for c in p)
                tid = t.id if all(f == 1 for f in factors) else f"{t.id}@{suffix}"
                out.append(GeneratorTemplate(tid, tuple(terms)))
        label = "x".join(str(f) for f in factors)
        return Model(name or f"{self.name}[{label}]", self.dim, new_v, tuple(out))
