"""Entanglement diagnostics computed from restriction ranks.

For a stabilizer state the entropy of a region R is ``V_R - G(S_R)`` bits,
where V_R counts qubits in R and G(S_R) is the rank of the stabilizers
supported inside R.  Degenerate groups (k > 0) are accepted only on regions
that hold no logical operator; otherwise a :class:`PureCompletion` pins a
single ground state first.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from . import gf2
from ._threads import thread_count
from .errors import GeometryError, InputError, PreconditionError
from .lattice import LatticeSpec
from .pauli import PauliOperator, SupportSet
from .stabilizer import StabilizerGroup, logical_count_in_region, restriction_rank

__all__ = [
    "Region",
    "AnnulusSpec",
    "PureCompletion",
    "DistanceExceeds",
    "parse_region",
    "entropy",
    "mutual_information",
    "annulus_regions",
    "topological_entropy",
    "code_distance",
    "local_indistinguishability",
]


@dataclass(frozen=True)
class Region:
    """A set of composite cells on a lattice."""

    lattice: LatticeSpec
    cells: frozenset[tuple[int, ...]]

    def __post_init__(self) -> None:
        cells = frozenset(tuple(int(c) for c in cell) for cell in self.cells)
        for cell in cells:
            if len(cell) != self.lattice.dim or any(
                not 0 <= c < n for c, n in zip(cell, self.lattice.extent)
            ):
                raise InputError(f"cell {cell} outside lattice {self.lattice.label()}")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def rect(
        cls, lat: LatticeSpec, origin: Sequence[int], size: Sequence[int]
    ) -> "Region":
        """Cells origin..origin+size-1 per direction, wrapping periodically."""
        ranges = [
            [(o + d) % n for d in range(s)] for o, s, n in zip(origin, size, lat.extent)
        ]
        if lat.dim == 1:
            cells = {(a,) for a in ranges[0]}
        else:
            cells = {(a, b) for a in ranges[0] for b in ranges[1]}
        return cls(lat, frozenset(cells))

    @property
    def support(self) -> SupportSet:
        return SupportSet.of(self.lattice.cells_to_qubits(self.cells))

    def complement(self) -> "Region":
        every = {self.lattice.cell_coord(i) for i in range(self.lattice.n_cells)}
        return Region(self.lattice, frozenset(every - self.cells))

    def __or__(self, other: "Region") -> "Region":
        return Region(self.lattice, self.cells | other.cells)

    def __sub__(self, other: "Region") -> "Region":
        return Region(self.lattice, self.cells - other.cells)

    def __len__(self) -> int:
        return len(self.cells)


RegionLike = Union[Region, SupportSet, Iterable[int]]


def _support(r: RegionLike) -> SupportSet:
    if isinstance(r, Region):
        return r.support
    if isinstance(r, SupportSet):
        return r
    return SupportSet.of(r)


def parse_region(text: str, lat: LatticeSpec) -> Region:
    """Parse ``"x0:x1,y0:y1"`` (inclusive cell ranges) joined with ``+``."""
    cells: set[tuple[int, ...]] = set()
    for part in text.split("+"):
        part = part.strip()
        if not part:
            raise InputError(f"empty region term in {text!r}")
        axes = part.split(",")
        if len(axes) != lat.dim:
            raise InputError(f"region {part!r} needs {lat.dim} range(s)")
        spans = []
        for ax, n in zip(axes, lat.extent):
            bounds = ax.split(":")
            try:
                if len(bounds) == 1:
                    lo = hi = int(bounds[0])
                elif len(bounds) == 2:
                    lo, hi = int(bounds[0]), int(bounds[1])
                else:
                    raise ValueError
            except ValueError:
                raise InputError(f"bad range {ax!r} in region {text!r}") from None
            if not 0 <= lo <= hi < n:
                raise InputError(f"range {lo}:{hi} outside 0..{n - 1}")
            spans.append(range(lo, hi + 1))
        if lat.dim == 1:
            cells.update((a,) for a in spans[0])
        else:
            cells.update((a, b) for a in spans[0] for b in spans[1])
    return Region(lat, frozenset(cells))


@dataclass(frozen=True)
class PureCompletion:
    """A group with one logical operator per pair added, so that k = 0."""

    base: StabilizerGroup
    added: tuple[PauliOperator, ...]
    group: StabilizerGroup

    @classmethod
    def of(
        cls,
        base: StabilizerGroup,
        use: str = "r",
        signs: Sequence[int] | None = None,
    ) -> "PureCompletion":
        """Add the ``r`` (default) or ``l`` member of each canonical pair.

        ``signs`` holds +1/-1 per pair; the default is all +1.
        """
        ls = base.canonical_set
        if use not in ("r", "l"):
            raise InputError("use must be 'r' or 'l'")
        ops = ls.rs if use == "r" else ls.ells
        if signs is None:
            signs = [1] * len(ops)
        if len(signs) != len(ops):
            raise InputError(f"need {len(ops)} signs, got {len(signs)}")
        added = tuple(op.with_phase(0 if s > 0 else 2) for op, s in zip(ops, signs))
        group = base.with_generators(added)
        if group.logical_count != 0:
            raise PreconditionError("completion did not remove every logical qubit")
        return cls(base, added, group)


GroupLike = Union[StabilizerGroup, PureCompletion]


def _group(gc: GroupLike) -> StabilizerGroup:
    return gc.group if isinstance(gc, PureCompletion) else gc


def entropy(gc: GroupLike, r: RegionLike) -> int:
    """Entanglement entropy of region ``r`` in bits."""
    g = _group(gc)
    s = _support(r)
    if g.logical_count > 0 and logical_count_in_region(g, s) > 0:
        raise PreconditionError("region supports logical operators; supply a pure completion")
    return len(s) - restriction_rank(g, s)


def mutual_information(gc: GroupLike, a: RegionLike, b: RegionLike) -> int:
    sa, sb = _support(a), _support(b)
    if set(sa) & set(sb):
        raise InputError("mutual information needs disjoint regions")
    union = SupportSet.of(list(sa) + list(sb))
    return entropy(gc, sa) + entropy(gc, sb) - entropy(gc, union)


@dataclass(frozen=True)
class AnnulusSpec:
    """Inner rectangle (origin, size) surrounded by a border of ``width`` cells."""

    origin: tuple[int, int]
    size: tuple[int, int]
    width: int = 1

    @property
    def outer_size(self) -> tuple[int, int]:
        return (self.size[0] + 2 * self.width, self.size[1] + 2 * self.width)


def annulus_regions(lat: LatticeSpec, ann: AnnulusSpec) -> dict[str, Region]:
    """Regions A (full annulus), B (no top strip), C (no bottom strip), D (neither).

    The outer rectangle may cover a full period; it may not exceed one.
    """
    if lat.dim != 2:
        raise GeometryError("an annulus needs a 2D lattice")
    a, b = ann.size
    w = ann.width
    if a < 1 or b < 1 or w < 1:
        raise GeometryError("annulus sizes and width must be positive")
    ox, oy = ann.outer_size
    if ox > lat.extent[0] or oy > lat.extent[1]:
        raise GeometryError(
            f"annulus of outer size {ox}x{oy} does not fit on {lat.label()}"
        )
    x0 = ann.origin[0] - w
    y0 = ann.origin[1] - w
    outer = Region.rect(lat, (x0, y0), (ox, oy))
    inner = Region.rect(lat, ann.origin, ann.size)
    full = outer - inner
    bottom = Region.rect(lat, (x0, y0), (ox, w))
    top = Region.rect(lat, (x0, y0 + oy - w), (ox, w))
    return {"A": full, "B": full - top, "C": full - bottom, "D": full - top - bottom}


def topological_entropy(gc: GroupLike, ann: AnnulusSpec) -> int:
    g = _group(gc)
    if g.lattice is None:
        raise GeometryError("topological entropy needs a lattice-built group")
    regs = annulus_regions(g.lattice, ann)
    e = {name: entropy(gc, reg) for name, reg in regs.items()}
    return e["B"] + e["C"] - e["A"] - e["D"]


def local_indistinguishability(g: StabilizerGroup, r: RegionLike) -> bool:
    return logical_count_in_region(g, _support(r)) == 0


# code distance --------------------------------------------------------------

@dataclass(frozen=True)
class DistanceExceeds:
    """Marker: no logical operator of weight <= ``bound`` exists."""

    bound: int

    def __str__(self) -> str:
        return f"d>{self.bound}"


def _adjacency(g: StabilizerGroup) -> list[list[int]]:
    """Qubits are adjacent when some generator acts on both."""
    n = g.n_qubits
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for gen in g.generators:
        qs = list(gen.support)
        for q in qs:
            nbrs[q].update(qs)
    for q in range(n):
        nbrs[q].discard(q)
    return [sorted(s) for s in nbrs]


def _connected_subsets(adj: list[list[int]], root: int, size: int) -> Iterator[tuple[int, ...]]:
    """ESU enumeration of connected subsets of ``size`` whose minimum is ``root``."""

    def extend(sub: list[int], ext: list[int], nbhd: set[int]) -> Iterator[tuple[int, ...]]:
        if len(sub) == size:
            yield tuple(sorted(sub))
            return
        ext = list(ext)
        while ext:
            u = ext.pop(0)
            fresh = [x for x in adj[u] if x > root and x not in nbhd]
            new_nbhd = nbhd | set(fresh)
            yield from extend(sub + [u], ext + fresh, new_nbhd)

    start = [x for x in adj[root] if x > root]
    yield from extend([root], start, {root, *start})


def _has_logical_on(g: StabilizerGroup, qubits: Sequence[int]) -> bool:
    """Whether some logical operator is supported inside ``qubits``."""
    n = g.n_qubits
    m = len(qubits)
    mask = 0
    for q in qubits:
        mask |= 1 << q
    rows = []
    for gen in g.generators:
        if not ((gen.x_bits | gen.z_bits) & mask):
            continue
        # column t pairs with the x-variable, column m+t with the z-variable
        row = [0] * (2 * m)
        for t, q in enumerate(qubits):
            row[t] = (gen.z_bits >> q) & 1
            row[m + t] = (gen.x_bits >> q) & 1
        rows.append(row)
    words = gf2.words_for(2 * m)
    packed = gf2.pack_rows(np.array(rows, dtype=np.uint8).reshape(-1, 2 * m), words)
    kernel = gf2.unpack_rows(gf2.nullspace(packed, range(2 * m), words), 2 * m)
    for vec in kernel:
        x = z = 0
        for t, q in enumerate(qubits):
            x |= int(vec[t]) << q
            z |= int(vec[m + t]) << q
        if not g.contains(PauliOperator(n, x, z), ignore_sign=True):
            return True
    return False


def code_distance(
    g: StabilizerGroup, max_weight: int, threads: int | None = None
) -> Union[int, DistanceExceeds]:
    """Minimum weight of a logical operator, searched up to ``max_weight``.

    A minimum-weight logical operator has connected support on the qubit
    adjacency graph, so only connected supports are enumerated, by size.
    """
    if max_weight < 1:
        raise InputError("max_weight must be at least 1")
    if g.logical_count == 0:
        return DistanceExceeds(max_weight)
    adj = _adjacency(g)
    n = g.n_qubits
    workers = thread_count() if threads is None else max(1, threads)
    for w in range(1, min(max_weight, n) + 1):
        found = threading.Event()

        def scan(root: int, w: int = w, found: threading.Event = found) -> bool:
            for sub in _connected_subsets(adj, root, w):
                if found.is_set():
                    return False
                if _has_logical_on(g, sub):
                    found.set()
                    return True
            return False

        if workers == 1:
            hit = any(scan(root) for root in range(n))
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                hit = any(list(pool.map(scan, range(n))))
        if hit:
            return w
    return DistanceExceeds(max_weight)
