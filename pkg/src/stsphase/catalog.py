"""Built-in models used as presets and as the regression corpus.

Several entries are written at the qubit level (``raw``) with generators
wider than two cells; their ``grouping`` gives the composite-cell factors
that turn them into local models.  ``expected_report`` evaluates the size
rules recorded for each entry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import InputError
from .lattice import GeneratorTemplate, Model

__all__ = ["CatalogEntry", "get", "names", "expected_report", "ENTRIES"]

Size = tuple[int, ...]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    model: Model
    grouping: Size | None = None
    fixed_size: Size | None = None
    k_rule: Callable[[Size], int] | None = None
    fingerprint: tuple[int, int] | None = None
    s_topo: int | None = None
    distance: dict[Size, int] = field(default_factory=dict)
    sizes: tuple[Size, ...] = ()
    is_sts: bool = True

    @property
    def dim(self) -> int:
        return self.model.dim

    @property
    def cell_size(self) -> int:
        return self.model.cell_size

    @property
    def templates(self) -> tuple[GeneratorTemplate, ...]:
        return self.model.templates

    def sts_model(self) -> Model:
        """The local (composite-cell) form of the model."""
        if self.grouping is None:
            return self.model
        return self.model.regroup(self.grouping, name=self.name)


def _t(tid: str, *terms: tuple) -> GeneratorTemplate:
    """Terms as (offset..., site, letter) with the offset given first."""
    return GeneratorTemplate(
        tid, tuple((tuple(t[:-2]), t[-2], t[-1]) for t in terms)
    )


def _const(k: int) -> Callable[[Size], int]:
    return lambda size: k


def _cross_k(size: Size) -> int:
    a = 2 if size[0] % 3 == 0 else 1
    b = 2 if size[1] % 2 == 0 else 1
    return a * b


def _zzz_k(size: Size) -> int:
    return 2 if size[0] % 3 == 0 else 0


def _build_entries() -> dict[str, CatalogEntry]:
    e: list[CatalogEntry] = []

    e.append(CatalogEntry(
        "ferro1d", "classical ferromagnet: -sum Z_j Z_j+1",
        Model("ferro1d", 1, 1, (_t("zz", (0, 0, "Z"), (1, 0, "Z")),)),
        k_rule=_const(1), fingerprint=(1, 0), distance={(6,): 1},
        sizes=tuple((n,) for n in range(3, 13)),
    ))
    e.append(CatalogEntry(
        "cluster1d", "cluster state: -sum Z_j-1 X_j Z_j+1, two qubits per cell",
        Model("cluster1d", 1, 1, (_t("zxz", (0, 0, "Z"), (1, 0, "X"), (2, 0, "Z")),)),
        grouping=(2,), k_rule=_const(0), fingerprint=(0, 0),
        sizes=((4,), (6,), (8,), (10,)),
    ))
    e.append(CatalogEntry(
        "fivequbit", "five qubit code: translations of XYYX on a ring of five",
        Model("fivequbit", 1, 1, (_t("xyyx", (0, 0, "X"), (1, 0, "Y"), (2, 0, "Y"), (3, 0, "X")),)),
        fixed_size=(5,), k_rule=_const(1), distance={(5,): 3}, sizes=((5,),), is_sts=False,
    ))
    e.append(CatalogEntry(
        "ext5chain", "extended five qubit chain: -sum X_j Y_j+1 Y_j+2 X_j+3, three qubits per cell",
        Model("ext5chain", 1, 1, (_t("xyyx", (0, 0, "X"), (1, 0, "Y"), (2, 0, "Y"), (3, 0, "X")),)),
        grouping=(3,), k_rule=_const(1), fingerprint=(1, 0),
        sizes=((3,), (6,), (9,), (12,)),
    ))
    e.append(CatalogEntry(
        "ferro2d", "2D classical ferromagnet on horizontal and vertical bonds",
        Model("ferro2d", 2, 1, (
            _t("h", (0, 0, 0, "Z"), (1, 0, 0, "Z")),
            _t("v", (0, 0, 0, "Z"), (0, 1, 0, "Z")),
        )),
        k_rule=_const(1), fingerprint=(1, 0), s_topo=1,
        sizes=((3, 3), (4, 4), (3, 5)),
    ))
    e.append(CatalogEntry(
        "toric", "toric code in composite-cell form (two qubits per cell)",
        Model("toric", 2, 2, (
            _t("A", (0, 0, 0, "Z"), (0, 0, 1, "X"), (1, 0, 0, "Z"), (0, 1, 1, "X")),
            _t("B", (1, 0, 0, "X"), (0, 1, 1, "Z"), (1, 1, 1, "Z"), (1, 1, 0, "X")),
        )),
        k_rule=_const(2), fingerprint=(0, 2), s_topo=2,
        sizes=tuple((a, b) for a in range(3, 7) for b in range(3, 7)),
    ))
    e.append(CatalogEntry(
        "toric_edges", "toric code with star and plaquette terms on edge qubits",
        Model("toric_edges", 2, 2, (
            _t("star", (1, 1, 0, "X"), (0, 1, 0, "X"), (1, 1, 1, "X"), (1, 0, 1, "X")),
            _t("plaq", (0, 0, 0, "Z"), (0, 1, 0, "Z"), (0, 0, 1, "Z"), (1, 0, 1, "Z")),
        )),
        k_rule=_const(2), fingerprint=(0, 2), s_topo=2, distance={(3, 3): 3},
        sizes=((3, 3), (4, 4)),
    ))
    e.append(CatalogEntry(
        "cluster2d", "2D cluster state: X times Z on the four neighbours, 2x2 qubits per cell",
        Model("cluster2d", 2, 1, (
            _t("s", (1, 1, 0, "X"), (0, 1, 0, "Z"), (2, 1, 0, "Z"), (1, 0, 0, "Z"), (1, 2, 0, "Z")),
        )),
        grouping=(2, 2), k_rule=_const(0), fingerprint=(0, 0), s_topo=0,
        sizes=((4, 4), (6, 4)),
    ))
    e.append(CatalogEntry(
        "product2d", "2D product state: -sum X",
        Model("product2d", 2, 1, (_t("x", (0, 0, 0, "X")),)),
        k_rule=_const(0), fingerprint=(0, 0), s_topo=0,
        sizes=((3, 3), (4, 4)),
    ))
    e.append(CatalogEntry(
        "cross", "X on a horizontal triple, Z above and below the centre; 3x2 qubits per cell",
        Model("cross", 2, 1, (
            _t("s", (0, 1, 0, "X"), (1, 1, 0, "X"), (2, 1, 0, "X"), (1, 0, 0, "Z"), (1, 2, 0, "Z")),
        )),
        grouping=(3, 2), k_rule=_cross_k, fingerprint=(0, 4), s_topo=4,
        sizes=tuple((a, b) for a in range(3, 8) for b in range(3, 7)),
    ))
    s1 = ((0, 0, 0, "Z"), (0, 0, 1, "X"), (1, 0, 1, "X"), (0, 1, 0, "Z"))
    s2 = ((1, 0, 1, "Z"), (0, 1, 0, "X"), (1, 1, 0, "X"), (1, 1, 1, "Z"))
    e.append(CatalogEntry(
        "cross_cg", "cross model in its composite form: two toric copies plus decoupled chains",
        Model("cross_cg", 2, 6, (
            _t("S1", *s1),
            _t("S2", *s2),
            _t("S3", *((a, b, s + 2, p) for a, b, s, p in s1)),
            _t("S4", *((a, b, s + 2, p) for a, b, s, p in s2)),
            _t("S5", (0, 0, 5, "X"), (0, 1, 4, "X")),
            _t("S6", (0, 0, 5, "Z"), (0, 1, 4, "Z")),
        )),
        k_rule=_const(4), fingerprint=(0, 4), s_topo=4,
        sizes=((2, 2), (3, 3), (4, 4)),
    ))
    e.append(CatalogEntry(
        "twotoric", "two decoupled toric codes: Z above and below, X left and right",
        Model("twotoric", 2, 1, (
            _t("s", (1, 0, 0, "Z"), (1, 2, 0, "Z"), (0, 1, 0, "X"), (2, 1, 0, "X")),
        )),
        grouping=(2, 2), k_rule=_const(4), fingerprint=(0, 4), s_topo=4,
        sizes=((4, 4), (6, 4), (4, 6)),
    ))
    e.append(CatalogEntry(
        "zzz_chain", "-sum Z_j Z_j+1 Z_j+2, three qubits per cell",
        Model("zzz_chain", 1, 1, (_t("zzz", (0, 0, "Z"), (1, 0, "Z"), (2, 0, "Z")),)),
        grouping=(3,), k_rule=_zzz_k, fingerprint=(2, 0),
        sizes=tuple((n,) for n in range(3, 13)),
    ))
    e.append(CatalogEntry(
        "vchains", "decoupled vertical ferromagnetic chains (not an STS model)",
        Model("vchains", 2, 1, (_t("zz", (0, 0, 0, "Z"), (0, 1, 0, "Z")),)),
        k_rule=lambda size: size[0], is_sts=False,
        sizes=((2, 3), (3, 3), (4, 3)),
    ))
    return {x.name: x for x in e}


ENTRIES: dict[str, CatalogEntry] = _build_entries()


def names() -> list[str]:
    return list(ENTRIES)


def get(name: str) -> CatalogEntry:
    try:
        return ENTRIES[name]
    except KeyError:
        raise InputError(
            f"unknown catalog model {name!r}; available: {', '.join(ENTRIES)}"
        ) from None


def expected_report(name: str, size: Sequence[int] | int) -> dict[str, object]:
    """Expected values at a raw (qubit-cell) size."""
    entry = get(name)
    if isinstance(size, int):
        size = (size,)
    size = tuple(size)
    if len(size) != entry.dim:
        raise InputError(f"{name} is {entry.dim}D; got size {size}")
    if entry.fixed_size is not None and size != entry.fixed_size:
        raise InputError(f"{name} is defined only at size {entry.fixed_size}")
    out: dict[str, object] = {"name": name, "size": size}
    if entry.k_rule is not None:
        out["k"] = entry.k_rule(size)
    if entry.fingerprint is not None:
        out["k0"], out["k1"] = entry.fingerprint
    if entry.s_topo is not None:
        out["s_topo"] = entry.s_topo
    if size in entry.distance:
        out["distance"] = entry.distance[size]
    return out
