"""Loop-like stabilizers and braiding phases."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..entanglement import Region
from ..errors import GeometryError, PreconditionError
from ..lattice import instantiate, origins
from ..pauli import PauliOperator, restrict
from ..stabilizer import StabilizerGroup

__all__ = ["LoopStabilizer", "loop_stabilizers", "segment", "excited_templates", "braiding_phase"]


@dataclass(frozen=True)
class LoopStabilizer:
    generator_id: str
    origin: tuple[int, int]
    rect: tuple[int, int]
    operator: PauliOperator
    box: Region
    border_only: bool
    dual_ids: tuple[str, ...]


def _border(box_origin: Sequence[int], box_size: Sequence[int], g: StabilizerGroup) -> Region:
    lat = g.lattice
    assert lat is not None
    (x0, y0), (bx, by) = box_origin, box_size
    cells = set()
    for i in range(bx):
        for j in range(by):
            if i in (0, bx - 1) or j in (0, by - 1):
                cells.add(((x0 + i) % lat.extent[0], (y0 + j) % lat.extent[1]))
    return Region(lat, frozenset(cells))


def segment(p: PauliOperator, cells: Region) -> PauliOperator:
    """Restriction of ``p`` to the qubits of ``cells``."""
    return restrict(p, cells.support)


def excited_templates(g: StabilizerGroup, p: PauliOperator) -> tuple[str, ...]:
    """Template ids with at least one placed instance anticommuting with ``p``."""
    lat = g.lattice
    assert lat is not None
    out = []
    for t in g.templates:
        if any(not instantiate(t, r, lat).commutes_with(p) for r in origins(lat)):
            out.append(t.id)
    return tuple(out)


def loop_stabilizers(
    g: StabilizerGroup,
    generator_id: str,
    rect: Sequence[int],
    origin: Sequence[int] = (0, 0),
) -> LoopStabilizer:
    """Product of one template over an x-by-y block of origins.

    ``border_only`` reports whether the support stays on the border of the
    bounding box; ``dual_ids`` lists the templates excited by the half of
    the loop lying in the left columns of the box.
    """
    lat = g.lattice
    if lat is None or lat.dim != 2:
        raise PreconditionError("loop stabilizers need a 2D lattice-built group")
    t = next((t for t in g.templates if t.id == generator_id), None)
    if t is None:
        raise PreconditionError(f"no template {generator_id!r}")
    x, y = (int(r) for r in rect)
    span = t.span
    box_size = (x + span[0] - 1, y + span[1] - 1)
    if x < 1 or y < 1 or box_size[0] > lat.extent[0] or box_size[1] > lat.extent[1]:
        raise GeometryError(
            f"rectangle {x}x{y} with its {box_size[0]}x{box_size[1]} box does not fit on {lat.label()}"
        )
    op = PauliOperator.identity(lat.n_qubits)
    for i in range(x):
        for j in range(y):
            op = op * instantiate(t, (origin[0] + i, origin[1] + j), lat)
    box = Region.rect(lat, origin, box_size)
    border = _border(origin, box_size, g)
    border_only = set(op.support) <= set(border.support)
    left = Region.rect(lat, origin, ((box_size[0] + 1) // 2, box_size[1]))
    dual = excited_templates(g, segment(op, left))
    return LoopStabilizer(
        generator_id, (int(origin[0]), int(origin[1])), (x, y), op, box, border_only, dual
    )


def braiding_phase(a: PauliOperator, b: PauliOperator) -> int:
    """+1 if the path operators commute, -1 if they anticommute."""
    return 1 if a.commutes_with(b) else -1

