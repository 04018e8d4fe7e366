"""Translation equivalence, scale symmetry and coarse-graining to composite cells."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod
from typing import Sequence

from ..errors import InconclusiveError, PreconditionError
from ..lattice import Model, translate
from ..stabilizer import CanonicalLogicalSet, StabilizerGroup, build

__all__ = [
    "check_translation_equivalence",
    "translation_equivalent_by",
    "ScaleReport",
    "check_scale_symmetry",
    "default_probe_sizes",
    "CoarseGrainResult",
    "coarse_grain",
]

Size = tuple[int, ...]


def translation_equivalent_by(
    g: StabilizerGroup,
    direction: int,
    steps: int,
    ls: CanonicalLogicalSet | None = None,
) -> bool:
    """Whether u ~ T_m^steps(u) for every canonical logical u."""
    if g.lattice is None:
        raise PreconditionError("translation needs a lattice-built group")
    ls = g.canonical_set if ls is None else ls
    for u in ls.operators():
        moved = translate(u, direction, steps, g.lattice)
        if not g.contains(u * moved, ignore_sign=True):
            return False
    return True


def check_translation_equivalence(
    g: StabilizerGroup, ls: CanonicalLogicalSet | None = None
) -> dict[int, bool]:
    """Verdict per direction (1-based) for unit translations.

    Products of canonical generators inherit the property, so checking the
    2k generators covers every logical operator.
    """
    if g.lattice is None:
        raise PreconditionError("translation needs a lattice-built group")
    return {
        m: translation_equivalent_by(g, m, 1, ls) for m in range(1, g.lattice.dim + 1)
    }


@dataclass(frozen=True)
class ScaleReport:
    ks: dict[Size, int] = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return len(set(self.ks.values())) <= 1

    @property
    def k(self) -> int | None:
        vals = set(self.ks.values())
        return vals.pop() if len(vals) == 1 else None


def default_probe_sizes(model: Model, upper: int | None = None) -> list[Size]:
    """All extents with 2 <= n_m <= max(6, 2v+1), plus folded sizes with one n_m = 1."""
    hi = max(6, 2 * model.cell_size + 1) if upper is None else upper
    rng = range(2, hi + 1)
    sizes: list[Size] = [tuple(s) for s in itertools.product(rng, repeat=model.dim)]
    if model.dim == 1:
        sizes.insert(0, (1,))
    else:
        sizes.insert(0, (1, 3))
        sizes.insert(1, (3, 1))
    return sizes


def check_scale_symmetry(
    model: Model, sizes: Sequence[Sequence[int] | int] | None = None
) -> ScaleReport:
    """Build the model at every size and record k."""
    probe = default_probe_sizes(model) if sizes is None else [
        (s,) if isinstance(s, int) else tuple(s) for s in sizes
    ]
    if len(probe) < 2:
        raise PreconditionError("scale symmetry needs at least two sizes")
    ks = {}
    for size in probe:
        ks[size] = build(model.templates, model.lattice(size)).logical_count
    return ScaleReport(ks)


@dataclass(frozen=True)
class CoarseGrainResult:
    factors: Size
    translation_factors: Size
    n_min: Size
    k_target: int
    report: ScaleReport
    model: Model


def _sizes_by_volume(dim: int, cap: int) -> list[Size]:
    sizes = list(itertools.product(range(1, cap + 1), repeat=dim))
    sizes.sort(key=lambda s: (prod(s), s))
    return [tuple(s) for s in sizes]


def coarse_grain(
    model: Model,
    k_target: int | None = None,
    cap: int = 12,
    verify_upper: int = 4,
) -> CoarseGrainResult:
    """Cell-grouping factors that restore scale symmetry.

    1. Find the smallest size n_min (by volume) with k = k_target.
    2. Per direction m, on the system (a_1..a_{m-1}, n_min_m, ...), take the
       smallest a_m dividing the extent with T_m^{a_m}(u) ~ u for all u.
    3. Enlarge each a_m to its least multiple that makes the grouped
       templates fit a 2-cell block.
    4. Regroup and check k on all extents 1 <= n_m <= ``verify_upper``.
    """
    sizes = _sizes_by_volume(model.dim, cap)
    if k_target is None:
        probe = [s for s in sizes if max(s) <= min(cap, 6)]
        k_target = max(build(model.templates, model.lattice(s)).logical_count for s in probe)
    n_min: Size | None = None
    for s in sizes:
        if build(model.templates, model.lattice(s)).logical_count == k_target:
            n_min = s
            break
    if n_min is None:
        raise InconclusiveError(f"no size with n_m <= {cap} reaches k={k_target}")

    current = list(n_min)
    trans: list[int] = []
    for m in range(model.dim):
        g = build(model.templates, model.lattice(tuple(current)))
        found = None
        for a in range(1, min(cap, current[m]) + 1):
            if current[m] % a:
                continue
            if translation_equivalent_by(g, m + 1, a):
                found = a
                break
        if found is None:
            raise InconclusiveError(
                f"no translation period <= {cap} found in direction {m + 1}"
            )
        trans.append(found)
        current[m] = found

    span = model.span
    factors = []
    for a, s in zip(trans, span):
        f = a
        while f < s - 1:
            f += a
        factors.append(f)
    grouped = model.regroup(tuple(factors), name=model.name) if any(f > 1 for f in factors) else model
    verify = [tuple(s) for s in itertools.product(range(1, verify_upper + 1), repeat=model.dim)]
    report = check_scale_symmetry(grouped, verify)
    if not report.verdict or report.k != k_target:
        raise InconclusiveError(
            f"grouping {tuple(factors)} does not give k={k_target} at every probed size"
        )
    return CoarseGrainResult(tuple(factors), tuple(trans), n_min, k_target, report, grouped)
