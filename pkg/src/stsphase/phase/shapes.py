"""Shape classification of logical operators and the phase fingerprint."""

from __future__ import annotations

from dataclasses import dataclass

from ..entanglement import Region
from ..errors import InputError, NotSTSModelError, PreconditionError, StructuralError
from ..stabilizer import CanonicalLogicalSet, StabilizerGroup, logical_count_in_region
from .translation import check_translation_equivalence

__all__ = [
    "PhaseFingerprint",
    "classify_shapes",
    "DeformationCounts",
    "deformation_counts",
    "same_phase",
    "require_sts",
]


@dataclass(frozen=True)
class PhaseFingerprint:
    """(D, k, k0, k1): pairs of 0-dim/D-dim partners and of 1-dim/1-dim partners."""

    dim: int
    k: int
    k0: int
    k1: int

    def __post_init__(self) -> None:
        if self.dim not in (1, 2):
            raise InputError(f"dimension must be 1 or 2, got {self.dim}")
        if min(self.k, self.k0, self.k1) < 0 or self.k0 + self.k1 != self.k:
            raise StructuralError(f"inconsistent fingerprint k={self.k} k0={self.k0} k1={self.k1}")
        if self.dim == 1 and self.k1:
            raise StructuralError("a 1D fingerprint has k1 = 0")

    def serialize(self) -> str:
        return f"D={self.dim} k={self.k} k0={self.k0} k1={self.k1}"

    @classmethod
    def parse(cls, text: str) -> "PhaseFingerprint":
        try:
            fields = dict(part.split("=", 1) for part in text.split())
            return cls(int(fields["D"]), int(fields["k"]), int(fields["k0"]), int(fields["k1"]))
        except (KeyError, ValueError):
            raise InputError(f"cannot parse fingerprint {text!r}") from None

    def __str__(self) -> str:
        return self.serialize()


def require_sts(g: StabilizerGroup, ls: CanonicalLogicalSet | None = None) -> None:
    """Raise unless the group comes from local templates with translation equivalence."""
    if g.lattice is None or not g.templates:
        raise NotSTSModelError("not an STS model: group was not built from templates")
    if not all(t.is_local for t in g.templates):
        raise NotSTSModelError("not an STS model: generators exceed the 2-cell block")
    verdict = check_translation_equivalence(g, ls)
    failed = [m for m, ok in verdict.items() if not ok]
    if failed:
        raise NotSTSModelError(
            f"not an STS model: translation equivalence fails in direction {failed[0]}"
        )


def _window_counts(g: StabilizerGroup) -> list[int]:
    lat = g.lattice
    assert lat is not None
    n1, n2 = lat.extent
    width = max(1, min(2 * lat.cell_size, n1 - 1))
    counts = []
    for x in range(n1):
        for y in range(n2):
            win = Region.rect(lat, (x, y), (width, 1))
            counts.append(logical_count_in_region(g, win.support))
    return counts


def classify_shapes(
    g: StabilizerGroup, ls: CanonicalLogicalSet | None = None
) -> PhaseFingerprint:
    """Fingerprint of an STS group.

    In 2D, k0 is the number of independent logical operators inside a strip
    of min(2v, n1-1) x 1 cells (every placement must agree) and k1 = k - k0.
    The row region Q(1) and its complement must each hold exactly k.
    """
    require_sts(g, ls)
    lat = g.lattice
    assert lat is not None
    k = g.logical_count
    if lat.dim == 1:
        return PhaseFingerprint(1, k, k, 0)
    counts = _window_counts(g)
    if len(set(counts)) != 1:
        raise StructuralError(f"window counts differ between placements: {sorted(set(counts))}")
    k0 = counts[0]
    row = Region.rect(lat, (0, 0), (lat.extent[0], 1))
    g_row = logical_count_in_region(g, row.support)
    g_rest = logical_count_in_region(g, row.complement().support)
    if not g_row == g_rest == k:
        raise StructuralError(f"row counts {g_row}, {g_rest} differ from k={k}")
    if k0 > k:
        raise StructuralError(f"window holds {k0} logical operators but k={k}")
    return PhaseFingerprint(2, k, k0, k - k0)


@dataclass(frozen=True)
class DeformationCounts:
    counts: dict[str, int]
    checks: dict[str, bool]

    @property
    def all_hold(self) -> bool:
        return all(self.checks.values())


def deformation_counts(g: StabilizerGroup, strict: bool = True) -> DeformationCounts:
    """Logical counts over cell, row and column regions and their complements.

    The identities checked are g(not P11) = g(Q1 u Q2), g(not (Q1 u Q2)) =
    g(P11), and g(Q) = g(not Q) = k for the row Q1 and the column Q2.
    """
    lat = g.lattice
    if lat is None or lat.dim != 2:
        raise PreconditionError("deformation counts need a 2D lattice-built group")
    n1, n2 = lat.extent
    p11 = Region.rect(lat, (0, 0), (1, 1))
    q1 = Region.rect(lat, (0, 0), (n1, 1))
    q2 = Region.rect(lat, (0, 0), (1, n2))
    regions = {
        "P11": p11,
        "not_P11": p11.complement(),
        "Q1": q1,
        "not_Q1": q1.complement(),
        "Q2": q2,
        "not_Q2": q2.complement(),
        "Q1_or_Q2": q1 | q2,
        "not_Q1_or_Q2": (q1 | q2).complement(),
    }
    c = {name: logical_count_in_region(g, r.support) for name, r in regions.items()}
    k = g.logical_count
    checks = {
        "not_P11==Q1_or_Q2": c["not_P11"] == c["Q1_or_Q2"],
        "not_Q1_or_Q2==P11": c["not_Q1_or_Q2"] == c["P11"],
        "Q1==not_Q1==k": c["Q1"] == c["not_Q1"] == k,
        "Q2==not_Q2==k": c["Q2"] == c["not_Q2"] == k,
    }
    out = DeformationCounts(c, checks)
    if strict and not out.all_hold:
        failed = [name for name, ok in checks.items() if not ok]
        raise StructuralError(f"deformation identities fail: {', '.join(failed)}")
    return out


def same_phase(f1: PhaseFingerprint, f2: PhaseFingerprint) -> bool:
    """Equal (k0, k1).  Different values prove separation; in 2D equality is
    the conjectured criterion for sameness."""
    if f1.dim != f2.dim:
        raise InputError("cannot compare fingerprints of different dimensions")
    return (f1.k0, f1.k1) == (f2.k0, f2.k1)
