"""Acceptance gate: one PASS/FAIL line per criterion.

Run ``pytest tests/test_acceptance.py -v -s`` or ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path
from typing import Callable

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import contiguous_regions, ground_state, small_catalog_cases, state_entropy  # noqa: E402
from stsphase import catalog  # noqa: E402
from stsphase.cli import run as cli_run  # noqa: E402
from stsphase.entanglement import (  # noqa: E402
    AnnulusSpec,
    PureCompletion,
    Region,
    code_distance,
    entropy,
    local_indistinguishability,
    mutual_information,
    topological_entropy,
)
from stsphase.errors import NotSTSModelError, StructuralError  # noqa: E402
from stsphase.pauli import PauliOperator  # noqa: E402
from stsphase.phase import (  # noqa: E402
    PhaseFingerprint,
    check_scale_symmetry,
    check_translation_equivalence,
    classify_shapes,
    coarse_grain,
    deformation_counts,
    disentangle_1d,
    loop_stabilizers,
    same_phase,
    segment,
)
from stsphase.stabilizer import build  # noqa: E402

Outcome = tuple[bool, str]


class Checks:
    """Collects named sub-checks; the criterion passes when all of them do."""

    def __init__(self) -> None:
        self.failed: list[str] = []
        self.count = 0

    def __call__(self, ok: bool, label: str) -> None:
        self.count += 1
        if not ok:
            self.failed.append(label)

    def outcome(self, summary: str) -> Outcome:
        if self.failed:
            shown = "; ".join(self.failed[:4]) + (f" (+{len(self.failed) - 4} more)" if len(self.failed) > 4 else "")
            return False, f"{summary} | failed: {shown}"
        return True, f"{summary} | {self.count} checks"


def _raw(name: str, size):
    m = catalog.get(name).model
    return build(m.templates, m.lattice(size))


def _sts(name: str, size):
    m = catalog.get(name).sts_model()
    return build(m.templates, m.lattice(size))


def criterion_1() -> Outcome:
    c = Checks()
    t0 = time.perf_counter()
    g = _raw("fivequbit", (5,))
    c(g.logical_count == 1, f"k={g.logical_count}")
    d = code_distance(g, 5)
    c(d == 3, f"d={d}")
    ga = g.logical_count_in_region([0, 1, 2])
    gb = g.logical_count_in_region([3, 4])
    c(ga == 2, f"g_A={ga}")
    c(gb == 0, f"g_B={gb}")
    c(g.centralizer_basis.size == 6, f"G(C)={g.centralizer_basis.size}")
    dt = time.perf_counter() - t0
    c(dt < 1.0, f"time {dt:.2f}s")
    return c.outcome(f"five-qubit code k=1 d=3 g_A=2 g_B=0 G(C)=6 in {dt:.3f}s")


def criterion_2() -> Outcome:
    c = Checks()
    rng = np.random.default_rng(2024)
    for n in range(3, 13):
        g = _raw("ferro1d", (n,))
        c(g.logical_count == 1, f"N={n} k")
        ell, r = g.canonical_set.pairs[0]
        z0 = PauliOperator.single(n, 0, "Z")
        all_x = PauliOperator(n, (1 << n) - 1, 0)
        c(g.equivalent(ell, z0), f"N={n} l~Z0")
        c(g.equivalent(r, all_x), f"N={n} r~prod X")
        c(all(check_translation_equivalence(g).values()), f"N={n} translation")
        ghz = PureCompletion.of(g)
        for trial in range(20):
            while True:
                labels = rng.integers(0, 3, n)  # 0: A, 1: B, 2: neither
                if (labels == 0).any() and (labels == 1).any() and (labels == 2).any():
                    break
            a = np.flatnonzero(labels == 0).tolist()
            b = np.flatnonzero(labels == 1).tolist()
            mi = mutual_information(ghz, a, b)
            c(mi == 1, f"N={n} pair {trial} E(A:B)={mi}")
    return c.outcome("ferromagnet N=3..12 k=1, pair ~ (Z0, prod X), translation, GHZ E(A:B)=1 on 20 pairs")


def _intervals(n: int):
    return [tuple((o + d) % n for d in range(s)) for o in range(n) for s in range(1, n)]


def criterion_3() -> Outcome:
    c = Checks()
    for n in (4, 6, 8, 10):
        g = _raw("cluster1d", (n,))
        c(g.logical_count == 0, f"N={n} k")
        for q in range(n):
            c(entropy(g, [q]) == 1, f"N={n} E({q})")
        for j in range(2, n):
            e = entropy(g, range(j))
            c(e == 2, f"N={n} E({j} consecutive)={e}")
        supports = [set(p.support) for p in g.generators]
        for a in _intervals(n):
            for b in _intervals(n):
                sa, sb = set(a), set(b)
                # non-adjacent: disjoint and no generator acts on both
                if sa & sb or any(s & sa and s & sb for s in supports):
                    continue
                mi = mutual_information(g, a, b)
                c(mi == 0, f"N={n} E({a}:{b})={mi}")
        nf = disentangle_1d(_sts("cluster1d", (n // 2,)))
        c(
            (nf.ferromagnetic_pairs, nf.short_range_pairs, nf.verified) == (0, 1, True),
            f"N={n} normal form {nf.ferromagnetic_pairs},{nf.short_range_pairs}",
        )
    return c.outcome("cluster N=4,6,8,10 k=0, E(1)=1, E(j)=2 for 2<=j<=N-1, E(A:B)=0, normal form 0+1")


def criterion_4() -> Outcome:
    c = Checks()
    ferro_fp = classify_shapes(_sts("ferro1d", (4,)))
    for n in (3, 6, 9, 12):
        g = _raw("ext5chain", (n,))
        c(g.logical_count == 1, f"N={n} k={g.logical_count}")
        grouped = _sts("ext5chain", (n // 3,))
        nf = disentangle_1d(grouped)
        c(nf.ferromagnetic_pairs == 1 and nf.verified, f"N={n} normal form ferro={nf.ferromagnetic_pairs}")
        if n // 3 >= 2:
            fp = classify_shapes(grouped)
            c(fp == ferro_fp, f"N={n} fingerprint {fp}")
    res = coarse_grain(catalog.get("ext5chain").model)
    c(res.factors == (3,), f"a={res.factors}")
    return c.outcome("extended five-qubit chain k=1, a=3, 1 ferromagnetic pair, fingerprint of ferro1d")


def criterion_5() -> Outcome:
    c = Checks()
    t0 = time.perf_counter()
    for n1 in range(3, 7):
        for n2 in range(3, 7):
            g = _sts("toric", (n1, n2))
            c(g.logical_count == 2, f"{n1}x{n2} k")
            fp = classify_shapes(g)
            c((fp.k0, fp.k1) == (0, 2), f"{n1}x{n2} fingerprint {fp}")
            region = Region.rect(g.lattice, (0, 0), (n1 - 1, n2 - 1))
            c(local_indistinguishability(g, region), f"{n1}x{n2} indistinguishability")
            c(deformation_counts(g, strict=False).all_hold, f"{n1}x{n2} deformation")
    g6 = _sts("toric", (6, 6))
    pure = PureCompletion.of(g6)
    for w in (1, 2):
        s = topological_entropy(pure, AnnulusSpec((2, 2), (2, 2), w))
        c(s == 2, f"S_topo width {w} = {s}")
    a_path = segment(loop_stabilizers(g6, "A", (2, 4)).operator, Region.rect(g6.lattice, (0, 0), (2, 4)))
    b_loop = loop_stabilizers(g6, "B", (2, 2), origin=(4, 2)).operator
    c(not a_path.commutes_with(b_loop), "braiding phase")
    dt = time.perf_counter() - t0
    c(dt < 5.0, f"time {dt:.2f}s")
    return c.outcome(f"toric 3x3..6x6 k=2, (0,2), S_topo=2 (w=1,2), indistinguishable, deformation, braiding in {dt:.2f}s")


def criterion_6() -> Outcome:
    c = Checks()
    table = {}
    for l1 in range(3, 9):
        for l2 in range(3, 7):
            k = _raw("cross", (l1, l2)).logical_count
            table.setdefault((l1 % 3 != 0, l2 % 2 != 0), set()).add(k)
            want = catalog.expected_report("cross", (l1, l2))["k"]
            c(k == want, f"raw {l1}x{l2} k={k} want {want}")
    res = coarse_grain(catalog.get("cross").model, k_target=4)
    c(res.factors == (3, 2), f"a={res.factors}")
    for n1 in range(1, 6):
        for n2 in range(1, 6):
            k = _sts("cross", (n1, n2)).logical_count
            c(k == 4, f"grouped {n1}x{n2} k={k}")
    fp = classify_shapes(_sts("cross", (4, 4)))
    c((fp.k0, fp.k1) == (0, 4), f"fingerprint {fp}")
    s = topological_entropy(PureCompletion.of(_sts("cross", (6, 6))), AnnulusSpec((2, 2), (2, 2), 1))
    c(s == 4, f"S_topo={s}")
    c(same_phase(fp, classify_shapes(_sts("twotoric", (4, 4)))), "same_phase(cross, twotoric)")
    seen = ", ".join(f"{'L1!=0' if a else 'L1=0'}/{'L2 odd' if b else 'L2 even'}:{sorted(v)}" for (a, b), v in sorted(table.items()))
    return c.outcome(f"cross raw k table [{seen}], a=(3,2), k=4 grouped, (0,4), S_topo=4, same phase as twotoric")


def criterion_7() -> Outcome:
    c = Checks()
    for size in [(3, 3), (4, 4), (6, 6)]:
        g = _raw("ferro2d", size)
        c(g.logical_count == 1, f"{size} k")
    g = _raw("ferro2d", (6, 6))
    fp = classify_shapes(g)
    c((fp.k0, fp.k1) == (1, 0), f"fingerprint {fp}")
    s = topological_entropy(PureCompletion.of(g), AnnulusSpec((2, 2), (2, 2), 1))
    c(s == 1, f"GHZ S_topo={s}")
    region = Region.rect(g.lattice, (0, 0), (5, 5))
    c(not local_indistinguishability(g, region), "indistinguishability should fail")
    return c.outcome("2D ferromagnet k=1, (1,0), GHZ S_topo=1, distinguishable")


def criterion_8() -> Outcome:
    c = Checks()
    t0 = time.perf_counter()
    worst = 0.0
    n_regions = 0
    for label, g in small_catalog_cases(12):
        pure = PureCompletion.of(g).group if g.logical_count else g
        psi = ground_state(pure.generators, g.n_qubits)
        for region in contiguous_regions(g):
            err = abs(entropy(pure, region) - state_entropy(psi, g.n_qubits, region))
            worst = max(worst, err)
            n_regions += 1
            c(err < 1e-9, f"{label} {region} err={err:.2e}")
    dt = time.perf_counter() - t0
    c(dt < 60.0, f"time {dt:.1f}s")
    return c.outcome(f"formula vs state vector on {n_regions} regions, max error {worst:.1e}, {dt:.1f}s")


def criterion_9() -> Outcome:
    c = Checks()
    rng = np.random.default_rng(9)
    models = [
        ("ferro1d", (8,), False), ("cluster1d", (8,), False), ("ext5chain", (9,), False),
        ("zzz_chain", (9,), False), ("toric", (4, 4), True), ("ferro2d", (4, 4), False),
        ("cross", (3, 4), False), ("cross_cg", (3, 3), True), ("twotoric", (4, 4), True),
        ("cluster2d", (2, 2), True), ("vchains", (3, 3), False),
    ]
    for name, size, grouped in models:
        g = _sts(name, size) if grouped else _raw(name, size)
        k = g.logical_count
        for trial in range(100):
            mask = rng.integers(0, 2, g.n_qubits).astype(bool)
            total = g.logical_count_in_region(np.flatnonzero(mask)) + g.logical_count_in_region(np.flatnonzero(~mask))
            c(total == 2 * k, f"{name} bipartition {trial}: {total} != {2 * k}")
    for name in ("toric", "cross_cg", "twotoric", "cluster2d"):
        g = _sts(name, (5, 5))
        for t in g.templates:
            for rect in [(1, 1), (2, 2), (3, 2)]:
                loop = loop_stabilizers(g, t.id, rect, origin=(1, 1))
                c(g.contains(loop.operator), f"{name} loop {t.id} {rect}")
    for name in catalog.names():
        fp = catalog.get(name).fingerprint
        if fp is None:
            continue
        dim = catalog.get(name).dim
        f = PhaseFingerprint(dim, fp[0] + fp[1], *fp)
        c(PhaseFingerprint.parse(f.serialize()) == f, f"{name} fingerprint round trip")
        try:
            PhaseFingerprint(dim, fp[0] + fp[1] + 1, *fp)
            c(False, f"{name} inconsistent fingerprint accepted")
        except StructuralError:
            c(True, "")
    n = 8
    draws = rng.integers(0, 1 << n, size=(10_000, 3, 2))
    phases = rng.integers(0, 4, size=(10_000, 3))
    bad = 0
    for (pa, pb, pc), (ea, eb, ec) in zip(draws, phases):
        a = PauliOperator(n, int(pa[0]), int(pa[1]), int(ea))
        b = PauliOperator(n, int(pb[0]), int(pb[1]), int(eb))
        d = PauliOperator(n, int(pc[0]), int(pc[1]), int(ec))
        bad += (a * b) * d != a * (b * d)
    c(bad == 0, f"associativity failures {bad}")
    return c.outcome("sum rule on 100 bipartitions x 11 models, loop membership, fingerprint invariants, 10^4 associativity triples")


def criterion_10() -> Outcome:
    c = Checks()
    m = catalog.get("vchains").model
    g = build(m.templates, m.lattice((3, 3)))
    verdict = check_translation_equivalence(g)
    c(verdict[1] is False, f"direction 1 verdict {verdict[1]}")
    rep = check_scale_symmetry(m, [(2, 3), (3, 3), (4, 3)])
    c(not rep.verdict, f"scale symmetry {rep.ks}")
    try:
        classify_shapes(g)
        c(False, "classify accepted vchains")
    except NotSTSModelError as exc:
        c("not an STS model" in str(exc), str(exc))
    import contextlib
    import io

    err = io.StringIO()
    with contextlib.redirect_stderr(err), contextlib.redirect_stdout(io.StringIO()):
        code = cli_run(["classify", "vchains", "--size", "3x3"])
    c(code == 1 and "not an STS model" in err.getvalue(), f"cli exit {code}")
    return c.outcome("vchains fails translation (direction 1) and scale symmetry; classify says not an STS model")


CRITERIA: dict[int, Callable[[], Outcome]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
}


def _line(number: int, outcome: Outcome) -> str:
    ok, detail = outcome
    return f"ACCEPTANCE {number:>2} {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    outcome = CRITERIA[number]()
    with capsys.disabled():
        print("\n" + _line(number, outcome))
    assert outcome[0], outcome[1]


if __name__ == "__main__":
    results = {n: f() for n, f in CRITERIA.items()}
    for n, out in results.items():
        print(_line(n, out))
    raise SystemExit(0 if all(ok for ok, _ in results.values()) else 1)
