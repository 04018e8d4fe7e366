"""Command-line front end.

Reports are ``key=value`` lines under ``## section`` headers, or one JSON
object with ``--json``.  Exit status: 0 success, 1 analysis error, 2 bad
input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import catalog
from .entanglement import (
    AnnulusSpec,
    PureCompletion,
    code_distance,
    entropy,
    mutual_information,
    parse_region,
    topological_entropy,
)
from .errors import AnalysisError, InputError, NotSTSModelError
from .lattice import Model
from .modelfile import load_model
from .phase import (
    check_scale_symmetry,
    check_translation_equivalence,
    classify_shapes,
    coarse_grain,
    deformation_counts,
    disentangle_1d,
)
from .stabilizer import StabilizerGroup, build

Report = dict[str, dict[str, Any]]


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def parse_size(text: str) -> tuple[int, ...]:
    try:
        size = tuple(int(part) for part in text.lower().split("x"))
    except ValueError:
        raise InputError(f"bad size {text!r}; use n1 or n1xn2") from None
    if not 1 <= len(size) <= 2 or min(size) < 1:
        raise InputError(f"bad size {text!r}; use n1 or n1xn2 with positive entries")
    return size


def parse_sizes(text: str) -> list[tuple[int, ...]]:
    return [parse_size(part) for part in text.split(",") if part.strip()]


def _pair(text: str) -> tuple[int, int]:
    parts = text.lower().replace("x", ",").split(",")
    if len(parts) != 2:
        raise InputError(f"expected a,b or axb but got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise InputError(f"expected integers in {text!r}") from None


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple):
        return "x".join(str(v) for v in value) if all(isinstance(v, int) for v in value) else str(value)
    return str(value)


def _jsonable(value: Any) -> Any:
    if isinstance(value, tuple) and all(isinstance(v, int) for v in value):
        return list(value)
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return str(value)


def render(report: Report, as_json: bool) -> str:
    if as_json:
        data = {sec: {k: _jsonable(v) for k, v in body.items()} for sec, body in report.items()}
        return json.dumps(data, indent=2)
    lines = []
    for sec, body in report.items():
        lines.append(f"## {sec}")
        lines.extend(f"{k}={_fmt(v)}" for k, v in body.items())
    return "\n".join(lines)


# model resolution -----------------------------------------------------------

def load_source(source: str) -> tuple[Model, catalog.CatalogEntry | None]:
    if source in catalog.ENTRIES:
        entry = catalog.get(source)
        return entry.model, entry
    path = Path(source)
    if path.exists():
        return load_model(path), None
    raise InputError(
        f"{source!r} is neither a model file nor a catalog name; available: {', '.join(catalog.names())}"
    )


def resolve_model(source: str, group: str) -> Model:
    """Apply ``--group``: ``none``, ``auto`` or explicit factors like ``3x2``."""
    model, entry = load_source(source)
    if group == "none":
        return model
    if group == "auto":
        if entry is not None:
            return entry.sts_model()
        if model.is_local:
            return model
        return coarse_grain(model).model
    factors = parse_size(group)
    if len(factors) != model.dim:
        raise InputError(f"grouping {group!r} does not match a {model.dim}D model")
    return model.regroup(factors, name=model.name)


def _group_at(model: Model, size: tuple[int, ...]) -> StabilizerGroup:
    if len(size) != model.dim:
        raise InputError(f"{model.name} is {model.dim}D; got size {_fmt(size)}")
    return build(model.templates, model.lattice(size), name=model.name)


def _header(model: Model, size: tuple[int, ...] | None = None) -> dict[str, Any]:
    out: dict[str, Any] = {"name": model.name, "dim": model.dim, "cell_size": model.cell_size}
    if size is not None:
        out["size"] = size
    return out


# commands -------------------------------------------------------------------

def cmd_analyze(args: argparse.Namespace) -> Report:
    model = resolve_model(args.model, args.group)
    size = parse_size(args.size)
    g = _group_at(model, size)
    ls = g.canonical_set
    logicals: dict[str, Any] = {}
    for i, (ell, r) in enumerate(ls.pairs, start=1):
        logicals[f"l{i}"] = ell.to_string(group=model.cell_size)
        logicals[f"r{i}"] = r.to_string(group=model.cell_size)
    trans = {f"direction{m}": ok for m, ok in check_translation_equivalence(g, ls).items()}
    return {
        "model": _header(model, size),
        "group": {"N": g.n_qubits, "G_S": g.rank, "k": g.logical_count},
        "logicals": logicals,
        "translation_equivalence": trans,
    }


def cmd_sweep(args: argparse.Namespace) -> Report:
    model = resolve_model(args.model, args.group)
    sizes = parse_sizes(args.sizes)
    for s in sizes:
        if len(s) != model.dim:
            raise InputError(f"{model.name} is {model.dim}D; got size {_fmt(s)}")
    rep = check_scale_symmetry(model, sizes)
    out: Report = {"model": _header(model)}
    for s, k in rep.ks.items():
        out[f"size {_fmt(s)}"] = {"k": k}
    out["summary"] = {"scale_symmetry": rep.verdict}
    return out


def cmd_classify(args: argparse.Namespace) -> Report:
    model = resolve_model(args.model, args.group)
    size = parse_size(args.size)
    g = _group_at(model, size)
    fp = classify_shapes(g)
    out: Report = {
        "model": _header(model, size),
        "fingerprint": {"D": fp.dim, "k": fp.k, "k0": fp.k0, "k1": fp.k1},
    }
    if model.dim == 2:
        dc = deformation_counts(g, strict=False)
        out["deformation_counts"] = dict(dc.counts)
        out["deformation_checks"] = {**dc.checks, "all_hold": dc.all_hold}
    return out


def _maybe_complete(g: StabilizerGroup, complete: bool) -> StabilizerGroup | PureCompletion:
    return PureCompletion.of(g) if complete and g.logical_count else g


def cmd_entropy(args: argparse.Namespace) -> Report:
    model = resolve_model(args.model, args.group)
    size = parse_size(args.size)
    g = _group_at(model, size)
    assert g.lattice is not None
    region = parse_region(args.region, g.lattice)
    value = entropy(_maybe_complete(g, args.complete), region)
    return {
        "model": _header(model, size),
        "entropy": {"region": args.region, "completed": bool(args.complete and g.logical_count), "E": value},
    }


def cmd_mi(args: argparse.Namespace) -> Report:
    model = resolve_model(args.model, args.group)
    size = parse_size(args.size)
    g = _group_at(model, size)
    assert g.lattice is not None
    a = parse_region(args.regionA, g.lattice)
    b = parse_region(args.regionB, g.lattice)
    value = mutual_information(_maybe_complete(g, args.complete), a, b)
    return {
        "model": _header(model, size),
        "mutual_information": {"regionA": args.regionA, "regionB": args.regionB, "I": value},
    }


def cmd_stopo(args: argparse.Namespace) -> Report:
    model = resolve_model(args.model, args.group)
    size = parse_size(args.size)
    g = _group_at(model, size)
    if model.dim != 2:
        raise InputError("stopo needs a 2D model")
    inner = _pair(args.inner)
    origin = _pair(args.origin)
    ann = AnnulusSpec(origin, inner, args.width)
    value = topological_entropy(_maybe_complete(g, True), ann)
    return {
        "model": _header(model, size),
        "annulus": {"origin": origin, "inner": inner, "width": args.width, "outer": ann.outer_size},
        "topological_entropy": {"S_topo": value},
    }


def cmd_distance(args: argparse.Namespace) -> Report:
    model = resolve_model(args.model, args.group)
    size = parse_size(args.size)
    g = _group_at(model, size)
    d = code_distance(g, args.max_weight)
    return {
        "model": _header(model, size),
        "distance": {"k": g.logical_count, "max_weight": args.max_weight, "d": d},
    }


def cmd_coarsegrain(args: argparse.Namespace) -> Report:
    model, _ = load_source(args.model)
    res = coarse_grain(model, k_target=args.k_target, cap=args.probe_cap)
    return {
        "model": _header(model),
        "coarse_grain": {
            "n_min": res.n_min,
            "k_target": res.k_target,
            "translation_period": res.translation_factors,
            "a": res.factors,
            "grouped_cell_size": res.model.cell_size,
            "scale_symmetry": res.report.verdict,
        },
    }


def cmd_normalform(args: argparse.Namespace) -> Report:
    model = resolve_model(args.model, args.group)
    size = parse_size(args.size)
    if model.dim != 1:
        raise InputError("normalform needs a 1D model")
    g = _group_at(model, size)
    nf = disentangle_1d(g)
    return {
        "model": _header(model, size),
        "normal_form": {
            "ferromagnetic_pairs": nf.ferromagnetic_pairs,
            "short_range_pairs": nf.short_range_pairs,
            "single_cell": nf.single_cell,
            "verified": nf.verified,
        },
        "script": {f"step{i}": line for i, line in enumerate(nf.script, start=1)},
    }


def cmd_catalog(args: argparse.Namespace) -> Report:
    out: Report = {}
    for name in catalog.names():
        e = catalog.get(name)
        body: dict[str, Any] = {"dim": e.dim, "cell_size": e.cell_size, "description": e.description}
        if e.grouping is not None:
            body["grouping"] = e.grouping
        out[name] = body
    return out


# regression -----------------------------------------------------------------

def _check_entry(entry: catalog.CatalogEntry) -> dict[str, Any]:
    """Observed-versus-expected lines; values are ``ok expected got``."""
    rows: dict[str, Any] = {}

    def record(key: str, want: Any, got: Any) -> None:
        rows[key] = f"{'ok' if want == got else 'MISMATCH'} expected={_fmt(want)} got={_fmt(got)}"

    for size in entry.sizes:
        exp = catalog.expected_report(entry.name, size)
        g = _group_at(entry.model, size)
        if "k" in exp:
            record(f"k@{_fmt(size)}", exp["k"], g.logical_count)
        if "distance" in exp:
            d = code_distance(g, int(exp["distance"]))  # type: ignore[call-overload]
            record(f"distance@{_fmt(size)}", exp["distance"], d)
    if not entry.is_sts:
        if entry.fixed_size is None:
            g = _group_at(entry.model, entry.sizes[0])
            try:
                classify_shapes(g)
                record("not_sts", True, False)
            except NotSTSModelError:
                record("not_sts", True, True)
        return rows
    sts = entry.sts_model()
    size = (4,) * sts.dim
    g = _group_at(sts, size)
    if entry.fingerprint is not None:
        fp = classify_shapes(g)
        record(f"fingerprint@{_fmt(size)}", entry.fingerprint, (fp.k0, fp.k1))
    if entry.s_topo is not None:
        g6 = _group_at(sts, (6, 6))
        value = topological_entropy(_maybe_complete(g6, True), AnnulusSpec((0, 0), (2, 2), 1))
        record("s_topo@6x6", entry.s_topo, value)
    return rows


def cmd_check(args: argparse.Namespace) -> Report:
    targets = catalog.names() if args.model == "all" else [args.model]
    out: Report = {}
    failed = []
    for name in targets:
        rows = _check_entry(catalog.get(name))
        out[name] = rows
        if any(not str(v).startswith("ok") for v in rows.values()):
            failed.append(name)
    out["summary"] = {"entries": len(targets), "failed": ",".join(failed) or "none", "passed": not failed}
    return out


# entry point ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stsphase", description="Analyze translation- and scale-symmetric stabilizer models.")
    p.add_argument("--json", action="store_true", help="emit one JSON object")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def model_cmd(name: str, help_text: str, group_default: str = "none") -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("model", help="catalog name or model file")
        sp.add_argument("--group", default=group_default, help="none, auto or factors like 3x2")
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        return sp

    sp = model_cmd("analyze", "group rank, k, canonical logicals, translation verdicts")
    sp.add_argument("--size", required=True)
    sp.set_defaults(func=cmd_analyze)

    sp = model_cmd("sweep", "k over several sizes and the scale-symmetry verdict")
    sp.add_argument("--sizes", required=True, help="comma list, e.g. 3,4,5 or 3x3,4x4")
    sp.set_defaults(func=cmd_sweep)

    sp = model_cmd("classify", "phase fingerprint and deformation counts", group_default="auto")
    sp.add_argument("--size", required=True)
    sp.set_defaults(func=cmd_classify)

    sp = model_cmd("entropy", "entanglement entropy of a region")
    sp.add_argument("--size", required=True)
    sp.add_argument("--region", required=True, help='cell ranges "x0:x1,y0:y1", unions with +')
    sp.add_argument("--complete", action="store_true", help="pin logical qubits first")
    sp.set_defaults(func=cmd_entropy)

    sp = model_cmd("mi", "mutual information of two disjoint regions")
    sp.add_argument("--size", required=True)
    sp.add_argument("--regionA", required=True)
    sp.add_argument("--regionB", required=True)
    sp.add_argument("--complete", action="store_true")
    sp.set_defaults(func=cmd_mi)

    sp = model_cmd("stopo", "topological entanglement entropy on an annulus")
    sp.add_argument("--size", required=True)
    sp.add_argument("--inner", required=True, help="inner rectangle a,b in cells")
    sp.add_argument("--width", type=int, required=True)
    sp.add_argument("--origin", default="0,0")
    sp.set_defaults(func=cmd_stopo)

    sp = model_cmd("distance", "minimum logical weight up to a bound")
    sp.add_argument("--size", required=True)
    sp.add_argument("--max-weight", type=int, required=True)
    sp.set_defaults(func=cmd_distance)

    sp = sub.add_parser("coarsegrain", help="cell grouping that restores scale symmetry")
    sp.add_argument("model")
    sp.add_argument("--k-target", type=int, default=None)
    sp.add_argument("--probe-cap", type=int, default=12)
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_coarsegrain)

    sp = model_cmd("normalform", "1D reduction to ferromagnets and decoupled pairs", group_default="auto")
    sp.add_argument("--size", required=True)
    sp.set_defaults(func=cmd_normalform)

    sp = sub.add_parser("catalog", help="list built-in models")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("check", help="regression against catalog expectations")
    sp.add_argument("model", nargs="?", default="all")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_check)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AnalysisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(render(report, args.json))
    if args.command == "check" and not report["summary"]["passed"]:
        return 1
    return 0


def main() -> None:
    raise SystemExit(run())
