"""Reader and writer for ``.sts`` model definition files.

Grammar (UTF-8, one directive per line, ``#`` starts a comment)::

    model <name>
    dim <1|2>
    cell <v>
    [raw]
    gen <id>
    term <d1> [<d2>] <site> <X|Y|Z>
    ...
    end

Sites are 1-based in files.  Offsets must lie in {0,1} unless the ``raw``
directive is present, which admits larger offsets for qubit-level models
that still need grouping into composite cells.
"""

from __future__ import annotations

from pathlib import Path

from .errors import ModelFileError, TemplateError
from .lattice import GeneratorTemplate, Model

__all__ = ["parse_model", "load_model", "dump_model"]


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ModelFileError(f"{what} must be an integer, got {tok!r}", lineno) from None


def parse_model(text: str) -> Model:
    name: str | None = None
    dim: int | None = None
    cell: int | None = None
    raw = False
    templates: list[GeneratorTemplate] = []
    current: str | None = None
    current_line = 0
    terms: list[tuple[tuple[int, ...], int, str]] = []

    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        key = tok[0]
        if key == "model":
            if name is not None or len(tok) != 2:
                raise ModelFileError("expected a single 'model <name>' line", lineno)
            name = tok[1]
        elif key == "dim":
            if len(tok) != 2:
                raise ModelFileError("expected 'dim <1|2>'", lineno)
            dim = _int(tok[1], lineno, "dim")
            if dim not in (1, 2):
                raise ModelFileError(f"dim must be 1 or 2, got {dim}", lineno)
        elif key == "cell":
            if len(tok) != 2:
                raise ModelFileError("expected 'cell <v>'", lineno)
            cell = _int(tok[1], lineno, "cell")
            if cell < 1:
                raise ModelFileError("cell size must be positive", lineno)
        elif key == "raw":
            raw = True
        elif key == "gen":
            if current is not None:
                raise ModelFileError(f"'gen' inside unfinished block {current!r}", lineno)
            if name is None or dim is None or cell is None:
                raise ModelFileError("'model', 'dim' and 'cell' must precede generators", lineno)
            if len(tok) != 2:
                raise ModelFileError("expected 'gen <id>'", lineno)
            current, current_line, terms = tok[1], lineno, []
        elif key == "term":
            if current is None or dim is None or cell is None:
                raise ModelFileError("'term' outside a 'gen' block", lineno)
            if len(tok) != dim + 3:
                raise ModelFileError(f"expected {dim} offset(s), a site and a letter", lineno)
            offset = tuple(_int(t, lineno, "offset") for t in tok[1 : 1 + dim])
            site = _int(tok[1 + dim], lineno, "site")
            letter = tok[2 + dim].upper()
            if any(o < 0 for o in offset) or (not raw and any(o > 1 for o in offset)):
                raise ModelFileError(
                    f"offset {offset} outside the 2-cell block; coarse-grain first or declare 'raw'",
                    lineno,
                )
            if not 1 <= site <= cell:
                raise ModelFileError(f"site {site} outside 1..{cell}", lineno)
            if letter not in ("X", "Y", "Z"):
                raise ModelFileError(f"unknown letter {letter!r}", lineno)
            terms.append((offset, site - 1, letter))
        elif key == "end":
            if current is None:
                raise ModelFileError("'end' without 'gen'", lineno)
            try:
                templates.append(GeneratorTemplate.merged(current, terms))
            except TemplateError as exc:
                raise ModelFileError(str(exc), current_line) from None
            current = None
        else:
            raise ModelFileError(f"unknown directive {key!r}", lineno)

    if current is not None:
        raise ModelFileError(f"generator {current!r} is missing 'end'", current_line)
    if name is None or dim is None or cell is None:
        raise ModelFileError("missing 'model', 'dim' or 'cell' header")
    if not templates:
        raise ModelFileError("model defines no generators")
    try:
        return Model(name, dim, cell, tuple(templates))
    except TemplateError as exc:
        raise ModelFileError(str(exc)) from None


def load_model(path: str | Path) -> Model:
    return parse_model(Path(path).read_text(encoding="utf-8"))


def dump_model(model: Model) -> str:
    lines = [f"model {model.name}", f"dim {model.dim}", f"cell {model.cell_size}"]
    if not model.is_local:
        lines.append("raw")
    for t in model.templates:
        lines.append(f"gen {t.id}")
        for term in t.terms:
            offs = " ".join(str(o) for o in term.offset)
            lines.append(f"term {offs} {term.site + 1} {term.letter}")
        lines.append("end")
    return "\n".join(lines) + "\n"
