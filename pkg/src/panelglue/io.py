"""Reading and writing complex files and coloring files.

Complex file (JSON document)::

    {
      "name": "torus_core",
      "dim": 2,
      "vertices": ["a", "b", ...],
      "top_cells": [["a", "b", "o"], ...],
      "panels": [
        {"id": "P1", "kind": "principal",
         "cells": [["a", "d"], ["b", "c"]],
         "involution": {"a": "b", "b": "a", "c": "d", "d": "c"}},
        {"id": "F1", "kind": "reflexive", "cells": [["x", "y"]]}
      ]
    }

``cells`` lists the codimension-one simplices of a panel (faces are implied).
``involution`` is required for principal panels and must be omitted (or be
the identity) for reflexive ones.  Unknown keys are rejected.

Coloring file: one ``panel_id:bitstring`` entry per line; entries may also be
separated by commas.  Blank lines and ``#`` comments are ignored.  The
leftmost bit is coordinate 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Union

from .complex import PRINCIPAL, REFLEXIVE, CornerComplex, Panel, PanelPermutation
from .gf2 import GroupElement

__all__ = [
    "ParseError",
    "parse_complex",
    "load_complex",
    "complex_to_dict",
    "dump_complex",
    "parse_coloring",
    "format_coloring",
    "parse_automorphisms",
]

_TOP_KEYS = {"name", "dim", "vertices", "top_cells", "panels"}
_PANEL_KEYS = {"id", "kind", "cells", "involution"}


class ParseError(ValueError):
    """Malformed input; ``line`` is set when a location is known."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source:
            where = f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


def _line_of(text: str, needle: str) -> int | None:
    pos = text.find(needle)
    return text.count("\n", 0, pos) + 1 if pos >= 0 else None


def _expect(cond: bool, msg: str, text: str, needle: str, source: str | None) -> None:
    if not cond:
        raise ParseError(msg, _line_of(text, needle), source)


def parse_complex(text: str, source: str | None = None) -> CornerComplex:
    """Parse a complex document.  Structural errors carry a line number."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg} (column {exc.colno})", exc.lineno, source) from None
    _expect(isinstance(doc, dict), "top level must be an object", text, "", source)
    unknown = sorted(set(doc) - _TOP_KEYS)
    _expect(not unknown, f"unknown field(s) {unknown}", text, f'"{unknown[0]}"' if unknown else "", source)
    missing = sorted({"name", "dim", "vertices", "top_cells"} - set(doc))
    _expect(not missing, f"missing field(s) {missing}", text, "{", source)
    name, dim = doc["name"], doc["dim"]
    _expect(isinstance(name, str), "name must be a string", text, '"name"', source)
    _expect(isinstance(dim, int) and not isinstance(dim, bool) and dim >= 0,
            "dim must be a non-negative integer", text, '"dim"', source)
    verts = doc["vertices"]
    _expect(isinstance(verts, list) and all(isinstance(v, str) for v in verts),
            "vertices must be a list of strings", text, '"vertices"', source)
    _expect(len(set(verts)) == len(verts), "duplicate vertex labels", text, '"vertices"', source)
    tops = doc["top_cells"]
    _expect(isinstance(tops, list) and all(isinstance(c, list) and all(isinstance(v, str) for v in c)
                                           for c in tops),
            "top_cells must be a list of vertex-label lists", text, '"top_cells"', source)
    panels = []
    for k, p in enumerate(doc.get("panels", [])):
        anchor = f'"{p.get("id")}"' if isinstance(p, dict) and isinstance(p.get("id"), str) else '"panels"'
        _expect(isinstance(p, dict), f"panels[{k}] must be an object", text, '"panels"', source)
        bad = sorted(set(p) - _PANEL_KEYS)
        _expect(not bad, f"panels[{k}]: unknown field(s) {bad}", text, anchor, source)
        _expect(isinstance(p.get("id"), str), f"panels[{k}]: id must be a string", text, anchor, source)
        kind = p.get("kind")
        _expect(kind in (PRINCIPAL, REFLEXIVE), f"panels[{k}]: kind must be 'principal' or 'reflexive'",
                text, anchor, source)
        cells = p.get("cells")
        _expect(isinstance(cells, list) and all(isinstance(c, list) and all(isinstance(v, str) for v in c)
                                                for c in cells),
                f"panels[{k}]: cells must be a list of vertex-label lists", text, anchor, source)
        inv = p.get("involution")
        if kind == PRINCIPAL:
            _expect(isinstance(inv, dict), f"panels[{k}]: principal panel needs an involution map",
                    text, anchor, source)
        if inv is not None:
            _expect(isinstance(inv, dict) and all(isinstance(a, str) and isinstance(b, str)
                                                  for a, b in inv.items()),
                    f"panels[{k}]: involution must map vertex labels to vertex labels", text, anchor, source)
        panels.append(Panel(p["id"], kind, frozenset(tuple(c) for c in cells), inv))
    return CornerComplex(name, dim, tuple(verts), tuple(tuple(c) for c in tops), tuple(panels))


def load_complex(path: Union[str, Path]) -> CornerComplex:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", None, str(path)) from None
    return parse_complex(text, str(path))


def complex_to_dict(c: CornerComplex) -> dict[str, Any]:
    panels = []
    for p in c.panels:
        entry: dict[str, Any] = {"id": p.id, "kind": p.kind, "cells": [list(s) for s in sorted(p.cells)]}
        if p.is_principal:
            entry["involution"] = dict(p.involution)
        panels.append(entry)
    return {
        "name": c.name,
        "dim": c.dim,
        "vertices": list(c.vertices),
        "top_cells": [list(t) for t in c.top_cells],
        "panels": panels,
    }


def dump_complex(c: CornerComplex) -> str:
    """Serialize in the complex file format (one simplex per line)."""
    d = complex_to_dict(c)
    lines = ["{",
             f'  "name": {json.dumps(d["name"])},',
             f'  "dim": {d["dim"]},',
             f'  "vertices": {json.dumps(d["vertices"])},',
             '  "top_cells": [']
    lines += [f"    {json.dumps(t)}," for t in d["top_cells"]]
    if d["top_cells"]:
        lines[-1] = lines[-1].rstrip(",")
    lines.append("  ],")
    lines.append('  "panels": [')
    for i, p in enumerate(d["panels"]):
        body = [f'    {{"id": {json.dumps(p["id"])}, "kind": {json.dumps(p["kind"])},',
                f'     "cells": {json.dumps(p["cells"])}']
        if "involution" in p:
            body[-1] += ","
            body.append(f'     "involution": {json.dumps(p["involution"], sort_keys=True)}')
        body[-1] += "}" + ("," if i < len(d["panels"]) - 1 else "")
        lines += body
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class _Entry:
    pid: str
    value: GroupElement
    line: int


def parse_coloring(text: str, source: str | None = None) -> dict[str, GroupElement]:
    """Parse ``panel_id:bitstring`` entries into a dict.

    All bit strings must have the same length; that length is the group rank.
    """
    entries: list[_Entry] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for item in line.split(","):
            item = item.strip()
            if not item:
                continue
            if item.count(":") != 1:
                raise ParseError(f"expected panel_id:bitstring, got {item!r}", lineno, source)
            pid, bits = (x.strip() for x in item.split(":"))
            if not pid:
                raise ParseError("empty panel id", lineno, source)
            try:
                value = GroupElement.parse(bits)
            except ValueError:
                raise ParseError(f"not a bit string: {bits!r}", lineno, source) from None
            entries.append(_Entry(pid, value, lineno))
    out: dict[str, GroupElement] = {}
    m = None
    for e in entries:
        if m is None:
            m = e.value.m
        elif e.value.m != m:
            raise ParseError(f"bit string for {e.pid} has length {e.value.m}, expected {m}", e.line, source)
        if e.pid in out:
            raise ParseError(f"panel {e.pid} assigned twice", e.line, source)
        out[e.pid] = e.value
    return out


def format_coloring(assignment: Mapping[str, GroupElement], order=None) -> str:
    """Inverse of :func:`parse_coloring` (one entry per line)."""
    keys = list(order) if order is not None else list(assignment)
    return "".join(f"{k}:{assignment[k]}\n" for k in keys)


def parse_automorphisms(text: str, source: str | None = None) -> list[PanelPermutation]:
    """Parse a generator file: a JSON list of ``{"panels": {...}, "vertices": {...}}``.

    ``vertices`` is optional; when given it must induce the panel map.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg} (column {exc.colno})", exc.lineno, source) from None
    if not isinstance(doc, list):
        raise ParseError("generator file must be a JSON list", 1, source)
    gens = []
    for k, g in enumerate(doc):
        if not isinstance(g, dict) or "panels" not in g or set(g) - {"panels", "vertices"}:
            raise ParseError(f"generator {k} must be an object with 'panels' and optional 'vertices'",
                             None, source)
        gens.append(PanelPermutation(g["panels"], g.get("vertices") or ()))
    return gens
