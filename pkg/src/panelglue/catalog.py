"""Shipped example complexes.

Each entry is a complex file under ``data/`` plus a record in
``data/catalog.json`` holding the expected invariants of its base (the
``m = 0`` quotient), dual-basis paths, symmetry generators and, where
relevant, an intersection matrix.  The files are produced by
``scripts/generate_catalog.py`` from :mod:`panelglue.builders`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Optional

from .builders import simple_polytope
from .complex import CornerComplex, PanelPermutation, is_perfect
from .errors import ComplexError
from .gf2 import GF2Matrix, GroupElement
from .glueback import Coloring, GluedComplex, glue, lift_path, monodromy
from .io import parse_automorphisms, parse_complex

__all__ = ["CatalogEntry", "ids", "build", "base_of", "check_entry", "data_file", "simple_polytope"]


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    complex: CornerComplex
    description: str
    kind: str  # "core", "partial", "polytope", "witness" or "counterexample"
    expected_euler: int
    expected_orientable: bool
    expected_b0: int = 1
    dual_paths: dict[str, tuple[str, ...]] = field(default_factory=dict)
    automorphisms: tuple[PanelPermutation, ...] = ()
    intersection_matrix: Optional[GF2Matrix] = None

    @property
    def is_core(self) -> bool:
        """All panels principal and the structure perfect."""
        return self.kind == "core"


def data_file(name: str):
    return resources.files("panelglue") / "data" / name


@lru_cache(maxsize=1)
def _index() -> dict:
    return json.loads(data_file("catalog.json").read_text())


def ids() -> list[str]:
    return list(_index())


@lru_cache(maxsize=None)
def build(entry_id: str) -> CatalogEntry:
    """Load, validate and check one entry."""
    meta = _index().get(entry_id)
    if meta is None:
        raise KeyError(f"unknown catalog entry {entry_id!r}; known: {', '.join(ids())}")
    fname = f"{entry_id}.complex.json"
    c = parse_complex(data_file(fname).read_text(), fname)
    if not c.validation.ok:
        raise ComplexError(str(c.validation))
    autos: tuple[PanelPermutation, ...] = ()
    if meta.get("automorphisms"):
        autos = tuple(parse_automorphisms(data_file(meta["automorphisms"]).read_text(), meta["automorphisms"]))
    mat = meta.get("intersection_matrix")
    entry = CatalogEntry(
        id=entry_id,
        complex=c,
        description=meta["description"],
        kind=meta["kind"],
        expected_euler=meta["euler"],
        expected_orientable=meta["orientable"],
        expected_b0=meta.get("b0", 1),
        dual_paths={k: tuple(v) for k, v in meta.get("dual_paths", {}).items()},
        automorphisms=autos,
        intersection_matrix=GF2Matrix.from_lists(mat) if mat else None,
    )
    problems = check_entry(entry)
    if problems:
        raise ComplexError(f"catalog entry {entry_id} fails its checks: " + "; ".join(problems))
    return entry


def base_of(c: CornerComplex) -> GluedComplex:
    """The ``m = 0`` quotient; reflexive panels stay as boundary."""
    return glue(c, Coloring(0, {p.id: GroupElement.zero(0) for p in c.principal_panels}))


def check_entry(entry: CatalogEntry) -> list[str]:
    """Problems with an entry: validity, perfectness of cores, base invariants, dual paths."""
    from .homology import orientable_combinatorial, z2_betti

    c = entry.complex
    out = []
    if not c.validation.ok:
        return [str(c.validation)]
    if entry.is_core and not is_perfect(c):
        out.append("core is not perfect")
    base = base_of(c)
    if base.euler() != entry.expected_euler:
        out.append(f"base Euler characteristic {base.euler()} != {entry.expected_euler}")
    if z2_betti(base)[0] != entry.expected_b0:
        out.append(f"base b0 {z2_betti(base)[0]} != {entry.expected_b0}")
    if orientable_combinatorial(base, allow_boundary=True) != entry.expected_orientable:
        out.append(f"base orientability is not {entry.expected_orientable}")
    # dual paths: path i crosses panel j an odd number of times iff i == j
    pids = [p.id for p in c.principal_panels]
    k = len(pids)
    basis = Coloring(k, {pid: GroupElement.basis(n + 1, k) for n, pid in enumerate(pids)})
    for i, path in entry.dual_paths.items():
        if monodromy(c, basis, path) != basis.lam[i]:
            out.append(f"dual path for {i} does not cross {i} exactly once mod 2")
    for g in entry.automorphisms:
        out += g.check(c)
    return out


def dual_path_lift(entry: CatalogEntry, gc: GluedComplex, pid: str) -> GroupElement:
    """Monodromy of the dual path of ``pid`` computed by lifting it through ``gc``."""
    return lift_path(gc, entry.dual_paths[pid])
