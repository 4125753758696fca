"""Regenerate the complex files and index under src/panelglue/data/.

Run from the repository root:  python3 scripts/generate_catalog.py [OUTDIR]
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

from panelglue import builders as b
from panelglue.io import dump_complex

DATA = Path(__file__).resolve().parents[1] / "src" / "panelglue" / "data"


def dual(c):
    return {p.id: [p.id] for p in c.principal_panels}


def entries():
    yield b.torus_core(), dict(kind="core", euler=0, orientable=True,
                               description="Square with opposite sides paired by translation; base is the torus.")
    yield b.rp2_core(), dict(kind="core", euler=1, orientable=False,
                             description="Hexagon with the antipodal boundary map; base is RP^2.")
    yield b.countexample_square(), dict(
        kind="counterexample", euler=1, orientable=False,
        description="Square with two panels sharing the half-turn involution; not perfect, base is RP^2.")
    yield b.n3_core_octagon(), dict(
        kind="core", euler=-1, orientable=False,
        description="Octagon A B A C A B A C; base is RP^2 # RP^2 # RP^2. The pairing inside each "
                    "panel is reconstructed (see builders.OCTAGON_PAIRING).")
    yield b.genus2_annulus_core(), dict(
        kind="core", euler=-2, orientable=True,
        description="Annulus whose inner and outer squares are glued like torus squares; base is "
                    "T^2 # T^2. The side pairings are reconstructed.")
    yield b.torus_two_meridians(), dict(
        kind="witness", euler=0, orientable=True, intersection_matrix=[[1, 1], [0, 0]],
        description="Torus cut along two parallel meridians (two annuli). A longitude crosses "
                    "Q1 and Q2 once, a meridian crosses neither.")
    for c in b.punctured_torus_cores():
        yield c, dict(kind="partial", euler=-1, orientable=True,
                      description=f"Core of the torus minus a square hole ({c.name.split('_')[-1]} "
                                  "layout); hole sides are reflexive panels N, E, S, W.")
    for k, name in ((3, "triangle"), (4, "square"), (5, "pentagon")):
        extra = {"automorphisms": "pentagon.aut.json"} if k == 5 else {}
        yield b.simple_polytope(b.polygon_facets(k), name), dict(
            kind="polytope", euler=1, orientable=True,
            description=f"The {k}-gon with the trivial panel structure (one reflexive panel per edge).",
            **extra)
    yield b.simple_polytope(b.cube_facets(), "cube"), dict(
        kind="polytope", euler=1, orientable=True,
        description="The 3-cube with the trivial panel structure (facets X0 X1 Y0 Y1 Z0 Z1).")


def pentagon_generators():
    pf = b.polygon_facets(5)
    rot = b.polytope_automorphism(pf, {f"v{i + 1}": f"v{(i + 1) % 5 + 1}" for i in range(5)})
    ref = b.polytope_automorphism(pf, {f"v{i + 1}": f"v{(5 - i) % 5 + 1}" for i in range(5)})
    return [{"panels": g.as_dict, "vertices": dict(g.vertex_map)} for g in (rot, ref)]


def main(out: Path = DATA) -> None:
    out.mkdir(parents=True, exist_ok=True)
    index = {}
    for c, meta in entries():
        (out / f"{c.name}.complex.json").write_text(dump_complex(c))
        if meta["kind"] == "core":
            meta["dual_paths"] = dual(c)
        index[c.name] = meta
    (out / "catalog.json").write_text(json.dumps(index, indent=2, sort_keys=True) + "\n")
    (out / "pentagon.aut.json").write_text(json.dumps(pentagon_generators(), indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(index)} entries to {out}")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else DATA)
