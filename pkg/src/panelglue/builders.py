"""Constructors for the complexes shipped in the catalog.

These are the sources of the JSON files under ``data/``; the catalog itself
loads the files, so the builders mostly matter for regenerating data and as
independent references in tests.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .complex import PRINCIPAL, REFLEXIVE, CornerComplex, Panel, PanelPermutation, simplex

__all__ = [
    "torus_core",
    "rp2_core",
    "countexample_square",
    "octagon_core",
    "n3_core_octagon",
    "genus2_annulus_core",
    "torus_two_meridians",
    "grid_core",
    "punctured_torus_cores",
    "simple_polytope",
    "polytope_automorphism",
    "polygon_facets",
    "cube_facets",
]


def _fan(center: str, ring: Sequence[str]) -> list[tuple[str, ...]]:
    n = len(ring)
    return [(center, ring[i], ring[(i + 1) % n]) for i in range(n)]


def _principal(pid: str, pairs: Mapping[str, str], cells: Iterable[Sequence[str]]) -> Panel:
    inv = dict(pairs)
    inv.update({b: a for a, b in pairs.items()})
    return Panel(pid, PRINCIPAL, frozenset(simplex(c) for c in cells), inv)


def torus_core() -> CornerComplex:
    """Square with opposite sides paired by translation; glues to the torus."""
    a, b, c, d = "a", "b", "c", "d"
    tops = _fan("o", [a, b, c, d])
    p1 = _principal("P1", {a: b, d: c}, [(a, d), (b, c)])
    p2 = _principal("P2", {a: d, b: c}, [(a, b), (d, c)])
    return CornerComplex("torus_core", 2, (a, b, c, d, "o"), tuple(tops), (p1, p2))


def rp2_core() -> CornerComplex:
    """Hexagon fan with the antipodal map on the boundary circle."""
    ring = [f"v{i}" for i in range(6)]
    tops = _fan("o", ring)
    cells = [(ring[i], ring[(i + 1) % 6]) for i in range(6)]
    p = _principal("P", {ring[i]: ring[i + 3] for i in range(3)}, cells)
    return CornerComplex("rp2_core", 2, (*ring, "o"), tuple(tops), (p,))


def countexample_square() -> CornerComplex:
    """Square whose two panels both use the half-turn ``a<->c, b<->d``.

    Each involution is free on its panel, but a corner has only two duplicate
    points instead of four, so the structure is not perfect.
    """
    a, b, c, d = "a", "b", "c", "d"
    tops = _fan("o", [a, b, c, d])
    p1 = _principal("P1", {a: c, b: d}, [(a, b), (d, c)])
    p2 = _principal("P2", {a: c, b: d}, [(a, d), (b, c)])
    return CornerComplex("countexample_square", 2, (a, b, c, d, "o"), tuple(tops), (p1, p2))


# octagon sides, in boundary order, labelled as in the figure
OCTAGON_WORD = ("A", "B", "A", "C", "A", "B", "A", "C")
# (side k, side l, crosswise) triples; first pairing (in search order) passing the base checks
OCTAGON_PAIRING = ((0, 2, True), (4, 6, True), (1, 5, False), (3, 7, False))


def octagon_core(pairing: Sequence[tuple[int, int, bool]], name: str = "octagon_core") -> CornerComplex:
    """Octagon fan whose sides are paired according to ``pairing``.

    Side ``k`` runs from ``w{k}`` to ``w{k+1}``.  A triple ``(k, l, flip)``
    maps ``w{k} -> w{l}`` and ``w{k+1} -> w{l+1}`` (or crosswise when
    ``flip``).  Panels are named after :data:`OCTAGON_WORD`.
    """
    w = [f"w{i}" for i in range(8)]
    tops = _fan("o", w)
    inv: dict[str, dict[str, str]] = {x: {} for x in sorted(set(OCTAGON_WORD))}
    for k, l, flip in pairing:
        lab = OCTAGON_WORD[k]
        if OCTAGON_WORD[l] != lab:
            raise ValueError(f"sides {k} and {l} carry different labels")
        src = (w[k], w[(k + 1) % 8])
        dst = (w[(l + 1) % 8], w[l]) if flip else (w[l], w[(l + 1) % 8])
        for x, y in zip(src, dst):
            for u, v in ((x, y), (y, x)):
                if inv[lab].get(u, v) != v:
                    raise ValueError(f"pairing is inconsistent at {u}")
                inv[lab][u] = v
    panels = []
    for lab in sorted(inv):
        cells = [(w[k], w[(k + 1) % 8]) for k in range(8) if OCTAGON_WORD[k] == lab]
        panels.append(Panel(lab, PRINCIPAL, frozenset(simplex(c) for c in cells), inv[lab]))
    return CornerComplex(name, 2, (*w, "o"), tuple(tops), tuple(panels))


def n3_core_octagon() -> CornerComplex:
    """Octagon core of ``RP^2 # RP^2 # RP^2``.

    The four ``A`` sides form one panel, the two ``B`` sides and the two ``C``
    sides the others.  The pairing within each panel is not recoverable from
    the figure; :data:`OCTAGON_PAIRING` is one that passes validation,
    perfectness, base Euler characteristic -1 and non-orientability.
    """
    return octagon_core(OCTAGON_PAIRING, "n3_core_octagon")


def genus2_annulus_core() -> CornerComplex:
    """Annulus whose inner and outer squares are each glued like a torus square."""
    p = [f"p{i}" for i in range(4)]
    q = [f"q{i}" for i in range(4)]
    tops = []
    for i in range(4):
        j = (i + 1) % 4
        tops += [(p[i], p[j], q[i]), (p[j], q[i], q[j])]
    panels = []
    for ring, tag in ((p, "1"), (q, "2")):
        a, b, c, d = ring
        panels.append(_principal("A" + tag, {a: d, b: c}, [(a, b), (d, c)]))
        panels.append(_principal("B" + tag, {b: a, c: d}, [(b, c), (a, d)]))
    return CornerComplex("genus2_annulus_core", 2, (*p, *q), tuple(tops), tuple(panels))


def torus_two_meridians() -> CornerComplex:
    """Torus cut along two parallel meridians: two annuli, two panels.

    ``Q1`` pairs the right circle of annulus ``x|y`` with the left circle of
    annulus ``u|w``; ``Q2`` pairs the right circle of ``u|w`` with the left
    circle of ``x|y``.  A longitude crosses both panels once and a meridian
    crosses neither, so the intersection matrix is ``[[1, 1], [0, 0]]``.
    """
    def annulus(left: str, right: str) -> list[tuple[str, ...]]:
        out = []
        for i in range(3):
            j = (i + 1) % 3
            out += [(f"{left}{i}", f"{left}{j}", f"{right}{i}"), (f"{left}{j}", f"{right}{i}", f"{right}{j}")]
        return out

    def circle(x: str) -> list[tuple[str, str]]:
        return [(f"{x}{i}", f"{x}{(i + 1) % 3}") for i in range(3)]

    tops = annulus("x", "y") + annulus("u", "w")
    q1 = _principal("Q1", {f"y{i}": f"u{i}" for i in range(3)}, circle("y") + circle("u"))
    q2 = _principal("Q2", {f"w{i}": f"x{i}" for i in range(3)}, circle("w") + circle("x"))
    verts = [f"{x}{i}" for x in "xyuw" for i in range(3)]
    return CornerComplex("torus_two_meridians", 2, tuple(verts), tuple(tops), (q1, q2))


# -- grid-based cores --------------------------------------------------------------


def _gv(i: int, j: int) -> str:
    return f"g{i}_{j}"


def grid_core(name: str, width: int, height: int, removed: Iterable[tuple[int, int]],
              panel_of: Callable[[tuple[int, int], tuple[int, int]], Optional[str]],
              involutions: Mapping[str, Callable[[int, int], tuple[int, int]]],
              kinds: Mapping[str, str]) -> CornerComplex:
    """Union of unit squares (each a 4-triangle fan) with panels on boundary edges.

    ``panel_of(p, q)`` names the panel of the boundary edge from grid point
    ``p`` to ``q``.  ``involutions[pid]`` maps grid points of a principal
    panel to their twins.
    """
    removed = set(removed)
    tops = []
    for i in range(width):
        for j in range(height):
            if (i, j) in removed:
                continue
            ring = [_gv(i, j), _gv(i + 1, j), _gv(i + 1, j + 1), _gv(i, j + 1)]
            tops += _fan(f"s{i}_{j}", ring)
    edge_count: dict[tuple, int] = {}
    for i in range(width):
        for j in range(height):
            if (i, j) in removed:
                continue
            for e in (((i, j), (i + 1, j)), ((i + 1, j), (i + 1, j + 1)),
                      ((i, j + 1), (i + 1, j + 1)), ((i, j), (i, j + 1))):
                edge_count[e] = edge_count.get(e, 0) + 1
    cells: dict[str, list] = {}
    for (p, q), k in sorted(edge_count.items()):
        if k == 1:
            pid = panel_of(p, q)
            if pid is None:
                raise ValueError(f"boundary edge {p}-{q} has no panel")
            cells.setdefault(pid, []).append((p, q))
    panels = []
    for pid in sorted(cells):
        kind = kinds[pid]
        simp = frozenset(simplex((_gv(*p), _gv(*q))) for p, q in cells[pid])
        if kind == PRINCIPAL:
            f = involutions[pid]
            pts = {x for e in cells[pid] for x in e}
            inv = {_gv(*x): _gv(*f(*x)) for x in pts}
            panels.append(Panel(pid, PRINCIPAL, simp, inv))
        else:
            panels.append(Panel(pid, REFLEXIVE, simp))
    verts = sorted({v for t in tops for v in t})
    return CornerComplex(name, 2, tuple(verts), tuple(tops), tuple(panels))


_HOLE_KINDS = {"P1": PRINCIPAL, "P2": PRINCIPAL, "N": REFLEXIVE, "E": REFLEXIVE, "S": REFLEXIVE, "W": REFLEXIVE}


def punctured_torus_cores() -> list[CornerComplex]:
    """Three cores of a torus minus a square hole.

    * ``t2_hole_annulus``: the hole sits inside the fundamental square, so the
      core is a square with a square hole.
    * ``t2_hole_corners``: the hole surrounds the corner point of the
      fundamental square, so each corner is cut off by two half-sides of the
      hole.
    * ``t2_hole_notch``: the hole sits on the vertical side, so the left and
      right sides each carry a rectangular notch.

    In every case ``P1`` pairs left with right and ``P2`` bottom with top, and
    the hole sides are reflexive panels ``N``, ``E``, ``S``, ``W``.
    """
    out = []

    def side(p, q, w, h):
        (x0, y0), (x1, y1) = p, q
        if x0 == x1 == 0 or x0 == x1 == w:
            return "P1"
        if y0 == y1 == 0 or y0 == y1 == h:
            return "P2"
        return None

    # hole inside: 3x3 grid minus the centre
    def p_annulus(p, q):
        s = side(p, q, 3, 3)
        if s:
            return s
        (x0, y0), (x1, y1) = p, q
        if y0 == y1:
            return "S" if y0 == 1 else "N"
        return "W" if x0 == 1 else "E"

    out.append(grid_core("t2_hole_annulus", 3, 3, [(1, 1)], p_annulus,
                         {"P1": lambda i, j: (3 - i, j), "P2": lambda i, j: (i, 3 - j)}, _HOLE_KINDS))

    # hole around the corner point: 4x4 grid minus its corner squares
    def p_corners(p, q):
        s = side(p, q, 4, 4)
        if s:
            return s
        (x0, y0), (x1, y1) = p, q
        if y0 == y1:
            return "N" if y0 == 1 else "S"
        return "E" if x0 == 1 else "W"

    out.append(grid_core("t2_hole_corners", 4, 4, [(0, 0), (3, 0), (0, 3), (3, 3)], p_corners,
                         {"P1": lambda i, j: (4 - i, j), "P2": lambda i, j: (i, 4 - j)}, _HOLE_KINDS))

    # hole on the vertical side: 4x4 grid minus the middle of the first and last columns
    def p_notch(p, q):
        s = side(p, q, 4, 4)
        if s:
            return s
        (x0, y0), (x1, y1) = p, q
        if y0 == y1:
            return "S" if y0 == 1 else "N"
        return "E" if x0 == 1 else "W"

    out.append(grid_core("t2_hole_notch", 4, 4, [(0, 1), (0, 2), (3, 1), (3, 2)], p_notch,
                         {"P1": lambda i, j: (4 - i, j), "P2": lambda i, j: (i, 4 - j)}, _HOLE_KINDS))
    return out


# -- simple polytopes ----------------------------------------------------------------


def polygon_facets(k: int) -> dict[str, list[str]]:
    """Facet-vertex incidence of a ``k``-gon: facet ``F{i}`` joins ``v{i}`` and ``v{i+1}``."""
    return {f"F{i + 1}": [f"v{i + 1}", f"v{(i + 1) % k + 1}"] for i in range(k)}


def cube_facets() -> dict[str, list[str]]:
    """Facets ``X0, X1, Y0, Y1, Z0, Z1`` of the 3-cube with vertices ``v{xyz}``."""
    verts = ["v" + "".join(b) for b in itertools.product("01", repeat=3)]
    out = {}
    for axis, name in enumerate("XYZ"):
        for val in "01":
            out[f"{name}{val}"] = [v for v in verts if v[1 + axis] == val]
    return out


def _face_label(facet_ids: Sequence[str]) -> str:
    return "f:" + "+".join(sorted(facet_ids))


def _face_lattice(facets: Mapping[str, Sequence[str]]):
    verts = sorted({v for vs in facets.values() for v in vs})
    contain = {v: frozenset(f for f, vs in facets.items() if v in vs) for v in verts}
    counts = {len(s) for s in contain.values()}
    if len(counts) != 1:
        raise ValueError("not a simple polytope: vertices lie in different numbers of facets")
    n = counts.pop()
    if not 1 <= n <= 3:
        raise ValueError(f"simple polytopes of dimension {n} are not supported (1 <= n <= 3)")
    # a face is determined by the set of facets containing it
    faces: dict[frozenset, frozenset] = {frozenset(): frozenset(verts)}
    for k in range(1, n + 1):
        for combo in itertools.combinations(sorted(facets), k):
            vs = frozenset(v for v in verts if set(combo) <= contain[v])
            if vs:
                faces[frozenset(combo)] = vs
    for v in verts:
        if faces.get(contain[v]) != frozenset({v}):
            raise ValueError(f"not a simple polytope: the facets at {v} do not cut out the vertex alone")
    return n, verts, contain, faces


def simple_polytope(facets: Mapping[str, Sequence[str]], name: str = "polytope") -> CornerComplex:
    """Trivial panel structure on a simple polytope given by facet-vertex incidence.

    The polytope is triangulated by the barycentric subdivision of its face
    lattice: one simplex per flag ``vertex < edge < ... < polytope``.  Each
    facet becomes a reflexive panel.
    """
    n, verts, contain, faces = _face_lattice(facets)

    def label(key: frozenset) -> str:
        if len(key) == n:
            (v,) = faces[key]
            return v
        return "c" if not key else _face_label(key)

    # flags: increasing facet sets from empty (polytope) to a vertex
    def flags(start: frozenset, depth: int):
        if depth == n:
            yield (start,)
            return
        for f in sorted(facets):
            if f in start:
                continue
            nxt = start | {f}
            if nxt in faces:
                for rest in flags(nxt, depth + 1):
                    yield (start, *rest)

    tops = {simplex(label(k) for k in fl) for fl in flags(frozenset(), 0)}
    panels = []
    for f in facets:
        cells = {simplex(label(k) for k in fl) for fl in flags(frozenset({f}), 1)}
        panels.append(Panel(f, REFLEXIVE, frozenset(cells)))
    labels = sorted({v for t in tops for v in t})
    return CornerComplex(name, n, tuple(labels), tuple(sorted(tops)), tuple(panels))


def polytope_automorphism(facets: Mapping[str, Sequence[str]], vertex_perm: Mapping[str, str]) -> PanelPermutation:
    """Symmetry of :func:`simple_polytope` induced by a combinatorial automorphism of the polytope."""
    n, verts, contain, faces = _face_lattice(facets)
    fmap = {}
    for f, vs in facets.items():
        img = frozenset(vertex_perm[v] for v in vs)
        match = [g for g, ws in facets.items() if frozenset(ws) == img]
        if len(match) != 1:
            raise ValueError(f"vertex permutation does not map facet {f} onto a facet")
        fmap[f] = match[0]
    vmap = {"c": "c"}
    for key in faces:
        if not key:
            continue
        img = frozenset(fmap[f] for f in key)
        if len(key) == n:
            (v,) = faces[key]
            vmap[v] = vertex_perm[v]
        else:
            vmap[_face_label(key)] = _face_label(img)
    return PanelPermutation(fmap, vmap)
