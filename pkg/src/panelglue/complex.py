"""Finite simplicial models of nice manifolds with corners.

A :class:`CornerComplex` is a pure abstract simplicial complex whose boundary
facets are grouped into panels.  Every panel carries an involution given as a
permutation of the panel's vertices; reflexive panels carry the identity.
Simplices are tuples of vertex labels in sorted order.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

from .errors import ComplexError, GuardExceeded
from .unionfind import UnionFind

__all__ = [
    "PRINCIPAL",
    "REFLEXIVE",
    "Simplex",
    "simplex",
    "faces_of",
    "Panel",
    "CornerComplex",
    "Violation",
    "ValidationReport",
    "PerfectnessResult",
    "PanelPermutation",
    "validate",
    "duplicate_orbit",
    "point_orbit",
    "is_perfect",
    "fixed_simplices",
    "subpanel_complex",
    "subpanel",
    "barycentric_subdivide",
    "generate_group",
]

PRINCIPAL = "principal"
REFLEXIVE = "reflexive"
KINDS = (PRINCIPAL, REFLEXIVE)

Simplex = tuple  # tuple[str, ...] in sorted order


def simplex(labels: Iterable[str]) -> Simplex:
    return tuple(sorted(labels))


def faces_of(s: Simplex) -> Iterator[Simplex]:
    """All nonempty faces of ``s`` (including ``s``)."""
    for k in range(1, len(s) + 1):
        yield from itertools.combinations(s, k)


def _closure(cells: Iterable[Simplex]) -> frozenset:
    out: set = set()
    for c in cells:
        out.update(faces_of(c))
    return frozenset(out)


@dataclass(frozen=True)
class Panel:
    """A panel of the boundary together with its involution.

    ``cells`` are the codimension-one simplices of the panel; their faces
    belong to the panel as well.  ``involution`` maps each panel vertex to its
    twin.  A reflexive panel defaults to the identity.
    """

    id: str
    kind: str
    cells: frozenset
    involution: tuple = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", frozenset(simplex(c) for c in self.cells))
        inv = self.involution
        if inv is None or (not inv and self.kind == REFLEXIVE):
            inv = {v: v for v in self.vertices} if self.kind == REFLEXIVE else {}
        if isinstance(inv, Mapping):
            inv = inv.items()
        object.__setattr__(self, "involution", tuple(sorted((str(a), str(b)) for a, b in inv)))

    @cached_property
    def vertices(self) -> tuple[str, ...]:
        return tuple(sorted({v for c in self.cells for v in c}))

    @cached_property
    def tau(self) -> dict[str, str]:
        return dict(self.involution)

    @cached_property
    def closure(self) -> frozenset:
        return _closure(self.cells)

    @property
    def is_principal(self) -> bool:
        return self.kind == PRINCIPAL

    @property
    def is_reflexive(self) -> bool:
        return self.kind == REFLEXIVE

    def apply(self, s: Iterable[str]) -> Simplex:
        """Image of a panel simplex under the involution."""
        tau = self.tau
        return simplex(tau[v] for v in s)

    def __repr__(self) -> str:
        return f"Panel({self.id!r}, {self.kind}, {len(self.cells)} cells)"


@dataclass(frozen=True)
class Violation:
    condition: str
    message: str
    simplices: tuple = ()

    def __str__(self) -> str:
        where = ""
        if self.simplices:
            where = " at " + ", ".join("{" + ",".join(s) + "}" for s in self.simplices[:6])
            if len(self.simplices) > 6:
                where += f" (+{len(self.simplices) - 6} more)"
        return f"[{self.condition}] {self.message}{where}"


@dataclass(frozen=True)
class ValidationReport:
    complex_name: str
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def conditions(self) -> set[str]:
        return {v.condition for v in self.violations}

    def __str__(self) -> str:
        if self.ok:
            return f"{self.complex_name}: valid"
        return "\n".join([f"{self.complex_name}: {len(self.violations)} violation(s)"]
                         + [f"  {v}" for v in self.violations])


@dataclass(frozen=True)
class CornerComplex:
    """A pure simplicial complex with an involutive panel structure."""

    name: str
    dim: int
    vertices: tuple
    top_cells: tuple
    panels: tuple = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(sorted({str(v) for v in self.vertices})))
        object.__setattr__(self, "top_cells", tuple(sorted({simplex(map(str, c)) for c in self.top_cells})))
        object.__setattr__(self, "panels", tuple(self.panels))

    # -- combinatorial structure -------------------------------------------------

    @cached_property
    def simplices(self) -> tuple[tuple[Simplex, ...], ...]:
        """All simplices grouped by dimension, each group sorted."""
        by_dim: list[set] = [set() for _ in range(self.dim + 1)]
        for c in self.top_cells:
            for f in faces_of(c):
                if len(f) - 1 <= self.dim:
                    by_dim[len(f) - 1].add(f)
        for v in self.vertices:
            if self.dim >= 0:
                by_dim[0].add((v,))
        return tuple(tuple(sorted(s)) for s in by_dim)

    @cached_property
    def index(self) -> dict[Simplex, int]:
        """Position of every simplex within its dimension group."""
        return {s: i for group in self.simplices for i, s in enumerate(group)}

    @cached_property
    def all_simplices(self) -> frozenset:
        return frozenset(self.index)

    def n_simplices(self, d: int) -> int:
        return len(self.simplices[d]) if 0 <= d <= self.dim else 0

    @cached_property
    def facet_cofaces(self) -> dict[Simplex, list[Simplex]]:
        """Top cells containing each codimension-one simplex."""
        out: dict[Simplex, list[Simplex]] = {}
        if self.dim < 1:
            return out
        for c in self.top_cells:
            for f in itertools.combinations(c, len(c) - 1):
                out.setdefault(f, []).append(c)
        return out

    @cached_property
    def boundary_facets(self) -> frozenset:
        return frozenset(f for f, cof in self.facet_cofaces.items() if len(cof) == 1)

    @cached_property
    def panel_by_id(self) -> dict[str, Panel]:
        return {p.id: p for p in self.panels}

    def panel(self, pid: str) -> Panel:
        try:
            return self.panel_by_id[pid]
        except KeyError:
            raise KeyError(f"unknown panel {pid!r} in {self.name}") from None

    @property
    def principal_panels(self) -> list[Panel]:
        return [p for p in self.panels if p.is_principal]

    @property
    def reflexive_panels(self) -> list[Panel]:
        return [p for p in self.panels if p.is_reflexive]

    @cached_property
    def panels_containing(self) -> dict[Simplex, tuple[str, ...]]:
        """Ids of the panels whose closure contains each boundary simplex."""
        out: dict[Simplex, list[str]] = {}
        for p in self.panels:
            for s in p.closure:
                out.setdefault(s, []).append(p.id)
        return {s: tuple(ids) for s, ids in out.items()}

    def panels_of(self, s: Iterable[str]) -> tuple[str, ...]:
        return self.panels_containing.get(simplex(s), ())

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        idx = {v: i for i, v in enumerate(self.vertices)}
        uf = UnionFind(len(self.vertices))
        for c in self.top_cells:
            for v in c[1:]:
                uf.union(idx[c[0]], idx[v])
        return uf.n_sets == 1

    @cached_property
    def validation(self) -> ValidationReport:
        return validate(self)

    # -- array views used by the glue-back construction --------------------------

    @cached_property
    def vertex_index(self) -> tuple[np.ndarray, ...]:
        """Per dimension, a ``(N_d, d+1)`` array of vertex positions."""
        vpos = {v: i for i, v in enumerate(self.simplices[0])} if self.dim >= 0 else {}
        out = []
        for d, group in enumerate(self.simplices):
            arr = np.array([[vpos[(v,)] for v in s] for s in group], dtype=np.int64)
            out.append(arr.reshape(len(group), d + 1))
        return tuple(out)

    @cached_property
    def face_index(self) -> tuple[np.ndarray, ...]:
        """Per dimension ``d >= 1``, a ``(N_d, d+1)`` array; column ``i`` is the face omitting vertex ``i``."""
        idx = self.index
        out = [np.zeros((self.n_simplices(0), 0), dtype=np.int64)]
        for d in range(1, self.dim + 1):
            group = self.simplices[d]
            arr = np.array([[idx[s[:i] + s[i + 1:]] for i in range(d + 1)] for s in group], dtype=np.int64)
            out.append(arr.reshape(len(group), d + 1))
        return tuple(out)

    @cached_property
    def panel_pairs(self) -> tuple[tuple[np.ndarray, np.ndarray, np.ndarray], ...]:
        """Per dimension: (simplex index, image index, panel position) over all panel closures."""
        idx = self.index
        acc: list[list[tuple[int, int, int]]] = [[] for _ in range(self.dim + 1)]
        for j, p in enumerate(self.panels):
            for s in p.closure:
                if s in idx:
                    acc[len(s) - 1].append((idx[s], idx[p.apply(s)], j))
        out = []
        for rows in acc:
            rows.sort()
            a = np.array(rows, dtype=np.int64).reshape(len(rows), 3)
            out.append((a[:, 0], a[:, 1], a[:, 2]))
        return tuple(out)

    @cached_property
    def subdivided(self) -> "CornerComplex":
        return barycentric_subdivide(self)

    @cached_property
    def quotient_connected(self) -> bool:
        """Whether the complex becomes connected after identifying every point with its duplicates."""
        n0 = self.n_simplices(0)
        if n0 == 0:
            return False
        uf = UnionFind(n0)
        for d, arr in enumerate(self.vertex_index):
            for row in arr:
                for v in row[1:]:
                    uf.union(int(row[0]), int(v))
            if d >= 1:
                break
        src, dst, _ = self.panel_pairs[0]
        uf.union_pairs(src, dst)
        return uf.n_sets == 1

    def with_panels(self, panels: Sequence[Panel], name: Optional[str] = None) -> "CornerComplex":
        return CornerComplex(name or self.name, self.dim, self.vertices, self.top_cells, tuple(panels))

    def __repr__(self) -> str:
        counts = "/".join(str(len(g)) for g in self.simplices)
        return f"CornerComplex({self.name!r}, dim={self.dim}, cells={counts}, panels={len(self.panels)})"


# -- validation ---------------------------------------------------------------


def validate(c: CornerComplex) -> ValidationReport:
    """Check purity, the manifold condition and panel axioms (a)-(c).

    Every violated invariant is listed with the offending simplices; an empty
    report means the complex is valid.
    """
    out: list[Violation] = []
    n = c.dim
    vset = set(c.vertices)
    if n < 0:
        out.append(Violation("schema", f"dimension must be >= 0, got {n}"))
        return ValidationReport(c.name, tuple(out))

    bad = [t for t in c.top_cells if len(t) != n + 1]
    if bad:
        out.append(Violation("pure", f"top cells must have {n + 1} vertices", tuple(bad)))
    unknown = sorted({v for t in c.top_cells for v in t} - vset)
    if unknown:
        out.append(Violation("schema", "top cells use undeclared vertices", tuple((v,) for v in unknown)))
    used = {v for t in c.top_cells for v in t}
    isolated = sorted(vset - used)
    if isolated and n > 0:
        out.append(Violation("pure", "vertices not contained in any top cell", tuple((v,) for v in isolated)))
    ids = [p.id for p in c.panels]
    dup = sorted({i for i in ids if ids.count(i) > 1})
    if dup:
        out.append(Violation("schema", f"duplicate panel ids {dup}"))
    for p in c.panels:
        if p.kind not in KINDS:
            out.append(Violation("schema", f"panel {p.id} has unknown kind {p.kind!r}"))
    if out:
        return ValidationReport(c.name, tuple(out))

    if n == 0:
        if c.panels:
            out.append(Violation("(a)", "a 0-dimensional complex has no boundary, so no panels"))
        return ValidationReport(c.name, tuple(out))

    over = [f for f, cof in c.facet_cofaces.items() if len(cof) > 2]
    if over:
        out.append(Violation("pseudomanifold", "codimension-one simplices in more than two top cells",
                             tuple(sorted(over))))

    # (a) panels partition the boundary facets
    owner: dict[Simplex, list[str]] = {}
    for p in c.panels:
        wrong = sorted(s for s in p.cells if len(s) != n)
        if wrong:
            out.append(Violation("(a)", f"panel {p.id} has cells of the wrong dimension", tuple(wrong)))
        interior = sorted(s for s in p.cells if len(s) == n and s not in c.boundary_facets)
        if interior:
            out.append(Violation("(a)", f"panel {p.id} contains non-boundary simplices", tuple(interior)))
        for s in p.cells:
            owner.setdefault(s, []).append(p.id)
    multi = sorted(s for s, o in owner.items() if len(o) > 1)
    if multi:
        out.append(Violation("(a)", "boundary facets contained in more than one panel", tuple(multi)))
    orphan = sorted(c.boundary_facets - set(owner))
    if orphan:
        out.append(Violation("(a)", "boundary facets not contained in any panel", tuple(orphan)))

    # (b) involutions
    sound: dict[str, Panel] = {}
    for p in c.panels:
        tau = p.tau
        pv = set(p.vertices)
        if set(tau) != pv:
            missing = sorted(pv - set(tau))
            extra = sorted(set(tau) - pv)
            out.append(Violation("(b)", f"involution of {p.id} must be defined exactly on the panel vertices"
                                 f" (missing {missing}, extra {extra})"))
            continue
        if any(tau[v] not in pv for v in pv):
            out.append(Violation("(b)", f"involution of {p.id} leaves the panel"))
            continue
        not_inv = sorted((v,) for v in pv if tau[tau[v]] != v)
        if not_inv:
            out.append(Violation("(b)", f"map on {p.id} is not an involution", tuple(not_inv)))
            continue
        if p.is_reflexive and any(tau[v] != v for v in pv):
            out.append(Violation("reflexive", f"reflexive panel {p.id} must carry the identity"))
            continue
        not_simplicial = sorted(s for s in p.cells if p.apply(s) not in p.cells)
        if not_simplicial:
            out.append(Violation("(b)", f"involution of {p.id} does not map panel cells to panel cells",
                                 tuple(not_simplicial)))
            continue
        sound[p.id] = p

    # (c) stability and commutation on pairwise intersections
    plist = [p for p in c.panels if p.id in sound]
    for a, b in itertools.combinations(plist, 2):
        inter = a.closure & b.closure
        if not inter:
            continue
        leaving = sorted(s for s in inter if a.apply(s) not in inter or b.apply(s) not in inter)
        if leaving:
            out.append(Violation("(c)", f"intersection of {a.id} and {b.id} is not invariant", tuple(leaving)))
            continue
        verts = sorted({v for s in inter for v in s})
        noncomm = [(v,) for v in verts if a.tau[b.tau[v]] != b.tau[a.tau[v]]]
        if noncomm:
            out.append(Violation("(c)", f"involutions of {a.id} and {b.id} do not commute", tuple(noncomm)))
    return ValidationReport(c.name, tuple(out))


def _require_valid(c: CornerComplex) -> None:
    rep = c.validation
    if not rep.ok:
        raise ComplexError(str(rep))


def _require_simplex(c: CornerComplex, s: Iterable[str]) -> Simplex:
    t = simplex(s)
    if t not in c.index:
        raise KeyError(f"{t} is not a simplex of {c.name}")
    return t


# -- duplicate points ---------------------------------------------------------


def duplicate_orbit(c: CornerComplex, s: Iterable[str]) -> frozenset:
    """Simplices reachable from ``s`` by involutions of panels containing the current simplex."""
    _require_valid(c)
    start = _require_simplex(c, s)
    seen = {start}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        for pid in c.panels_containing.get(t, ()):
            u = c.panel_by_id[pid].apply(t)
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return frozenset(seen)


def point_orbit(c: CornerComplex, s: Iterable[str]) -> frozenset:
    """Duplicate points of a generic interior point of ``s``.

    States are vertex tuples in the order of ``s``; two states coincide iff the
    corresponding images of a generic point coincide.
    """
    _require_valid(c)
    start = _require_simplex(c, s)
    seen = {start}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        for pid in c.panels_containing.get(simplex(t), ()):
            tau = c.panel_by_id[pid].tau
            u = tuple(tau[v] for v in t)
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return frozenset(seen)


@dataclass(frozen=True)
class PerfectnessResult:
    perfect: bool
    witness: Optional[Simplex] = None
    expected: int = 0
    found: int = 0

    def __bool__(self) -> bool:
        return self.perfect


def is_perfect(c: CornerComplex) -> PerfectnessResult:
    """Whether every simplex in ``s`` principal panels has ``2**s`` duplicate points.

    Reflexive panels contribute the identity, i.e. a factor of one.  On
    failure the first offending simplex (by dimension, then label order) is
    returned as witness.
    """
    _require_valid(c)
    for group in c.simplices:
        for s in group:
            pids = c.panels_containing.get(s, ())
            k = sum(1 for pid in pids if c.panel_by_id[pid].is_principal)
            if not pids:
                continue
            found = len(point_orbit(c, s))
            if found != 1 << k:
                return PerfectnessResult(False, s, 1 << k, found)
    return PerfectnessResult(True)


def fixed_simplices(c: CornerComplex) -> dict[str, list[Simplex]]:
    """Principal-panel simplices mapped to themselves by their panel's involution.

    A non-empty list means the involution has fixed points (it is not free).
    """
    out: dict[str, list[Simplex]] = {}
    for p in c.principal_panels:
        fixed = sorted(s for s in p.closure if p.apply(s) == s)
        if fixed:
            out[p.id] = fixed
    return out


# -- subpanels ----------------------------------------------------------------


def subpanel(c: CornerComplex, ids: Iterable[str]) -> frozenset:
    """Simplices of the intersection of the closures of the given panels."""
    ids = list(ids)
    if not ids:
        return c.all_simplices
    inter = None
    for pid in ids:
        cl = c.panel(pid).closure
        inter = cl if inter is None else inter & cl
    return frozenset(inter)


def subpanel_complex(c: CornerComplex, ids: Iterable[str]) -> CornerComplex:
    """The intersection of the given panels with its induced panel structure.

    Panels of the result are the nonempty intersections with the remaining
    panels, carrying the restricted involutions and keeping their ids.
    """
    _require_valid(c)
    ids = sorted(set(ids))
    if not ids:
        return c
    for pid in ids:
        c.panel(pid)
    inter = subpanel(c, ids)
    if not inter:
        raise ValueError(f"panels {ids} of {c.name} do not intersect")
    d = c.dim - len(ids)
    if d < 0:
        raise ValueError(f"intersection of {len(ids)} panels in dimension {c.dim} must be empty")
    top = sorted(s for s in inter if len(s) == d + 1)
    if inter - _closure(top):
        raise ValueError(f"intersection of {ids} is not pure of dimension {d}")
    verts = sorted({v for s in top for v in s})
    panels = []
    if d >= 1:
        for p in c.panels:
            if p.id in ids:
                continue
            part = p.closure & inter
            if not part:
                continue
            cells = [s for s in part if len(s) == d]
            if not cells:
                raise ValueError(f"panel {p.id} meets the intersection of {ids} in too small a set")
            pv = {v for s in cells for v in s}
            panels.append(Panel(p.id, p.kind, frozenset(cells), {v: p.tau[v] for v in pv}))
    name = f"{c.name}[{','.join(ids)}]"
    return CornerComplex(name, d, tuple(verts), tuple(top), tuple(panels))


# -- barycentric subdivision --------------------------------------------------


def _bary_label(s: Simplex) -> str:
    return s[0] if len(s) == 1 else "<" + ",".join(s) + ">"


def _flags(s: Simplex) -> Iterator[tuple[Simplex, ...]]:
    # maximal chains of faces of s, from vertex up to s
    for perm in itertools.permutations(s):
        yield tuple(simplex(perm[: k + 1]) for k in range(len(s)))


def barycentric_subdivide(c: CornerComplex) -> CornerComplex:
    """Barycentric subdivision with panels and involutions carried along.

    The barycenter of a vertex keeps its label; the barycenter of a larger
    simplex ``(a, b, ...)`` is labelled ``<a,b,...>``.
    """
    _require_valid(c)
    label = {s: _bary_label(s) for s in c.index}
    if len(set(label.values())) != len(label):
        raise ComplexError(f"barycenter labels collide in {c.name}")
    top = [tuple(label[f] for f in flag) for t in c.top_cells for flag in _flags(t)]
    panels = []
    for p in c.panels:
        cells = [tuple(label[f] for f in flag) for s in p.cells for flag in _flags(s)]
        inv = {label[s]: label[p.apply(s)] for s in p.closure}
        panels.append(Panel(p.id, p.kind, frozenset(cells), inv))
    return CornerComplex(f"sd({c.name})", c.dim, tuple(label.values()), tuple(top), tuple(panels))


# -- panel permutations -------------------------------------------------------


@dataclass(frozen=True)
class PanelPermutation:
    """A permutation of panel ids, optionally induced by a vertex automorphism."""

    mapping: tuple
    vertex_map: tuple = ()

    def __post_init__(self) -> None:
        for name in ("mapping", "vertex_map"):
            val = getattr(self, name)
            if isinstance(val, Mapping):
                val = val.items()
            object.__setattr__(self, name, tuple(sorted((str(a), str(b)) for a, b in (val or ()))))

    @classmethod
    def identity(cls, ids: Iterable[str]) -> "PanelPermutation":
        return cls({i: i for i in ids})

    @cached_property
    def as_dict(self) -> dict[str, str]:
        return dict(self.mapping)

    def __call__(self, pid: str) -> str:
        return self.as_dict[pid]

    def compose(self, other: "PanelPermutation") -> "PanelPermutation":
        """``self o other`` (apply ``other`` first)."""
        return PanelPermutation({k: self(v) for k, v in other.as_dict.items()})

    def check(self, c: CornerComplex) -> list[str]:
        """Problems preventing this from being a kind-preserving symmetry of ``c``."""
        probs = []
        ids = {p.id for p in c.panels}
        m = self.as_dict
        if set(m) != ids or set(m.values()) != ids:
            return [f"panel map must be a bijection on {sorted(ids)}"]
        for a, b in m.items():
            if c.panel(a).kind != c.panel(b).kind:
                probs.append(f"{a} -> {b} does not preserve the panel kind")
        if self.vertex_map:
            vm = dict(self.vertex_map)
            if set(vm) != set(c.vertices) or set(vm.values()) != set(c.vertices):
                return probs + ["vertex map must be a bijection on the vertices"]
            tops = set(c.top_cells)
            if any(simplex(vm[v] for v in t) not in tops for t in tops):
                probs.append("vertex map is not a simplicial automorphism")
            for p in c.panels:
                target = c.panel(m[p.id]).cells
                if any(simplex(vm[v] for v in s) not in target for s in p.cells):
                    probs.append(f"vertex map does not send panel {p.id} onto {m[p.id]}")
        return probs


def generate_group(gens: Sequence[PanelPermutation], ids: Iterable[str],
                   limit: int = 10_000) -> list[PanelPermutation]:
    """Closure of ``gens`` under composition, identity first, in BFS order."""
    ident = PanelPermutation.identity(ids)
    gens = [PanelPermutation(g.mapping) for g in gens]
    seen = {ident.mapping: ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        h = queue.popleft()
        for g in gens:
            k = g.compose(h)
            if k.mapping not in seen:
                if len(seen) >= limit:
                    raise GuardExceeded(f"automorphism group exceeds {limit} elements")
                seen[k.mapping] = k
                order.append(k)
                queue.append(k)
    return order
