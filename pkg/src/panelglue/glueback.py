"""The glue-back construction ``M(V, lambda) = V x (Z_2)^m / ~``.

Cells of the glued complex are classes of pairs ``(s, g)`` with ``s`` a
simplex of the input complex and ``g`` in ``(Z_2)^m``, under the relation
``(s, g) ~ (tau_i(s), g + color(P_i))`` for every simplex ``s`` in the
closure of panel ``P_i``.  Classes are computed one dimension at a time as
connected components of a sparse graph on the nodes ``s * 2^m + g``, then
numbered by their smallest node so that the result does not depend on any
traversal order.

Group elements are handled as ints here (bit ``i-1`` is coordinate ``i``);
the public API accepts and returns :class:`~panelglue.gf2.GroupElement`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .complex import CornerComplex, Simplex, simplex, subpanel, subpanel_complex
from .errors import ColoringError, ComplexError, DisconnectedBaseError, LinearIndependenceError
from .gf2 import GF2Matrix, GroupElement, DimensionMismatch, rank_ints, span_basis, span_ints

__all__ = [
    "Coloring",
    "CompositeColoring",
    "GluedComplex",
    "ComponentInfo",
    "IsotropyEntry",
    "FreenessReport",
    "LocalStandardReport",
    "SubpanelPreimage",
    "glue",
    "components",
    "components_isomorphic",
    "is_free",
    "isotropy_check_locally_standard",
    "monodromy",
    "lift_path",
    "component_count_formula",
    "component_count_general",
    "formula_applies",
    "preimage_of_subpanel",
    "orbit_partition",
    "orbit_space_matches_base",
    "restrict_coloring",
]


# -- colorings ----------------------------------------------------------------


def _as_elements(values: Mapping[str, GroupElement], m: int, what: str) -> dict[str, GroupElement]:
    out = {}
    for k, v in values.items():
        if not isinstance(v, GroupElement):
            v = GroupElement.parse(v) if isinstance(v, str) else GroupElement(int(v), m)
        if v.m != m:
            raise DimensionMismatch(f"{what} color of {k} has length {v.m}, expected {m}")
        out[str(k)] = v
    return out


@dataclass(frozen=True)
class Coloring:
    """A ``(Z_2)^m``-coloring of the principal panels."""

    group_rank: int
    assignment: Mapping[str, GroupElement] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", _as_elements(self.assignment, self.group_rank, "panel"))

    @classmethod
    def from_values(cls, c: CornerComplex, values: Sequence, m: int) -> "Coloring":
        """Assign ``values`` (ints or GroupElements) to the principal panels in order."""
        ids = [p.id for p in c.principal_panels]
        if len(values) != len(ids):
            raise ColoringError(f"{c.name} has {len(ids)} principal panels, got {len(values)} colors")
        return cls(m, dict(zip(ids, values)))

    @property
    def m(self) -> int:
        return self.group_rank

    @property
    def lam(self) -> Mapping[str, GroupElement]:
        return self.assignment

    @property
    def mu(self) -> Mapping[str, GroupElement]:
        return {}

    def panel_colors(self) -> dict[str, GroupElement]:
        return dict(self.assignment)

    def check(self, c: CornerComplex) -> None:
        ids = {p.id for p in c.principal_panels}
        missing = sorted(ids - set(self.assignment))
        extra = sorted(set(self.assignment) - ids)
        if missing:
            raise ColoringError(f"coloring is incomplete: no color for principal panel(s) {missing}")
        if extra:
            raise ColoringError(f"coloring names panel(s) {extra} that are not principal panels of {c.name}")

    def __str__(self) -> str:
        return ",".join(f"{k}:{v}" for k, v in self.assignment.items())


@dataclass(frozen=True)
class CompositeColoring:
    """A pair ``(lambda, mu)``: colors on principal and on reflexive panels."""

    group_rank: int
    lam: Mapping[str, GroupElement] = field(default_factory=dict)
    mu: Mapping[str, GroupElement] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", _as_elements(self.lam, self.group_rank, "principal"))
        object.__setattr__(self, "mu", _as_elements(self.mu, self.group_rank, "reflexive"))
        clash = set(self.lam) & set(self.mu)
        if clash:
            raise ColoringError(f"panel(s) {sorted(clash)} colored twice")

    @classmethod
    def from_values(cls, c: CornerComplex, lam: Sequence, mu: Sequence, m: int) -> "CompositeColoring":
        pids = [p.id for p in c.principal_panels]
        rids = [p.id for p in c.reflexive_panels]
        if len(lam) != len(pids) or len(mu) != len(rids):
            raise ColoringError(f"{c.name} needs {len(pids)} principal and {len(rids)} reflexive colors")
        return cls(m, dict(zip(pids, lam)), dict(zip(rids, mu)))

    @property
    def m(self) -> int:
        return self.group_rank

    def panel_colors(self) -> dict[str, GroupElement]:
        return {**self.lam, **self.mu}

    def check(self, c: CornerComplex) -> None:
        Coloring(self.group_rank, self.lam).check(c)
        rids = {p.id for p in c.reflexive_panels}
        missing = sorted(rids - set(self.mu))
        extra = sorted(set(self.mu) - rids)
        if missing:
            raise ColoringError(f"coloring is incomplete: no color for reflexive panel(s) {missing}")
        if extra:
            raise ColoringError(f"coloring names panel(s) {extra} that are not reflexive panels of {c.name}")
        bad = linear_independence_violation(c, self.mu)
        if bad is not None:
            s, ids = bad
            raise LinearIndependenceError(
                f"Linear-Indep violated: reflexive panels {list(ids)} meet at {{{','.join(s)}}} "
                f"but their colors {[str(self.mu[i]) for i in ids]} are linearly dependent")

    def __str__(self) -> str:
        return ",".join(f"{k}:{v}" for k, v in self.panel_colors().items())


AnyColoring = Union[Coloring, CompositeColoring]


def linear_independence_violation(c: CornerComplex, mu: Mapping[str, GroupElement]):
    """First vertex whose reflexive panels carry dependent colors, or None.

    Checking vertices suffices: the panels through any simplex are a subset of
    those through each of its vertices.
    """
    reflexive = {p.id for p in c.reflexive_panels}
    for (v,) in c.simplices[0]:
        ids = tuple(i for i in c.panels_of((v,)) if i in reflexive)
        if len(ids) > 1 or (ids and not mu[ids[0]]):
            if rank_ints(mu[i].value for i in ids) < len(ids):
                return (v,), ids
    return None


# -- the glued complex ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GluedComplex:
    """Result of :func:`glue`.

    Attributes
    ----------
    complex : CornerComplex
        The complex that was actually glued (possibly a barycentric subdivision
        of ``original``).
    cell_of : tuple of ndarray
        ``cell_of[d][s, g]`` is the class of the pair ``(s, g)``.
    rep_simplex, rep_copy : tuple of ndarray
        Smallest pair in each class.
    verts : tuple of ndarray
        ``verts[d][k]`` lists the vertex classes of cell ``k`` in increasing order.
    faces : tuple of ndarray
        ``faces[d][k][i]`` is the class of the face opposite ``verts[d][k][i]``.
    """

    complex: CornerComplex
    original: CornerComplex
    coloring: AnyColoring
    m: int
    subdivisions: int
    glued_panels: tuple[str, ...]
    cell_of: tuple
    rep_simplex: tuple
    rep_copy: tuple
    verts: tuple
    faces: tuple
    simplicial: bool

    @property
    def dim(self) -> int:
        return self.complex.dim

    @property
    def order(self) -> int:
        return 1 << self.m

    def n_cells(self, d: int) -> int:
        return len(self.rep_simplex[d]) if 0 <= d <= self.dim else 0

    @property
    def cell_counts(self) -> list[int]:
        return [self.n_cells(d) for d in range(self.dim + 1)]

    def euler(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.cell_counts))

    def quotient_map(self, s: Iterable[str], g: GroupElement | int) -> int:
        """Class of the pair ``(s, g)``."""
        s = simplex(s)
        gv = g.value if isinstance(g, GroupElement) else int(g)
        return int(self.cell_of[len(s) - 1][self.complex.index[s], gv])

    def representative(self, d: int, k: int) -> tuple[Simplex, GroupElement]:
        s = self.complex.simplices[d][int(self.rep_simplex[d][k])]
        return s, GroupElement(int(self.rep_copy[d][k]), self.m)

    def action(self, g: GroupElement | int, d: Optional[int] = None):
        """Permutation of cell classes induced by ``g`` (all dimensions unless ``d`` is given)."""
        gv = g.value if isinstance(g, GroupElement) else int(g)
        dims = range(self.dim + 1) if d is None else [d]
        out = [self.cell_of[e][self.rep_simplex[e], self.rep_copy[e] ^ gv] for e in dims]
        return out if d is None else out[0]

    @cached_property
    def stabilizers(self) -> tuple[np.ndarray, ...]:
        """``stabilizers[d][k, g]`` is True when ``g`` fixes cell ``k``."""
        out = []
        gs = np.arange(self.order, dtype=np.int64)
        for d in range(self.dim + 1):
            img = self.cell_of[d][self.rep_simplex[d][:, None], self.rep_copy[d][:, None] ^ gs[None, :]]
            out.append(img == np.arange(self.n_cells(d))[:, None])
        return tuple(out)

    @cached_property
    def vertex_components(self) -> np.ndarray:
        """Connected component label of every vertex class."""
        n0 = self.n_cells(0)
        if self.dim == 0:
            return np.arange(n0, dtype=np.int64)
        e = self.verts[1]
        return _canonical_components(n0, e[:, 0], e[:, 1])[0]

    @property
    def n_components(self) -> int:
        vc = self.vertex_components
        return int(vc.max()) + 1 if len(vc) else 0

    def component_of(self, d: int) -> np.ndarray:
        return self.vertex_components[self.verts[d][:, 0]]

    def top_simplices(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in row) for row in self.verts[self.dim]]

    def vertex_label(self, k: int) -> str:
        s, g = self.representative(0, k)
        return s[0] if self.m == 0 else f"{s[0]}.{g}"

    def to_complex(self, name: Optional[str] = None) -> CornerComplex:
        """Export as a plain simplicial complex (no panels)."""
        if not self.simplicial:
            raise ComplexError("glued complex is not simplicial; glue with simplicial=True to export")
        labels = [self.vertex_label(k) for k in range(self.n_cells(0))]
        tops = [tuple(labels[v] for v in row) for row in self.top_simplices()]
        nm = name or f"M({self.original.name};{self.coloring})"
        return CornerComplex(nm, self.dim, tuple(labels), tuple(tops), ())

    def action_table(self) -> dict[str, list[int]]:
        """Permutation of top cells for every group element (``m <= 3``)."""
        if self.m > 3:
            raise ValueError("action tables are only produced for m <= 3")
        return {str(GroupElement(g, self.m)): [int(x) for x in self.action(g, self.dim)]
                for g in range(self.order)}

    def __repr__(self) -> str:
        return (f"GluedComplex({self.original.name!r}, m={self.m}, cells={self.cell_counts}, "
                f"subdivisions={self.subdivisions})")


def _canonical_components(n: int, a, b) -> tuple[np.ndarray, np.ndarray]:
    """Component labels numbered by smallest member, and the smallest member of each.

    Min-label propagation with pointer jumping; every node ends up pointing
    at the smallest node of its component.
    """
    if n == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    lab = np.arange(n, dtype=np.int64)
    while len(a):
        la, lb = lab[a], lab[b]
        diff = la != lb
        if not diff.any():
            break
        la, lb = la[diff], lb[diff]
        lo = np.minimum(la, lb)
        np.minimum.at(lab, la, lo)
        np.minimum.at(lab, lb, lo)
        while True:
            nxt = lab[lab]
            if np.array_equal(nxt, lab):
                break
            lab = nxt
    first = np.unique(lab)
    return np.searchsorted(first, lab), first


def _glue_once(c: CornerComplex, colors: dict[int, int], m: int):
    G = 1 << m
    gs = np.arange(G, dtype=np.int64)
    glued = np.zeros(len(c.panels), dtype=bool)
    xs_of = np.zeros(len(c.panels), dtype=np.int64)
    for j, x in colors.items():
        glued[j] = True
        xs_of[j] = x
    cell_of, rep_s, rep_g, verts, faces = [], [], [], [], []
    for d in range(c.dim + 1):
        n = c.n_simplices(d)
        src, dst, pos = c.panel_pairs[d]
        keep = glued[pos]
        src, dst, xs = src[keep], dst[keep], xs_of[pos[keep]]
        a = (src[:, None] * G + gs[None, :]).ravel()
        b = (dst[:, None] * G + (gs[None, :] ^ xs[:, None])).ravel()
        labels, first = _canonical_components(n * G, a, b)
        cell_of.append(labels.reshape(n, G))
        rep_s.append(first // G)
        rep_g.append(first % G)
    for d in range(c.dim + 1):
        vi = c.vertex_index[d][rep_s[d]]
        vraw = cell_of[0][vi, rep_g[d][:, None]]
        perm = np.argsort(vraw, axis=1, kind="stable")
        verts.append(np.take_along_axis(vraw, perm, axis=1))
        if d == 0:
            faces.append(np.zeros((len(rep_s[0]), 0), dtype=np.int64))
        else:
            fraw = cell_of[d - 1][c.face_index[d][rep_s[d]], rep_g[d][:, None]]
            faces.append(np.take_along_axis(fraw, perm, axis=1))
    return cell_of, rep_s, rep_g, verts, faces


def _simplicial_problem(verts) -> Optional[str]:
    for d, v in enumerate(verts):
        if d == 0 or len(v) == 0:
            continue
        if np.any(v[:, 1:] == v[:, :-1]):
            return f"a {d}-cell has identified vertices"
        if len(np.unique(v, axis=0)) < len(v):
            return f"two {d}-cells share their vertex set"
    return None


def glue(c: CornerComplex, col: AnyColoring, *, simplicial: bool = True, max_subdivisions: int = 2,
         require_connected_base: bool = True) -> GluedComplex:
    """Build ``M(c, col)``.

    With a plain :class:`Coloring` only principal panels are glued, so
    reflexive panels stay as boundary.  With a :class:`CompositeColoring`
    reflexive panels are glued to themselves across copies ``g`` and
    ``g + mu(P)``.

    When ``simplicial`` is true the base is barycentrically subdivided (at most
    ``max_subdivisions`` times) until the quotient is a simplicial complex;
    otherwise subdivision only happens when a cell would have identified
    vertices.  A quotient that still fails raises :class:`ComplexError`.
    """
    rep = c.validation
    if not rep.ok:
        raise ComplexError(str(rep))
    col.check(c)
    if require_connected_base and not c.quotient_connected:
        raise DisconnectedBaseError(f"the base (m=0 quotient) of {c.name} is disconnected")
    m = col.group_rank
    by_id = col.panel_colors()
    base = c
    for level in range(max_subdivisions + 1):
        pos = {p.id: j for j, p in enumerate(base.panels)}
        colors = {pos[k]: v.value for k, v in by_id.items()}
        cell_of, rep_s, rep_g, verts, faces = _glue_once(base, colors, m)
        problem = _simplicial_problem(verts)
        if problem is None or (not simplicial and "identified" not in problem):
            return GluedComplex(base, c, col, m, level, tuple(sorted(by_id)), tuple(cell_of), tuple(rep_s),
                                tuple(rep_g), tuple(verts), tuple(faces), problem is None)
        if level < max_subdivisions:
            base = base.subdivided
    raise ComplexError(f"quotient of {c.name} is not simplicial after {max_subdivisions} subdivisions: {problem}")


# -- components -----------------------------------------------------------------


@dataclass(frozen=True)
class ComponentInfo:
    index: int
    cell_counts: tuple[int, ...]
    euler: int
    copies: tuple[int, ...]  # group elements g with some (top cell, g) in this component


def components(gc: GluedComplex) -> list[ComponentInfo]:
    """Connected components with cell counts per dimension."""
    out = []
    nc = gc.n_components
    per_dim = [np.bincount(gc.component_of(d), minlength=nc) for d in range(gc.dim + 1)]
    top = gc.dim
    ctop = gc.component_of(top)
    for k in range(nc):
        counts = tuple(int(per_dim[d][k]) for d in range(gc.dim + 1))
        copies = tuple(sorted({int(g) for g in gc.rep_copy[top][ctop == k]}))
        out.append(ComponentInfo(k, counts, sum((-1) ** d * n for d, n in enumerate(counts)), copies))
    return out


def components_isomorphic(gc: GluedComplex) -> bool:
    """True when the group action permutes the components transitively.

    Each ``action(g)`` is a cellular automorphism, so transitivity exhibits an
    explicit isomorphism between any two components.
    """
    if gc.n_cells(0) == 0:
        return True
    reached = {int(gc.vertex_components[gc.action(g, 0)[0]]) for g in range(gc.order)}
    return len(reached) == gc.n_components


# -- isotropy -------------------------------------------------------------------


@dataclass(frozen=True)
class IsotropyEntry:
    dim: int
    cell: int
    simplex: Simplex
    copy: str
    isotropy: tuple[str, ...]  # basis of the isotropy subgroup, as bit strings
    expected: Optional[tuple[str, ...]] = None

    def __str__(self) -> str:
        s = "{" + ",".join(self.simplex) + "}"
        out = f"{self.dim}-cell {self.cell} [{s} @ {self.copy}] isotropy <{', '.join(self.isotropy) or '0'}>"
        if self.expected is not None:
            out += f" expected <{', '.join(self.expected) or '0'}>"
        return out


@dataclass(frozen=True)
class FreenessReport:
    free: bool
    fixed: tuple[IsotropyEntry, ...]

    def __bool__(self) -> bool:
        return self.free


def _isotropy_basis(row: np.ndarray) -> list[int]:
    return span_basis(int(g) for g in np.flatnonzero(row))


def _entry(gc: GluedComplex, d: int, k: int, basis: list[int],
           expected: Optional[Sequence[int]] = None) -> IsotropyEntry:
    s, g = gc.representative(d, k)
    exp = None if expected is None else tuple(str(GroupElement(b, gc.m)) for b in expected)
    return IsotropyEntry(d, int(k), s, str(g), tuple(str(GroupElement(b, gc.m)) for b in basis), exp)


def is_free(gc: GluedComplex) -> FreenessReport:
    """Whether no nonzero group element fixes a cell; lists every fixed cell."""
    fixed = []
    for d, stab in enumerate(gc.stabilizers):
        nontrivial = np.flatnonzero(stab[:, 1:].any(axis=1)) if gc.order > 1 else []
        for k in nontrivial:
            fixed.append(_entry(gc, d, k, _isotropy_basis(stab[k])))
    return FreenessReport(not fixed, tuple(fixed))


@dataclass(frozen=True)
class LocalStandardReport:
    ok: bool
    mismatches: tuple[IsotropyEntry, ...]
    checked: int

    def __bool__(self) -> bool:
        return self.ok


def isotropy_check_locally_standard(gc: GluedComplex) -> LocalStandardReport:
    """Compare each cell's isotropy with the span of the reflexive colors at its base simplex.

    The isotropy must equal ``span{mu(P'_j)}`` over the reflexive panels
    containing the simplex and have dimension equal to their number.
    """
    c = gc.complex
    mu = gc.coloring.mu
    reflexive = {p.id for p in c.reflexive_panels if p.id in mu}
    bad = []
    checked = 0
    for d, stab in enumerate(gc.stabilizers):
        group = c.simplices[d]
        for k in range(gc.n_cells(d)):
            s = group[int(gc.rep_simplex[d][k])]
            ids = [i for i in c.panels_containing.get(s, ()) if i in reflexive]
            expected = span_basis(mu[i].value for i in ids)
            actual = set(int(g) for g in np.flatnonzero(stab[k]))
            checked += 1
            if len(expected) != len(ids) or actual != set(span_ints(expected)):
                bad.append(_entry(gc, d, k, _isotropy_basis(stab[k]), expected))
    return LocalStandardReport(not bad, tuple(bad), checked)


# -- monodromy ------------------------------------------------------------------


def _principal_ids(c: CornerComplex, path: Sequence[str]) -> list[str]:
    out = []
    for pid in path:
        p = c.panel(pid)
        if not p.is_principal:
            raise ValueError(f"path crosses reflexive panel {pid}; only principal panels can be crossed")
        out.append(pid)
    return out


def monodromy(c: CornerComplex, col: AnyColoring, path: Sequence[str]) -> GroupElement:
    """Sum of the colors of the crossed panels."""
    lam = col.lam
    total = GroupElement.zero(col.group_rank)
    for pid in _principal_ids(c, path):
        total = total + lam[pid]
    return total


def lift_path(gc: GluedComplex, path: Sequence[str], start: Optional[Simplex] = None) -> GroupElement:
    """Monodromy by lifting a closed path through the glued complex.

    The path starts in copy 0 at ``start`` (default: the first top cell), walks
    inside the base through interior facets, and crosses the listed panels in
    order using the glued facet adjacency.  Finally it walks back to the top
    cell it started from.  The copy it ends in is the monodromy.
    """
    c = gc.complex
    n = c.dim
    _principal_ids(c, path)
    tops = c.simplices[n]
    tidx = c.index
    start = simplex(start) if start is not None else tops[0]
    interior_nbrs: dict[Simplex, list[Simplex]] = {}
    for f, cof in c.facet_cofaces.items():
        if len(cof) == 2:
            a, b = cof
            interior_nbrs.setdefault(a, []).append(b)
            interior_nbrs.setdefault(b, []).append(a)

    def walk(src: Simplex, targets: set) -> Simplex:
        seen = {src}
        queue = deque([src])
        while queue:
            t = queue.popleft()
            if t in targets:
                return t
            for u in interior_nbrs.get(t, ()):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        raise ValueError(f"cannot reach the required top cells from {src} without crossing a panel")

    # cofaces of each facet class in the glued complex
    facet_tops: dict[int, list[int]] = {}
    for k, row in enumerate(gc.faces[n]):
        for f in row:
            facet_tops.setdefault(int(f), []).append(k)

    here, copy = start, 0
    for pid in path:
        p = c.panel(pid)
        owners = {c.facet_cofaces[f][0]: f for f in sorted(p.cells)}
        here = walk(here, set(owners))
        f = owners[here]
        cls = int(gc.cell_of[n - 1][tidx[f], copy])
        cur = int(gc.cell_of[n][tidx[here], copy])
        others = [k for k in facet_tops[cls] if k != cur]
        if len(others) != 1:
            raise ValueError(f"crossing {pid} at {f} is not a two-sided glued facet")
        s, g = gc.representative(n, others[0])
        here, copy = s, g.value
    walk(here, {start})
    return GroupElement(copy, gc.m)


# -- component count formulas -----------------------------------------------------


def formula_applies(c: CornerComplex) -> bool:
    """The 2^{m - rank} count needs a connected complex (so every panel is crossable)."""
    return c.is_connected()


def component_count_formula(c: CornerComplex, col: AnyColoring) -> int:
    """``2^(m - rank)`` of all glued colors.

    For a plain coloring these are the principal colors; for a composite one
    they include the reflexive colors.
    """
    col.check(c)
    values = [v.value for v in col.panel_colors().values()]
    return 1 << (col.group_rank - rank_ints(values))


def component_count_general(m: int, a: GF2Matrix, col: AnyColoring,
                            panels: Optional[Sequence[str]] = None) -> int:
    """Count from the intersection matrix ``a`` (curves by panels).

    ``lambda_hat_i = sum_j a_ij lambda(P_j)``; the count is
    ``2^(m - rank{lambda_hat_i})``.
    """
    lam = col.lam
    panels = list(panels) if panels is not None else list(lam)
    if a.ncols != len(panels):
        raise DimensionMismatch(f"matrix has {a.ncols} columns for {len(panels)} panels")
    if col.group_rank != m:
        raise DimensionMismatch(f"coloring has rank {col.group_rank}, expected {m}")
    hats = []
    for row in a.rows:
        h = 0
        for j, pid in enumerate(panels):
            if (row >> j) & 1:
                h ^= lam[pid].value
        hats.append(h)
    return 1 << (m - rank_ints(hats))


# -- subpanels ------------------------------------------------------------------


def restrict_coloring(col: AnyColoring, sub: CornerComplex) -> AnyColoring:
    """Induced coloring on a subpanel complex: ``P_j cap P_I`` keeps the color of ``P_j``."""
    lam = {p.id: col.lam[p.id] for p in sub.principal_panels}
    if isinstance(col, CompositeColoring):
        mu = {p.id: col.mu[p.id] for p in sub.reflexive_panels}
        return CompositeColoring(col.group_rank, lam, mu)
    return Coloring(col.group_rank, lam)


@dataclass(frozen=True)
class SubpanelPreimage:
    panels: tuple[str, ...]
    cells: tuple[np.ndarray, ...]  # class ids per dimension lying over the subpanel
    n_components: int
    glued_components: int

    @property
    def relation_holds(self) -> bool:
        return self.glued_components == (1 << len(self.panels)) * self.n_components


def preimage_of_subpanel(gc: GluedComplex, ids: Iterable[str]) -> SubpanelPreimage:
    """Preimage of the image of ``P_I`` and the component relation with ``M(P_I, lambda_in)``.

    ``M(P_I, lambda_in)`` covers the preimage with ``2^|I|`` sheets.  It is
    ``2^|I|`` disjoint copies of it when that cover is trivial, which can fail
    when a cut submanifold is one-sided.
    """
    ids = tuple(sorted(set(ids)))
    c = gc.complex
    if not ids:
        cells = tuple(np.arange(gc.n_cells(d)) for d in range(gc.dim + 1))
        return SubpanelPreimage(ids, cells, gc.n_components, gc.n_components)
    for pid in ids:
        if not c.panel(pid).is_principal:
            raise ValueError(f"{pid} is not a principal panel")
    inter = subpanel(c, ids)
    if not inter:
        raise ValueError(f"panels {list(ids)} do not intersect")
    cells = []
    for d in range(gc.dim + 1):
        group = c.simplices[d]
        mask = np.array([group[int(s)] in inter for s in gc.rep_simplex[d]], dtype=bool)
        cells.append(np.flatnonzero(mask))
    vset = cells[0]
    local = {int(v): i for i, v in enumerate(vset)}
    a, b = [], []
    if len(cells) > 1:
        for k in cells[1]:
            u, v = gc.verts[1][k]
            a.append(local[int(u)])
            b.append(local[int(v)])
    labels, _ = _canonical_components(len(vset), a, b)
    n_pre = int(labels.max()) + 1 if len(labels) else 0
    sub = subpanel_complex(c, ids)
    sub_gc = glue(sub, restrict_coloring(gc.coloring, sub), simplicial=False, require_connected_base=False)
    return SubpanelPreimage(ids, tuple(cells), n_pre, sub_gc.n_components)


# -- orbit space ------------------------------------------------------------------


def orbit_partition(gc: GluedComplex) -> list[np.ndarray]:
    """Per dimension, the orbit label of the class of ``(s, 0)`` for every base simplex ``s``."""
    out = []
    for d in range(gc.dim + 1):
        n = gc.n_cells(d)
        a, b = [], []
        for g in range(1, gc.order):
            a.append(np.arange(n))
            b.append(gc.action(g, d))
        if a:
            labels, _ = _canonical_components(n, np.concatenate(a), np.concatenate(b))
        else:
            labels = np.arange(n)
        out.append(labels[gc.cell_of[d][:, 0]])
    return out


def _same_partition(x: np.ndarray, y: np.ndarray) -> bool:
    if len(x) != len(y):
        return False
    pairs = set(zip(x.tolist(), y.tolist()))
    return len(pairs) == len(set(x.tolist())) == len(set(y.tolist()))


def orbit_space_matches_base(gc: GluedComplex) -> bool:
    """Whether ``M / (Z_2)^m`` and the ``m = 0`` quotient identify the same base simplices."""
    c = gc.complex
    pos = {p.id: j for j, p in enumerate(c.panels)}
    base_cells = _glue_once(c, {pos[k]: 0 for k in gc.glued_panels}, 0)[0]
    orbits = orbit_partition(gc)
    return all(_same_partition(orbits[d], base_cells[d][:, 0]) for d in range(gc.dim + 1))
