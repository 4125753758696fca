"""Enumeration of composite colorings and orbit counting.

A composite coloring is stored as a tuple of ints: the principal colors in
panel order followed by the reflexive colors in panel order.  Tuples compare
lexicographically, which is the canonical coloring order used to pick orbit
representatives.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .complex import CornerComplex, PanelPermutation, generate_group
from .errors import ColoringError, GuardExceeded
from .gf2 import GF2Matrix, GroupElement, enumerate_gl, rank_ints
from .glueback import CompositeColoring, _canonical_components

MAX_PANELS = 12
MAX_RANK = 5
MAX_WORK = 20_000_000  # coloring-by-group-element applications per orbit count

__all__ = [
    "ColoringSpace",
    "OrbitCount",
    "enumerate_characteristic",
    "orbits_under_gl",
    "double_cosets",
    "MAX_PANELS",
    "MAX_RANK",
]


@dataclass
class ColoringSpace:
    """All eligible composite colorings ``(lambda, mu)`` of ``complex`` in ``(Z_2)^m``.

    ``lambda`` ranges freely over the principal panels; ``mu`` over the
    reflexive panels subject to linear independence at every vertex.
    """

    complex: CornerComplex
    m: int
    principal: tuple[str, ...] = field(init=False)
    reflexive: tuple[str, ...] = field(init=False)
    diagnostic: str = field(init=False, default="")
    _items: Optional[list[tuple[int, ...]]] = field(init=False, default=None, repr=False)

    def __post_init__(self) -> None:
        c = self.complex
        if len(c.panels) > MAX_PANELS:
            raise GuardExceeded(f"{len(c.panels)} panels exceeds the limit of {MAX_PANELS}")
        if not 0 <= self.m <= MAX_RANK:
            raise GuardExceeded(f"group rank m={self.m} is outside 0..{MAX_RANK}")
        self.principal = tuple(p.id for p in c.principal_panels)
        self.reflexive = tuple(p.id for p in c.reflexive_panels)
        pos = {pid: j for j, pid in enumerate(self.reflexive)}
        sets = set()
        for (v,) in c.simplices[0]:
            s = frozenset(pos[i] for i in c.panels_of((v,)) if i in pos)
            if s:
                sets.add(s)
        self._constraints = sorted(sets, key=lambda s: (max(s), sorted(s)))
        widest = max((len(s) for s in sets), default=0)
        if widest > self.m:
            self.diagnostic = (f"infeasible: {widest} reflexive panels meet at a vertex but only "
                               f"{self.m} independent vectors exist in (Z_2)^{self.m}")

    @property
    def panel_ids(self) -> tuple[str, ...]:
        return self.principal + self.reflexive

    def _mu_assignments(self) -> Iterator[tuple[int, ...]]:
        k = len(self.reflexive)
        top = 1 << self.m
        # constraints become checkable once their largest panel is assigned
        due: list[list[tuple[int, ...]]] = [[] for _ in range(k)]
        for s in self._constraints:
            due[max(s)].append(tuple(sorted(s)))
        cur = [0] * k

        def rec(j: int) -> Iterator[tuple[int, ...]]:
            if j == k:
                yield tuple(cur)
                return
            for x in range(1, top):
                cur[j] = x
                if all(rank_ints(cur[i] for i in s) == len(s) for s in due[j]):
                    yield from rec(j + 1)

        if self.diagnostic:
            return
        yield from rec(0)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        if self._items is not None:
            yield from self._items
            return
        mus = list(self._mu_assignments())
        top = 1 << self.m
        kp = len(self.principal)

        def lams(j: int, cur: list[int]) -> Iterator[tuple[int, ...]]:
            if j == kp:
                yield tuple(cur)
                return
            for x in range(top):
                cur.append(x)
                yield from lams(j + 1, cur)
                cur.pop()

        for lam in lams(0, []):
            for mu in mus:
                yield lam + mu

    def items(self) -> list[tuple[int, ...]]:
        if self._items is None:
            self._items = list(iter(self))
        return self._items

    def __len__(self) -> int:
        return len(self.items())

    def coloring(self, item: Sequence[int]) -> CompositeColoring:
        kp = len(self.principal)
        return CompositeColoring(self.m, dict(zip(self.principal, item[:kp])), dict(zip(self.reflexive, item[kp:])))

    def format(self, item: Sequence[int]) -> str:
        return ",".join(f"{pid}:{GroupElement(v, self.m)}" for pid, v in zip(self.panel_ids, item))


def enumerate_characteristic(x: CornerComplex, m: int) -> ColoringSpace:
    """Characteristic functions of a complex whose panels are all reflexive."""
    if x.principal_panels:
        raise ColoringError(f"{x.name} has principal panels; characteristic functions need an all-reflexive structure")
    return ColoringSpace(x, m)


@dataclass(frozen=True)
class OrbitCount:
    count: int
    representatives: tuple[tuple[int, ...], ...]
    orbit_sizes: tuple[int, ...]
    group_order: int
    burnside: Optional[int] = None
    # orbit index of every coloring, aligned with ``space.items()``; orbits numbered as ``representatives``
    labels: Optional[np.ndarray] = field(default=None, compare=False, repr=False)

    @property
    def agree(self) -> bool:
        return self.burnside is None or self.burnside == self.count


def _gl(m: int) -> list[GF2Matrix]:
    return list(enumerate_gl(m))


def _table(a: GF2Matrix) -> np.ndarray:
    """``a`` as a lookup table on ``0 .. 2^m - 1``."""
    return np.array([a.apply(x) for x in range(1 << a.ncols)], dtype=np.int64)


def _perm_positions(space: ColoringSpace, h: PanelPermutation) -> np.ndarray:
    # (h . nu)(P) = nu(h(P)): position j reads the value at h(P_j)
    pos = {pid: j for j, pid in enumerate(space.panel_ids)}
    return np.array([pos[h(pid)] for pid in space.panel_ids], dtype=np.int64)


def _encode(arr: np.ndarray, m: int) -> np.ndarray:
    # fixed-width digits, so numeric order equals lexicographic order of tuples
    code = np.zeros(len(arr), dtype=np.int64)
    for j in range(arr.shape[1]):
        code = (code << m) | arr[:, j]
    return code


def _orbits(space: ColoringSpace, actions: Sequence[Callable[[np.ndarray], np.ndarray]],
            burnside_group: Optional[Sequence[Callable]] = None) -> OrbitCount:
    """Orbits of the group generated by ``actions``.

    Each action maps the ``(N, panels)`` array of colorings to its image.
    Orbits are the connected components of the graph joining every coloring
    to its images.
    """
    items = space.items()
    n = len(items)
    for group in (actions, burnside_group or ()):
        if n * len(group) > MAX_WORK:
            raise GuardExceeded(f"orbit computation needs {n * len(group)} steps (limit {MAX_WORK})")
    arr = np.array(items, dtype=np.int64).reshape(n, len(space.panel_ids))
    codes = _encode(arr, space.m)
    order = np.argsort(codes, kind="stable")
    sorted_codes = codes[order]

    def locate(img: np.ndarray) -> np.ndarray:
        c = _encode(img, space.m)
        k = np.minimum(np.searchsorted(sorted_codes, c), max(n - 1, 0))
        bad = np.flatnonzero(sorted_codes[k] != c) if n else []
        if len(bad):
            raise ColoringError(f"group action leaves the coloring space at {space.format(items[bad[0]])}")
        return order[k]

    src, dst = [], []
    for act in actions:
        src.append(np.arange(n))
        dst.append(locate(act(arr)))
    if n == 0:
        return OrbitCount(0, (), (), len(burnside_group or ()), 0 if burnside_group is not None else None,
                          np.zeros(0, dtype=np.int64))
    a = np.concatenate(src) if src else np.zeros(0, dtype=np.int64)
    b = np.concatenate(dst) if dst else np.zeros(0, dtype=np.int64)
    labels, roots = _canonical_components(n, a, b)
    count = len(roots)
    best = np.full(count, np.iinfo(np.int64).max, dtype=np.int64)
    np.minimum.at(best, labels, codes)
    sizes = np.bincount(labels, minlength=count)
    first = order[np.searchsorted(sorted_codes, best)]
    ranked = np.argsort(best)
    rank_of = np.empty(count, dtype=np.int64)
    rank_of[ranked] = np.arange(count)
    reps = tuple(items[int(first[k])] for k in ranked)
    burn = None
    if burnside_group is not None:
        total = sum(int(np.count_nonzero(_encode(g(arr), space.m) == codes)) for g in burnside_group)
        frac = Fraction(total, len(burnside_group))
        if frac.denominator != 1:
            raise ArithmeticError(f"Burnside average {frac} is not an integer")
        burn = int(frac)
    group_order = len(burnside_group) if burnside_group is not None else 0
    return OrbitCount(count, reps, tuple(int(sizes[k]) for k in ranked), group_order, burn, rank_of[labels])


def orbits_under_gl(space: ColoringSpace, burnside: bool = True) -> OrbitCount:
    """Orbits of ``GL(m, Z_2)`` acting on the coefficient group.

    Counted by connected components over every group element; with
    ``burnside`` the count is also computed by averaging fixed points, and a
    disagreement raises.
    """
    gl = _gl(space.m)
    acts = [lambda arr, t=_table(a): t[arr] for a in gl]
    res = _orbits(space, acts, acts if burnside else None)
    if not res.agree:
        raise ArithmeticError(f"Burnside count {res.burnside} differs from direct count {res.count}")
    return OrbitCount(res.count, res.representatives, res.orbit_sizes, len(gl), res.burnside, res.labels)


def _check_generators(space: ColoringSpace, gens: Sequence[PanelPermutation]) -> None:
    for g in gens:
        probs = g.check(space.complex)
        if probs:
            raise ColoringError("automorphism generator rejected: " + "; ".join(probs))


def double_cosets(space: ColoringSpace, aut_generators: Sequence[PanelPermutation], use_gl: bool,
                  burnside: bool = True, limit: int = 10_000) -> OrbitCount:
    """Orbits of ``Aut`` (relabelling panels) and optionally ``GL`` on the coloring space.

    ``use_gl=False`` gives equivariant classes; ``use_gl=True`` the weak
    (double coset) classes.  The automorphism group is the closure of the
    generators, capped at ``limit`` elements.
    """
    _check_generators(space, aut_generators)
    group = generate_group(aut_generators, space.panel_ids, limit=limit)
    perms = [_perm_positions(space, h) for h in group]
    aut_acts = [lambda arr, p=p: arr[:, p] for p in perms]
    gl = _gl(space.m) if use_gl else [GF2Matrix.identity(space.m)]
    tables = [_table(a) for a in gl]
    gl_acts = [lambda arr, t=t: t[arr] for t in tables]
    full = None
    if burnside:
        full = [lambda arr, p=p, t=t: t[arr[:, p]] for p in perms for t in tables]
    res = _orbits(space, aut_acts + (gl_acts if use_gl else []), full)
    if not res.agree:
        raise ArithmeticError(f"Burnside count {res.burnside} differs from direct count {res.count}")
    return OrbitCount(res.count, res.representatives, res.orbit_sizes, len(group) * len(gl), res.burnside,
                      res.labels)
