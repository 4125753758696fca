"""Z_2 homology, Euler characteristics and orientability.

All routines accept a :class:`CornerComplex`, a :class:`GluedComplex`, or a
plain list of top simplices.  Glued complexes are read through their face
arrays, so they need not be simplicial as long as no cell has two identified
vertices (which :func:`~panelglue.glueback.glue` guarantees).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .complex import CornerComplex
from .errors import NotPseudomanifoldError
from .gf2 import GF2Matrix, GroupElement, solve_affine_all_ones
from .glueback import GluedComplex

__all__ = [
    "ChainComplexZ2",
    "chain_complex",
    "z2_betti",
    "euler",
    "orientable_combinatorial",
    "orientable_by_coloring",
]

Cellular = Union[CornerComplex, GluedComplex, Sequence[Sequence[str]]]


@dataclass(frozen=True)
class ChainComplexZ2:
    """Cell counts and mod 2 boundary matrices ``boundaries[d-1] = d_d`` for ``d = 1..n``."""

    counts: tuple[int, ...]
    boundaries: tuple[GF2Matrix, ...]

    @property
    def dim(self) -> int:
        return len(self.counts) - 1

    def boundary(self, d: int) -> Optional[GF2Matrix]:
        return self.boundaries[d - 1] if 1 <= d <= self.dim else None

    def ranks(self, method: str = "auto") -> list[int]:
        return [b.rank(method) for b in self.boundaries]

    def check(self) -> bool:
        """``d_{d-1} o d_d = 0`` for every ``d``."""
        return all((self.boundaries[d - 1] @ self.boundaries[d]).is_zero() for d in range(1, self.dim))

    def betti(self, method: str = "auto") -> list[int]:
        r = [0, *self.ranks(method), 0]
        return [n - r[d] - r[d + 1] for d, n in enumerate(self.counts)]

    def euler(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.counts))


def _as_cellular(x: Cellular):
    """(counts, faces per dim) for any supported input."""
    if isinstance(x, GluedComplex):
        return x.cell_counts, list(x.faces)
    if not isinstance(x, CornerComplex):
        tops = [tuple(map(str, t)) for t in x]
        dims = {len(t) for t in tops}
        if len(dims) > 1:
            raise ValueError("top simplices of mixed dimension")
        n = dims.pop() - 1 if dims else 0
        x = CornerComplex("simplices", n, tuple({v for t in tops for v in t}), tuple(tops), ())
    return [x.n_simplices(d) for d in range(x.dim + 1)], list(x.face_index)


def chain_complex(x: Cellular) -> ChainComplexZ2:
    counts, faces = _as_cellular(x)
    mats = []
    for d in range(1, len(counts)):
        mats.append(GF2Matrix.from_columns(counts[d - 1], [row.tolist() for row in faces[d]]))
    return ChainComplexZ2(tuple(counts), tuple(mats))


def z2_betti(x: Cellular, method: str = "auto") -> list[int]:
    """Mod 2 Betti numbers ``b_0 .. b_n``."""
    return chain_complex(x).betti(method)


def euler(x: Cellular) -> int:
    counts, _ = _as_cellular(x)
    return sum((-1) ** d * n for d, n in enumerate(counts))


def _top_cells(x: Cellular) -> tuple[np.ndarray, int]:
    """Top-cell facet array (column i omits vertex i of the ordered top cell) and facet count."""
    if isinstance(x, GluedComplex):
        return x.faces[x.dim], x.n_cells(x.dim - 1)
    counts, faces = _as_cellular(x)
    return faces[-1], counts[-2] if len(counts) > 1 else 0


def orientable_combinatorial(x: Cellular, allow_boundary: bool = False) -> bool:
    """Consistent orientation of top cells by sign propagation, per component.

    Adjacent top cells ``A`` and ``B`` sharing the facet opposite their
    ``i``-th and ``j``-th vertices need ``o_B = -(-1)^(i+j) o_A``.  Every
    codimension-one cell must lie in exactly two top cells (or at most two
    with ``allow_boundary``), otherwise :class:`NotPseudomanifoldError`.
    """
    faces, nfacets = _top_cells(x)
    if faces.shape[1] <= 1:
        return True
    incident: list[list[tuple[int, int]]] = [[] for _ in range(nfacets)]
    for k, row in enumerate(faces):
        for i, f in enumerate(row):
            incident[int(f)].append((k, i))
    for f, inc in enumerate(incident):
        if len(inc) > 2 or (len(inc) == 1 and not allow_boundary):
            raise NotPseudomanifoldError(f"codimension-one cell {f} lies in {len(inc)} top cells")
    sign = np.zeros(len(faces), dtype=np.int8)
    for root in range(len(faces)):
        if sign[root]:
            continue
        sign[root] = 1
        queue = deque([root])
        while queue:
            k = queue.popleft()
            for i, f in enumerate(faces[k]):
                for l, j in incident[int(f)]:
                    if l == k and j == i:
                        continue
                    want = -sign[k] * (1 if (i + j) % 2 == 0 else -1)
                    if sign[l] == 0:
                        sign[l] = want
                        queue.append(l)
                    elif sign[l] != want:
                        return False
    return True


def orientable_by_coloring(mu: Union[Mapping[str, GroupElement], Sequence[GroupElement]],
                           base_orientable: bool = True, m: Optional[int] = None) -> Optional[bool]:
    """Coloring criterion: some functional ``c`` has ``c . mu(P) = 1`` for every reflexive panel.

    Returns None when the base is not orientable (the criterion does not
    apply).  With no reflexive panels the answer is True.
    """
    if not base_orientable:
        return None
    values = list(mu.values()) if isinstance(mu, Mapping) else list(mu)
    if not values:
        return True
    return solve_affine_all_ones(values, m) is not None
