import itertools

import pytest

from panelglue import builders, catalog
from panelglue.errors import NotPseudomanifoldError
from panelglue.gf2 import GroupElement
from panelglue.glueback import Coloring, CompositeColoring, glue
from panelglue.homology import (chain_complex, euler, orientable_by_coloring, orientable_combinatorial,
                                z2_betti)

TETRA = [c for c in itertools.combinations("abcd", 3)]
# minimal triangulations: 7-vertex torus, 6-vertex projective plane
TORUS7 = [(i, (i + 1) % 7, (i + 3) % 7) for i in range(7)] + [(i, (i + 2) % 7, (i + 3) % 7) for i in range(7)]
RP2_6 = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6), (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6)]


def labels(tris):
    return [tuple(str(v) for v in t) for t in tris]


@pytest.mark.parametrize("tris,betti,orientable", [
    (TETRA, [1, 0, 1], True),
    (labels(TORUS7), [1, 2, 1], True),
    (labels(RP2_6), [1, 1, 1], False),
])
def test_known_surfaces(tris, betti, orientable):
    assert z2_betti(tris) == betti
    assert z2_betti(tris, method="sparse") == betti
    assert euler(tris) == betti[0] - betti[1] + betti[2]
    assert orientable_combinatorial(tris) is orientable


def test_boundary_squares_to_zero():
    assert chain_complex(labels(TORUS7)).check()
    gc = glue(builders.n3_core_octagon(), Coloring(2, {"A": "10", "B": "01", "C": "11"}))
    assert chain_complex(gc).check()


def test_not_a_pseudomanifold():
    three_sheets = [("a", "b", "c"), ("a", "b", "d"), ("a", "b", "e")]
    with pytest.raises(NotPseudomanifoldError):
        orientable_combinatorial(three_sheets)


def test_boundary_needs_permission():
    disk = [("o", "a", "b"), ("o", "b", "c")]
    with pytest.raises(NotPseudomanifoldError):
        orientable_combinatorial(disk)
    assert orientable_combinatorial(disk, allow_boundary=True)


def test_base_invariants():
    base = catalog.base_of(builders.torus_core())
    assert z2_betti(base) == [1, 2, 1] and orientable_combinatorial(base)
    base = catalog.base_of(builders.rp2_core())
    assert z2_betti(base) == [1, 1, 1] and not orientable_combinatorial(base)


def test_non_simplicial_quotient_has_same_homology():
    c = builders.torus_core()
    for v1, v2 in itertools.product(range(4), repeat=2):
        col = Coloring(2, {"P1": GroupElement(v1, 2), "P2": GroupElement(v2, 2)})
        coarse = glue(c, col, simplicial=False)
        fine = glue(c, col)
        assert z2_betti(coarse) == z2_betti(fine)
        assert orientable_combinatorial(coarse) == orientable_combinatorial(fine)


class TestColoringCriterion:
    def test_square(self):
        torus = [GroupElement.parse(s) for s in ("10", "01", "10", "01")]
        klein = [GroupElement.parse(s) for s in ("10", "01", "11", "01")]
        assert orientable_by_coloring(torus) is True
        assert orientable_by_coloring(klein) is False

    def test_mapping_input_and_trivial_cases(self):
        assert orientable_by_coloring({"F": GroupElement.parse("1")}) is True
        assert orientable_by_coloring([], m=2) is True
        assert orientable_by_coloring([GroupElement.parse("10")], base_orientable=False) is None

    def test_square_klein_bottle_glued(self):
        c = catalog.build("square").complex
        col = CompositeColoring(2, {}, {"F1": "10", "F2": "01", "F3": "11", "F4": "01"})
        gc = glue(c, col)
        assert z2_betti(gc) == [1, 2, 1]
        assert not orientable_combinatorial(gc)
        assert orientable_by_coloring(col.mu) is False
