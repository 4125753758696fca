import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from panelglue import builders, catalog
from panelglue.complex import CornerComplex, Panel, subpanel, subpanel_complex
from panelglue.errors import ColoringError, ComplexError, DisconnectedBaseError, LinearIndependenceError
from panelglue.gf2 import DimensionMismatch, GF2Matrix, GroupElement, rank_ints
from panelglue.glueback import (Coloring, CompositeColoring, component_count_formula, component_count_general,
                                components, components_isomorphic, glue, is_free,
                                isotropy_check_locally_standard, lift_path, monodromy, orbit_space_matches_base,
                                preimage_of_subpanel, restrict_coloring)
from panelglue.homology import z2_betti

from helpers import interval_core, segment_polytope


def col2(**kw):
    return Coloring(len(next(iter(kw.values()))), kw)


class TestColorings:
    def test_from_values(self):
        c = builders.torus_core()
        col = Coloring.from_values(c, [1, 2], 2)
        assert str(col) == "P1:10,P2:01"

    def test_incomplete_and_extra(self):
        c = builders.torus_core()
        with pytest.raises(ColoringError, match="incomplete"):
            glue(c, col2(P1="10"))
        with pytest.raises(ColoringError, match="not principal"):
            glue(c, col2(P1="10", P2="01", Q="11"))

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            Coloring(2, {"P1": "101"})

    def test_linear_independence_checked(self):
        c = catalog.build("square").complex
        col = CompositeColoring(2, {}, {"F1": "10", "F2": "10", "F3": "10", "F4": "01"})
        with pytest.raises(LinearIndependenceError, match="Linear-Indep"):
            glue(c, col)

    def test_zero_reflexive_color_rejected(self):
        c = catalog.build("square").complex
        with pytest.raises(LinearIndependenceError):
            glue(c, CompositeColoring(2, {}, {"F1": "00", "F2": "01", "F3": "10", "F4": "01"}))


class TestGlue:
    def test_interval_core_gives_circles(self):
        c = interval_core(2)
        connected = glue(c, col2(P="1"))
        assert connected.n_components == 1 and connected.euler() == 0
        assert z2_betti(connected) == [1, 1]
        split = glue(c, col2(P="0"))
        assert split.n_components == 2 and z2_betti(split) == [2, 2]

    def test_subdivision_triggered_and_capped(self):
        c = interval_core(1)
        gc = glue(c, col2(P="1"))
        assert gc.subdivisions >= 1 and gc.simplicial
        with pytest.raises(ComplexError, match="not simplicial"):
            glue(c, col2(P="1"), max_subdivisions=0)

    def test_non_simplicial_mode_keeps_base(self):
        c = interval_core(1)
        gc = glue(c, col2(P="1"), simplicial=False)
        assert gc.subdivisions == 0 and not gc.simplicial
        assert gc.n_components == 1 and gc.cell_counts == [2, 2]

    def test_disconnected_base_refused(self):
        one = interval_core(2)
        q = Panel("Q", "principal", frozenset({("y0",), ("y2",)}), {"y0": "y2", "y2": "y0"})
        other = CornerComplex("b", 1, ("y0", "y1", "y2"), (("y0", "y1"), ("y1", "y2")), (q,))
        both = CornerComplex("two", 1, one.vertices + other.vertices, one.top_cells + other.top_cells,
                             one.panels + other.panels)
        with pytest.raises(DisconnectedBaseError):
            glue(both, col2(P="1", Q="1"))
        assert glue(both, col2(P="1", Q="1"), require_connected_base=False).n_components == 2

    def test_segment_polytope_glues_to_circle(self):
        gc = glue(segment_polytope(), CompositeColoring(1, {}, {"A": "1", "B": "1"}))
        assert gc.n_components == 1 and z2_betti(gc) == [1, 1]

    def test_torus(self):
        gc = glue(builders.torus_core(), col2(P1="10", P2="01"))
        assert gc.cell_counts == [48, 144, 96]
        assert z2_betti(gc) == [1, 2, 1]
        assert gc.to_complex().validation.ok

    def test_deterministic(self):
        c = builders.n3_core_octagon()
        a = glue(c, col2(A="110", B="011", C="100"))
        b = glue(c, col2(A="110", B="011", C="100"))
        for d in range(a.dim + 1):
            assert np.array_equal(a.cell_of[d], b.cell_of[d])
            assert np.array_equal(a.verts[d], b.verts[d])

    def test_quotient_map(self):
        c = builders.torus_core()
        gc = glue(c, col2(P1="10", P2="01"), simplicial=False)
        # (a, 0) is glued to (b, 10) across P1
        assert gc.quotient_map(["a"], 0) == gc.quotient_map(["b"], GroupElement.parse("10"))
        assert gc.quotient_map(["a", "d"], 0) == gc.quotient_map(["b", "c"], GroupElement.parse("10"))


class TestAction:
    @pytest.mark.parametrize("eid,colors", [("rp2_core", {"P": "10"}),
                                            ("n3_core_octagon", {"A": "10", "B": "01", "C": "11"}),
                                            ("countexample_square", {"P1": "10", "P2": "01"})])
    def test_group_law(self, eid, colors):
        gc = glue(catalog.build(eid).complex, col2(**colors))
        for d in range(gc.dim + 1):
            ident = gc.action(0, d)
            assert np.array_equal(ident, np.arange(gc.n_cells(d)))
            for g, h in itertools.product(range(gc.order), repeat=2):
                assert np.array_equal(gc.action(g, d)[gc.action(h, d)], gc.action(g ^ h, d))

    def test_action_is_cellular(self):
        gc = glue(builders.torus_core(), col2(P1="10", P2="11"))
        for g in range(gc.order):
            for d in range(1, gc.dim + 1):
                moved = np.sort(gc.action(g, 0)[gc.verts[d]], axis=1)
                image = gc.verts[d][gc.action(g, d)]
                assert np.array_equal(moved, image)

    def test_action_table(self):
        gc = glue(catalog.build("rp2_core").complex, col2(P="10"))
        table = gc.action_table()
        assert sorted(table) == ["00", "01", "10", "11"]
        assert table["00"] == list(range(gc.n_cells(2)))


class TestFreeness:
    def test_rp2_spheres_free(self):
        gc = glue(catalog.build("rp2_core").complex, col2(P="10"))
        rep = is_free(gc)
        assert rep.free and rep.fixed == ()
        assert components_isomorphic(gc)

    def test_countexample_corner_isotropy(self):
        gc = glue(catalog.build("countexample_square").complex, col2(P1="10", P2="01"))
        rep = is_free(gc)
        assert not rep.free
        assert {e.isotropy for e in rep.fixed} == {("11",)}
        assert {e.simplex for e in rep.fixed} <= {("a",), ("b",), ("c",), ("d",)}
        assert all(e.dim == 0 for e in rep.fixed)
        assert "expected" not in str(rep.fixed[0])

    def test_locally_standard_small_covers(self):
        c = catalog.build("cube").complex
        col = CompositeColoring(3, {}, {"X0": "100", "X1": "100", "Y0": "010", "Y1": "010",
                                        "Z0": "001", "Z1": "001"})
        gc = glue(c, col)
        rep = isotropy_check_locally_standard(gc)
        assert rep.ok and rep.checked == sum(gc.cell_counts)
        assert z2_betti(gc) == [1, 3, 3, 1]


class TestMonodromy:
    def test_torus_examples(self):
        c = builders.torus_core()
        col = col2(P1="10", P2="01")
        assert str(monodromy(c, col, ["P1"])) == "10"
        assert str(monodromy(c, col, [])) == "00"
        assert str(monodromy(c, col, ["P1", "P1", "P2"])) == "01"

    def test_errors(self):
        c = catalog.build("t2_hole_notch").complex
        col = Coloring(2, {"P1": "10", "P2": "01"})
        with pytest.raises(ValueError, match="reflexive"):
            monodromy(c, col, ["N"])
        with pytest.raises(KeyError):
            monodromy(c, col, ["Z"])

    @given(st.data())
    @settings(max_examples=60, deadline=None)
    def test_lift_agrees_with_sum(self, data):
        eid = data.draw(st.sampled_from(["torus_core", "n3_core_octagon", "genus2_annulus_core", "rp2_core"]))
        c = catalog.build(eid).complex
        ids = [p.id for p in c.principal_panels]
        values = data.draw(st.lists(st.integers(0, 7), min_size=len(ids), max_size=len(ids)))
        col = Coloring(3, {i: GroupElement(v, 3) for i, v in zip(ids, values)})
        path = data.draw(st.lists(st.sampled_from(ids), max_size=6))
        gc = glue(c, col, simplicial=False)
        assert lift_path(gc, path) == monodromy(c, col, path)


class TestComponentFormulas:
    @pytest.mark.parametrize("eid", ["torus_core", "rp2_core", "countexample_square"])
    def test_formula_exhaustive_m2(self, eid):
        c = catalog.build(eid).complex
        ids = [p.id for p in c.principal_panels]
        for values in itertools.product(range(4), repeat=len(ids)):
            col = Coloring(2, {i: GroupElement(v, 2) for i, v in zip(ids, values)})
            gc = glue(c, col, simplicial=False)
            assert gc.n_components == component_count_formula(c, col) == 2 ** (2 - rank_ints(values))
            assert components_isomorphic(gc)
            assert len({ci.euler for ci in components(gc)}) == 1

    def test_intersection_matrix_count(self):
        entry = catalog.build("torus_two_meridians")
        c, a = entry.complex, entry.intersection_matrix
        for v1, v2 in itertools.product(range(4), repeat=2):
            col = Coloring(2, {"Q1": GroupElement(v1, 2), "Q2": GroupElement(v2, 2)})
            gc = glue(c, col, require_connected_base=False, simplicial=False)
            assert component_count_general(2, a, col, ["Q1", "Q2"]) == gc.n_components

    def test_intersection_matrix_shape_checked(self):
        col = Coloring(2, {"Q1": "10", "Q2": "01"})
        with pytest.raises(DimensionMismatch):
            component_count_general(2, GF2Matrix.identity(3), col, ["Q1", "Q2"])


class TestSubpanelPreimage:
    def test_torus_values(self):
        gc = glue(builders.torus_core(), col2(P1="10", P2="01"))
        for ids, pre, glued in ((["P1"], 2, 4), (["P2"], 2, 4), (["P1", "P2"], 4, 16)):
            res = preimage_of_subpanel(gc, ids)
            assert (res.n_components, res.glued_components) == (pre, glued)
            assert res.relation_holds

    def test_one_sided_counterexample(self):
        # RP^2 core, lambda = 0: M is two RP^2, the cut RP^1 has two preimage circles,
        # and M(P) is two circles as well (each double covers its image)
        gc = glue(builders.rp2_core(), col2(P="0"))
        res = preimage_of_subpanel(gc, ["P"])
        assert (res.n_components, res.glued_components) == (2, 2)
        assert not res.relation_holds

    @pytest.mark.parametrize("eid", ["torus_core", "rp2_core", "n3_core_octagon", "genus2_annulus_core"])
    def test_covering_relation(self, eid):
        """M(P_I) is a 2^|I|-sheeted cover of the preimage; copies when the core is orientable."""
        entry = catalog.build(eid)
        c = entry.complex
        ids = [p.id for p in c.principal_panels]
        rng = random.Random(7)
        for _ in range(12):
            col = Coloring(2, {i: GroupElement(rng.randrange(4), 2) for i in ids})
            gc = glue(c, col, simplicial=False)
            for r in range(1, len(ids) + 1):
                for sub_ids in itertools.combinations(ids, r):
                    if not subpanel(gc.complex, sub_ids):
                        continue
                    res = preimage_of_subpanel(gc, sub_ids)
                    sheets = 2 ** r
                    sub = subpanel_complex(gc.complex, sub_ids)
                    sub_gc = glue(sub, restrict_coloring(col, sub), simplicial=False, require_connected_base=False)
                    top = sub.dim
                    assert sub_gc.n_cells(top) == sheets * len(res.cells[top])
                    assert res.n_components <= res.glued_components <= sheets * res.n_components
                    if entry.expected_orientable:
                        assert res.relation_holds


def test_orbit_space_matches_base():
    for eid, colors in (("torus_core", {"P1": "10", "P2": "01"}), ("rp2_core", {"P": "11"})):
        gc = glue(catalog.build(eid).complex, col2(**colors))
        assert orbit_space_matches_base(gc)
    c = catalog.build("pentagon").complex
    gc = glue(c, CompositeColoring(2, {}, {"F1": "10", "F2": "01", "F3": "10", "F4": "01", "F5": "11"}))
    assert orbit_space_matches_base(gc)
