"""Small hand-built complexes shared by the unit tests."""

from panelglue.complex import CornerComplex, Panel


def interval_core(n_edges: int = 2) -> CornerComplex:
    """A path of ``n_edges`` edges whose two ends form one principal panel (a core of the circle)."""
    verts = tuple(f"x{i}" for i in range(n_edges + 1))
    tops = tuple((verts[i], verts[i + 1]) for i in range(n_edges))
    ends = (verts[0], verts[-1])
    panel = Panel("P", "principal", frozenset({(ends[0],), (ends[1],)}), {ends[0]: ends[1], ends[1]: ends[0]})
    return CornerComplex("interval", 1, verts, tops, (panel,))


def segment_polytope() -> CornerComplex:
    """The 1-simplex with both endpoints reflexive."""
    return CornerComplex("segment", 1, ("a", "b"), (("a", "b"),),
                         (Panel("A", "reflexive", frozenset({("a",)})),
                          Panel("B", "reflexive", frozenset({("b",)}))))
