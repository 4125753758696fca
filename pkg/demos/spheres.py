"""Glue copies of the projective-plane core and the torus core back together.

Prints, for every principal coloring, how many components appear and what they are.
"""
import itertools

from panelglue import catalog
from panelglue.gf2 import GroupElement
from panelglue.glueback import Coloring, components, glue
from panelglue.homology import orientable_combinatorial, z2_betti


def survey(eid: str, m: int) -> None:
    c = catalog.build(eid).complex
    ids = [p.id for p in c.principal_panels]
    print(f"{eid}  (group (Z_2)^{m})")
    for vals in itertools.product(range(1 << m), repeat=len(ids)):
        col = Coloring(m, {i: GroupElement(v, m) for i, v in zip(ids, vals)})
        gc = glue(c, col)
        comps = components(gc)
        shape = "orientable" if orientable_combinatorial(gc) else "non-orientable"
        label = ",".join(f"{i}:{GroupElement(v, m)}" for i, v in zip(ids, vals))
        print(f"  {label:<16} {len(comps)} component(s), chi each {comps[0].euler}, "
              f"betti {z2_betti(gc)}, {shape}")
    print()


if __name__ == "__main__":
    survey("rp2_core", 2)
    survey("torus_core", 2)
