"""Count characteristic colorings of the pentagon and sort them into equivalence classes."""
from panelglue import catalog
from panelglue.classify import ColoringSpace, double_cosets, orbits_under_gl
from panelglue.glueback import glue
from panelglue.homology import orientable_combinatorial, z2_betti

entry = catalog.build("pentagon")
for m in (2, 3):
    space = ColoringSpace(entry.complex, m)
    gl = orbits_under_gl(space)
    eq = double_cosets(space, entry.automorphisms, use_gl=False)
    weak = double_cosets(space, entry.automorphisms, use_gl=True)
    print(f"m={m}: {len(space)} colorings, {gl.count} GL orbits, "
          f"{eq.count} up to symmetry, {weak.count} up to both")
    for rep in weak.representatives[:6]:
        gc = glue(entry.complex, space.coloring(rep), simplicial=False)
        kind = "orientable" if orientable_combinatorial(gc) else "non-orientable"
        print(f"    {rep}  chi={gc.euler()}  betti={z2_betti(gc)}  {kind}")
