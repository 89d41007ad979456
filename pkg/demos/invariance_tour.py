"""Evaluate a few closed polyhedra and watch the numbers survive local moves.

    python3 demos/invariance_tour.py
"""

from twohol import polyhedron as ph
from twohol import wilson as w
from twohol.complex import pachner_flip, pachner_subdivide
from twohol.group_core import SAMPLES, builtin


def main():
    print("normalization weights (face, edge, vertex):")
    for name in SAMPLES:
        nz = w.Normalization.derived(builtin(name))
        print("  %-8s %s %s %s" % (name, nz.face, nz.edge, nz.vertex))

    print("\npartition functions:")
    print("  %-8s %8s %8s %8s %8s" % ("", "S3 spine", "lens", "2xtri", "2xsq"))
    for name in SAMPLES:
        cm = builtin(name)
        vals = [w.partition_function(cm, p) for p in
                (ph.coordinate_planes_s3(), ph.lens_spine(), ph.doubled_triangle(), ph.doubled_square())]
        print("  %-8s %8s %8s %8s %8s" % ((name,) + tuple(map(str, vals))))

    cm = builtin("cm_02")
    p = ph.coordinate_planes_s3()
    p = ph.handle_move_02(p, (0, (0, 1), 0, 1))
    p = ph.handle_move_23(p, (1, 0))
    print("\nafter a 0-2 and a 2-3 move the S3 spine has %d trisection vertices and Z = %s"
          % (len(p.trisection_vertices()), w.partition_function(cm, p)))

    c = ph.square().body
    ref = w.evaluate_complex(cm, c)
    flipped = w.evaluate_complex(cm, pachner_flip(c, c.internal_edges()[0]))
    split = w.evaluate_complex(cm, pachner_subdivide(c, 0))
    print("square state unchanged by flip: %s, by 1-3 split: %s" % (flipped == ref, split == ref))


if __name__ == "__main__":
    main()
