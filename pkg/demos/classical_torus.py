"""With a trivial fiber the state sum is ordinary flat-connection counting.

Closing the B_x graph and contracting its middle edge leaves one vertex with
two loops whose filling is a torus.  Flat S3 connections on it are
commuting pairs, |G| times the number of conjugacy classes.

    python3 demos/classical_torus.py
"""

from twohol import ribbon as rb
from twohol.gauge import burnside_count, orbit_count
from twohol.group_core import builtin
from twohol.holonomy import count_fake_flat


def main():
    g = rb.torus_standard_graph()
    print("torus graph: %d vertex, %d loops, rotation %s, genus %d"
          % (g.n_vertices, len(g.edges), g.rotation[0], rb.genus(g)))
    surface = rb.graph_filling(g)
    for name in ("cm_z2_flat", "cm_s3_flat"):
        cm = builtin(name)
        G = cm.G
        pairs = sum(1 for a in G.elements for b in G.elements if G.mul(a, b) == G.mul(b, a))
        print("%-10s flat %3d  commuting pairs %3d  |G| x classes %3d  orbits %d  Burnside %s"
              % (name, count_fake_flat(cm, surface), pairs, G.order * len(G.conjugacy_classes()),
                 orbit_count(cm, surface, fixed_boundary=False),
                 burnside_count(cm, surface, fixed_boundary=False)))


if __name__ == "__main__":
    main()
