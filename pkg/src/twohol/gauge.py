"""Gauge transformations of decorations.

A gauge parameter assigns ``a_v`` in G to each vertex and ``gamma_e`` in H
to each edge.  It acts by

    h_e  ->  a_src^-1 t(gamma_e) h_e a_dst
    b_f  ->  a_v0^-1 |> (g1 (h1 |> g3) b_f g2^-1)

where ``gk`` is the parameter of slot k read along the local edge: the edge
parameter itself on a forward slot and ``h_e^-1 |> gamma_e^-1`` on a
backward one, and ``h1`` is the old local holonomy of slot 1.  Parameters
compose as ``(a, gamma)(a', gamma') = (a a', (a_src |> gamma') gamma)``,
meaning: first apply the left factor, then the right one.
"""

from collections import deque
from dataclasses import dataclass
from itertools import product

from .errors import InvalidParameter
from .holonomy import Decoration, check_decoration, enumerate_fake_flat


@dataclass(frozen=True)
class GaugeParam:
    vertices: tuple
    edges: tuple

    def to_dict(self):
        return {"vertices": list(self.vertices), "edges": list(self.edges)}


def identity_param(c):
    return GaugeParam((0,) * c.n_vertices, (0,) * len(c.edges))


def check_param(cm, c, z):
    if len(z.vertices) != c.n_vertices or len(z.edges) != len(c.edges):
        raise InvalidParameter("parameter shape does not match the complex")
    if any(not 0 <= a < cm.G.order for a in z.vertices):
        raise InvalidParameter("vertex parameter outside G")
    if any(not 0 <= g < cm.H.order for g in z.edges):
        raise InvalidParameter("edge parameter outside H")


def satisfies_constraint(cm, c, z):
    """``t(gamma_e) = a_src^-1 a_dst`` on every edge."""
    G = cm.G
    return all(cm.t[z.edges[e]] == G.mul(G.inv(z.vertices[s]), z.vertices[d])
               for e, (s, d, _) in enumerate(c.edges))


def apply_gauge(cm, c, d, z):
    check_decoration(cm, c, d)
    check_param(cm, c, z)
    G, H, t, act = cm.G, cm.H, cm.t, cm.act
    a, gam = z.vertices, z.edges
    edges = tuple(G.prod(G.inv(a[s]), t[gam[e]], d.edges[e], a[dd])
                  for e, (s, dd, _) in enumerate(c.edges))
    faces = []
    for f, face in enumerate(c.faces):
        loc = []
        for e, sg in face.slots:
            if sg > 0:
                loc.append(gam[e])
            else:
                loc.append(act[G.inv(d.edges[e])][H.inv(gam[e])])
        e1, s1 = face.slots[0]
        h1 = d.edges[e1] if s1 > 0 else G.inv(d.edges[e1])
        g1, g2, g3 = loc
        inner = H.prod(g1, act[h1][g3], d.faces[f], H.inv(g2))
        v0 = c.face_root(f)
        faces.append(act[G.inv(a[v0])][inner])
    return Decoration(edges, tuple(faces))


def compose_params(cm, c, z1, z2):
    """Parameter acting as ``z1`` followed by ``z2``."""
    G, H = cm.G, cm.H
    verts = tuple(G.mul(x, y) for x, y in zip(z1.vertices, z2.vertices))
    edges = tuple(H.mul(cm.act[z1.vertices[s]][z2.edges[e]], z1.edges[e])
                  for e, (s, _, _) in enumerate(c.edges))
    return GaugeParam(verts, edges)


def apply_secondary(cm, c, z, m):
    """Secondary gauge by ``m`` (vertex -> H): ``a_v t(m_v)`` and ``m_src^-1 gamma m_dst``.

    Maps parameters satisfying the constraint to parameters satisfying it.
    """
    if len(m) != c.n_vertices or any(not 0 <= x < cm.H.order for x in m):
        raise InvalidParameter("secondary parameter must give an H element per vertex")
    G, H = cm.G, cm.H
    verts = tuple(G.mul(a, cm.t[x]) for a, x in zip(z.vertices, m))
    edges = tuple(H.prod(H.inv(m[s]), z.edges[e], m[dd]) for e, (s, dd, _) in enumerate(c.edges))
    return GaugeParam(verts, edges)


def _free_cells(c, fixed_boundary):
    if fixed_boundary:
        bedges = set(c.boundary_edges())
        bverts = set(c.boundary_vertices())
    else:
        bedges, bverts = set(), set()
    verts = [v for v in range(c.n_vertices) if v not in bverts]
    edges = [e for e in range(len(c.edges)) if e not in bedges]
    return verts, edges


def generators(cm, c, fixed_boundary=True):
    """Single-cell parameters generating the interior gauge group."""
    verts, edges = _free_cells(c, fixed_boundary)
    ident = identity_param(c)
    gens = []
    for v in verts:
        for g in range(1, cm.G.order):
            a = list(ident.vertices)
            a[v] = g
            gens.append(GaugeParam(tuple(a), ident.edges))
    for e in edges:
        for x in range(1, cm.H.order):
            gam = list(ident.edges)
            gam[e] = x
            gens.append(GaugeParam(ident.vertices, tuple(gam)))
    return gens


def all_params(cm, c, fixed_boundary=True):
    verts, edges = _free_cells(c, fixed_boundary)
    for avals in product(range(cm.G.order), repeat=len(verts)):
        a = [0] * c.n_vertices
        for v, x in zip(verts, avals):
            a[v] = x
        for gvals in product(range(cm.H.order), repeat=len(edges)):
            gam = [0] * len(c.edges)
            for e, x in zip(edges, gvals):
                gam[e] = x
            yield GaugeParam(tuple(a), tuple(gam))


def orbits(cm, c, fixed_boundary=True, fixed=None):
    """Partition fake-flat decorations into gauge orbits (breadth-first search).

    With ``fixed_boundary`` the parameters are trivial on boundary cells, so
    every orbit keeps its boundary labels.
    """
    states = list(enumerate_fake_flat(cm, c, fixed))
    gens = generators(cm, c, fixed_boundary)
    seen, out = set(), []
    for s in states:
        if s in seen:
            continue
        orbit, queue = [s], deque([s])
        seen.add(s)
        while queue:
            x = queue.popleft()
            for z in gens:
                y = apply_gauge(cm, c, x, z)
                if y not in seen:
                    seen.add(y)
                    orbit.append(y)
                    queue.append(y)
        out.append(orbit)
    return out


def orbit_count(cm, c, fixed_boundary=True, fixed=None):
    return len(orbits(cm, c, fixed_boundary, fixed))


def burnside_count(cm, c, fixed_boundary=True):
    """Orbit count from fixed points, summed over the whole interior gauge group."""
    from fractions import Fraction

    states = list(enumerate_fake_flat(cm, c))
    total, size = 0, 0
    for z in all_params(cm, c, fixed_boundary):
        size += 1
        total += sum(1 for s in states if apply_gauge(cm, c, s, z) == s)
    return Fraction(total, size)
