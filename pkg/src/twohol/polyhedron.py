"""Simple 2-polyhedra, gerbe data and handlebody moves.

A simple polyhedron is a 2-complex whose interior edges lie in two faces
(nonsingular) or three faces (triple).  Trisection vertices are where the
singular graph branches: vertices whose link is a subdivided K4, and the
interior vertex of the Gamma_+ square, whose four faces all have their
source edge at the vertex and exactly two of them are rooted there.

Closed polyhedra of type (0) are built as dual spines of one-vertex
triangulations of closed 3-manifolds; handlebody moves act on the
triangulation (2-3 and 0-2 moves) and the spine is rebuilt.

Gerbe data are maps from label triples to exact rotation numbers in
[0, 1) (the phase ``exp(2 pi i r)``); products of phases are sums of
rotation numbers.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp

from . import tetra
from .complex import Face, Gluing, TwoComplex, assemble, from_triangles, make_unbroken, source_path
from .errors import IncompatibleConfiguration, IncompleteDatum, MoveInapplicable, NotSimple
from .scalars import rotation

EDGE_STRATA = ("boundary", "nonsingular", "triple")
VERTEX_STRATA = ("regular", "trisection")


# -- stratification ------------------------------------------------------------------

def _smoothed_link(c, v):
    """Link graph of ``v`` with degree-2 vertices smoothed away.

    Returns (vertex degrees, edge multiset) of the smoothed multigraph, or
    None when the link contains a circle component without branch points.
    """
    verts, ledges = c.link(v)
    adj = {x: [] for x in verts}
    for k, (a, b, _) in enumerate(ledges):
        adj[a].append((b, k))
        adj[b].append((a, k))
    branch = [x for x in verts if len(adj[x]) != 2]
    used = set()
    arcs = []
    for x in branch:
        for y, k in adj[x]:
            if k in used:
                continue
            used.add(k)
            prev, cur = x, y
            while len(adj[cur]) == 2:
                (n1, k1), (n2, k2) = adj[cur]
                nk, nxt = (k2, n2) if k1 in used else (k1, n1)
                if nk in used:
                    break
                used.add(nk)
                prev, cur = cur, nxt
            arcs.append(tuple(sorted((x, cur), key=repr)))
    if len(used) != len(ledges):
        return None
    deg = {x: len(adj[x]) for x in branch}
    return deg, arcs


def _is_k4_link(c, v):
    sm = _smoothed_link(c, v)
    if sm is None:
        return False
    deg, arcs = sm
    if len(deg) != 4 or any(d != 3 for d in deg.values()) or len(arcs) != 6:
        return False
    pairs = {frozenset(a) for a in arcs}
    return len(pairs) == 6 and all(len(p) == 2 for p in pairs)


def _is_gamma_vertex(c, v):
    if v in c.boundary_vertices():
        return False
    star = [f for f in range(len(c.faces)) if v in c.local_vertices(f)]
    if len(star) != 4 or any(list(c.local_vertices(f)).count(v) != 1 for f in star):
        return False
    if any(v not in c.endpoints(c.source_edge(f)) for f in star):
        return False
    return sum(c.face_root(f) == v for f in star) == 2


def is_trisection(c, v):
    return _is_k4_link(c, v) or _is_gamma_vertex(c, v)


@dataclass(frozen=True)
class SimplePolyhedron:
    body: TwoComplex
    edge_strata: tuple
    vertex_strata: tuple
    path: object = None  # SourcePath of the body, when unbroken
    triangulation: object = field(default=None, compare=False)  # for dual spines

    def triple_edges(self):
        return [e for e, s in enumerate(self.edge_strata) if s == "triple"]

    def trisection_vertices(self):
        return [v for v, s in enumerate(self.vertex_strata) if s == "trisection"]

    def census(self):
        return {
            "vertices": self.body.n_vertices,
            "edges": len(self.body.edges),
            "faces": len(self.body.faces),
            "triple_edges": len(self.triple_edges()),
            "trisection_vertices": len(self.trisection_vertices()),
            "boundary_edges": self.edge_strata.count("boundary"),
            "regions": len(self.regions()),
        }

    def regions(self):
        """Faces grouped into the components of the nonsingular part."""
        parent = list(range(len(self.body.faces)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e, inc in self.body.edge_faces().items():
            if self.edge_strata[e] == "nonsingular":
                (f, _), (g, _) = inc
                parent[find(f)] = find(g)
        out = {}
        for f in range(len(parent)):
            out.setdefault(find(f), []).append(f)
        return sorted(out.values())

    def validate(self):
        again = stratify(self.body, self.triangulation)
        if again.edge_strata != self.edge_strata or again.vertex_strata != self.vertex_strata:
            raise NotSimple("stored strata disagree with the complex")
        return self

    def to_dict(self):
        out = self.body.to_dict()
        out["strata"] = {"edges": list(self.edge_strata), "vertices": list(self.vertex_strata)}
        if self.triangulation is not None:
            out["triangulation"] = self.triangulation.to_dict()
        return out

    @classmethod
    def from_dict(cls, data):
        tri = tetra.Triangulation.from_dict(data["triangulation"]) if "triangulation" in data else None
        p = stratify(TwoComplex.from_dict(data), tri)
        if "strata" in data:
            if tuple(data["strata"]["edges"]) != p.edge_strata or \
                    tuple(data["strata"]["vertices"]) != p.vertex_strata:
                raise NotSimple("stored strata disagree with the complex", precondition="schema")
        return p


def stratify(c, triangulation=None, path=None):
    """Label edges and vertices of ``c``; raise NotSimple on an edge in four or more faces."""
    strata = []
    for e, d in enumerate(c.edge_degree()):
        if d >= 4:
            raise NotSimple("edge %d lies in %d faces" % (e, d), module="polyhedron")
        strata.append({0: "boundary", 1: "boundary", 2: "nonsingular", 3: "triple"}[d])
    vs = tuple("trisection" if is_trisection(c, v) else "regular" for v in range(c.n_vertices))
    if path is None:
        path = source_path(c)
    return SimplePolyhedron(c, tuple(strata), vs, path, triangulation)


def singular_graph(p):
    """Triple edges and trisection vertices, as {"vertices": [...], "edges": [(e, src, dst)]}."""
    edges = [(e, *p.body.endpoints(e)) for e in p.triple_edges()]
    verts = set(p.trisection_vertices())
    for _, s, d in edges:
        verts.update((s, d))
    return {"vertices": sorted(verts), "edges": edges}


def singular_arcs(p):
    """Maximal chains of triple edges between trisection vertices.

    Returns a list of arcs, each a list of triple edges; chains with no
    trisection vertex are closed circles.
    """
    tri = set(p.trisection_vertices())
    adj = {}
    for e in p.triple_edges():
        for v in p.body.endpoints(e):
            adj.setdefault(v, []).append(e)
    used, arcs = set(), []

    def walk(v, e):
        arc = []
        while e not in used:
            used.add(e)
            arc.append(e)
            s, d = p.body.endpoints(e)
            v = d if s == v else s
            if v in tri:
                break
            nxt = [x for x in adj[v] if x not in used]
            if not nxt:
                break
            e = nxt[0]
        return arc

    for v in sorted(tri):
        for e in adj.get(v, []):
            if e not in used:
                arcs.append(walk(v, e))
    for e in p.triple_edges():
        if e not in used:
            arcs.append(walk(p.body.endpoints(e)[0], e))
    return arcs


# -- builders -------------------------------------------------------------------------

def _with_path(c):
    p = source_path(c)
    if p is None:
        _, c, p = make_unbroken(c)
    return stratify(c, path=p)


def triangle():
    return _with_path(from_triangles(3, [(0, 1, 2)]))


def square():
    return _with_path(from_triangles(4, [(0, 1, 2), (0, 2, 3)]))


def fan(k):
    """``k`` triangles (0, i, i+1) around vertex 0, forming an open disc."""
    return _with_path(from_triangles(k + 2, [(0, i, i + 1) for i in range(1, k + 1)]))


def gamma_plus():
    """The Gamma_+ square: four triangles whose source edges meet at the centre."""
    g = [Gluing(0, 2, 1, 3), Gluing(2, 2, 3, 3), Gluing(0, 1, 2, 1), Gluing(1, 1, 3, 1)]
    return _with_path(assemble(4, g))


def triple_point():
    """Three triangles sharing the edge 0 -> 1."""
    return _with_path(from_triangles(5, [(0, 1, 2), (0, 1, 3), (0, 1, 4)]))


def doubled_triangle():
    """A triangle glued to its mirror image along all three edges (a sphere)."""
    return _with_path(from_triangles(3, [(0, 1, 2), (0, 2, 1)], eps=[1, -1]))


def doubled_square():
    """A square glued to its mirror along the rim; the two diagonals stay distinct."""
    edges = [(0, 1, 1), (0, 2, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1), (0, 2, 1)]
    tris = [((0, 1, 2), (0, 1, 2)), ((0, 2, 3), (1, 4, 3)),
            ((0, 2, 1), (5, 0, 2)), ((0, 3, 2), (4, 5, 3))]
    return _with_path(from_triangles(4, tris, edges=edges, eps=[1, 1, -1, -1]))


def torus_partition():
    """One-vertex torus: loops a, b, c with faces reading ``a b c^-1`` and ``b a c^-1``."""
    edges = ((0, 0, 1), (0, 0, 1), (0, 0, 1))
    faces = (Face(((0, 1), (2, 1), (1, 1))), Face(((1, 1), (2, 1), (0, 1)), -1))
    return stratify(TwoComplex(1, edges, faces, 0).validate())


# -- dual spines -------------------------------------------------------------------

def dual_spine(tri):
    """The dual spine of a closed triangulation, barycentrically split into triangles.

    One triangle per flag (tet t, face f of t, edge e of f) with vertices
    (tet centre, face centre, edge centre); its source edge joins the tet
    centre to the face centre and is a triple edge.  For a one-vertex
    triangulation the spine is a type-(0) polyhedron: its complement is one
    open ball.
    """
    tri.check()
    faces = tri.face_classes()
    eclasses = tri.edge_classes()
    nT = tri.size
    face_of = {}
    for k, (x, y) in enumerate(faces):
        face_of[x] = (k, x)
        face_of[y] = (k, x)
    edge_of = {}
    for k, cl in enumerate(eclasses):
        for t, e, _ in cl:
            edge_of[(t, e)] = k
    v_tet = list(range(nT))
    v_face = [nT + k for k in range(len(faces))]
    v_edge = [nT + len(faces) + k for k in range(len(eclasses))]
    edges, index = [], {}

    def edge(key, s, d):
        if key not in index:
            index[key] = len(edges)
            edges.append((s, d, 1))
        return index[key]

    out = []
    for t in range(nT):
        for f in range(4):
            k, (rt, rf) = face_of[(t, f)]
            # express local edges of this face in the representative side
            if (t, f) == (rt, rf):
                to_rep = tuple(range(4))
            else:
                to_rep = tri.glue[t][f][1]
            for i, j in combinations([x for x in range(4) if x != f], 2):
                ie = frozenset((to_rep[i], to_rep[j]))
                ec = edge_of[(t, (i, j))]
                e01 = edge(("tf", t, f), v_tet[t], v_face[k])
                e02 = edge(("te", t, i, j), v_tet[t], v_edge[ec])
                e12 = edge(("fe", k, ie), v_face[k], v_edge[ec])
                out.append(Face(((e01, 1), (e02, 1), (e12, 1))))
    c = TwoComplex(nT + len(faces) + len(eclasses), tuple(edges), tuple(out), 0).validate()
    return stratify(c, triangulation=tri)


# One-tetrahedron triangulations of S^3 and of the lens space L(4,1).
S3_TRIANGULATION = tetra.Triangulation((
    ((0, (1, 0, 2, 3)), (0, (1, 0, 2, 3)), (0, (1, 2, 3, 0)), (0, (3, 0, 1, 2))),
))
L41_TRIANGULATION = tetra.Triangulation((
    ((0, (1, 2, 3, 0)), (0, (3, 0, 1, 2)), (0, (1, 2, 3, 0)), (0, (3, 0, 1, 2))),
))


def coordinate_planes_s3():
    """A closed type-(0) simple polyhedron in S^3 with one trisection vertex."""
    return dual_spine(S3_TRIANGULATION)


def lens_spine():
    """The analogous spine of L(4,1), whose fundamental group is Z/4."""
    return dual_spine(L41_TRIANGULATION)


def complement_balls(p):
    """Number of 3-balls in the complement of a dual spine (1 means type (0))."""
    if p.triangulation is None:
        raise MoveInapplicable("polyhedron carries no ambient triangulation")
    return len(p.triangulation.vertex_classes())


# -- handlebody moves --------------------------------------------------------------

def _tri(p):
    if p.triangulation is None:
        raise MoveInapplicable("handlebody moves need a polyhedron built as a dual spine")
    return p.triangulation


def handle_move_02(p, site):
    """0-2 move.  ``site = (tet, (i, j), k, l)``: faces k and l around the edge (i, j)."""
    t, e, i, j = site
    return dual_spine(tetra.move_02(_tri(p), t, tuple(e), i, j))


def handle_move_20(p, site):
    """2-0 move.  ``site = (tet, (i, j))`` names an edge of degree two."""
    t, e = site
    return dual_spine(tetra.move_20(_tri(p), t, tuple(e)))


def handle_move_23(p, site):
    """2-3 move.  ``site = (tet, face)`` names a face joining two distinct tets."""
    t, f = site
    return dual_spine(tetra.move_23(_tri(p), t, f))


def handle_move_32(p, site):
    """3-2 move.  ``site = (tet, (i, j))`` names an edge of degree three in three tets."""
    t, e = site
    return dual_spine(tetra.move_32(_tri(p), t, tuple(e)))


# -- gerbe data -----------------------------------------------------------------------

class GerbeDatum:
    """Rotation numbers (Fractions in [0, 1)) on label triples."""

    def __init__(self, phases):
        self.phases = {tuple(k): rotation(v) for k, v in dict(phases).items()}

    def __getitem__(self, key):
        try:
            return self.phases[tuple(key)]
        except KeyError:
            raise IncompleteDatum("no phase for configuration %r" % (tuple(key),)) from None

    def __contains__(self, key):
        return tuple(key) in self.phases

    def __iter__(self):
        return iter(sorted(self.phases))

    def __len__(self):
        return len(self.phases)

    def __eq__(self, other):
        return isinstance(other, GerbeDatum) and self.phases == other.phases

    def __repr__(self):
        return "GerbeDatum(%d entries)" % len(self.phases)

    def labels(self):
        return sorted({x for k in self.phases for x in k})

    def to_dict(self):
        return {",".join(map(str, k)): [v.numerator, v.denominator] for k, v in sorted(self.phases.items())}

    @classmethod
    def from_dict(cls, data):
        return cls({tuple(int(x) for x in k.split(",")): Fraction(p, q) for k, (p, q) in data.items()})


def full_domain(n):
    return list(product(range(n), repeat=3))


def constant_gerbe(domain, r=0):
    return GerbeDatum({k: r for k in domain})


def hollow_tetrahedron():
    """The four faces of a tetrahedron on labels 0..3, as ascending triples."""
    return [k for k in combinations(range(4), 3)]


def coboundary(gamma, domain):
    """(d gamma)(x, y, z) = gamma(y, z) - gamma(x, z) + gamma(x, y) on each triple of ``domain``."""
    def g(a, b):
        try:
            return gamma[(a, b)]
        except KeyError:
            raise IncompleteDatum("1-cochain has no value on %r" % ((a, b),)) from None

    return GerbeDatum({(x, y, z): g(y, z) - g(x, z) + g(x, y) for x, y, z in domain})


def pentagon_defect(sigma, q):
    a, b, c, d = q
    return rotation(sigma[(b, c, d)] - sigma[(a, c, d)] + sigma[(a, b, d)] - sigma[(a, b, c)])


def check_pentagon(sigma, quadruples=None):
    """True iff the coboundary of ``sigma`` vanishes on every quadruple.

    By default every 4-tuple of labels all of whose sub-triples carry a
    phase is checked.  Explicit quadruples with a missing sub-triple raise
    IncompleteDatum.
    """
    if quadruples is None:
        quadruples = [q for q in product(sigma.labels(), repeat=4)
                      if all(_drop(q, i) in sigma for i in range(4))]
    return all(pentagon_defect(sigma, q) == 0 for q in quadruples)


def _drop(q, i):
    return q[:i] + q[i + 1:]


def gerbe_dot(sigma, tau):
    """Pointwise product of phases on a common domain."""
    if set(sigma.phases) != set(tau.phases):
        raise IncompatibleConfiguration("gerbe data live on different configurations")
    return GerbeDatum({k: sigma.phases[k] + tau.phases[k] for k in sigma.phases})


def gerbe_cup(sigma, tau, relabel=None):
    """Phase of stacking: ``sigma(x) * tau(relabel(x))`` (identity relabeling by default)."""
    out = {}
    for k, v in sigma.phases.items():
        k2 = tuple(relabel[x] for x in k) if relabel is not None else k
        if k2 not in tau.phases:
            raise IncompatibleConfiguration("stacked configuration %r has no partner" % (k2,))
        out[k] = v + tau.phases[k2]
    return GerbeDatum(out)


def _pairs(domain):
    pairs = set()
    for x, y, z in domain:
        pairs.update(((y, z), (x, z), (x, y)))
    return sorted(pairs)


def check_gerbe_interchange(cup, dot):
    """A 1-cochain gamma with ``cup = d(gamma) . dot``, or None if none exists.

    Solves ``A gamma = D (mod 1)`` exactly with a Smith normal form
    ``U A V = S``: rows past the rank need ``(U D)_i`` integral, the others
    give ``y_i = (U D)_i / s_i`` and ``gamma = V y``.
    """
    if set(cup.phases) != set(dot.phases):
        raise IncompatibleConfiguration("cup and dot data live on different configurations")
    domain = sorted(cup.phases)
    pairs = _pairs(domain)
    if not domain:
        return {}
    col = {p: i for i, p in enumerate(pairs)}
    rows = []
    for x, y, z in domain:
        row = [0] * len(pairs)
        row[col[(y, z)]] += 1
        row[col[(x, z)]] -= 1
        row[col[(x, y)]] += 1
        rows.append(row)
    A = Matrix(rows)
    D = Matrix([cup.phases[k] - dot.phases[k] for k in domain])
    S, U, V = smith_normal_decomp(A)
    UD = U * D
    y = [Fraction(0)] * len(pairs)
    for i in range(len(domain)):
        s = S[i, i] if i < len(pairs) else 0
        val = Fraction(int(UD[i].p), int(UD[i].q))
        if s == 0:
            if val.denominator != 1:
                return None
        else:
            y[i] = val / int(s)
    gamma = {}
    for p, i in col.items():
        gamma[p] = rotation(sum(int(V[i, j]) * y[j] for j in range(len(pairs))))
    assert coboundary(gamma, domain) == GerbeDatum({k: cup.phases[k] - dot.phases[k] for k in domain})
    return gamma


def brute_force_interchange(cup, dot, denominator):
    """Reference search over 1-cochains with values in (1/denominator) Z / Z."""
    domain = sorted(cup.phases)
    pairs = _pairs(domain)
    target = GerbeDatum({k: cup.phases[k] - dot.phases[k] for k in domain})
    for vals in product(range(denominator), repeat=len(pairs)):
        gamma = {p: Fraction(v, denominator) for p, v in zip(pairs, vals)}
        if coboundary(gamma, domain) == target:
            return gamma
    return None
