"""Triangulated 2-complexes with rooted faces.

Each face is a 2-simplex with local vertices ``(v0, v1, v2)`` and three
slots: slot 1 is the local edge ``v0 -> v1`` (the *source edge*, ``v0`` is
the root), slot 2 is ``v0 -> v2`` and slot 3 is ``v1 -> v2``.  A slot stores
a global edge index and a sign: +1 when the global edge points the same way
as the local edge, -1 otherwise.  The boundary of a face is
``e1 - e2 + e3`` and its holonomy word, read as a loop at the root, is
``h(e1) h(e3) h(e2)^-1``.

Edges may be parallel and faces may have repeated vertices, so this is a
Delta-complex rather than a simplicial complex.
"""

from collections import defaultdict
from dataclasses import dataclass, field, replace
from itertools import product

from .errors import GeometryError, NoUnbrokenAssignment, NotRegular


@dataclass(frozen=True)
class Face:
    slots: tuple  # ((edge, sign), (edge, sign), (edge, sign))
    eps: int = 1


@dataclass(frozen=True)
class TwoComplex:
    n_vertices: int
    edges: tuple  # (src, dst, frame)
    faces: tuple
    root: int = 0

    # -- basic incidence -------------------------------------------------
    def endpoints(self, e):
        s, d, _ = self.edges[e]
        return s, d

    def local_vertices(self, f):
        """The local vertices (v0, v1, v2) of face ``f``."""
        face = self.faces[f] if isinstance(f, int) else f
        ends = []
        for e, s in face.slots:
            a, b = self.endpoints(e)
            ends.append((a, b) if s > 0 else (b, a))
        (v0, v1), (w0, v2), (u1, u2) = ends
        if v0 != w0 or v1 != u1 or v2 != u2:
            raise GeometryError("face slots do not close up into a triangle: %r" % (face,))
        return v0, v1, v2

    def face_root(self, f):
        return self.local_vertices(f)[0]

    def source_edge(self, f):
        return self.faces[f].slots[0][0]

    def edge_faces(self):
        """edge -> list of (face, slot index) incidences."""
        inc = defaultdict(list)
        for fi, face in enumerate(self.faces):
            for k, (e, _) in enumerate(face.slots):
                inc[e].append((fi, k))
        return inc

    def edge_degree(self):
        deg = [0] * len(self.edges)
        for face in self.faces:
            for e, _ in face.slots:
                deg[e] += 1
        return deg

    def boundary_edges(self):
        return [e for e, d in enumerate(self.edge_degree()) if d == 1]

    def internal_edges(self):
        return [e for e, d in enumerate(self.edge_degree()) if d >= 2]

    def boundary_vertices(self):
        vs = set()
        for e in self.boundary_edges():
            vs.update(self.endpoints(e))
        return sorted(vs)

    def internal_vertices(self):
        b = set(self.boundary_vertices())
        return [v for v in range(self.n_vertices) if v not in b]

    def is_closed(self):
        return all(d >= 2 for d in self.edge_degree())

    def euler_characteristic(self):
        return self.n_vertices - len(self.edges) + len(self.faces)

    def vertex_edges(self, v):
        return [e for e, (s, d, _) in enumerate(self.edges) if v in (s, d)]

    def components(self):
        """Connected components as sorted vertex lists (via edges)."""
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s, d, _ in self.edges:
            parent[find(s)] = find(d)
        comps = defaultdict(list)
        for v in range(self.n_vertices):
            comps[find(v)].append(v)
        return sorted(comps.values())

    def link(self, v):
        """Link of a vertex as (link vertices, link edges).

        Link vertices are half-edges ``(e, end)`` at ``v``; each face corner at
        ``v`` contributes a link edge between the two half-edges of the face
        that meet there.
        """
        verts = set()
        for e, (s, d, _) in enumerate(self.edges):
            if s == v:
                verts.add((e, 0))
            if d == v:
                verts.add((e, 1))
        ledges = []
        for fi, face in enumerate(self.faces):
            lv = self.local_vertices(fi)
            # local edges: slot k joins local positions
            pos_pairs = ((0, 1), (0, 2), (1, 2))
            for corner in range(3):
                if lv[corner] != v:
                    continue
                touching = []
                for k, (e, s) in enumerate(face.slots):
                    a, b = pos_pairs[k]
                    if corner == a:
                        touching.append((e, 0 if s > 0 else 1))
                    elif corner == b:
                        touching.append((e, 1 if s > 0 else 0))
                if len(touching) == 2:
                    ledges.append((touching[0], touching[1], fi))
        return sorted(verts), ledges

    def validate(self):
        for s, d, fr in self.edges:
            if not (0 <= s < self.n_vertices and 0 <= d < self.n_vertices) or fr not in (1, -1):
                raise GeometryError("bad edge record (%r, %r, %r)" % (s, d, fr))
        for fi, face in enumerate(self.faces):
            if len(face.slots) != 3 or face.eps not in (1, -1):
                raise GeometryError("face %d must have three slots and eps = +-1" % fi)
            for e, s in face.slots:
                if not 0 <= e < len(self.edges) or s not in (1, -1):
                    raise GeometryError("face %d references bad slot (%r, %r)" % (fi, e, s))
            self.local_vertices(fi)
        if self.n_vertices and not 0 <= self.root < self.n_vertices:
            raise GeometryError("root out of range")
        return self

    # -- serialization ---------------------------------------------------
    def to_dict(self):
        return {
            "vertices": self.n_vertices,
            "root": self.root,
            "edges": [list(e) for e in self.edges],
            "faces": [{"slots": [list(s) for s in f.slots], "eps": f.eps} for f in self.faces],
        }

    @classmethod
    def from_dict(cls, data):
        try:
            edges = tuple((int(s), int(d), int(fr)) for s, d, fr in data["edges"])
            faces = tuple(Face(tuple((int(e), int(s)) for e, s in f["slots"]), int(f.get("eps", 1)))
                          for f in data["faces"])
            c = cls(int(data["vertices"]), edges, faces, int(data.get("root", 0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise GeometryError("malformed complex record: %s" % exc, precondition="schema") from exc
        return c.validate()


# -- construction helpers ---------------------------------------------------

def face_from_vertices(edges, verts, eds, eps=1):
    """Face with local vertices ``verts`` using global edges ``eds`` = (e01, e02, e12)."""
    v0, v1, v2 = verts
    slots = []
    for (a, b), e in zip(((v0, v1), (v0, v2), (v1, v2)), eds):
        s, d, _ = edges[e]
        if (s, d) == (a, b):
            slots.append((e, 1))
        elif (s, d) == (b, a):
            slots.append((e, -1))
        else:
            raise GeometryError("edge %d does not join %d and %d" % (e, a, b))
    return Face(tuple(slots), eps)


def from_triangles(n_vertices, triangles, edges=None, root=0, eps=None):
    """Build a complex from vertex triples.

    ``triangles`` is a list of ``(v0, v1, v2)`` or ``((v0, v1, v2), (e01, e02, e12))``.
    Without explicit edge indices an edge is created per unordered vertex
    pair, directed from the smaller to the larger vertex.
    """
    edges = list(edges or [])
    lookup = {}
    for i, (s, d, _) in enumerate(edges):
        lookup.setdefault(frozenset((s, d)) if s != d else (s,), i)
    faces = []
    for k, tri in enumerate(triangles):
        if len(tri) == 2 and not isinstance(tri[0], int):
            verts, eds = tri
        else:
            verts, eds = tri, None
        if eds is None:
            eds = []
            for a, b in ((verts[0], verts[1]), (verts[0], verts[2]), (verts[1], verts[2])):
                key = frozenset((a, b)) if a != b else (a,)
                if key not in lookup:
                    lookup[key] = len(edges)
                    edges.append((min(a, b), max(a, b), 1))
                eds.append(lookup[key])
        faces.append(face_from_vertices(edges, verts, eds, 1 if eps is None else eps[k]))
    return TwoComplex(n_vertices, tuple(edges), tuple(faces), root).validate()


def rotate_face(c, f, r):
    """Cyclically rotate the local vertices of face ``f`` by ``r`` steps.

    (v0, v1, v2) -> (v1, v2, v0) per step; orientation is preserved and the
    source edge moves to the next edge of the boundary cycle.
    """
    face = c.faces[f]
    for _ in range(r % 3):
        (e1, s1), (e2, s2), (e3, s3) = face.slots
        face = Face(((e3, s3), (e1, -s1), (e2, -s2)), face.eps)
    return face


def with_rotations(c, rotations):
    faces = tuple(rotate_face(c, f, r) for f, r in enumerate(rotations))
    return replace(c, faces=faces)


# -- gluing sets ---------------------------------------------------------------

@dataclass(frozen=True)
class Gluing:
    """Identify slot ``slot_a`` of simplex ``a`` with slot ``slot_b`` of simplex ``b``.

    Slots are 1, 2, 3 as above.  ``direction`` +1 glues the local edges
    start-to-start, -1 start-to-end.
    """

    a: int
    slot_a: int
    b: int
    slot_b: int
    direction: int = 1


@dataclass(frozen=True)
class GluingSet:
    gluings: tuple = ()
    orientations: tuple = field(default=())

    def used_slots(self):
        used = defaultdict(int)
        for g in self.gluings:
            used[(g.a, g.slot_a)] += 1
            used[(g.b, g.slot_b)] += 1
        return used


_SLOT_ENDS = {1: (0, 1), 2: (0, 2), 3: (1, 2)}


def assemble(k, gluing):
    """Quotient of ``k`` standard triangles by a gluing set.

    Vertex and edge copies are merged with a union-find; the surviving edge
    directions are those of the lowest-numbered copy.  A gluing that folds an
    edge onto itself with reversed direction is rejected.
    """
    if not isinstance(gluing, GluingSet):
        gluing = GluingSet(tuple(gluing))
    vparent = list(range(3 * k))
    eparent = list(range(3 * k))
    eflip = [0] * (3 * k)  # orientation of copy relative to its parent

    def vfind(x):
        while vparent[x] != x:
            vparent[x] = vparent[vparent[x]]
            x = vparent[x]
        return x

    def efind(x):
        flip = 0
        while eparent[x] != x:
            flip ^= eflip[x]
            x = eparent[x]
        return x, flip

    for g in gluing.gluings:
        if not (0 <= g.a < k and 0 <= g.b < k and g.slot_a in _SLOT_ENDS and g.slot_b in _SLOT_ENDS):
            raise GeometryError("gluing %r out of range" % (g,))
        pa, qa = _SLOT_ENDS[g.slot_a]
        pb, qb = _SLOT_ENDS[g.slot_b]
        if g.direction > 0:
            pairs = ((3 * g.a + pa, 3 * g.b + pb), (3 * g.a + qa, 3 * g.b + qb))
        else:
            pairs = ((3 * g.a + pa, 3 * g.b + qb), (3 * g.a + qa, 3 * g.b + pb))
        for x, y in pairs:
            rx, ry = vfind(x), vfind(y)
            if rx != ry:
                vparent[max(rx, ry)] = min(rx, ry)
        ea, eb = 3 * g.a + g.slot_a - 1, 3 * g.b + g.slot_b - 1
        ra, fa = efind(ea)
        rb, fb = efind(eb)
        rel = 0 if g.direction > 0 else 1
        if ra == rb:
            if fa ^ fb ^ rel:
                raise GeometryError("gluing folds an edge onto its own reverse")
            continue
        if ra < rb:
            eparent[rb], eflip[rb] = ra, fa ^ fb ^ rel
        else:
            eparent[ra], eflip[ra] = rb, fa ^ fb ^ rel
    vroots = sorted({vfind(x) for x in range(3 * k)})
    vindex = {r: i for i, r in enumerate(vroots)}
    eroots = sorted({efind(x)[0] for x in range(3 * k)})
    eindex = {r: i for i, r in enumerate(eroots)}
    edges = []
    for r in eroots:
        simplex, slot = divmod(r, 3)
        p, q = _SLOT_ENDS[slot + 1]
        edges.append((vindex[vfind(3 * simplex + p)], vindex[vfind(3 * simplex + q)], 1))
    orient = gluing.orientations or (1,) * k
    faces = []
    for j in range(k):
        slots = []
        for slot in range(3):
            r, flip = efind(3 * j + slot)
            slots.append((eindex[r], -1 if flip else 1))
        faces.append(Face(tuple(slots), orient[j]))
    return TwoComplex(len(vroots), tuple(edges), tuple(faces), 0).validate()


def is_regular(c):
    """Every edge lies in at most two faces."""
    return all(d <= 2 for d in c.edge_degree())


# -- unbroken source paths -------------------------------------------------------

@dataclass(frozen=True)
class SourcePath:
    """Source edges forming a simple path.

    ``vertices`` and ``edges`` list the full path in order (``edges[i]``
    joins ``vertices[i]`` and ``vertices[i+1]``, as ``(edge, +-1)`` with +1 when
    traversed along its direction).  ``start``/``stop`` delimit the shortest
    stretch containing every face root; its edge count is ``length``.
    """

    vertices: tuple
    edges: tuple
    start: int
    stop: int

    @property
    def length(self):
        return self.stop - self.start

    @property
    def base(self):
        return self.vertices[self.start]

    def position(self, v):
        return self.vertices.index(v)


def source_path(c):
    """The source path of the current slot assignment, or None if broken."""
    if not c.faces:
        return None
    sedges = sorted({f.slots[0][0] for f in c.faces})
    adj = defaultdict(list)
    for e in sedges:
        s, d = c.endpoints(e)
        if s == d:
            return None
        adj[s].append(e)
        adj[d].append(e)
    if any(len(v) > 2 for v in adj.values()):
        return None
    ends = [v for v, es in adj.items() if len(es) == 1]
    if len(ends) != 2:
        return None  # cycle or disconnected pieces
    start = min(ends)
    verts, path, used = [start], [], set()
    v = start
    while True:
        nxt = [e for e in adj[v] if e not in used]
        if not nxt:
            break
        e = nxt[0]
        used.add(e)
        s, d = c.endpoints(e)
        if s == v:
            path.append((e, 1))
            v = d
        else:
            path.append((e, -1))
            v = s
        verts.append(v)
    if len(used) != len(sedges):
        return None
    pos = {u: i for i, u in enumerate(verts)}
    rpos = [pos[c.face_root(f)] for f in range(len(c.faces))]
    lo, hi = min(rpos), max(rpos)
    # orient the path so the root stretch starts as early as possible
    if len(verts) - 1 - hi < lo:
        verts = verts[::-1]
        path = [(e, -s) for e, s in reversed(path)]
        lo, hi = len(verts) - 1 - hi, len(verts) - 1 - lo
    return SourcePath(tuple(verts), tuple(path), lo, hi)


def _face_order(c):
    # breadth-first order through shared edges, starting from face 0
    inc = c.edge_faces()
    seen, order = set(), []
    for start in range(len(c.faces)):
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        while queue:
            f = queue.pop(0)
            order.append(f)
            for e, _ in c.faces[f].slots:
                for g, _ in inc[e]:
                    if g not in seen:
                        seen.add(g)
                        queue.append(g)
    return order


def make_unbroken(c, max_length=None):
    """Choose source slots so that the source edges form one simple path.

    Returns ``(rotations, complex, path)`` where ``rotations[f]`` is the
    number of cyclic rotations applied to face ``f``.  The search is a
    depth-first backtracking over faces that keeps the source subgraph a
    linear forest; among complete assignments the first one with root span
    at most ``max_length`` (default ``k - 1``) is returned.
    """
    if not is_regular(c):
        raise NotRegular("complex has an edge in three or more faces")
    k = len(c.faces)
    if k == 0:
        raise NoUnbrokenAssignment("complex has no faces")
    if max_length is None:
        max_length = k - 1
    order = _face_order(c)
    options = []
    for f in range(k):
        opts = []
        for r in range(3):
            face = rotate_face(c, f, r)
            e = face.slots[0][0]
            s, d = c.endpoints(e)
            if s != d:
                opts.append((r, e))
        options.append(opts)

    count = defaultdict(int)  # source edge -> number of faces using it
    deg = defaultdict(int)
    choice = [None] * k
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    best = []
    strict = False

    def rec(i):
        if i == k:
            verts = {v for e in count for v in c.endpoints(e)}
            roots = {find(v) for v in verts}
            if len(roots) != 1:
                return False
            cand = with_rotations(c, choice)
            p = source_path(cand)
            if p is not None and p.length <= max_length:
                best.append((tuple(choice), cand, p))
                return True
            return False
        f = order[i]
        # prefer edges already in use: they do not lengthen the path
        # prefer edges already in use, then edges touching the current path
        opts = sorted(options[f], key=lambda o: (count.get(o[1], 0) == 0,
                                                 not any(deg[v] for v in c.endpoints(o[1])), o[0]))
        for r, e in opts:
            s, d = c.endpoints(e)
            if count.get(e, 0):
                count[e] += 1
                choice[f] = r
                if rec(i + 1):
                    return True
                count[e] -= 1
                continue
            if deg[s] >= 2 or deg[d] >= 2:
                continue
            if strict and count and not (deg[s] or deg[d]):
                continue
            rs, rd = find(s), find(d)
            if rs == rd:
                continue
            saved = dict(parent)
            parent[rs] = rd
            count[e] = 1
            deg[s] += 1
            deg[d] += 1
            choice[f] = r
            if rec(i + 1):
                return True
            count[e] = 0
            del count[e]
            deg[s] -= 1
            deg[d] -= 1
            parent.clear()
            parent.update(saved)
        choice[f] = None
        return False

    # first look for assignments whose source edges stay connected while
    # they are chosen; this finds one quickly in practice
    strict = True
    if rec(0):
        return best[0]
    strict = False
    if not rec(0):
        raise NoUnbrokenAssignment("no source-slot assignment gives a simple path of length <= %d"
                                   % max_length)
    return best[0]


# -- daggers -----------------------------------------------------------------------

def dagger1(c):
    """Reverse every edge and mirror every face (orientation reversal)."""
    edges = tuple((d, s, fr) for s, d, fr in c.edges)
    faces = []
    for face in c.faces:
        (e1, s1), (e2, s2), (e3, s3) = face.slots
        faces.append(Face(((e2, -s2), (e1, -s1), (e3, s3)), -face.eps))
    return TwoComplex(c.n_vertices, edges, tuple(faces), c.root)


def dagger2(c):
    """Flip every edge framing."""
    return replace(c, edges=tuple((s, d, -fr) for s, d, fr in c.edges))


# -- Pachner moves -------------------------------------------------------------------

def _oriented_cycle(c, f):
    v0, v1, v2 = c.local_vertices(f)
    return (v0, v1, v2) if c.faces[f].eps > 0 else (v0, v2, v1)


def _edge_between(c, a, b, among):
    for e in among:
        s, d = c.endpoints(e)
        if (s, d) in ((a, b), (b, a)):
            return e
    raise GeometryError("no edge between %d and %d" % (a, b))


def pachner_flip(c, e):
    """2-2 flip of the internal edge ``e`` shared by exactly two faces.

    The flipped edge keeps index ``e`` and runs between the two apexes; the
    two new faces replace the old ones in place (rooted at the apexes).
    """
    inc = c.edge_faces()[e]
    if len(inc) != 2 or inc[0][0] == inc[1][0]:
        raise GeometryError("edge %d is not an internal edge of two distinct faces" % e)
    (f1, _), (f2, _) = inc
    a, b = c.endpoints(e)
    if a == b:
        raise GeometryError("cannot flip a loop")
    cyc1, cyc2 = _oriented_cycle(c, f1), _oriented_cycle(c, f2)

    def rotate_to(cyc, first, second):
        for r in range(3):
            rc = cyc[r:] + cyc[:r]
            if rc[0] == first and rc[1] == second:
                return rc
        return None

    # face 1 traverses a -> b, face 2 traverses b -> a (coherent orientation)
    r1 = rotate_to(cyc1, a, b)
    r2 = rotate_to(cyc2, b, a)
    if r1 is None or r2 is None:
        r1, r2 = rotate_to(cyc1, b, a), rotate_to(cyc2, a, b)
        if r1 is None or r2 is None:
            raise GeometryError("faces around edge %d are not coherently oriented" % e)
        a, b = b, a
    x, y = r1[2], r2[2]
    if x == y or len({a, b, x}) < 3 or len({a, b, y}) < 3:
        raise GeometryError("flip would create a degenerate face")
    other1 = [s for s, _ in c.faces[f1].slots if s != e]
    other2 = [s for s, _ in c.faces[f2].slots if s != e]
    e_bx = _edge_between(c, b, x, other1)
    e_xa = _edge_between(c, x, a, other1)
    e_ay = _edge_between(c, a, y, other2)
    e_yb = _edge_between(c, y, b, other2)
    edges = list(c.edges)
    edges[e] = (x, y, c.edges[e][2])
    # quad cycle a -> y -> b -> x -> a; new faces (x, a, y) and (y, b, x)
    nf1 = face_from_vertices(edges, (x, a, y), (e_xa, e, e_ay))
    nf2 = face_from_vertices(edges, (y, b, x), (e_yb, e, e_bx))
    faces = list(c.faces)
    faces[f1], faces[f2] = nf1, nf2
    return TwoComplex(c.n_vertices, tuple(edges), tuple(faces), c.root).validate()


def pachner_subdivide(c, f):
    """1-3 move: cone face ``f`` off to a new vertex (appended last)."""
    v0, v1, v2 = _oriented_cycle(c, f)
    z = c.n_vertices
    edges = list(c.edges)
    base = len(edges)
    edges += [(v0, z, 1), (v1, z, 1), (v2, z, 1)]
    face = c.faces[f]
    eds = {frozenset(c.endpoints(e)): e for e, _ in face.slots}
    lv = c.local_vertices(f)
    pair_edge = {}
    for (p, q), (e, _) in zip(((0, 1), (0, 2), (1, 2)), face.slots):
        pair_edge[(lv[p], lv[q])] = e
        pair_edge[(lv[q], lv[p])] = e
    del eds
    new = [
        face_from_vertices(edges, (v0, v1, z), (pair_edge[(v0, v1)], base, base + 1)),
        face_from_vertices(edges, (v1, v2, z), (pair_edge[(v1, v2)], base + 1, base + 2)),
        face_from_vertices(edges, (v2, v0, z), (pair_edge[(v2, v0)], base + 2, base)),
    ]
    faces = list(c.faces)
    faces[f] = new[0]
    faces += new[1:]
    return TwoComplex(z + 1, tuple(edges), tuple(faces), c.root).validate()


def pachner_merge(c, z):
    """3-1 move: remove an internal vertex of degree 3 lying in exactly three faces."""
    star = [fi for fi in range(len(c.faces)) if z in c.local_vertices(fi)]
    spokes = c.vertex_edges(z)
    if len(star) != 3 or len(spokes) != 3 or z in c.boundary_vertices():
        raise GeometryError("vertex %d is not the centre of a 1-3 configuration" % z)
    ring = {}
    for fi in star:
        cyc = _oriented_cycle(c, fi)
        r = cyc.index(z)
        a, b = cyc[(r + 1) % 3], cyc[(r + 2) % 3]
        rim = [e for e, _ in c.faces[fi].slots if z not in c.endpoints(e)]
        if len(rim) != 1:
            raise GeometryError("degenerate star around vertex %d" % z)
        ring[a] = (b, rim[0])
    a0 = min(ring)
    a1, e01 = ring[a0]
    a2, e12 = ring[a1]
    back, e20 = ring[a2]
    if back != a0:
        raise GeometryError("star of vertex %d is not a disc" % z)
    keep = min(star)
    old_edges = list(c.edges)
    new_face = face_from_vertices(old_edges, (a0, a1, a2), (e01, e20, e12))
    faces = [new_face if fi == keep else c.faces[fi] for fi in range(len(c.faces)) if fi == keep or fi not in star]
    # drop spokes and vertex z, renumbering
    emap, edges = {}, []
    for e, rec in enumerate(old_edges):
        if e in spokes:
            continue
        emap[e] = len(edges)
        s, d, fr = rec
        edges.append((s - (s > z), d - (d > z), fr))
    faces = tuple(Face(tuple((emap[e], s) for e, s in face.slots), face.eps) for face in faces)
    root = c.root - (c.root > z) if c.root != z else 0
    return TwoComplex(c.n_vertices - 1, tuple(edges), faces, root).validate()


# -- relabeling ---------------------------------------------------------------------

def relabel(c, vperm=None, eperm=None, fperm=None):
    """Apply bijections old index -> new index to vertices, edges and faces."""
    nv, ne, nf = c.n_vertices, len(c.edges), len(c.faces)
    vperm = list(vperm) if vperm is not None else list(range(nv))
    eperm = list(eperm) if eperm is not None else list(range(ne))
    fperm = list(fperm) if fperm is not None else list(range(nf))
    edges = [None] * ne
    for e, (s, d, fr) in enumerate(c.edges):
        edges[eperm[e]] = (vperm[s], vperm[d], fr)
    faces = [None] * nf
    for f, face in enumerate(c.faces):
        faces[fperm[f]] = Face(tuple((eperm[e], s) for e, s in face.slots), face.eps)
    return TwoComplex(nv, tuple(edges), tuple(faces), vperm[c.root] if nv else 0)


def canonical_form(c):
    """A relabeling-invariant key (exhaustive over vertex orders for tiny complexes,
    otherwise a sorted incidence signature)."""
    sig_edges = sorted(tuple(sorted((s, d))) for s, d, _ in c.edges)
    sig_faces = sorted(tuple(sorted(c.local_vertices(f))) for f in range(len(c.faces)))
    if c.n_vertices <= 7:
        from itertools import permutations
        best = None
        for perm in permutations(range(c.n_vertices)):
            e = tuple(sorted(tuple(sorted((perm[s], perm[d]))) for s, d, _ in c.edges))
            f = tuple(sorted(tuple(sorted(perm[v] for v in c.local_vertices(i))) for i in range(len(c.faces))))
            key = (e, f)
            if best is None or key < best:
                best = key
        return (c.n_vertices, best)
    return (c.n_vertices, tuple(sig_edges), tuple(sig_faces))


def disjoint_union(c1, c2):
    """Place ``c2`` after ``c1``; returns the union and the index offsets."""
    nv, ne = c1.n_vertices, len(c1.edges)
    edges = c1.edges + tuple((s + nv, d + nv, fr) for s, d, fr in c2.edges)
    faces = c1.faces + tuple(Face(tuple((e + ne, s) for e, s in f.slots), f.eps) for f in c2.faces)
    return TwoComplex(nv + c2.n_vertices, edges, faces, c1.root), (nv, ne, len(c1.faces))


def quotient(c, vertex_pairs=(), edge_pairs=()):
    """Identify vertices and (equally directed) edges, then compact indices.

    Surviving cells keep their relative order, so cells that are not merged
    away keep their position among the others.  Returns the quotient and the
    maps old vertex -> new vertex, old edge -> new edge.
    """
    parent = list(range(c.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in vertex_pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    for a, b in edge_pairs:
        for x, y in zip(c.endpoints(a), c.endpoints(b)):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    eparent = list(range(len(c.edges)))

    def efind(x):
        while eparent[x] != x:
            x = eparent[x]
        return x

    for a, b in edge_pairs:
        ra, rb = efind(a), efind(b)
        if ra != rb:
            eparent[max(ra, rb)] = min(ra, rb)
    vroots = sorted({find(v) for v in range(c.n_vertices)})
    vmap_root = {r: i for i, r in enumerate(vroots)}
    vmap = [vmap_root[find(v)] for v in range(c.n_vertices)]
    eroots = sorted({efind(e) for e in range(len(c.edges))})
    emap_root = {r: i for i, r in enumerate(eroots)}
    emap = [emap_root[efind(e)] for e in range(len(c.edges))]
    edges = tuple((vmap[c.edges[r][0]], vmap[c.edges[r][1]], c.edges[r][2]) for r in eroots)
    faces = tuple(Face(tuple((emap[e], s) for e, s in f.slots), f.eps) for f in c.faces)
    out = TwoComplex(len(vroots), edges, faces, vmap[c.root] if c.n_vertices else 0)
    return out.validate(), vmap, emap


# -- enumeration of gluing sets ------------------------------------------------------

def chain_gluing_sets(k):
    """All regular gluing sets of ``k`` simplices glued in a chain.

    Simplex j is glued to simplex j+1 along one slot of each, with either
    direction; a slot is used at most once.  These are the gluing sets
    indexed by (Z3 x Z3)^(k-1) together with a direction bit per gluing.
    """
    if k == 1:
        yield GluingSet(())
        return
    slots = (1, 2, 3)

    def rec(j, prev_in, acc):
        if j == k - 1:
            yield GluingSet(tuple(acc))
            return
        for out_slot in slots:
            if out_slot == prev_in:
                continue
            for in_slot in slots:
                for direction in (1, -1):
                    yield from rec(j + 1, in_slot,
                                   acc + [Gluing(j, out_slot, j + 1, in_slot, direction)])

    yield from rec(0, None, [])


def tree_gluing_sets(k):
    """Regular gluing sets whose gluing graph is any tree on ``k`` simplices.

    Trees are generated from Pruefer-like parent vectors (simplex j > 0 is
    glued to some earlier simplex), covering every tree shape.
    """
    for parents in product(*[range(j) for j in range(1, k)]):
        edges = [(p, j + 1) for j, p in enumerate(parents)]

        def rec(i, used, acc):
            if i == len(edges):
                yield GluingSet(tuple(acc))
                return
            a, b = edges[i]
            for sa in (1, 2, 3):
                if (a, sa) in used:
                    continue
                for sb in (1, 2, 3):
                    if (b, sb) in used:
                        continue
                    for direction in (1, -1):
                        yield from rec(i + 1, used | {(a, sa), (b, sb)},
                                       acc + [Gluing(a, sa, b, sb, direction)])

        yield from rec(0, frozenset(), [])
