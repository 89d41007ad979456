"""Marked 2-ribbons as combinatorial presentations.

A ribbon ``B0 => B1`` is a 2-complex (the body) together with embeddings of
its source graph B0 and target graph B1 as subcomplexes of the boundary.
Vertices shared by both embeddings are *corners*; they are pinned in
every cylinder built from them.  Anchors are framed endpoints on the
graphs (incoming anchors carry framing +1, outgoing ones -1) and
markings are edge paths in the body from a source anchor to a target
anchor of the same kind, with sign +1 for incoming and -1 for outgoing.

Stacking glues the target of one ribbon to the source of the next along a
direction-preserving graph isomorphism; connected summation wedges two
ribbons at the ends of a pair of markings and fills the loop they form
with a collar disc.
"""

import hashlib
from dataclasses import dataclass, replace

from . import complex as cx
from .complex import Face, TwoComplex
from .errors import ContractionError, GeometryError, StackingError, SummabilityError
from .polyhedron import stratify


# -- boundary graphs ------------------------------------------------------------------

def _cyclic_key(seq):
    seq = tuple(seq)
    if not seq:
        return seq
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


@dataclass(frozen=True)
class BoundaryGraph:
    """Directed graph with incoming/outgoing anchors and an optional base point.

    ``rotation`` optionally gives, per vertex, the cyclic order of the
    half-edges ``(edge, end)`` at it (end 0 is the tail).
    """

    n_vertices: int
    edges: tuple = ()
    incoming: tuple = ()
    outgoing: tuple = ()
    base: object = None
    rotation: object = None

    def __post_init__(self):
        for s, d in self.edges:
            if not (0 <= s < self.n_vertices and 0 <= d < self.n_vertices):
                raise GeometryError("graph edge (%r, %r) out of range" % (s, d))
        anchors = list(self.incoming) + list(self.outgoing)
        if len(set(anchors)) != len(anchors) or any(not 0 <= a < self.n_vertices for a in anchors):
            raise GeometryError("anchors must be distinct vertices of the graph")
        if self.base is not None and not 0 <= self.base < self.n_vertices:
            raise GeometryError("base point out of range")

    @property
    def signature(self):
        return len(self.incoming), len(self.outgoing)

    def structure(self):
        return self.n_vertices, self.edges

    def degree(self, v):
        return sum((s == v) + (d == v) for s, d in self.edges)

    def reversed(self):
        """Reverse every edge; incoming and outgoing anchors trade places."""
        rot = None
        if self.rotation is not None:
            rot = tuple(tuple((e, 1 - end) for e, end in reversed(r)) for r in self.rotation)
        return BoundaryGraph(self.n_vertices, tuple((d, s) for s, d in self.edges),
                             self.outgoing, self.incoming, self.base, rot)

    def swapped_anchors(self):
        return replace(self, incoming=self.outgoing, outgoing=self.incoming)

    def to_dict(self):
        out = {"vertices": self.n_vertices, "edges": [list(e) for e in self.edges],
               "incoming": list(self.incoming), "outgoing": list(self.outgoing), "base": self.base}
        if self.rotation is not None:
            out["rotation"] = [[list(h) for h in r] for r in self.rotation]
        return out

    @classmethod
    def from_dict(cls, data):
        rot = data.get("rotation")
        if rot is not None:
            rot = tuple(tuple((int(e), int(end)) for e, end in r) for r in rot)
        return cls(int(data["vertices"]), tuple((int(s), int(d)) for s, d in data["edges"]),
                   tuple(data.get("incoming", ())), tuple(data.get("outgoing", ())),
                   data.get("base"), rot)


def empty_graph():
    return BoundaryGraph(0)


def point_graph():
    return BoundaryGraph(1, base=0)


def strands(k):
    """``k`` parallel strands ``i_j -> o_j`` (vertices 2j, 2j+1)."""
    return BoundaryGraph(2 * k, tuple((2 * j, 2 * j + 1) for j in range(k)),
                         tuple(2 * j for j in range(k)), tuple(2 * j + 1 for j in range(k)))


def c_minus():
    """o -> p1, o -> p2 with outgoing anchors p1, p2 and base o."""
    return BoundaryGraph(3, ((0, 1), (0, 2)), (), (1, 2), 0)


def c_plus():
    """p1 -> o', p2 -> o' with incoming anchors p1, p2 and base o'."""
    return BoundaryGraph(3, ((0, 2), (1, 2)), (0, 1), (), 2)


def circle_graph():
    """The circle o -> p1 -> o', o -> p2 -> o' obtained by summing c- and c+."""
    return BoundaryGraph(4, ((0, 1), (0, 2), (1, 3), (2, 3)), base=0)


def wedge_graph():
    """c- and c+ wedged at their base points (the source of the saddle)."""
    return BoundaryGraph(5, ((0, 1), (0, 2), (3, 0), (4, 0)), (3, 4), (1, 2), 0)


def b_times_graph():
    """i1 -> x, i2 -> x, x -> y, y -> o1, y -> o2 (vertices i1, i2, x, y, o1, o2)."""
    rot = (((0, 0),), ((1, 0),), ((0, 1), (1, 1), (2, 0)), ((2, 1), (3, 0), (4, 0)), ((3, 1),), ((4, 1),))
    return BoundaryGraph(6, ((0, 2), (1, 2), (2, 3), (3, 4), (3, 5)), (0, 1), (4, 5), None, rot)


def b_plus_graph():
    """x joins i1 and o2, y joins i2 and o1, with middle edge x -> y.

    Edges: i1 -> x, x -> o2, x -> y, i2 -> y, y -> o1.  The rotation is the
    mirror of the one on B_x, so the closed graph bounds the oppositely
    oriented torus.
    """
    rot = (((0, 0),), ((3, 0),), ((0, 1), (1, 0), (2, 0)), ((2, 1), (4, 0), (3, 1)), ((4, 1),), ((1, 1),))
    return BoundaryGraph(6, ((0, 2), (2, 5), (2, 3), (1, 3), (3, 4)), (0, 1), (4, 5), None, rot)


def contract_graph_edge(g, e):
    """Identify the endpoints of the non-loop edge ``e`` and delete it."""
    u, w = g.edges[e]
    if u == w:
        raise ContractionError("edge %d is a loop" % e, module="ribbon")
    if u in g.incoming + g.outgoing and w in g.incoming + g.outgoing:
        raise ContractionError("edge %d joins two anchors" % e, module="ribbon")
    keep, drop = min(u, w), max(u, w)

    def vm(v):
        v = keep if v == drop else v
        return v - (v > drop)

    def em(x):
        return x - (x > e)

    edges = tuple((vm(s), vm(d)) for i, (s, d) in enumerate(g.edges) if i != e)
    rot = None
    if g.rotation is not None:
        ru, rw = list(g.rotation[u]), list(g.rotation[w])
        k = rw.index((e, 1))
        tail = rw[k + 1:] + rw[:k]
        j = ru.index((e, 0))
        merged = ru[:j] + tail + ru[j + 1:]
        rot = []
        for v in range(g.n_vertices):
            if v == drop:
                continue
            r = merged if v == keep else g.rotation[v]
            rot.append(tuple((em(x), end) for x, end in r))
        rot = tuple(rot)
    anchors = lambda xs: tuple(vm(a) for a in xs)  # noqa: E731
    base = vm(g.base) if g.base is not None else None
    return BoundaryGraph(g.n_vertices - 1, edges, anchors(g.incoming), anchors(g.outgoing), base, rot)


def close_graph(g):
    """Join outgoing anchor k to incoming anchor k and smooth the joint away.

    Each anchor must be a leaf; the edge into ``outgoing[k]`` and the edge
    out of ``incoming[k]`` become one edge.  Surviving edges keep their
    order, followed by the new edges in anchor order.
    """
    if len(g.incoming) != len(g.outgoing):
        raise StackingError("cannot close a graph with %d incoming and %d outgoing anchors"
                            % (len(g.incoming), len(g.outgoing)))
    edges = {i: e for i, e in enumerate(g.edges)}
    rot = {v: list(r) for v, r in enumerate(g.rotation)} if g.rotation is not None else None
    nxt = len(g.edges)
    order = []
    for o, i in zip(g.outgoing, g.incoming):
        ins = [k for k, (s, d) in edges.items() if d == o]
        outs = [k for k, (s, d) in edges.items() if s == i]
        if len(ins) != 1 or len(outs) != 1 or sum(o in e for e in edges.values()) != 1 \
                or sum(i in e for e in edges.values()) != 1:
            raise StackingError("anchors %d and %d are not leaves" % (o, i))
        a, b = ins[0], outs[0]
        if a == b:
            raise StackingError("closing would produce a vertex-free circle")
        s, d = edges.pop(a)[0], edges.pop(b)[1]
        edges[nxt] = (s, d)
        if rot is not None:
            rot[s] = [(nxt, 0) if h == (a, 0) else h for h in rot[s]]
            rot[d] = [(nxt, 1) if h == (b, 1) else h for h in rot[d]]
        order = [x for x in order if x not in (a, b)] + [nxt]
        nxt += 1
    gone = set(g.incoming) | set(g.outgoing)
    verts = [v for v in range(g.n_vertices) if v not in gone]
    vidx = {v: k for k, v in enumerate(verts)}
    kept = [k for k in range(len(g.edges)) if k in edges] + order
    eidx = {k: j for j, k in enumerate(kept)}
    new_edges = tuple((vidx[edges[k][0]], vidx[edges[k][1]]) for k in kept)
    new_rot = None
    if rot is not None:
        new_rot = tuple(tuple((eidx[x], end) for x, end in rot[v]) for v in verts)
    base = vidx.get(g.base) if g.base is not None else None
    return BoundaryGraph(len(verts), new_edges, (), (), base, new_rot)


def trace_faces(g):
    """Boundary cycles of the ribbon graph given by the rotation system.

    A dart ``(e, end)`` leaves its vertex along edge ``e`` from that end; the
    next dart is the successor, in the rotation at the far vertex, of the
    half-edge we arrive on.
    """
    if g.rotation is None:
        raise GeometryError("graph has no rotation system")
    succ = {}
    for r in g.rotation:
        for k, h in enumerate(r):
            succ[h] = r[(k + 1) % len(r)]
    seen, faces = set(), []
    for e in range(len(g.edges)):
        for end in (0, 1):
            if (e, end) in seen:
                continue
            cyc, d = [], (e, end)
            while d not in seen:
                seen.add(d)
                cyc.append(d)
                d = succ[(d[0], 1 - d[1])]
            faces.append(cyc)
    return faces


def genus(g):
    """Genus of the closed surface obtained by filling the traced faces (connected graphs)."""
    chi = g.n_vertices - len(g.edges) + len(trace_faces(g))
    return (2 - chi) // 2


def cyclic_rotation(g, v):
    return _cyclic_key(g.rotation[v])


# -- body construction ------------------------------------------------------------------

class _Body:
    """Mutable scratch space for building a body complex."""

    def __init__(self, n_vertices=0, edges=(), faces=(), frame=1):
        self.frame = frame
        self.n = n_vertices
        self.edges = list(edges)
        self.faces = list(faces)

    def vertex(self):
        self.n += 1
        return self.n - 1

    def edge(self, s, d, frame=None):
        self.edges.append((s, d, self.frame if frame is None else frame))
        return len(self.edges) - 1

    def start(self, dart):
        e, s = dart
        a, b = self.edges[e][:2]
        return a if s > 0 else b

    def end(self, dart):
        return self.start((dart[0], -dart[1]))

    def fill(self, darts, eps=1):
        """Fill a closed edge walk with triangles.

        Walks of length >= 3 are fanned out from their first corner with new
        diagonals; shorter walks are coned off to a new apex.
        """
        k = len(darts)
        corners = [self.start(d) for d in darts]
        for i, d in enumerate(darts):
            if self.end(d) != corners[(i + 1) % k]:
                raise GeometryError("cycle is not a closed walk at step %d" % i)
        if k >= 3:
            diag = {i: self.edge(corners[0], corners[i]) for i in range(2, k - 1)}
            for i in range(1, k - 1):
                s1 = darts[0] if i == 1 else (diag[i], 1)
                e_last, s_last = darts[k - 1]
                s2 = (e_last, -s_last) if i + 1 == k - 1 else (diag[i + 1], 1)
                self.faces.append(Face((s1, s2, darts[i]), eps))
        else:
            apex = self.vertex()
            spokes = [self.edge(c, apex) for c in corners]
            for i, d in enumerate(darts):
                self.faces.append(Face((d, (spokes[i], 1), (spokes[(i + 1) % k], 1)), eps))

    def complex(self, root=0):
        return TwoComplex(self.n, tuple(self.edges), tuple(self.faces), root).validate()


def graph_filling(g):
    """The closed surface obtained by filling every traced face of ``g``."""
    body = _Body(g.n_vertices, [(s, d, 1) for s, d in g.edges])
    for cyc in trace_faces(g):
        body.fill([(e, 1 if end == 0 else -1) for e, end in cyc])
    return body.complex(g.base or 0)


# -- ribbons -------------------------------------------------------------------------------

@dataclass(frozen=True)
class Marking:
    path: tuple  # ((body edge, +-1), ...)
    sign: int
    start: tuple  # ("in" | "out", index among source anchors of that kind)
    end: tuple  # same, among target anchors


@dataclass(frozen=True)
class Ribbon:
    body: TwoComplex
    source: BoundaryGraph
    target: BoundaryGraph
    src_vmap: tuple
    src_emap: tuple
    tgt_vmap: tuple
    tgt_emap: tuple
    markings: tuple = ()
    twist: int = 0
    target_split: object = None  # (vertices, edges) of the first target factor

    @property
    def signature(self):
        return self.source.signature

    def polyhedron(self):
        return stratify(self.body)

    def corner_vertices(self):
        return frozenset((i, j) for i, a in enumerate(self.src_vmap)
                         for j, b in enumerate(self.tgt_vmap) if a == b)

    def corner_edges(self):
        return frozenset((i, j) for i, a in enumerate(self.src_emap)
                         for j, b in enumerate(self.tgt_emap) if a == b)

    def anchor_vertex(self, side, ref):
        kind, idx = ref
        g, vmap = (self.source, self.src_vmap) if side == "source" else (self.target, self.tgt_vmap)
        return vmap[(g.incoming if kind == "in" else g.outgoing)[idx]]

    def validate(self):
        c = self.body.validate()
        for g, vmap, emap in ((self.source, self.src_vmap, self.src_emap),
                              (self.target, self.tgt_vmap, self.tgt_emap)):
            if len(vmap) != g.n_vertices or len(emap) != len(g.edges):
                raise GeometryError("boundary map has the wrong size")
            if len(set(vmap)) != len(vmap) or len(set(emap)) != len(emap):
                raise GeometryError("boundary map is not injective")
            for (s, d), e in zip(g.edges, emap):
                if c.endpoints(e) != (vmap[s], vmap[d]):
                    raise GeometryError("graph edge does not match body edge %d" % e)
        for m in self.markings:
            if m.sign != (1 if m.start[0] == "in" else -1) or m.start[0] != m.end[0]:
                raise GeometryError("marking sign does not match its anchors")
            v = self.anchor_vertex("source", m.start)
            for e, s in m.path:
                a, b = c.endpoints(e)
                if s < 0:
                    a, b = b, a
                if a != v:
                    raise GeometryError("marking path is not contiguous")
                v = b
            if v != self.anchor_vertex("target", m.end):
                raise GeometryError("marking does not end at its anchor")
        return self

    def to_dict(self):
        return {
            "body": self.body.to_dict(),
            "strata": self.polyhedron().to_dict()["strata"],
            "source": self.source.to_dict(),
            "target": self.target.to_dict(),
            "maps": {"src_vertices": list(self.src_vmap), "src_edges": list(self.src_emap),
                     "tgt_vertices": list(self.tgt_vmap), "tgt_edges": list(self.tgt_emap)},
            "markings": [{"path": [list(p) for p in m.path], "sign": m.sign,
                          "start": list(m.start), "end": list(m.end)} for m in self.markings],
            "twist": self.twist,
            "target_split": list(self.target_split) if self.target_split is not None else None,
        }

    @classmethod
    def from_dict(cls, data):
        try:
            maps = data["maps"]
            marks = tuple(Marking(tuple((int(e), int(s)) for e, s in m["path"]), int(m["sign"]),
                                  (m["start"][0], int(m["start"][1])), (m["end"][0], int(m["end"][1])))
                          for m in data.get("markings", ()))
            split = data.get("target_split")
            r = cls(TwoComplex.from_dict(data["body"]), BoundaryGraph.from_dict(data["source"]),
                    BoundaryGraph.from_dict(data["target"]), tuple(maps["src_vertices"]),
                    tuple(maps["src_edges"]), tuple(maps["tgt_vertices"]), tuple(maps["tgt_edges"]),
                    marks, int(data.get("twist", 0)), tuple(split) if split is not None else None)
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise GeometryError("malformed ribbon record: %s" % exc, precondition="schema") from exc
        return r.validate()


def _anchor_markings(source, target, src_vmap, tgt_vmap, vertical):
    out = []
    for kind, sign, a_list, b_list in (("in", 1, source.incoming, target.incoming),
                                       ("out", -1, source.outgoing, target.outgoing)):
        for idx, (a, b) in enumerate(zip(a_list, b_list)):
            if (a, b) in vertical:
                path = ((vertical[(a, b)], 1),)
            elif src_vmap[a] == tgt_vmap[b]:
                path = ()
            else:
                continue
            out.append(Marking(path, sign, (kind, idx), (kind, idx)))
    return tuple(out)


def identity_cylinder(g, corners=()):
    """The product ribbon ``g x [0, 1]``.

    Every vertex not in ``corners`` gets a vertical edge ``v0 -> v1``; each
    edge ``u -> w`` spans a square split by the diagonal ``u0 -> w1``, which
    degenerates to a triangle when one endpoint is a corner and to a single
    shared edge when both are.  Anchors get vertical markings.
    """
    corners = set(corners)
    body = _Body(g.n_vertices)
    v0 = list(range(g.n_vertices))
    v1 = [v if v in corners else body.vertex() for v in range(g.n_vertices)]
    e0 = [body.edge(s, d) for s, d in g.edges]
    vert = {v: body.edge(v0[v], v1[v]) for v in range(g.n_vertices) if v not in corners}
    e1 = []
    for i, (s, d) in enumerate(g.edges):
        e1.append(e0[i] if s in corners and d in corners else body.edge(v1[s], v1[d]))
    E = body.edges
    for i, (u, w) in enumerate(g.edges):
        if u in corners and w in corners:
            continue
        if u in corners:
            body.faces.append(cx.face_from_vertices(E, (u, v0[w], v1[w]), (e0[i], e1[i], vert[w])))
        elif w in corners:
            body.faces.append(cx.face_from_vertices(E, (v0[u], v1[u], w), (vert[u], e0[i], e1[i]), -1))
        else:
            diag = body.edge(v0[u], v1[w])
            body.faces.append(cx.face_from_vertices(E, (v0[u], v0[w], v1[w]), (e0[i], diag, vert[w])))
            body.faces.append(cx.face_from_vertices(E, (v0[u], v1[u], v1[w]), (vert[u], diag, e1[i]), -1))
    vertical = {(v, v): e for v, e in vert.items()}
    marks = _anchor_markings(g, g, v0, v1, vertical)
    return Ribbon(body.complex(), g, g, tuple(v0), tuple(e0), tuple(v1), tuple(e1), marks)


def unit(g):
    """The degenerate identity: every cell of ``g`` is shared by source and target."""
    return identity_cylinder(g, corners=range(g.n_vertices))


def filled_ribbon(source, target, cycles, verticals=None, corners=None, frame=1):
    """Ribbon whose body fills closed walks in ``source + verticals + target``.

    ``corners`` maps target vertices to the source vertices they coincide
    with.  ``verticals`` lists (source vertex, target vertex) pairs joined by
    a vertical edge (default: matching anchors).  A cycle is a list of steps
    ``(kind, index, direction)`` with kind "s" (source edge), "t" (target
    edge) or "v" (vertical, indexed in ``verticals``).  New edges get
    framing ``frame``.
    """
    corners = dict(corners or {})
    if verticals is None:
        verticals = list(zip(source.incoming, target.incoming)) + list(zip(source.outgoing, target.outgoing))
    body = _Body(source.n_vertices, frame=frame)
    src_vmap = list(range(source.n_vertices))
    tgt_vmap = [corners[v] if v in corners else body.vertex() for v in range(target.n_vertices)]
    src_emap = [body.edge(s, d) for s, d in source.edges]
    tgt_emap = [body.edge(tgt_vmap[s], tgt_vmap[d]) for s, d in target.edges]
    vert = [body.edge(a, tgt_vmap[b]) for a, b in verticals]
    pick = {"s": src_emap, "t": tgt_emap, "v": vert}
    for cyc in cycles:
        body.fill([(pick[kind][i], d) for kind, i, d in cyc])
    marks = _anchor_markings(source, target, src_vmap, tgt_vmap, dict(zip(map(tuple, verticals), vert)))
    return Ribbon(body.complex(), source, target, tuple(src_vmap), tuple(src_emap),
                  tuple(tgt_vmap), tuple(tgt_emap), marks).validate()


def cone_to_point(g):
    """``g => pt``: the cone on ``g`` with its apex as the target point.

    Spokes at trivalent vertices of ``g`` are triple edges.  Anchors carry no
    markings since the point has none.
    """
    body = _Body(g.n_vertices)
    e0 = [body.edge(s, d) for s, d in g.edges]
    apex = body.vertex()
    spokes = [body.edge(v, apex) for v in range(g.n_vertices)]
    for i, (s, d) in enumerate(g.edges):
        body.faces.append(Face(((e0[i], 1), (spokes[s], 1), (spokes[d], 1))))
    return Ribbon(body.complex(), g, point_graph(), tuple(range(g.n_vertices)), tuple(e0),
                  (apex,), ()).validate()


# -- generators ------------------------------------------------------------------------

def b_times():
    return identity_cylinder(b_times_graph())


def b_plus():
    return identity_cylinder(b_plus_graph())


def cup():
    """Identity cylinder on c-: signature (0, 2)."""
    return identity_cylinder(c_minus())


def cap():
    """Identity cylinder on c+: signature (2, 0)."""
    return identity_cylinder(c_plus())


_CIRCLE = [("s", 0, 1), ("s", 2, 1), ("s", 3, -1), ("s", 1, -1)]


def house():
    """``C => pt``: the circle capped off by a disc fanned out from o."""
    return filled_ribbon(circle_graph(), point_graph(), [_CIRCLE], corners={0: 0})


def birth():
    """``pt => C``: the disc bounding the circle, reversed in time."""
    cyc = [("t", i, d) for _, i, d in _CIRCLE]
    return filled_ribbon(point_graph(), circle_graph(), [cyc], corners={0: 0})


def saddle():
    """``c- v c+ => 1_2``: two pentagons pinched at the wedge point o.

    Source vertices o, p1, p2, q1, q2 (edges o->p1, o->p2, q1->o, q2->o);
    target strands i1 -> o1, i2 -> o2.  Verticals q_j -> i_j and p_j -> o_j.
    """
    src, tgt = wedge_graph(), strands(2)
    verticals = [(3, 0), (4, 2), (1, 1), (2, 3)]
    cycles = []
    for j in range(2):
        cycles.append([("s", j, 1), ("v", 2 + j, 1), ("t", j, -1), ("v", j, -1), ("s", 2 + j, 1)])
    return filled_ribbon(src, tgt, cycles, verticals)


def cusp():
    """``1_1 => zigzag``: one strand i -> o grows the fold i -> a <- b -> o."""
    src = strands(1)
    tgt = BoundaryGraph(4, ((0, 1), (2, 1), (2, 3)), (0,), (3,))
    cyc = [("s", 0, 1), ("v", 1, 1), ("t", 2, -1), ("t", 1, 1), ("t", 0, -1), ("v", 0, -1)]
    return filled_ribbon(src, tgt, [cyc])


def fold_crossing():
    """``1_2 => B_x``: two strands fold together into the crossing graph."""
    src, tgt = strands(2), b_times_graph()
    verticals = [(0, 0), (2, 1), (1, 4), (3, 5)]
    cycles = [
        [("s", 0, 1), ("v", 2, 1), ("t", 3, -1), ("t", 2, -1), ("t", 0, -1), ("v", 0, -1)],
        [("s", 1, 1), ("v", 3, 1), ("t", 4, -1), ("t", 2, -1), ("t", 1, -1), ("v", 1, -1)],
    ]
    return filled_ribbon(src, tgt, cycles, verticals)


def crossing_change():
    """``B+ => B_x``: each strand of B+ is swept onto the matching strand of B_x.

    Strand 1 runs i1 -> x -> y -> o1 on both sides; strand 2 runs
    i2 -> y <- x -> o2 below and i2 -> x -> y -> o2 above, so both middle
    edges are shared by the two hexagons.
    """
    cycles = [
        [("s", 0, 1), ("s", 2, 1), ("s", 4, 1), ("v", 2, 1), ("t", 3, -1), ("t", 2, -1), ("t", 0, -1),
         ("v", 0, -1)],
        [("s", 3, 1), ("s", 2, -1), ("s", 1, 1), ("v", 3, 1), ("t", 4, -1), ("t", 2, -1), ("t", 1, -1),
         ("v", 1, -1)],
    ]
    return filled_ribbon(b_plus_graph(), b_times_graph(), cycles)


def reidemeister(kind):
    """Ribbons for the Reidemeister moves, from parallel strands to the crossed picture.

    i:   1_1 => i -> x, loop at x, x -> o
    ii:  1_2 => two crossings joined by a bigon
    iii: 1_3 => three pairwise crossings around a triangle
    """
    if kind == "i":
        tgt = BoundaryGraph(3, ((0, 1), (1, 1), (1, 2)), (0,), (2,))
        cycles = [[("s", 0, 1), ("v", 1, 1), ("t", 2, -1), ("t", 0, -1), ("v", 0, -1)],
                  [("t", 1, 1)]]
        return filled_ribbon(strands(1), tgt, cycles)
    if kind == "ii":
        # i1=0 i2=1 x1=2 y1=3 x2=4 y2=5 o1=6 o2=7
        tgt = BoundaryGraph(8, ((0, 2), (1, 2), (2, 3), (3, 4), (3, 4), (4, 5), (5, 6), (5, 7)),
                            (0, 1), (6, 7))
        verticals = [(0, 0), (2, 1), (1, 6), (3, 7)]
        cycles = [
            [("s", 0, 1), ("v", 2, 1)] + [("t", e, -1) for e in (6, 5, 3, 2, 0)] + [("v", 0, -1)],
            [("s", 1, 1), ("v", 3, 1)] + [("t", e, -1) for e in (7, 5, 4, 2, 1)] + [("v", 1, -1)],
            [("t", 3, 1), ("t", 4, -1)],
        ]
        return filled_ribbon(strands(2), tgt, cycles, verticals)
    if kind == "iii":
        # i1 i2 i3 = 0 1 2, X12 X13 X23 = 3 4 5, o1 o2 o3 = 6 7 8
        tgt = BoundaryGraph(9, ((0, 3), (3, 4), (4, 6), (1, 3), (3, 5), (5, 7), (2, 4), (4, 5), (5, 8)),
                            (0, 1, 2), (6, 7, 8))
        verticals = [(0, 0), (2, 1), (4, 2), (1, 6), (3, 7), (5, 8)]
        cycles = [
            [("s", j, 1), ("v", 3 + j, 1)] + [("t", 3 * j + k, -1) for k in (2, 1, 0)] + [("v", j, -1)]
            for j in range(3)
        ] + [[("t", 1, 1), ("t", 7, 1), ("t", 4, -1)]]
        return filled_ribbon(strands(3), tgt, cycles, verticals)
    raise ValueError("unknown Reidemeister move %r" % (kind,))


def reidemeister_i():
    return reidemeister("i")


def reidemeister_ii():
    return reidemeister("ii")


def reidemeister_iii():
    return reidemeister("iii")


def triangle_ribbon(reverse=False):
    """One triangle v0 -> v1 -> v2 with the path (e1, e3) below and e2 above.

    The corners v0, v2 are shared.  ``reverse`` swaps the roles, so that
    stacking the two gives the square.
    """
    path = BoundaryGraph(3, ((0, 1), (1, 2)), base=0)
    chord = BoundaryGraph(2, ((0, 1),), base=0)
    if not reverse:
        return filled_ribbon(path, chord, [[("s", 0, 1), ("s", 1, 1), ("t", 0, -1)]], [], {0: 0, 1: 2})
    return filled_ribbon(chord, path, [[("t", 0, 1), ("t", 1, 1), ("s", 0, -1)]], [], {0: 0, 2: 1})


# -- stacking -------------------------------------------------------------------------------

def _match_edges(g1, g2, f):
    used, fe = set(), []
    for s, d in g1.edges:
        for j, (a, b) in enumerate(g2.edges):
            if j not in used and (a, b) == (f[s], f[d]):
                used.add(j)
                fe.append(j)
                break
        else:
            raise StackingError("no edge %d -> %d in the next source graph" % (f[s], f[d]), module="ribbon")
    if len(used) != len(g2.edges):
        raise StackingError("graphs have different edge sets", module="ribbon")
    return fe


def stack(r1, r2, f=None):
    """Glue the target of ``r1`` to the source of ``r2`` along the vertex map ``f``."""
    b1, b0 = r1.target, r2.source
    if b1.n_vertices != b0.n_vertices:
        raise StackingError("graphs have %d and %d vertices" % (b1.n_vertices, b0.n_vertices), module="ribbon")
    f = list(range(b1.n_vertices)) if f is None else list(f)
    if sorted(f) != list(range(b0.n_vertices)):
        raise StackingError("vertex map is not a bijection", module="ribbon")
    if b1.signature != b0.signature:
        raise StackingError("anchor counts differ: %r vs %r" % (b1.signature, b0.signature), module="ribbon")
    if tuple(f[a] for a in b1.incoming) != b0.incoming or tuple(f[a] for a in b1.outgoing) != b0.outgoing:
        raise StackingError("vertex map does not match anchors", module="ribbon")
    if b1.base is not None and b0.base is not None and f[b1.base] != b0.base:
        raise StackingError("vertex map does not match base points", module="ribbon")
    fe = _match_edges(b1, b0, f)
    u, (nv, ne, _) = cx.disjoint_union(r1.body, r2.body)
    vpairs = [(r1.tgt_vmap[v], nv + r2.src_vmap[f[v]]) for v in range(b1.n_vertices)]
    epairs = [(r1.tgt_emap[i], ne + r2.src_emap[fe[i]]) for i in range(len(b1.edges))]
    body, vmap, emap = cx.quotient(u, vpairs, epairs)
    starts = {m.start: m for m in r2.markings}
    marks = []
    for m in r1.markings:
        m2 = starts.get(m.end)
        if m2 is None:
            continue
        path = tuple((emap[e], s) for e, s in m.path) + tuple((emap[ne + e], s) for e, s in m2.path)
        marks.append(Marking(path, m.sign, m.start, m2.end))
    return Ribbon(body, r1.source, r2.target,
                  tuple(vmap[x] for x in r1.src_vmap), tuple(emap[x] for x in r1.src_emap),
                  tuple(vmap[nv + x] for x in r2.tgt_vmap), tuple(emap[ne + x] for x in r2.tgt_emap),
                  tuple(marks), r1.twist + r2.twist, r2.target_split).validate()


# -- connected summation ------------------------------------------------------------------

def _wedge(g1, g2, joins, drop1, drop2):
    """Disjoint union of two graphs with vertex pairs ``joins`` identified.

    ``drop1``/``drop2`` are anchor references (kind, index) removed from the
    anchor lists.  Returns the graph, the two vertex maps and the anchor
    index maps (side, kind, old index) -> new index.
    """
    n1 = g1.n_vertices
    parent = list(range(n1 + g2.n_vertices))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in joins:
        ra, rb = find(a), find(n1 + b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(x) for x in range(len(parent))})
    idx = {r: k for k, r in enumerate(roots)}
    m1 = [idx[find(v)] for v in range(n1)]
    m2 = [idx[find(n1 + v)] for v in range(g2.n_vertices)]
    edges = tuple((m1[s], m1[d]) for s, d in g1.edges) + tuple((m2[s], m2[d]) for s, d in g2.edges)
    amap = {}
    lists = {}
    for kind in ("in", "out"):
        out = []
        for side, g, m, drop in ((0, g1, m1, drop1), (1, g2, m2, drop2)):
            for k, a in enumerate(g.incoming if kind == "in" else g.outgoing):
                if (kind, k) in drop:
                    continue
                amap[(side, kind, k)] = len(out)
                out.append(m[a])
        lists[kind] = tuple(out)
    base = m1[g1.base] if g1.base is not None else (m2[g2.base] if g2.base is not None else None)
    return BoundaryGraph(len(roots), edges, lists["in"], lists["out"], base), m1, m2, amap


def summation_collar(path_a, path_b):
    """The collar disc between two marking paths with common endpoints.

    ``path_a`` and ``path_b`` are lengths of the two markings.  Returns the
    collar complex (vertices: start, a-interior, end, b-interior, apex) and
    the edge indices of the two markings in it.
    """
    body = _Body(0)
    start = body.vertex()
    va = [start] + [body.vertex() for _ in range(path_a - 1)]
    end = body.vertex()
    va.append(end)
    vb = [start] + [body.vertex() for _ in range(path_b - 1)] + [end]
    ea = [body.edge(va[i], va[i + 1]) for i in range(path_a)]
    eb = [body.edge(vb[i], vb[i + 1]) for i in range(path_b)]
    darts = [(e, 1) for e in ea] + [(e, -1) for e in reversed(eb)]
    _cone(body, darts)
    return body.complex(), ea, eb


def _cone(body, darts):
    corners = [body.start(d) for d in darts]
    apex = body.vertex()
    spokes = [body.edge(c, apex) for c in corners]
    k = len(darts)
    for i, d in enumerate(darts):
        body.faces.append(Face((d, (spokes[i], 1), (spokes[(i + 1) % k], 1))))


def connected_sum(r1, r2, pairs=((0, 0),)):
    """Sum ``r1`` and ``r2`` along marking pairs (j, k): j an outgoing marking of r1, k incoming of r2.

    The start and end anchors of each pair are identified, giving wedge sums
    of the boundary graphs, and the loop formed by the two markings is
    filled with a collar disc coned off from a new apex.
    """
    pairs = tuple(pairs)
    if not pairs:
        raise SummabilityError("connected sum needs at least one marking pair", module="ribbon")
    for j, k in pairs:
        if not (0 <= j < len(r1.markings) and 0 <= k < len(r2.markings)):
            raise SummabilityError("marking pair (%d, %d) out of range" % (j, k), module="ribbon")
        if r1.markings[j].sign != -1 or r2.markings[k].sign != 1:
            raise SummabilityError("marking %d must be outgoing and marking %d incoming" % (j, k),
                                   precondition="summable markings", module="ribbon")
    if len({j for j, _ in pairs}) != len(pairs) or len({k for _, k in pairs}) != len(pairs):
        raise SummabilityError("markings may be used once", module="ribbon")
    u, (nv, ne, _) = cx.disjoint_union(r1.body, r2.body)
    vpairs = []
    for j, k in pairs:
        m1, m2 = r1.markings[j], r2.markings[k]
        vpairs.append((r1.anchor_vertex("source", m1.start), nv + r2.anchor_vertex("source", m2.start)))
        vpairs.append((r1.anchor_vertex("target", m1.end), nv + r2.anchor_vertex("target", m2.end)))
    q, vmap, emap = cx.quotient(u, vpairs)
    body = _Body(q.n_vertices, q.edges, q.faces)
    for j, k in pairs:
        m1, m2 = r1.markings[j], r2.markings[k]
        darts = [(emap[e], s) for e, s in m1.path] + [(emap[ne + e], -s) for e, s in reversed(m2.path)]
        if darts:
            _cone(body, darts)
    src_joins = [(r1.source.outgoing[r1.markings[j].start[1]], r2.source.incoming[r2.markings[k].start[1]])
                 for j, k in pairs]
    tgt_joins = [(r1.target.outgoing[r1.markings[j].end[1]], r2.target.incoming[r2.markings[k].end[1]])
                 for j, k in pairs]
    sdrop1 = {r1.markings[j].start for j, _ in pairs}
    sdrop2 = {r2.markings[k].start for _, k in pairs}
    tdrop1 = {r1.markings[j].end for j, _ in pairs}
    tdrop2 = {r2.markings[k].end for _, k in pairs}
    src, sm1, sm2, samap = _wedge(r1.source, r2.source, src_joins, sdrop1, sdrop2)
    tgt, tm1, tm2, tamap = _wedge(r1.target, r2.target, tgt_joins, tdrop1, tdrop2)
    src_vmap = [None] * src.n_vertices
    for v, w in enumerate(sm1):
        src_vmap[w] = vmap[r1.src_vmap[v]]
    for v, w in enumerate(sm2):
        src_vmap[w] = vmap[nv + r2.src_vmap[v]]
    tgt_vmap = [None] * tgt.n_vertices
    for v, w in enumerate(tm1):
        tgt_vmap[w] = vmap[r1.tgt_vmap[v]]
    for v, w in enumerate(tm2):
        tgt_vmap[w] = vmap[nv + r2.tgt_vmap[v]]
    src_emap = [emap[e] for e in r1.src_emap] + [emap[ne + e] for e in r2.src_emap]
    tgt_emap = [emap[e] for e in r1.tgt_emap] + [emap[ne + e] for e in r2.tgt_emap]
    used1, used2 = {j for j, _ in pairs}, {k for _, k in pairs}
    marks = []
    for side, r, used, off in ((0, r1, used1, 0), (1, r2, used2, ne)):
        for i, m in enumerate(r.markings):
            if i in used:
                continue
            marks.append(Marking(tuple((emap[off + e], s) for e, s in m.path), m.sign,
                                 (m.start[0], samap[(side, m.start[0], m.start[1])]),
                                 (m.end[0], tamap[(side, m.end[0], m.end[1])])))
    return Ribbon(body.complex(q.root), src, tgt, tuple(src_vmap), tuple(src_emap), tuple(tgt_vmap),
                  tuple(tgt_emap), tuple(marks), r1.twist + r2.twist).validate()


# -- disjoint pairs, twists and daggers ---------------------------------------------------------

def _graph_union(g1, g2):
    n1, e1 = g1.n_vertices, len(g1.edges)
    rot = None
    if g1.rotation is not None and g2.rotation is not None:
        rot = g1.rotation + tuple(tuple((e + e1, end) for e, end in r) for r in g2.rotation)
    base = g1.base if g1.base is not None else (g2.base + n1 if g2.base is not None else None)
    return BoundaryGraph(n1 + g2.n_vertices, g1.edges + tuple((s + n1, d + n1) for s, d in g2.edges),
                         g1.incoming + tuple(a + n1 for a in g2.incoming),
                         g1.outgoing + tuple(a + n1 for a in g2.outgoing), base, rot)


def disjoint(r1, r2):
    """The side-by-side pair ``r1 + r2``; remembers where its target splits."""
    u, (nv, ne, _) = cx.disjoint_union(r1.body, r2.body)
    n_in = (len(r1.source.incoming), len(r1.source.outgoing))
    t_in = (len(r1.target.incoming), len(r1.target.outgoing))

    def shift(ref, counts):
        kind, k = ref
        return kind, k + (counts[0] if kind == "in" else counts[1])

    marks = list(r1.markings) + [Marking(tuple((e + ne, s) for e, s in m.path), m.sign,
                                         shift(m.start, n_in), shift(m.end, t_in)) for m in r2.markings]
    return Ribbon(u, _graph_union(r1.source, r2.source), _graph_union(r1.target, r2.target),
                  r1.src_vmap + tuple(v + nv for v in r2.src_vmap),
                  r1.src_emap + tuple(e + ne for e in r2.src_emap),
                  r1.tgt_vmap + tuple(v + nv for v in r2.tgt_vmap),
                  r1.tgt_emap + tuple(e + ne for e in r2.tgt_emap),
                  tuple(marks), r1.twist + r2.twist,
                  (r1.target.n_vertices, len(r1.target.edges))).validate()


def pi_twist(r):
    """Rotate the half-slab by pi: the two target factors trade places and the twist grows by one."""
    if r.target_split is None:
        raise GeometryError("pi_twist needs a disjoint pair", precondition="disjoint pair", module="ribbon")
    g = r.target
    nv, ne = r.target_split
    mv, me = g.n_vertices - nv, len(g.edges) - ne
    vperm = [v + mv if v < nv else v - nv for v in range(g.n_vertices)]  # old -> new
    eperm = [e + me if e < ne else e - ne for e in range(len(g.edges))]
    edges = [None] * len(g.edges)
    for e, (s, d) in enumerate(g.edges):
        edges[eperm[e]] = (vperm[s], vperm[d])
    rot = None
    if g.rotation is not None:
        rot = [None] * g.n_vertices
        for v, rr in enumerate(g.rotation):
            rot[vperm[v]] = tuple((eperm[e], end) for e, end in rr)
        rot = tuple(rot)

    def reorder(anchors):
        first = [a for a in anchors if a < nv]
        second = [a for a in anchors if a >= nv]
        order = second + first
        return tuple(vperm[a] for a in order), {anchors.index(a): k for k, a in enumerate(order)}

    inc, imap = reorder(list(g.incoming))
    out, omap = reorder(list(g.outgoing))
    base = vperm[g.base] if g.base is not None else None
    tgt = BoundaryGraph(g.n_vertices, tuple(edges), inc, out, base, rot)
    tgt_vmap = [None] * g.n_vertices
    for v, x in enumerate(r.tgt_vmap):
        tgt_vmap[vperm[v]] = x
    tgt_emap = [None] * len(g.edges)
    for e, x in enumerate(r.tgt_emap):
        tgt_emap[eperm[e]] = x
    marks = tuple(replace(m, end=(m.end[0], (imap if m.end[0] == "in" else omap)[m.end[1]]))
                  for m in r.markings)
    return replace(r, target=tgt, tgt_vmap=tuple(tgt_vmap), tgt_emap=tuple(tgt_emap), markings=marks,
                   twist=r.twist + 1, target_split=(mv, me)).validate()


def _swap_kind(ref):
    return ("out" if ref[0] == "in" else "in", ref[1])


def dagger1(r):
    """Orientation reversal: source and target trade places, edges and anchors are reversed."""
    marks = tuple(Marking(tuple(reversed(m.path)), -m.sign, _swap_kind(m.end), _swap_kind(m.start))
                  for m in r.markings)
    return Ribbon(cx.dagger1(r.body), r.target.reversed(), r.source.reversed(), r.tgt_vmap, r.tgt_emap,
                  r.src_vmap, r.src_emap, marks, -r.twist, None)


def dagger2(r):
    """Framing reversal: edge framings flip and incoming/outgoing anchors trade places."""
    marks = tuple(Marking(m.path, -m.sign, _swap_kind(m.start), _swap_kind(m.end)) for m in r.markings)
    return replace(r, body=cx.dagger2(r.body), source=r.source.swapped_anchors(),
                   target=r.target.swapped_anchors(), markings=marks)


# -- contraction --------------------------------------------------------------------------------

def contraction_cylinder(g, e, frame=1):
    """``g => g/e``: squares over the other edges, a triangle collapsing ``e``."""
    h = contract_graph_edge(g, e)
    u, w = g.edges[e]
    keep, drop = min(u, w), max(u, w)

    def vm(v):
        v = keep if v == drop else v
        return v - (v > drop)

    verticals = [(v, vm(v)) for v in range(g.n_vertices)]
    cycles = []
    for i, (s, d) in enumerate(g.edges):
        if i == e:
            cycles.append([("s", i, 1), ("v", d, 1), ("v", s, -1)])
        else:
            j = i - (i > e)
            cycles.append([("s", i, 1), ("v", d, 1), ("t", j, -1), ("v", s, -1)])
    return filled_ribbon(g, h, cycles, verticals, frame=frame)


def contract_edge(x, e):
    """Contract a non-loop edge of a BoundaryGraph, or of a ribbon's target graph."""
    if isinstance(x, BoundaryGraph):
        return contract_graph_edge(x, e)
    frame = x.body.edges[x.tgt_emap[e]][2]
    return stack(x, contraction_cylinder(x.target, e, frame))


def torus_standard_graph():
    """Closed B_x with its middle edge contracted: one vertex, two loops."""
    closed = close_graph(b_times_graph())
    return contract_graph_edge(closed, 0)


# -- comparison -----------------------------------------------------------------------------------

def canonical_form(r):
    """A relabeling-invariant signature of a ribbon presentation (colour refinement)."""
    c = r.body
    src_v, tgt_v = set(r.src_vmap), set(r.tgt_vmap)
    colour = {v: ((v in src_v), (v in tgt_v)) for v in range(c.n_vertices)}
    inc = c.edge_faces()
    src_e, tgt_e = set(r.src_emap), set(r.tgt_emap)
    for _ in range(c.n_vertices + 1):
        ecol = {}
        for e, (s, d, fr) in enumerate(c.edges):
            ecol[e] = (colour[s], colour[d], fr, e in src_e, e in tgt_e, len(inc.get(e, ())))
        new = {}
        for v in range(c.n_vertices):
            around = sorted(repr((ecol[e], c.endpoints(e).index(v) if c.endpoints(e)[0] != c.endpoints(e)[1]
                                  else 2)) for e in c.vertex_edges(v))
            new[v] = hashlib.sha1(repr((colour[v], tuple(around))).encode()).hexdigest()
        if len(set(new.values())) == len(set(colour.values())):
            colour = new
            break
        colour = new
    edges = sorted(repr((colour[s], colour[d], fr)) for s, d, fr in c.edges)
    faces = sorted(repr(sorted(colour[v] for v in c.local_vertices(f))) for f in range(len(c.faces)))
    return (c.n_vertices, len(c.edges), len(c.faces), tuple(edges), tuple(faces),
            r.source.signature, r.target.signature, len(r.markings), r.twist)


def empty_ribbon():
    """The empty ribbon from the empty graph to itself."""
    return Ribbon(TwoComplex(0, (), ()), empty_graph(), empty_graph(), (), (), (), ())
