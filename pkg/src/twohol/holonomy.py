"""Fake-flat decorations and surface holonomy.

A decoration assigns an element of G to every edge and an element of H to
every face.  With local edge holonomies ``h(e)^sign`` the face word is
``w(f) = h1 h3 h2^-1`` (a loop at the face root) and the decoration is fake
flat when ``t(b_f) = w(f)`` for every face.
"""

from dataclasses import dataclass
from itertools import product

from .complex import Face, make_unbroken, source_path
from .errors import DomainError, GeometryError, IncompleteDecoration, PathError
from .group_core import TwoGroupElement


@dataclass(frozen=True)
class Decoration:
    edges: tuple
    faces: tuple

    def to_dict(self):
        return {"edges": list(self.edges), "faces": list(self.faces)}

    @classmethod
    def from_dict(cls, data):
        return cls(tuple(data["edges"]), tuple(data["faces"]))


def _local(cm, h, sign):
    return h if sign > 0 else cm.G.inv(h)


def face_word(cm, c, f, edge_hol):
    """Holonomy of the boundary loop of face ``f`` read from its root."""
    (e1, s1), (e2, s2), (e3, s3) = c.faces[f].slots
    G = cm.G
    h1, h2, h3 = _local(cm, edge_hol[e1], s1), _local(cm, edge_hol[e2], s2), _local(cm, edge_hol[e3], s3)
    return G.mul(G.mul(h1, h3), G.inv(h2))


def check_decoration(cm, c, d):
    if len(d.edges) != len(c.edges) or len(d.faces) != len(c.faces):
        raise IncompleteDecoration("decoration has %d edge and %d face labels, complex has %d and %d"
                                   % (len(d.edges), len(d.faces), len(c.edges), len(c.faces)))
    if any(x is None or not 0 <= x < cm.G.order for x in d.edges):
        raise IncompleteDecoration("edge label missing or outside G")
    if any(x is None or not 0 <= x < cm.H.order for x in d.faces):
        raise IncompleteDecoration("face label missing or outside H")


def is_fake_flat(cm, c, d):
    check_decoration(cm, c, d)
    return all(cm.t[d.faces[f]] == face_word(cm, c, f, d.edges) for f in range(len(c.faces)))


def _check_fixed(c, fixed, allow_interior):
    fixed = dict(fixed or {})
    if not allow_interior:
        boundary = set(c.boundary_edges())
        bad = [e for e in fixed if e not in boundary]
        if bad:
            raise DomainError("only boundary edges may be fixed, got interior edges %s" % sorted(bad))
    for e in fixed:
        if not 0 <= e < len(c.edges):
            raise DomainError("edge %r does not exist" % (e,))
    return fixed


def enumerate_fake_flat(cm, c, fixed=None, allow_interior=False):
    """Stream every fake-flat decoration extending ``fixed`` (edge -> G element).

    Decorations come out in lexicographic order of (edge labels, face labels).
    Faces are processed as soon as their edges are all assigned, which
    prunes dead branches early.
    """
    fixed = _check_fixed(c, fixed, allow_interior)
    free = [e for e in range(len(c.edges)) if e not in fixed]
    # faces become checkable once their last free edge is assigned
    last = {}
    pos = {e: i for i, e in enumerate(free)}
    for f, face in enumerate(c.faces):
        idx = [pos[e] for e, _ in face.slots if e in pos]
        last.setdefault(max(idx) if idx else -1, []).append(f)
    hol = [fixed.get(e) for e in range(len(c.edges))]
    for f in last.get(-1, []):
        if not cm.preimages(face_word(cm, c, f, hol)):
            return
    nG = cm.G.order

    def rec(i):
        if i == len(free):
            fibers = [cm.preimages(face_word(cm, c, f, hol)) for f in range(len(c.faces))]
            for bs in product(*fibers):
                yield Decoration(tuple(hol), tuple(bs))
            return
        e = free[i]
        for g in range(nG):
            hol[e] = g
            if all(cm.preimages(face_word(cm, c, f, hol)) for f in last.get(i, ())):
                yield from rec(i + 1)
        hol[e] = None

    yield from rec(0)


def count_fake_flat(cm, c, fixed=None, allow_interior=False):
    """Exact number of fake-flat decorations (variable elimination)."""
    from .statesum import count_configurations

    fixed = _check_fixed(c, fixed, allow_interior)
    return count_configurations(cm, c, fixed)


# -- paths and whiskering ------------------------------------------------------------

def path_holonomy(cm, c, path, edge_hol, start=None):
    """Holonomy of an edge path given as ``[(edge, +-1), ...]``.

    The path must be contiguous; ``start`` optionally pins its first vertex.
    """
    g = 0
    v = start
    for item in path:
        try:
            e, s = item
        except (TypeError, ValueError):
            raise PathError("path entries must be (edge, direction) pairs")
        if not 0 <= e < len(c.edges) or s not in (1, -1):
            raise PathError("bad path step %r" % (item,))
        a, b = c.endpoints(e)
        if s < 0:
            a, b = b, a
        if v is not None and a != v:
            raise PathError("path is not contiguous at edge %d" % e)
        v = b
        g = cm.G.mul(g, _local(cm, edge_hol[e], s))
    return g


def path_end(c, path, start):
    v = start
    for e, s in path:
        a, b = c.endpoints(e)
        v = b if s > 0 else a
    return v


def whisker_decoration(cm, c, path, d, block=None):
    """Whisker the face block ``block`` (default: all faces) by the holonomy of ``path``.

    Face labels become ``h_p |> b`` and edges used only by the block are
    conjugated by ``h_p``.  Fake flatness is preserved.  Edges shared with
    faces outside the block would break the neighbours, so they are refused.
    """
    check_decoration(cm, c, d)
    block = set(range(len(c.faces))) if block is None else set(block)
    a = path_holonomy(cm, c, path, d.edges, start=c.root if path else None)
    inc = c.edge_faces()
    block_edges = {e for f in block for e, _ in c.faces[f].slots}
    for e in block_edges:
        if any(g not in block for g, _ in inc[e]):
            raise GeometryError("edge %d is shared with a face outside the whiskered block" % e)
    G = cm.G
    edges = tuple(G.conj(a, h) if e in block_edges else h for e, h in enumerate(d.edges))
    faces = tuple(cm.act[a][b] if f in block else b for f, b in enumerate(d.faces))
    return Decoration(edges, faces)


def reroot_decoration(cm, c, d, rotations):
    """Re-express face labels after rotating faces by ``rotations`` steps.

    One rotation moves the root from v0 to v1, so the face label is
    whiskered by the inverse holonomy of the old source edge.
    """
    faces = list(d.faces)
    for f, r in enumerate(rotations):
        face = c.faces[f]
        for _ in range(r % 3):
            e1, s1 = face.slots[0]
            faces[f] = cm.act[cm.G.inv(_local(cm, d.edges[e1], s1))][faces[f]]
            face = rotate_face_once(face)
    return Decoration(d.edges, tuple(faces))


def rotate_face_once(face):
    (e1, s1), (e2, s2), (e3, s3) = face.slots
    return Face(((e3, s3), (e1, -s1), (e2, -s2)), face.eps)


def unbroken_form(cm, c, d):
    """Return (complex, decoration, source path) with an unbroken slot assignment."""
    p = source_path(c)
    if p is not None and p.length <= max(len(c.faces) - 1, 0):
        return c, d, p
    rotations, c2, p = make_unbroken(c)
    return c2, reroot_decoration(cm, c, d, rotations), p


def _ordered_product(cm, c, d, p):
    """Whisker-ordered product of face labels along the source path.

    Every face label is whiskered back to the first path vertex along the
    path; faces are ordered by the position of their source edge on the
    path, then by index.
    """
    pos_v = {v: i for i, v in enumerate(p.vertices)}
    pos_e = {e: i for i, (e, _) in enumerate(p.edges)}
    prefix = [0]
    for e, s in p.edges:
        prefix.append(cm.G.mul(prefix[-1], _local(cm, d.edges[e], s)))
    order = sorted(range(len(c.faces)), key=lambda f: (pos_e[c.source_edge(f)], pos_v[c.face_root(f)], f))
    total = 0
    for f in order:
        total = cm.H.mul(total, cm.act[prefix[pos_v[c.face_root(f)]]][d.faces[f]])
    return total, prefix[-1], order


def total_surface_holonomy(cm, c, d):
    """The 2-group arrow obtained by sweeping the surface along its source path.

    Each face contributes ``(h_e1^-1 |> b_f, h_e1)``, the face transported to
    the far end of its source edge; their horizontal product over the path is
    ``(P^-1 |> B, P)`` where ``P`` is the path holonomy and ``B`` the
    whisker-ordered product of face labels.  The source is the product of
    the decorated source edges.
    """
    check_decoration(cm, c, d)
    if not is_fake_flat(cm, c, d):
        raise GeometryError("decoration is not fake flat", precondition="fake-flat decoration",
                            module="holonomy")
    c, d, p = unbroken_form(cm, c, d)
    B, P, _ = _ordered_product(cm, c, d, p)
    return TwoGroupElement(cm.act[cm.G.inv(P)][B], P)


def check_two_flat(cm, c, d):
    """On a closed complex: the whisker-ordered product of all face labels is trivial."""
    check_decoration(cm, c, d)
    if not c.is_closed():
        raise GeometryError("two-flatness is tested on closed complexes", module="holonomy")
    if not is_fake_flat(cm, c, d):
        return False
    c, d, p = unbroken_form(cm, c, d)
    B, _, _ = _ordered_product(cm, c, d, p)
    return B == 0


def check_internal_invariance(cm, c, d):
    """Total holonomy is unchanged by gauge parameters supported on internal edges.

    The parameters range over every ``gamma`` on internal edges with ``a = 1``
    subject to ``t(gamma) = a_src^-1 a_dst``, i.e. ``gamma`` in ker t.
    """
    from .gauge import GaugeParam, apply_gauge

    ref = total_surface_holonomy(cm, c, d)
    internal = c.internal_edges()
    K = cm.kernel_t()
    for values in product(K, repeat=len(internal)):
        gamma = [0] * len(c.edges)
        for e, x in zip(internal, values):
            gamma[e] = x
        z = GaugeParam((0,) * c.n_vertices, tuple(gamma))
        if total_surface_holonomy(cm, c, apply_gauge(cm, c, d, z)) != ref:
            return False
    return True


def face_ordered_product(cm, c, d, order, whiskers=None):
    """``prod_f (h_{q_f} |> b_f)`` over faces in ``order``.

    ``whiskers[f]`` is an edge path from the root of the complex to the root
    of face ``f`` (empty by default).
    """
    total = 0
    for f in order:
        q = (whiskers or {}).get(f, ())
        a = path_holonomy(cm, c, q, d.edges, start=c.root if q else None)
        total = cm.H.mul(total, cm.act[a][d.faces[f]])
    return total


def whisker_homotopy_correction(cm, b_face, x):
    """Move a face with label ``b_face`` from the front of a product ``x`` to the back.

    ``b_face * y = x`` implies ``y * b_face = b_face^-1 x b_face``; together
    with the Peiffer identity this relates sweeps that pass a face in
    different orders or drag a whisker across it.
    """
    H = cm.H
    return H.mul(H.mul(H.inv(b_face), x), b_face)
