"""Normalized Wilson-surface states of decorated ribbons.

``evaluate`` turns a ribbon ``B0 => B1`` into a table indexed by edge
decorations of the two boundary graphs.  Each entry is the weighted number
of fake-flat interior decorations restricting to the given boundary ones,
times the gerbe phases of the triple edges.  The weights are

    face  1/|ker t|        (cancels the choice of face label)
    edge  1/|im t|         (every edge off the boundary graphs)
    vertex 1/|coker t|     (every vertex off the boundary graphs)

The vertex weight is forced by the 1-3 move once the other two are fixed,
and the edge weight is forced by the doubled triangle having value 1; see
:func:`derive_vertex_weight`.  Composition sums over the shared graph with
the same weights on its non-corner cells, which makes stacking functorial.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import ribbon as rb
from .complex import pachner_subdivide
from .errors import (DomainError, InconsistentGerbe, InvalidParameter, SpaceMismatch,
                     SummabilityError)
from .polyhedron import check_pentagon
from .scalars import Cyclotomic, conj, sign, simplify
from .statesum import boundary_table


# -- normalization ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Normalization:
    face: Fraction
    edge: Fraction
    vertex: Fraction

    def __post_init__(self):
        if min(self.face, self.edge, self.vertex) <= 0:
            raise InvalidParameter("normalization weights must be positive", module="wilson")

    @classmethod
    def derived(cls, cm):
        """Face 1/|ker t|, edge 1/|im t|, vertex from the 1-3 move (= 1/|coker t|)."""
        face, edge = Fraction(1, cm.ker_order), Fraction(1, cm.im_order)
        return cls(face, edge, derive_vertex_weight(cm, face, edge))

    @classmethod
    def literal(cls, cm):
        """Edge weight 1/|G| instead; the 1-3 move then forces |coker t|^2 per vertex."""
        face, edge = Fraction(1, cm.ker_order), Fraction(1, cm.G.order)
        return cls(face, edge, derive_vertex_weight(cm, face, edge))

    def scale(self, faces, edges, vertices):
        return self.face ** faces * self.edge ** edges * self.vertex ** vertices

    def to_dict(self):
        return {k: [v.numerator, v.denominator] for k, v in
                (("face", self.face), ("edge", self.edge), ("vertex", self.vertex))}


def derive_vertex_weight(cm, face_weight, edge_weight):
    """The vertex weight making the 1-3 move on a triangle exact.

    Both sides are counted by the state sum with the three rim edges kept:
    the subdivided triangle has one more vertex, three more edges and two
    more faces, so ``lam * fw^3 * ew^3 * S = fw * T`` must hold entrywise.
    """
    from .polyhedron import triangle

    tri = triangle().body
    sub = pachner_subdivide(tri, 0)
    rim = [0, 1, 2]
    T = boundary_table(cm, tri, rim)
    S = boundary_table(cm, sub, rim)
    if set(T) != set(S):
        raise InvalidParameter("1-3 move changes the support of the state", module="wilson")
    ratios = {Fraction(T[k]) / (Fraction(S[k]) * face_weight ** 2 * edge_weight ** 3) for k in T}
    if len(ratios) != 1:
        raise InvalidParameter("no vertex weight makes the 1-3 move exact", module="wilson")
    return ratios.pop()


# -- states ------------------------------------------------------------------------------------

def _encode(beta, order):
    i = 0
    for x in beta:
        i = i * order + x
    return i


def _decode(i, n, order):
    out = []
    for _ in range(n):
        i, r = divmod(i, order)
        out.append(r)
    return tuple(reversed(out))


def _scalar_to_json(x):
    x = simplify(x)
    if isinstance(x, Cyclotomic):
        return {"n": x.n, "coeffs": [[c.numerator, c.denominator] for c in x.coeffs]}
    x = Fraction(x)
    return [x.numerator, x.denominator]


def _scalar_from_json(v):
    if isinstance(v, dict):
        return simplify(Cyclotomic(int(v["n"]), tuple(Fraction(p, q) for p, q in v["coeffs"])))
    return Fraction(int(v[0]), int(v[1]))


@dataclass
class WilsonState:
    """Amplitudes ``(beta0, beta1) -> scalar``; missing keys are zero."""

    order: int
    source: object
    target: object
    table: dict
    corner_vertices: frozenset = frozenset()
    corner_edges: frozenset = frozenset()
    weights: object = None

    @property
    def shape(self):
        return len(self.source.edges), len(self.target.edges)

    def get(self, b0, b1):
        return self.table.get((tuple(b0), tuple(b1)), 0)

    def keys(self):
        k, m = self.shape
        for b0 in product(range(self.order), repeat=k):
            for b1 in product(range(self.order), repeat=m):
                yield b0, b1

    def dense(self):
        k, m = self.shape
        rows = [list(b) for b in product(range(self.order), repeat=k)]
        cols = [list(b) for b in product(range(self.order), repeat=m)]
        return [[self.get(r, c) for c in cols] for r in rows]

    def __eq__(self, other):
        if not isinstance(other, WilsonState):
            return NotImplemented
        a = {k: v for k, v in self.table.items() if v}
        b = {k: v for k, v in other.table.items() if v}
        return self.order == other.order and self.shape == other.shape and a == b

    def to_dict(self):
        entries = []
        for (b0, b1), v in sorted(self.table.items()):
            if v:
                entries.append([_encode(b0, self.order), _encode(b1, self.order), _scalar_to_json(v)])
        return {"src_edges": len(self.source.edges), "tgt_edges": len(self.target.edges),
                "order": self.order, "entries": entries}

    @classmethod
    def from_dict(cls, data, source=None, target=None):
        k, m, order = int(data["src_edges"]), int(data["tgt_edges"]), int(data["order"])
        source = source or rb.BoundaryGraph(2 * k, tuple((2 * i, 2 * i + 1) for i in range(k)))
        target = target or rb.BoundaryGraph(2 * m, tuple((2 * i, 2 * i + 1) for i in range(m)))
        table = {(_decode(i, k, order), _decode(j, m, order)): _scalar_from_json(v)
                 for i, j, v in data["entries"]}
        return cls(order, source, target, table)


# -- evaluation ------------------------------------------------------------------------------

def _triple_edges(c):
    return [e for e, d in enumerate(c.edge_degree()) if d == 3]


def _check_gerbe(gerbe):
    if gerbe is not None and not check_pentagon(gerbe):
        raise InconsistentGerbe("gerbe datum violates the pentagon condition",
                                precondition="pentagon", module="wilson")


def _split_table(args):
    cm, c, keep, first, value, gerbe, triple = args
    part = boundary_table(cm, c, keep, {first: value}, gerbe, triple)
    return value, part


def _table(cm, c, keep, gerbe, triple, workers):
    if workers <= 1 or not keep:
        return boundary_table(cm, c, keep, None, gerbe, triple)
    first, rest = keep[0], keep[1:]
    jobs = [(cm, c, rest, first, x, gerbe, triple) for x in range(cm.G.order)]
    out = {}
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for value, part in pool.map(_split_table, jobs):
            for k, v in part.items():
                out[(value,) + k] = v
    return out


def evaluate(cm, r, gerbe=None, normalization=None, workers=1):
    """The normalized state of ribbon ``r``."""
    _check_gerbe(gerbe)
    nz = normalization or Normalization.derived(cm)
    c = r.body
    keep = list(dict.fromkeys(tuple(r.src_emap) + tuple(r.tgt_emap)))
    triple = _triple_edges(c) if gerbe is not None else ()
    raw = _table(cm, c, keep, gerbe, triple, workers)
    boundary_vertices = set(r.src_vmap) | set(r.tgt_vmap)
    scale = nz.scale(len(c.faces), len(c.edges) - len(keep), c.n_vertices - len(boundary_vertices))
    pos = {e: i for i, e in enumerate(keep)}
    table = {}
    for key, val in raw.items():
        b0 = tuple(key[pos[e]] for e in r.src_emap)
        b1 = tuple(key[pos[e]] for e in r.tgt_emap)
        table[(b0, b1)] = simplify(val * scale)
    return WilsonState(cm.G.order, r.source, r.target, table, r.corner_vertices(), r.corner_edges(), nz)


def complex_as_ribbon(c):
    """View a complex as a ribbon from its boundary graph to the empty graph."""
    bedges = c.boundary_edges()
    verts = sorted({v for e in bedges for v in c.endpoints(e)})
    vidx = {v: i for i, v in enumerate(verts)}
    g = rb.BoundaryGraph(len(verts), tuple((vidx[c.endpoints(e)[0]], vidx[c.endpoints(e)[1]]) for e in bedges))
    return rb.Ribbon(c, g, rb.empty_graph(), tuple(verts), tuple(bedges), (), ())


def evaluate_complex(cm, c, gerbe=None, normalization=None):
    """State of a 2-complex with all boundary edges on the source side."""
    return evaluate(cm, complex_as_ribbon(c), gerbe, normalization)


def partition_function(cm, p, gerbe=None, normalization=None):
    """Normalized state sum of a closed polyhedron (or closed complex).

    One vertex per connected component carries no weight: it plays the role
    of the base point through which the component is attached.
    """
    _check_gerbe(gerbe)
    c = getattr(p, "body", p)
    if not c.is_closed():
        raise DomainError("partition_function needs a closed polyhedron; use evaluate",
                          precondition="closed polyhedron", module="wilson")
    nz = normalization or Normalization.derived(cm)
    triple = _triple_edges(c) if gerbe is not None else ()
    raw = boundary_table(cm, c, [], None, gerbe, triple).get((), 0)
    pinned = len(c.components())
    return simplify(raw * nz.scale(len(c.faces), len(c.edges), c.n_vertices - pinned))


# -- composition and summation -------------------------------------------------------------

def compose_states(w1, w2):
    """``(w1 o w2)(b0, b2) = sum_b1 weight(B1) w1(b0, b1) w2(b1, b2)``."""
    g1, g2 = w1.target, w2.source
    if w1.order != w2.order or (g1.n_vertices, g1.edges) != (g2.n_vertices, g2.edges):
        raise SpaceMismatch("target of the first state is not the source of the second",
                            precondition="matching boundary", module="wilson")
    if w1.weights != w2.weights:
        raise SpaceMismatch("states use different normalizations", module="wilson")
    nz = w1.weights
    corner_e = {j for _, j in w1.corner_edges} | {i for i, _ in w2.corner_edges}
    corner_v = {j for _, j in w1.corner_vertices} | {i for i, _ in w2.corner_vertices}
    weight = nz.scale(0, len(g1.edges) - len(corner_e), g1.n_vertices - len(corner_v))
    by_mid = {}
    for (b1, b2), v in w2.table.items():
        by_mid.setdefault(b1, []).append((b2, v))
    out = {}
    for (b0, b1), v in w1.table.items():
        for b2, u in by_mid.get(b1, ()):
            key = (b0, b2)
            out[key] = out[key] + v * u if key in out else v * u
    table = {k: simplify(v * weight) for k, v in out.items() if v}

    def chain(a, b):
        return frozenset((i, k) for i, j in a for j2, k in b if j == j2)

    return WilsonState(w1.order, w1.source, w2.target, table,
                       chain(w1.corner_vertices, w2.corner_vertices), chain(w1.corner_edges, w2.corner_edges),
                       nz)


def collar_average(cm, len_a, len_b, normalization=None):
    """Average of the normalized collar state over all decorations of the two markings.

    The collar is the cone on the loop formed by markings of lengths
    ``len_a`` and ``len_b``; its apex, spokes and faces are new cells.
    """
    if len_a + len_b == 0:
        return Fraction(1)
    nz = normalization or Normalization.derived(cm)
    c, ea, eb = rb.summation_collar(len_a, len_b)
    keep = ea + eb
    table = boundary_table(cm, c, keep)
    scale = nz.scale(len(c.faces), len(c.edges) - len(keep), 1)
    total = sum(table.values(), 0) * scale
    return simplify(Fraction(total) / cm.G.order ** len(keep))


@dataclass(frozen=True)
class Collar:
    """A consumed marking pair: the two marking lengths and their four anchors.

    Anchors are (kind, index) references: the first ribbon's marking runs
    from ``start1`` to ``end1``, the second's from ``start2`` to ``end2``.
    """

    len1: int
    len2: int
    start1: tuple
    end1: tuple
    start2: tuple
    end2: tuple


def collars(r1, r2, pairs):
    """The collar records of ``connected_sum(r1, r2, pairs)``."""
    out = []
    for j, k in pairs:
        m1, m2 = r1.markings[j], r2.markings[k]
        out.append(Collar(len(m1.path), len(m2.path), m1.start, m1.end, m2.start, m2.end))
    return out


def tensor_with_collar(cm, w1, w2, collar_list):
    """The state of a connected sum: outer product times one collar average per pair.

    Boundary graphs are wedged at the consumed anchors exactly as in
    ``connected_sum``, so keys are the concatenated decorations of the two
    summands.
    """
    collar_list = list(collar_list)
    if not collar_list:
        raise SummabilityError("connected sum needs at least one marking pair", module="wilson")
    if w1.order != w2.order or w1.weights != w2.weights:
        raise SpaceMismatch("states live over different data", module="wilson")
    for h in collar_list:
        if h.start1[0] != "out" or h.start2[0] != "in":
            raise SummabilityError("collar must join an outgoing to an incoming marking",
                                   precondition="summable markings", module="wilson")
    factor = Fraction(1)
    for h in collar_list:
        factor *= collar_average(cm, h.len1, h.len2, w1.weights)

    def anchor(g, ref):
        return (g.incoming if ref[0] == "in" else g.outgoing)[ref[1]]

    src, sm1, sm2, _ = rb._wedge(w1.source, w2.source,
                                 [(anchor(w1.source, h.start1), anchor(w2.source, h.start2)) for h in collar_list],
                                 {h.start1 for h in collar_list}, {h.start2 for h in collar_list})
    tgt, tm1, tm2, _ = rb._wedge(w1.target, w2.target,
                                 [(anchor(w1.target, h.end1), anchor(w2.target, h.end2)) for h in collar_list],
                                 {h.end1 for h in collar_list}, {h.end2 for h in collar_list})
    ns, nt = len(w1.source.edges), len(w1.target.edges)
    corner_v = frozenset((sm1[i], tm1[j]) for i, j in w1.corner_vertices) | \
        frozenset((sm2[i], tm2[j]) for i, j in w2.corner_vertices)
    corner_e = frozenset(w1.corner_edges) | frozenset((i + ns, j + nt) for i, j in w2.corner_edges)
    table = {}
    for (a0, a1), v in w1.table.items():
        for (c0, c1), u in w2.table.items():
            table[(a0 + c0, a1 + c1)] = simplify(v * u * factor)
    return WilsonState(w1.order, src, tgt, table, corner_v, corner_e, w1.weights)


# -- pairings and positivity ---------------------------------------------------------------

def _invert(cm, beta):
    return tuple(cm.G.inv(x) for x in beta)


def orientation_pairing(cm, w_dag, w):
    """``sum_beta conj(w_dag(i beta1, i beta0)) w(beta0, beta1)`` with ``i`` the inverse labels.

    ``w_dag`` lives on the orientation-reversed boundary spaces of ``w``.
    """
    if w_dag.shape != (w.shape[1], w.shape[0]) or w_dag.order != w.order:
        raise SpaceMismatch("pairing needs the reversed boundary spaces", module="wilson")
    total = 0
    for (b0, b1), v in w.table.items():
        u = w_dag.get(_invert(cm, b1), _invert(cm, b0))
        if u:
            total = total + conj(u) * v
    return simplify(total)


def framing_pairing(cm, w_dag, w):
    """``sum_beta conj(w_dag(beta)) w(beta)``: framing reversal keeps the labels."""
    if w_dag.shape != w.shape or w_dag.order != w.order:
        raise SpaceMismatch("pairing needs equal boundary spaces", module="wilson")
    total = 0
    for key, v in w.table.items():
        u = w_dag.table.get(key, 0)
        if u:
            total = total + conj(u) * v
    return simplify(total)


def _det(m, rows, cols):
    # cofactor expansion with memo on the column set; exact, division free
    memo = {}

    def rec(i, cs):
        if i == len(rows):
            return 1
        if cs in memo:
            return memo[cs]
        total, k = 0, 0
        for j in cols:
            if j in cs:
                continue
            x = m[rows[i]][j]
            if x:
                term = x * rec(i + 1, cs | frozenset((j,)))
                total = total + term if k % 2 == 0 else total - term
            k += 1
        memo[cs] = total
        return total

    return rec(0, frozenset())


def is_psd(m):
    """Exact positive semidefiniteness of a Hermitian matrix.

    Rational matrices go through LDL^T; a zero pivot must come with a zero
    row.  Otherwise every principal minor is checked for a nonnegative sign.
    """
    n = len(m)
    if all(not isinstance(x, Cyclotomic) or x.is_rational() for row in m for x in row):
        a = [[Fraction(simplify(x)) for x in row] for row in m]
        for k in range(n):
            p = a[k][k]
            if p < 0:
                return False
            if p == 0:
                if any(a[k][j] for j in range(k, n)):
                    return False
                continue
            for i in range(k + 1, n):
                f = a[i][k] / p
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
        return True
    idx = list(range(n))
    for mask in range(1, 1 << n):
        sub = [i for i in idx if mask >> i & 1]
        if sign(_det(m, sub, sub)) < 0:
            return False
    return True


def gram_matrix(cm, ribbons, gerbe=None, normalization=None):
    states = [evaluate(cm, r, gerbe, normalization) for r in ribbons]
    mirrors = [evaluate(cm, rb.dagger1(r), gerbe, normalization) for r in ribbons]
    return [[orientation_pairing(cm, mirrors[i], states[j]) for j in range(len(ribbons))]
            for i in range(len(ribbons))]


def reflection_positivity_check(cm, ribbons, gerbe=None, normalization=None):
    """Gram matrix of ribbons ``B => pt`` paired with their mirrors, and whether it is PSD."""
    ribbons = list(ribbons)
    if not ribbons:
        return [], True
    src = ribbons[0].source
    for r in ribbons:
        if (r.source.n_vertices, r.source.edges) != (src.n_vertices, src.edges):
            raise SpaceMismatch("ribbons must share their source graph", module="wilson")
        if r.target.edges:
            raise SpaceMismatch("ribbons must end on an edgeless graph", module="wilson")
    g = gram_matrix(cm, ribbons, gerbe, normalization)
    return g, is_psd(g)
