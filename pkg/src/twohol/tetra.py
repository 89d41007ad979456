"""Closed 3-dimensional triangulations given by face gluings.

A triangulation is a list of tetrahedra; ``glue[t][f] = (u, perm)`` glues
face ``f`` of tetrahedron ``t`` (the face opposite vertex ``f``) to face
``perm[f]`` of tetrahedron ``u``, sending vertex ``i`` of ``t`` to vertex
``perm[i]`` of ``u``.  These are used to build simple polyhedra as dual
spines and to realise handlebody moves as 2-3 and 0-2 moves.
"""

from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import MoveInapplicable

PERMS = tuple(permutations(range(4)))


def inverse(p):
    out = [0] * 4
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def compose(p, q):
    """First ``q`` then ``p``."""
    return tuple(p[q[i]] for i in range(4))


def parity(p):
    s = 0
    for i, j in combinations(range(4), 2):
        s ^= p[i] > p[j]
    return s


class _UF:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if repr(ra) < repr(rb):
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb

    def classes(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return sorted(sorted(v) for v in out.values())


@dataclass(frozen=True)
class Triangulation:
    glue: tuple  # per tet: tuple of 4 (tet, perm)

    @property
    def size(self):
        return len(self.glue)

    def check(self):
        for t, faces in enumerate(self.glue):
            for f, (u, p) in enumerate(faces):
                v, q = self.glue[u][p[f]]
                if v != t or q != inverse(p):
                    raise ValueError("gluing of tet %d face %d is not symmetric" % (t, f))
                if u == t and p[f] == f:
                    raise ValueError("face glued to itself")
        return self

    def vertex_classes(self):
        uf = _UF([(t, i) for t in range(self.size) for i in range(4)])
        for t, faces in enumerate(self.glue):
            for f, (u, p) in enumerate(faces):
                for i in range(4):
                    if i != f:
                        uf.union((t, i), (u, p[i]))
        return uf.classes()

    def edge_classes(self):
        """Edge classes as lists of (tet, (i, j)) with consistent orientation.

        Raises if an edge is identified with itself reversed.
        """
        items = [(t, e) for t in range(self.size) for e in combinations(range(4), 2)]
        parent = {x: (x, 0) for x in items}

        def find(x):
            flip = 0
            while parent[x][0] != x:
                x, fl = parent[x]
                flip ^= fl
            return x, flip

        for t, faces in enumerate(self.glue):
            for f, (u, p) in enumerate(faces):
                for i, j in combinations([k for k in range(4) if k != f], 2):
                    a, b = p[i], p[j]
                    other = (u, (min(a, b), max(a, b)))
                    rel = 0 if a < b else 1
                    ra, fa = find((t, (i, j)))
                    rb, fb = find(other)
                    if ra == rb:
                        if fa ^ fb ^ rel:
                            raise ValueError("edge identified with its reverse")
                        continue
                    parent[rb] = (ra, fa ^ fb ^ rel)
        out = {}
        for x in items:
            r, fl = find(x)
            out.setdefault(r, []).append((x[0], x[1], fl))
        return sorted(sorted(v) for v in out.values())

    def face_classes(self):
        seen, out = set(), []
        for t in range(self.size):
            for f in range(4):
                if (t, f) in seen:
                    continue
                u, p = self.glue[t][f]
                seen.add((t, f))
                seen.add((u, p[f]))
                out.append(((t, f), (u, p[f])))
        return out

    def euler(self):
        return len(self.vertex_classes()) - len(self.edge_classes()) + len(self.face_classes()) - self.size

    def is_orientable(self):
        # orientation sign per tet such that every gluing is orientation reversing
        sign = {0: 0}
        stack = [0]
        while stack:
            t = stack.pop()
            for f, (u, p) in enumerate(self.glue[t]):
                want = sign[t] ^ 1 ^ parity(p)
                if u in sign:
                    if sign[u] != want:
                        return False
                else:
                    sign[u] = want
                    stack.append(u)
        return True

    def to_dict(self):
        return {"tets": [[[u, list(p)] for u, p in faces] for faces in self.glue]}

    @classmethod
    def from_dict(cls, data):
        return cls(tuple(tuple((int(u), tuple(p)) for u, p in faces) for faces in data["tets"])).check()


# -- local moves -----------------------------------------------------------------

def _rebuild(tri, removed, new_tets, aliases, internal):
    """Assemble a triangulation after replacing ``removed`` tets.

    ``new_tets`` is the number of new tetrahedra (indexed after the kept
    ones).  ``aliases`` maps (new tet, face) -> (old tet, old face, sigma)
    where sigma sends new local vertices to old local vertices.
    ``internal`` lists gluings between new tets: (n1, f1, n2, perm).
    """
    kept = [t for t in range(tri.size) if t not in removed]
    index = {t: i for i, t in enumerate(kept)}
    base = len(kept)
    glue = [[None] * 4 for _ in range(base + new_tets)]
    old_face_alias = {}
    for (n, f), (t, of, sigma) in aliases.items():
        old_face_alias[(t, of)] = (base + n, f, sigma)
    for t in kept:
        for f, (u, p) in enumerate(tri.glue[t]):
            if u in removed:
                n, nf, sigma = old_face_alias[(u, p[f])]
                # t-local -> u-local -> new local
                glue[index[t]][f] = (n, compose(inverse(sigma), p))
            else:
                glue[index[t]][f] = (index[u], p)
    for (n, f), (t, of, sigma) in aliases.items():
        u, p = tri.glue[t][of]
        nn = base + n
        if u in removed:
            m, mf, tau = old_face_alias[(u, p[of])]
            glue[nn][f] = (m, compose(inverse(tau), compose(p, sigma)))
        else:
            glue[nn][f] = (index[u], compose(p, sigma))
    for n1, f1, n2, perm in internal:
        glue[base + n1][f1] = (base + n2, perm)
        glue[base + n2][perm[f1]] = (base + n1, inverse(perm))
    return Triangulation(tuple(tuple(faces) for faces in glue)).check()


def move_23(tri, t1, f1):
    """2-3 move across face ``f1`` of tet ``t1`` (must join two distinct tets)."""
    t2, p = tri.glue[t1][f1]
    f2 = p[f1]
    if t2 == t1:
        raise MoveInapplicable("face joins a tetrahedron to itself")
    xs = [i for i in range(4) if i != f1]
    aliases = {}
    for k in range(3):
        x0, x1, x2 = xs[k], xs[(k + 1) % 3], xs[(k + 2) % 3]
        # new tet k: local 0 = apex of t1, 1 = apex of t2, 2 = x1, 3 = x2
        aliases[(k, 1)] = (t1, x0, _perm({0: f1, 1: x0, 2: x1, 3: x2}))
        aliases[(k, 0)] = (t2, p[x0], _perm({0: p[x0], 1: f2, 2: p[x1], 3: p[x2]}))
    internal = [(k, 2, (k + 1) % 3, (0, 1, 3, 2)) for k in range(3)]
    return _rebuild(tri, {t1, t2}, 3, aliases, internal)


def _perm(m):
    return tuple(m[i] for i in range(4))


def edge_link(tri, t, e):
    """Tets around the edge ``e = (i, j)`` of tet ``t`` in cyclic order.

    Entries are (tet, a, b, c, d): the edge runs a -> b, the walk enters the
    tet through the face (a, b, c) and leaves through (a, b, d).  Face k of
    the link is shared by entries k and k+1; its third vertex is d_k, which
    is c_{k+1} in the next tet.
    """
    a, b = e
    c, d = [k for k in range(4) if k not in e]
    start = (t, a, b, c, d)
    out, cur = [start], start
    while True:
        u, a, b, c, d = cur
        v, p = tri.glue[u][c]
        nxt = (v, p[a], p[b], p[d], p[c])
        if nxt == start:
            return out
        if len(out) > 6 * tri.size:
            raise ValueError("edge link walk did not close")
        out.append(nxt)
        cur = nxt


def move_32(tri, t, e):
    """3-2 move removing an edge of degree three in three distinct tets."""
    link = edge_link(tri, t, e)
    if len(link) != 3 or len({x[0] for x in link}) != 3:
        raise MoveInapplicable("edge does not have degree three in three distinct tetrahedra")
    # tet k contains A=a, B=b and link vertices c_k (previous side) and d_k (next side)
    # link vertex sequence: x_k = d of tet k = c of tet k+1
    aliases = {}
    for k, (u, a, b, c, d) in enumerate(link):
        # face opposite b in tet k is (a, c, d): part of new tet TA = (A, x0, x1, x2)
        # face opposite a is (b, c, d): part of new tet TB = (B, x0, x1, x2)
        # in TA/TB local 0 = apex, local 1 + m = x_m where x_m = d of tet m
        cm, dm = (k - 1) % 3, k
        # c of tet k equals x_{k-1}, d of tet k equals x_k; the missing x is x_{k+1}
        miss = (k + 1) % 3
        aliases[(0, 1 + miss)] = (u, b, _perm({0: a, 1 + cm: c, 1 + dm: d, 1 + miss: b}))
        aliases[(1, 1 + miss)] = (u, a, _perm({0: b, 1 + cm: c, 1 + dm: d, 1 + miss: a}))
    internal = [(0, 0, 1, (0, 1, 2, 3))]
    return _rebuild(tri, {x[0] for x in link}, 2, aliases, internal)


def move_02(tri, t, e, i, j):
    """0-2 move: open the faces ``i`` and ``j`` around an edge and insert a pillow.

    ``(t, e)`` names the edge; positions ``i`` and ``j`` index the faces
    around it in the order of :func:`edge_link` (face k lies between link
    tets k and k+1).
    """
    link = edge_link(tri, t, e)
    n = len(link)
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise MoveInapplicable("need two distinct faces around the edge")

    def sides(k):
        # face k seen from tet k (opposite its d) and from tet k+1 (opposite its c)
        u, a, b, c, d = link[k]
        v, a2, b2, c2, d2 = link[(k + 1) % n]
        return (u, a, b, c, d), (v, a2, b2, c2, d2)

    (ui, ai, bi, ci, di), (vi, ai2, bi2, ci2, di2) = sides(i)
    (uj, aj, bj, cj, dj), (vj, aj2, bj2, cj2, dj2) = sides(j)
    # pillow X: local 2,3 = edge ends, 0 = third vertex of face i, 1 = of face j
    # X face opp 1 (0,2,3) ~ face i seen from tet i+1; X face opp 0 (1,2,3) ~ face j seen from tet j
    # Y faces glue to face i seen from tet i and face j seen from tet j+1
    aliases = {
        (0, 1): (vi, di2, _perm({0: ci2, 1: di2, 2: ai2, 3: bi2})),
        (0, 0): (uj, cj, _perm({1: dj, 0: cj, 2: aj, 3: bj})),
        (1, 1): (ui, ci, _perm({0: di, 1: ci, 2: ai, 3: bi})),
        (1, 0): (vj, dj2, _perm({1: cj2, 0: dj2, 2: aj2, 3: bj2})),
    }
    if len({(old, of) for old, of, _ in aliases.values()}) != 4:
        raise MoveInapplicable("the two faces are the same triangle")
    # keep the old tets but reroute the four face gluings through the pillow
    tets = [list(faces) for faces in tri.glue]
    X, Y = tri.size, tri.size + 1
    tets.append([None] * 4)
    tets.append([None] * 4)
    for (n_, f), (old, of, sigma) in aliases.items():
        me = X if n_ == 0 else Y
        # new-local -> old-local is sigma; old face (old, of)
        tets[me][f] = (old, sigma)
        tets[old][of] = (me, inverse(sigma))
    tets[X][2] = (Y, (0, 1, 2, 3))
    tets[Y][2] = (X, (0, 1, 2, 3))
    tets[X][3] = (Y, (0, 1, 2, 3))
    tets[Y][3] = (X, (0, 1, 2, 3))
    return Triangulation(tuple(tuple(f) for f in tets)).check()


def move_20(tri, t, e):
    """2-0 move: remove a pillow around an edge of degree two."""
    link = edge_link(tri, t, e)
    if len(link) != 2 or link[0][0] == link[1][0]:
        raise MoveInapplicable("edge is not of degree two in two distinct tetrahedra")
    (x, ax, bx, cx, dx), (y, _, _, _, _) = link
    gc, gd = tri.glue[x][cx], tri.glue[x][dx]
    if gc[0] != y or gd[0] != y or gc[1] != gd[1]:
        raise MoveInapplicable("the two tetrahedra around the edge do not form a pillow")
    vx_to_y = dict(enumerate(gc[1]))
    pairs = []
    for opp in (ax, bx):
        u, p = tri.glue[x][opp]
        v, q = tri.glue[y][vx_to_y[opp]]
        if u in (x, y) or v in (x, y):
            raise MoveInapplicable("pillow faces are glued to the pillow itself")
        # u-local -> x-local -> y-local -> v-local
        perm = compose(q, compose(_perm(vx_to_y), inverse(p)))
        pairs.append((u, p[opp], v, perm))
    tets = [list(faces) for faces in tri.glue]
    for u, fu, v, perm in pairs:
        tets[u][fu] = (v, perm)
        tets[v][perm[fu]] = (u, inverse(perm))
    kept = [k for k in range(tri.size) if k not in (x, y)]
    index = {k: i for i, k in enumerate(kept)}
    out = tuple(tuple((index[u], p) for u, p in tets[k]) for k in kept)
    return Triangulation(out).check()
