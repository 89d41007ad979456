"""Finite groups, crossed modules and the strict 2-group they define.

Groups are given by Cayley tables on the elements ``0 .. n-1`` with 0 the
identity.  A crossed module ``(G, H, t, act)`` consists of a homomorphism
``t: H -> G`` and a left action ``act[g][h] = g |> h`` of G on H by
automorphisms such that

    t(g |> h)    = g t(h) g^-1       (equivariance)
    t(h) |> h'   = h h' h^-1         (Peiffer identity)

An arrow of the associated 2-group is a pair ``(h, g)`` with source ``g`` and
target ``g t(h)``.
"""

from dataclasses import dataclass
from itertools import permutations, product

from .errors import CompositionError, InvalidCrossedModule


class FiniteGroup:
    """A finite group stored as a Cayley table."""

    def __init__(self, table, name=None):
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self.name = name
        inv = [None] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self.table[a][b] == 0:
                    inv[a] = b
                    break
        self.inverses = tuple(inv)

    @property
    def elements(self):
        return range(self.order)

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverses[a]

    def prod(self, *xs):
        r = 0
        for x in xs:
            r = self.table[r][x]
        return r

    def conj(self, a, b):
        """a b a^-1"""
        return self.table[self.table[a][b]][self.inverses[a]]

    def is_abelian(self):
        return all(self.table[a][b] == self.table[b][a] for a in self.elements for b in self.elements)

    def conjugacy_classes(self):
        seen, classes = set(), []
        for a in self.elements:
            if a not in seen:
                cls = sorted({self.conj(g, a) for g in self.elements})
                seen.update(cls)
                classes.append(tuple(cls))
        return classes

    def violations(self, label="G"):
        """Group axiom failures as (axiom, witness) pairs."""
        n = self.order
        out = []
        for a in range(n):
            if len(self.table[a]) != n or any(not 0 <= x < n for x in self.table[a]):
                return [(label + ":closure", (a,))]
        for a in range(n):
            if self.table[0][a] != a or self.table[a][0] != a:
                out.append((label + ":identity", (a,)))
        for a in range(n):
            if self.inverses[a] is None or self.table[self.inverses[a]][a] != 0:
                out.append((label + ":inverse", (a,)))
        for a, b, c in product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                out.append((label + ":associativity", (a, b, c)))
                break
        return out

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return "FiniteGroup(order=%d%s)" % (self.order, ", name=%r" % self.name if self.name else "")


def cyclic_group(n):
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], name="Z%d" % n)


def permutation_group(perms, name=None):
    """Group generated as a list of permutation tuples; the first must be the identity."""
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[k]] for k in range(len(q)))] for q in perms] for p in perms]
    return FiniteGroup(table, name=name)


def symmetric_group(k):
    perms = sorted(permutations(range(k)))
    return permutation_group(perms, name="S%d" % k)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple


class CrossedModule:
    """A finite crossed module ``t: H -> G`` with action ``act[g][h]``."""

    def __init__(self, G, H, t, act, name=None):
        self.G = G
        self.H = H
        self.t = tuple(t)
        self.act = tuple(tuple(row) for row in act)
        self.name = name

    def image_t(self):
        return sorted(set(self.t))

    def kernel_t(self):
        return [h for h in self.H.elements if self.t[h] == 0]

    @property
    def im_order(self):
        return len(set(self.t))

    @property
    def ker_order(self):
        return sum(1 for h in self.t if h == 0)

    @property
    def coker_order(self):
        return self.G.order // self.im_order

    def preimages(self, g):
        """Fiber elements b with t(b) = g, in increasing order."""
        return [h for h in self.H.elements if self.t[h] == g]

    def to_dict(self):
        return {
            "order": [self.G.order, self.H.order],
            "mul": [[list(r) for r in self.G.table], [list(r) for r in self.H.table]],
            "t": list(self.t),
            "act": [list(r) for r in self.act],
        }

    @classmethod
    def from_dict(cls, data, name=None):
        try:
            nG, nH = data["order"]
            for table in data["mul"][:2]:
                if any(len(row) != len(table) or not all(isinstance(x, int) for x in row) for row in table):
                    raise ValueError("Cayley tables must be square tables of integers")
            G = FiniteGroup(data["mul"][0])
            H = FiniteGroup(data["mul"][1])
            t, act = data["t"], data["act"]
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise InvalidCrossedModule("malformed crossed module record: %s" % exc,
                                       precondition="schema") from exc
        if G.order != nG or H.order != nH or len(t) != nH or len(act) != nG:
            raise InvalidCrossedModule("table sizes disagree with declared orders", precondition="schema")
        return cls(G, H, t, act, name=name)

    def __eq__(self, other):
        return (isinstance(other, CrossedModule) and self.G == other.G and self.H == other.H
                and self.t == other.t and self.act == other.act)

    def __hash__(self):
        return hash((self.G, self.H, self.t, self.act))

    def __repr__(self):
        return "CrossedModule(%s, |G|=%d, |H|=%d)" % (self.name or "?", self.G.order, self.H.order)


def validate(cm):
    """Return the list of axiom violations (empty iff ``cm`` is a crossed module).

    Each report names the axiom and a witness tuple of element indices.
    """
    G, H, t, act = cm.G, cm.H, cm.t, cm.act
    out = [Violation(a, w) for a, w in G.violations("G") + H.violations("H")]
    if out:
        return out
    nG, nH = G.order, H.order
    if len(t) != nH or any(not 0 <= x < nG for x in t):
        return [Violation("t:range", ())]
    if len(act) != nG or any(len(r) != nH or any(not 0 <= x < nH for x in r) for r in act):
        return [Violation("act:range", ())]
    for a, b in product(range(nH), repeat=2):
        if t[H.mul(a, b)] != G.mul(t[a], t[b]):
            out.append(Violation("t:homomorphism", (a, b)))
    for g in range(nG):
        if sorted(act[g]) != list(range(nH)):
            out.append(Violation("act:bijective", (g,)))
        for a, b in product(range(nH), repeat=2):
            if act[g][H.mul(a, b)] != H.mul(act[g][a], act[g][b]):
                out.append(Violation("act:automorphism", (g, a, b)))
                break
    for h in range(nH):
        if act[0][h] != h:
            out.append(Violation("act:identity", (h,)))
    for g, k in product(range(nG), repeat=2):
        gk = G.mul(g, k)
        for h in range(nH):
            if act[gk][h] != act[g][act[k][h]]:
                out.append(Violation("act:composition", (g, k, h)))
                break
    for g, h in product(range(nG), range(nH)):
        if t[act[g][h]] != G.conj(g, t[h]):
            out.append(Violation("equivariance", (g, h)))
    for h, k in product(range(nH), repeat=2):
        if act[t[h]][k] != H.conj(h, k):
            out.append(Violation("peiffer", (h, k)))
    return out


def require_valid(cm):
    bad = validate(cm)
    if bad:
        raise InvalidCrossedModule("crossed module fails %s at %s" % (bad[0].axiom, bad[0].witness))
    return cm


@dataclass(frozen=True)
class TwoGroupElement:
    """Arrow ``(h, g)``: source ``g``, target ``g t(h)``."""

    h: int
    g: int

    def source(self, cm):
        return self.g

    def target(self, cm):
        return cm.G.mul(self.g, cm.t[self.h])


def arrows(cm):
    return [TwoGroupElement(h, g) for g in cm.G.elements for h in cm.H.elements]


def horizontal_mult(cm, x, y):
    """Horizontal product ``(h, g)(h', g') = ((g'^-1 |> h) h', g g')``.

    With target ``g t(h)`` this is the ordering that makes source and target
    multiplicative; it equals conjugating by identity arrows in the sense that
    ``id_a (h, g) id_a^-1 = (a |> h, a g a^-1)``.
    """
    return TwoGroupElement(cm.H.mul(cm.act[cm.G.inv(y.g)][x.h], y.h), cm.G.mul(x.g, y.g))


def horizontal_inverse(cm, x):
    return TwoGroupElement(cm.act[x.g][cm.H.inv(x.h)], cm.G.inv(x.g))


def vertical_compose(cm, x, y):
    """``x`` followed by ``y``: ``(h, g) o (h', g t(h)) = (h h', g)``."""
    if y.g != x.target(cm):
        raise CompositionError("target %d of first arrow differs from source %d of second"
                               % (x.target(cm), y.g))
    return TwoGroupElement(cm.H.mul(x.h, y.h), x.g)


def vertical_inverse(cm, x):
    return TwoGroupElement(cm.H.inv(x.h), x.target(cm))


def identity_arrow(g):
    return TwoGroupElement(0, g)


def whisker(cm, a, x):
    """Transport an arrow along a base element: ``(a |> h, a g a^-1)``."""
    return TwoGroupElement(cm.act[a][x.h], cm.G.conj(a, x.g))


def check_interchange(cm):
    """Exhaustively verify (x o x')(y o y') = (x y) o (x' y') on composable pairs."""
    pairs = []
    for x in arrows(cm):
        tx = x.target(cm)
        for h in cm.H.elements:
            pairs.append((x, TwoGroupElement(h, tx)))
    for x, x2 in pairs:
        left_a = vertical_compose(cm, x, x2)
        for y, y2 in pairs:
            lhs = horizontal_mult(cm, left_a, vertical_compose(cm, y, y2))
            rhs = vertical_compose(cm, horizontal_mult(cm, x, y), horizontal_mult(cm, x2, y2))
            if lhs != rhs:
                return False
    return True


# -- sample crossed modules ------------------------------------------------

def _trivial_action(nG, nH):
    return [list(range(nH)) for _ in range(nG)]


def cm_triv():
    """1 -> 1"""
    one = cyclic_group(1)
    return CrossedModule(one, one, [0], [[0]], name="cm_triv")


def cm_id2():
    """Z2 --id--> Z2"""
    z2 = cyclic_group(2)
    return CrossedModule(z2, z2, [0, 1], _trivial_action(2, 2), name="cm_id2")


def cm_02():
    """Z2 --0--> Z2 with trivial action."""
    z2 = cyclic_group(2)
    return CrossedModule(z2, z2, [0, 0], _trivial_action(2, 2), name="cm_02")


def cm_z2z4():
    """Z2 --> Z4, 1 |-> 2, trivial action."""
    return CrossedModule(cyclic_group(4), cyclic_group(2), [0, 2], _trivial_action(4, 2), name="cm_z2z4")


def _s3_with_a3():
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
    return permutation_group(perms, name="S3")


def cm_s3():
    """A3 --> S3 inclusion, S3 acting by conjugation.

    S3 elements are ordered so that 0, 1, 2 form A3; H = Z3 is identified with
    A3 through ``k |-> k``-th power of the 3-cycle 1.
    """
    S3 = _s3_with_a3()
    Z3 = cyclic_group(3)
    # A3 = {0, 1, 2}; check that index k is the k-th power of the 3-cycle 1
    power = [0, 1, S3.mul(1, 1)]
    t = power
    inv_power = {g: k for k, g in enumerate(power)}
    act = [[inv_power[S3.conj(g, power[k])] for k in range(3)] for g in range(6)]
    return CrossedModule(S3, Z3, t, act, name="cm_s3")


def trivial_fiber(G, name=None):
    """1 --> G: decorations reduce to ordinary flat G-connections."""
    return CrossedModule(G, cyclic_group(1), [0], [[0] for _ in range(G.order)],
                         name=name or "trivial_fiber")


def cm_s3_flat():
    return trivial_fiber(_s3_with_a3(), name="cm_s3_flat")


def cm_z2_flat():
    return trivial_fiber(cyclic_group(2), name="cm_z2_flat")


BUILTIN = {
    "cm_triv": cm_triv,
    "cm_id2": cm_id2,
    "cm_02": cm_02,
    "cm_z2z4": cm_z2z4,
    "cm_s3": cm_s3,
    "cm_s3_flat": cm_s3_flat,
    "cm_z2_flat": cm_z2_flat,
}

SAMPLES = ("cm_triv", "cm_id2", "cm_02", "cm_z2z4", "cm_s3")


def builtin(name):
    try:
        return BUILTIN[name]()
    except KeyError:
        raise KeyError("unknown crossed module %r" % name) from None
