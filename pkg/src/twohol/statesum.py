"""Exact state sums by sparse variable elimination.

Variables are edges (values in G) and, when a gerbe is present, the labels
of faces meeting a triple edge (values in H).  Each face contributes the
indicator of fake flatness; a face without a label variable contributes the
size of its fiber, ``|ker t|`` or 0.  Factors are sparse dictionaries from
assignments to exact values (ints, Fractions or Cyclotomic numbers).
"""

from itertools import product

from .errors import IncompleteDatum
from .holonomy import face_word
from .scalars import Cyclotomic


class Factor:
    __slots__ = ("vars", "table")

    def __init__(self, vars, table):
        self.vars = tuple(vars)
        self.table = table

    def __repr__(self):
        return "Factor(%r, %d entries)" % (self.vars, len(self.table))


def multiply(f1, f2):
    shared = [v for v in f2.vars if v in f1.vars]
    extra = [v for v in f2.vars if v not in f1.vars]
    i1 = [f1.vars.index(v) for v in shared]
    i2 = [f2.vars.index(v) for v in shared]
    ie = [f2.vars.index(v) for v in extra]
    index = {}
    for k2, v2 in f2.table.items():
        index.setdefault(tuple(k2[i] for i in i2), []).append((tuple(k2[i] for i in ie), v2))
    out = {}
    for k1, v1 in f1.table.items():
        for ke, v2 in index.get(tuple(k1[i] for i in i1), ()):
            key = k1 + ke
            val = v1 * v2
            if key in out:
                out[key] = out[key] + val
            else:
                out[key] = val
    return Factor(f1.vars + tuple(extra), {k: v for k, v in out.items() if v})


def sum_out(f, var):
    i = f.vars.index(var)
    out = {}
    for k, v in f.table.items():
        key = k[:i] + k[i + 1:]
        out[key] = out[key] + v if key in out else v
    return Factor(f.vars[:i] + f.vars[i + 1:], {k: v for k, v in out.items() if v})


def eliminate(factors, domains, keep=()):
    """Sum out every variable not in ``keep``; return a factor over ``keep`` in that order."""
    factors = list(factors)
    keep = tuple(keep)
    present = set(v for f in factors for v in f.vars)
    for v in keep:
        if v not in present:
            factors.append(Factor((v,), {(x,): 1 for x in range(domains[v])}))
    scalar = 1
    for v in list(domains):
        if v not in present and v not in keep:
            scalar = scalar * domains[v]
    pending = set(v for f in factors for v in f.vars) - set(keep)
    while pending:
        best, best_cost = None, None
        for v in pending:
            scope = set()
            for f in factors:
                if v in f.vars:
                    scope.update(f.vars)
            cost = 1
            for u in scope:
                cost *= domains[u]
            if best_cost is None or cost < best_cost or (cost == best_cost and repr(v) < repr(best)):
                best, best_cost = v, cost
        touching = [f for f in factors if best in f.vars]
        factors = [f for f in factors if best not in f.vars]
        acc = touching[0]
        for f in touching[1:]:
            acc = multiply(acc, f)
        factors.append(sum_out(acc, best))
        pending.discard(best)
    acc = Factor((), {(): scalar})
    for f in factors:
        acc = multiply(acc, f)
    idx = [acc.vars.index(v) for v in keep]
    return Factor(keep, {tuple(k[i] for i in idx): v for k, v in acc.table.items()})


def gerbe_faces(c, triple_edges):
    return sorted({f for e in triple_edges for f, _ in c.edge_faces()[e]})


def build_factors(cm, c, fixed=None, gerbe=None, triple_edges=()):
    """Factors and domains for the fake-flat state sum on ``c``.

    ``fixed`` pins edge labels.  With a ``gerbe`` (dict from label triples to
    rotation numbers) each edge in ``triple_edges`` contributes the phase of
    its three face labels in increasing face order.
    """
    fixed = dict(fixed or {})
    nG = cm.G.order
    domains = {e: nG for e in range(len(c.edges)) if e not in fixed}
    labelled = set(gerbe_faces(c, triple_edges)) if gerbe is not None else set()
    for f in labelled:
        domains[("f", f)] = cm.H.order
    factors = []
    K = cm.ker_order
    hol = [fixed.get(e) for e in range(len(c.edges))]
    for f, face in enumerate(c.faces):
        fv = sorted({e for e, _ in face.slots if e not in fixed})
        table = {}
        for vals in product(range(nG), repeat=len(fv)):
            for e, x in zip(fv, vals):
                hol[e] = x
            w = face_word(cm, c, f, hol)
            if f in labelled:
                for b in cm.preimages(w):
                    table[vals + (b,)] = 1
            elif cm.preimages(w):
                table[vals] = K
        for e in fv:
            hol[e] = None
        factors.append(Factor(tuple(fv) + ((("f", f),) if f in labelled else ()), table))
    if gerbe is not None:
        inc = c.edge_faces()
        for e in triple_edges:
            fs = sorted(f for f, _ in inc[e])
            table = {}
            for key in product(range(cm.H.order), repeat=len(fs)):
                if key not in gerbe:
                    raise IncompleteDatum("gerbe has no value on %r" % (key,))
                table[key] = Cyclotomic.phase(gerbe[key])
            factors.append(Factor(tuple(("f", f) for f in fs), table))
    return factors, domains


def count_configurations(cm, c, fixed=None):
    factors, domains = build_factors(cm, c, fixed)
    return eliminate(factors, domains).table.get((), 0)


def boundary_table(cm, c, keep, fixed=None, gerbe=None, triple_edges=()):
    """Unnormalized state sum as a dict over assignments of the edges ``keep``."""
    factors, domains = build_factors(cm, c, fixed, gerbe, triple_edges)
    for e in keep:
        domains.setdefault(e, cm.G.order)
    return eliminate(factors, domains, keep).table


def brute_force_table(cm, c, keep, gerbe=None, triple_edges=()):
    """Reference implementation: enumerate every edge and face labelling."""
    nG, nH = cm.G.order, cm.H.order
    inc = c.edge_faces()
    out = {}
    for hol in product(range(nG), repeat=len(c.edges)):
        words = [face_word(cm, c, f, hol) for f in range(len(c.faces))]
        for bs in product(range(nH), repeat=len(c.faces)):
            if any(cm.t[b] != w for b, w in zip(bs, words)):
                continue
            val = 1
            if gerbe is not None:
                for e in triple_edges:
                    fs = sorted(f for f, _ in inc[e])
                    val = val * Cyclotomic.phase(gerbe[tuple(bs[f] for f in fs)])
            key = tuple(hol[e] for e in keep)
            out[key] = out.get(key, 0) + val
    return {k: v for k, v in out.items() if v}
