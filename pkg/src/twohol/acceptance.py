"""The twelve acceptance checks, each with its own brute-force oracle where one applies.

Every check returns ``(passed, detail)``.  :func:`run_all` runs them in order
and reports one line per check; the command line ``selftest`` task and the
acceptance test module both use it.
"""

import time
from fractions import Fraction
from itertools import product

from . import polyhedron as ph
from . import ribbon as rb
from . import wilson as w
from .complex import assemble, chain_gluing_sets, is_regular, make_unbroken, pachner_flip, pachner_subdivide
from .gauge import burnside_count, orbit_count
from .group_core import CrossedModule, FiniteGroup, builtin, check_interchange, validate
from .holonomy import check_internal_invariance, count_fake_flat, enumerate_fake_flat

SAMPLES = ("cm_triv", "cm_id2", "cm_02", "cm_z2z4", "cm_s3")


# -- 1. crossed-module axioms ---------------------------------------------------------------

def _oracle_axioms(gt, ht, t, act):
    """Direct check of the group and crossed-module axioms on raw tables."""
    def group_ok(tab):
        n = len(tab)
        if any(len(r) != n or any(not 0 <= x < n for x in r) for r in tab):
            return False
        if any(tab[0][a] != a or tab[a][0] != a for a in range(n)):
            return False
        if any(0 not in tab[a] for a in range(n)):
            return False
        return all(tab[tab[a][b]][c] == tab[a][tab[b][c]] for a in range(n) for b in range(n) for c in range(n))

    if not (group_ok(gt) and group_ok(ht)):
        return False
    nG, nH = len(gt), len(ht)
    ginv = [gt[a].index(0) for a in range(nG)]
    hinv = [ht[a].index(0) for a in range(nH)]
    if any(t[ht[a][b]] != gt[t[a]][t[b]] for a in range(nH) for b in range(nH)):
        return False
    for g in range(nG):
        if sorted(act[g]) != list(range(nH)):
            return False
        if any(act[g][ht[a][b]] != ht[act[g][a]][act[g][b]] for a in range(nH) for b in range(nH)):
            return False
    if any(act[0][h] != h for h in range(nH)):
        return False
    if any(act[gt[g][k]][h] != act[g][act[k][h]] for g in range(nG) for k in range(nG) for h in range(nH)):
        return False
    if any(t[act[g][h]] != gt[gt[g][t[h]]][ginv[g]] for g in range(nG) for h in range(nH)):
        return False
    return all(act[t[h]][k] == ht[ht[h][k]][hinv[h]] for h in range(nH) for k in range(nH))


def _corruptions(cm):
    gt = [list(r) for r in cm.G.table]
    ht = [list(r) for r in cm.H.table]
    t, act = list(cm.t), [list(r) for r in cm.act]
    nG, nH = cm.G.order, cm.H.order
    for which, tab, rng in (("G", gt, nG), ("H", ht, nH), ("act", act, nH)):
        for i, row in enumerate(tab):
            for j, old in enumerate(row):
                for new in range(rng):
                    if new != old:
                        row[j] = new
                        yield which, gt, ht, t, act
                        row[j] = old
    for i, old in enumerate(t):
        for new in range(nG):
            if new != old:
                t[i] = new
                yield "t", gt, ht, t, act
                t[i] = old


def check_axioms():
    bad = []
    for name in SAMPLES:
        cm = builtin(name)
        if validate(cm) or not check_interchange(cm):
            bad.append(name)
            continue
        for which, gt, ht, t, act in _corruptions(cm):
            rejected = bool(validate(CrossedModule(FiniteGroup(gt), FiniteGroup(ht), t, act)))
            if rejected != (not _oracle_axioms(gt, ht, t, act)):
                bad.append((name, which))
                break
    return not bad, "failures: %s" % bad if bad else "5 samples valid, all single-entry corruptions classified"


# -- 2. source-path bound --------------------------------------------------------------------

def check_source_path():
    worst, count = {}, 0
    for k in range(1, 6):
        for gs in chain_gluing_sets(k):
            c = assemble(k, gs)
            if not is_regular(c):
                continue
            _, _, p = make_unbroken(c, max_length=k - 1)
            worst[k] = max(worst.get(k, 0), p.length)
            count += 1
    ok = all(worst[k] <= k - 1 for k in worst)
    return ok, "%d regular chain gluings, longest path per k: %s" % (count, worst)


# -- 3. triangle count law ------------------------------------------------------------------

def _oracle_triangle_count(cm, c):
    """Count pairs (edge labels, face label) with t(face) = h01 h12 h02^-1, reading edges by endpoints."""
    G = cm.G

    def hol(labels, a, b):
        for (s, d, _), x in zip(c.edges, labels):
            if (s, d) == (a, b):
                return x
            if (s, d) == (b, a):
                return G.inv(x)
        raise AssertionError("no edge %d-%d" % (a, b))

    n = 0
    for labels in product(range(G.order), repeat=len(c.edges)):
        word = G.mul(G.mul(hol(labels, 0, 1), hol(labels, 1, 2)), G.inv(hol(labels, 0, 2)))
        n += sum(1 for b in range(cm.H.order) if cm.t[b] == word)
    return n


def check_triangle_counts():
    c = ph.triangle().body
    out = {}
    for name in SAMPLES:
        cm = builtin(name)
        out[name] = (sum(1 for _ in enumerate_fake_flat(cm, c)), _oracle_triangle_count(cm, c),
                     cm.G.order ** 2 * cm.H.order)
    ok = all(a == b == d for a, b, d in out.values())
    return ok, "counts (enumerated, brute force, closed form): %s" % out


# -- 4. Pachner invariance ---------------------------------------------------------------------

def check_pachner():
    bad = []
    for name in ("cm_02", "cm_id2", "cm_s3"):
        cm = builtin(name)
        for label, p in (("square", ph.square()), ("fan3", ph.fan(3))):
            c = p.body
            ref = w.evaluate_complex(cm, c)
            if w.evaluate_complex(cm, pachner_flip(c, c.internal_edges()[0])) != ref:
                bad.append((name, label, "flip"))
            if w.evaluate_complex(cm, pachner_subdivide(c, 0)) != ref:
                bad.append((name, label, "1-3"))
    return not bad, "mismatches: %s" % bad if bad else "flip and 1-3 exact on square and fan"


# -- 5. gauge invariance modulo boundary -------------------------------------------------------

def check_gauge_invariance():
    total = 0
    for name in ("cm_02", "cm_s3"):
        cm = builtin(name)
        for p in (ph.square(), ph.gamma_plus()):
            for d in enumerate_fake_flat(cm, p.body):
                total += 1
                if not check_internal_invariance(cm, p.body, d):
                    return False, "%s: invariance fails at %s" % (name, d)
    return True, "%d decorations checked" % total


# -- 6. functoriality -----------------------------------------------------------------------

def check_functoriality():
    cm = builtin("cm_02")
    t1, t2 = rb.triangle_ribbon(), rb.triangle_ribbon(reverse=True)
    a = w.evaluate(cm, rb.stack(t1, t2)) == w.compose_states(w.evaluate(cm, t1), w.evaluate(cm, t2))
    bt = rb.b_times()
    ident = rb.identity_cylinder(bt.target)
    b = w.evaluate(cm, rb.stack(bt, ident)) == w.compose_states(w.evaluate(cm, bt), w.evaluate(cm, ident))
    return a and b, "triangle|triangle: %s, b_times|identity: %s" % (a, b)


# -- 7. monoidality ------------------------------------------------------------------------

def interchange_quadruple():
    cup, cap = rb.cup(), rb.cap()
    return cup, rb.identity_cylinder(cup.target), cap, rb.identity_cylinder(cap.target)


def check_monoidality():
    cm = builtin("cm_02")
    cup, cap = rb.cup(), rb.cap()
    ev = lambda r: w.evaluate(cm, r)  # noqa: E731
    sums = []
    for pairs in (((0, 0),), ((0, 1),), ((1, 0),), ((1, 1),)):
        s = rb.connected_sum(cup, cap, pairs)
        sums.append(ev(s) == w.tensor_with_collar(cm, ev(cup), ev(cap), w.collars(cup, cap, pairs)))
    r1, r3, r2, r4 = interchange_quadruple()
    pairs = ((0, 0),)
    sum_of_stacks = rb.connected_sum(rb.stack(r1, r3), rb.stack(r2, r4), pairs)
    stack_of_sums = rb.stack(rb.connected_sum(r1, r2, pairs), rb.connected_sum(r3, r4, pairs))
    structural = ev(sum_of_stacks) == ev(stack_of_sums)
    tensor_first = w.compose_states(w.tensor_with_collar(cm, ev(r1), ev(r2), w.collars(r1, r2, pairs)),
                                    w.tensor_with_collar(cm, ev(r3), ev(r4), w.collars(r3, r4, pairs)))
    compose_first = w.tensor_with_collar(cm, w.compose_states(ev(r1), ev(r3)), w.compose_states(ev(r2), ev(r4)),
                                         w.collars(rb.stack(r1, r3), rb.stack(r2, r4), pairs))
    algebraic = tensor_first == compose_first and tensor_first == ev(stack_of_sums)
    ok = all(sums) and structural and algebraic
    return ok, "cup#cap pairs: %s, interchange (ribbons, states): %s, %s" % (sums, structural, algebraic)


# -- 8. handlebody invariance ---------------------------------------------------------------

def check_handlebody():
    cm = builtin("cm_02")
    p0 = ph.coordinate_planes_s3()
    p1 = ph.handle_move_02(p0, (0, (0, 1), 0, 1))
    p2 = ph.handle_move_23(p1, (1, 0))
    vals = [w.partition_function(cm, p) for p in (p0, p1, p2)]
    return len(set(vals)) == 1, "Z before, after 0-2, after 2-3: %s" % ", ".join(map(str, vals))


# -- 9. orientation-reversal triviality ---------------------------------------------------------

def check_doubled():
    out = {name: (w.partition_function(builtin(name), ph.doubled_triangle()),
                  w.partition_function(builtin(name), ph.doubled_square())) for name in SAMPLES}
    ok = all(v == (1, 1) for v in out.values())
    return ok, "doubled triangle/square: %s" % {k: tuple(map(str, v)) for k, v in out.items()}


# -- 10. reflection positivity ----------------------------------------------------------------

def closing_ribbons():
    """Every gallery ribbon closed off by a cone, grouped by source graph."""
    from .cli import RIBBON_BUILDERS

    groups = {}
    for name in sorted(RIBBON_BUILDERS):
        r = RIBBON_BUILDERS[name]()
        if r.target.edges:
            r = rb.stack(r, rb.cone_to_point(r.target))
        groups.setdefault((r.source.n_vertices, r.source.edges), []).append(r)
    c = rb.circle_graph()
    groups.setdefault((c.n_vertices, c.edges), []).extend([
        rb.cone_to_point(c),
        rb.stack(rb.identity_cylinder(c), rb.house()),
        rb.stack(rb.stack(rb.house(), rb.birth()), rb.house()),
        rb.stack(rb.connected_sum(rb.cup(), rb.cap(), ((0, 0), (1, 1))), rb.house()),
    ])
    return [groups[k] for k in sorted(groups, key=repr)]


def check_reflection_positivity():
    bad, count = [], 0
    families = closing_ribbons()
    for name in ("cm_02", "cm_id2", "cm_s3"):
        cm = builtin(name)
        for fam in families:
            _, ok = w.reflection_positivity_check(cm, fam)
            count += 1
            if not ok:
                bad.append((name, len(fam)))
    return not bad, "non-PSD: %s" % bad if bad else "%d Gram matrices PSD, family sizes %s" % (count, [len(f) for f in families])


# -- 11. classical boundary recovery --------------------------------------------------------

def check_classical_torus():
    cm = builtin("cm_s3_flat")
    surface = rb.graph_filling(rb.torus_standard_graph())
    count = count_fake_flat(cm, surface)
    G = cm.G
    pairs = sum(1 for a in range(G.order) for b in range(G.order) if G.mul(a, b) == G.mul(b, a))
    orbit = orbit_count(cm, surface, fixed_boundary=False)
    burnside = burnside_count(cm, surface, fixed_boundary=False)
    classes = len(G.conjugacy_classes())
    ok = count == pairs == G.order * classes == 18 and orbit == burnside
    return ok, "flat count %d, commuting pairs %d, orbits %d, Burnside %s" % (count, pairs, orbit, burnside)


# -- 12. gerbe cocycles ------------------------------------------------------------------------

def check_gerbes():
    domain = ph.full_domain(2)
    pairs = sorted({p for x, y, z in domain for p in ((y, z), (x, z), (x, y))})
    coboundaries_ok = all(
        ph.check_pentagon(ph.coboundary(dict(zip(pairs, (Fraction(v, 3) for v in vals))), domain))
        for vals in product(range(3), repeat=len(pairs)))
    seeded = dict(ph.constant_gerbe(domain).phases)
    seeded[(0, 1, 0)] = Fraction(1, 2)
    rejects = not ph.check_pentagon(ph.GerbeDatum(seeded))
    planted = {p: Fraction(i + 1, 5) for i, p in enumerate(pairs)}
    dot = ph.GerbeDatum({k: Fraction(k[0] + 2 * k[1] + k[2], 7) for k in domain})
    cup = ph.gerbe_dot(ph.coboundary(planted, domain), dot)
    gamma = ph.check_gerbe_interchange(cup, dot)
    recovered = gamma is not None and ph.coboundary(gamma, domain) == ph.coboundary(planted, domain)
    ok = coboundaries_ok and rejects and recovered
    return ok, "coboundaries accepted: %s, seeded violation rejected: %s, planted gamma recovered: %s" % (
        coboundaries_ok, rejects, recovered)


CRITERIA = (
    (1, "crossed-module axioms", check_axioms),
    (2, "source-path bound", check_source_path),
    (3, "triangle count law", check_triangle_counts),
    (4, "Pachner invariance", check_pachner),
    (5, "gauge invariance modulo boundary", check_gauge_invariance),
    (6, "functoriality", check_functoriality),
    (7, "monoidality", check_monoidality),
    (8, "handlebody invariance", check_handlebody),
    (9, "orientation-reversal triviality", check_doubled),
    (10, "reflection positivity", check_reflection_positivity),
    (11, "classical boundary recovery", check_classical_torus),
    (12, "gerbe cocycles", check_gerbes),
)


def run_one(number):
    _, title, fn = CRITERIA[number - 1]
    start = time.perf_counter()
    ok, detail = fn()
    return {"criterion": number, "title": title, "passed": bool(ok), "detail": detail,
            "seconds": round(time.perf_counter() - start, 3)}


def format_line(res):
    return "[%s] %2d %-34s %7.2fs  %s" % ("PASS" if res["passed"] else "FAIL", res["criterion"], res["title"],
                                          res["seconds"], res["detail"])


def run_all(report=None):
    results = []
    for number, _, _ in CRITERIA:
        res = run_one(number)
        results.append(res)
        if report is not None:
            report(format_line(res))
    return results
