from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from twohol import polyhedron as ph
from twohol import wilson as w
from twohol.group_core import SAMPLES, TwoGroupElement, builtin, horizontal_mult
from twohol.holonomy import count_fake_flat, enumerate_fake_flat, is_fake_flat
from twohol.gauge import GaugeParam, apply_gauge
from twohol.scalars import Cyclotomic, conj, simplify

CMS = {name: builtin(name) for name in SAMPLES}
cm_names = st.sampled_from(SAMPLES)


@st.composite
def arrow_triples(draw):
    cm = CMS[draw(cm_names)]
    pick = lambda: TwoGroupElement(draw(st.integers(0, cm.H.order - 1)),  # noqa: E731
                                   draw(st.integers(0, cm.G.order - 1)))
    return cm, pick(), pick(), pick()


@given(arrow_triples())
def test_horizontal_product_is_associative(data):
    cm, x, y, z = data
    assert horizontal_mult(cm, horizontal_mult(cm, x, y), z) == horizontal_mult(cm, x, horizontal_mult(cm, y, z))


@settings(max_examples=40, deadline=None)
@given(cm_names, st.integers(0, 10 ** 6))
def test_gauge_action_preserves_fake_flatness(name, seed):
    cm = CMS[name]
    c = ph.square().body
    decorations = list(enumerate_fake_flat(cm, c))
    d = decorations[seed % len(decorations)]
    a = tuple((seed // 7 ** i) % cm.G.order for i in range(c.n_vertices))
    gamma = tuple((seed // 5 ** i) % cm.H.order for i in range(len(c.edges)))
    assert is_fake_flat(cm, c, apply_gauge(cm, c, d, GaugeParam(a, gamma)))


@settings(max_examples=30, deadline=None)
@given(cm_names, st.lists(st.integers(0, 5), min_size=3, max_size=3))
def test_fixed_boundary_counts_sum_to_total(name, labels):
    cm = CMS[name]
    c = ph.triangle().body
    fixed = {e: x % cm.G.order for e, x in zip(c.boundary_edges(), labels)}
    word_ok = count_fake_flat(cm, c, fixed)
    assert word_ok in (0, cm.ker_order)


@settings(max_examples=60)
@given(st.integers(1, 12), st.integers(0, 11), st.fractions(-3, 3, max_denominator=6))
def test_phase_arithmetic(n, k, q):
    z = Cyclotomic.phase(Fraction(k, n))
    assert simplify(z * conj(z)) == 1
    assert simplify(z * q + z * (1 - q)) == simplify(z)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=4, max_size=4))
def test_coboundaries_pass_pentagon(values):
    domain = ph.full_domain(2)
    pairs = [(0, 0), (0, 1), (1, 0), (1, 1)]
    gamma = {p: Fraction(v, 6) for p, v in zip(pairs, values)}
    assert ph.check_pentagon(ph.coboundary(gamma, domain))


@settings(max_examples=10, deadline=None)
@given(cm_names)
def test_doubled_triangle_is_one(name):
    assert w.partition_function(CMS[name], ph.doubled_triangle()) == 1
