from fractions import Fraction

import pytest

from twohol import polyhedron as ph
from twohol import ribbon as rb
from twohol import wilson as w
from twohol.complex import pachner_flip, pachner_subdivide
from twohol.errors import DomainError, InconsistentGerbe, SpaceMismatch
from twohol.group_core import SAMPLES, builtin
from twohol.scalars import Cyclotomic, simplify


def test_derived_weights():
    assert w.Normalization.derived(builtin("cm_02")) == w.Normalization(Fraction(1, 2), Fraction(1), Fraction(1, 2))
    assert w.Normalization.derived(builtin("cm_s3")) == w.Normalization(Fraction(1), Fraction(1, 3), Fraction(1, 2))
    for name in SAMPLES:
        cm = builtin(name)
        assert w.Normalization.derived(cm).vertex == Fraction(1, cm.coker_order)


def test_literal_preset_overcounts_the_doubled_triangle():
    for name in SAMPLES:
        cm = builtin(name)
        nz = w.Normalization.literal(cm)
        assert nz.vertex == cm.coker_order ** 2
        assert w.partition_function(cm, ph.doubled_triangle(), normalization=nz) == cm.coker_order ** 3


def test_empty_ribbon():
    state = w.evaluate(builtin("cm_s3"), rb.empty_ribbon())
    assert state.table == {((), ()): 1}


@pytest.mark.parametrize("name", ["cup", "cap", "saddle", "b_times", "house", "birth"])
def test_trivial_crossed_module_gives_one(name):
    state = w.evaluate(builtin("cm_triv"), getattr(rb, name)())
    assert list(state.table.values()) == [1]


@pytest.mark.parametrize("name", SAMPLES)
def test_single_triangle_is_an_indicator(name):
    cm = builtin(name)
    c = ph.triangle().body
    state = w.evaluate_complex(cm, c)
    image = set(cm.image_t())
    G = cm.G
    for (beta, _), value in state.table.items():
        labels = dict(zip(c.boundary_edges(), beta))
        h01, h02, h12 = (labels[c.edges.index(e)] for e in ((0, 1, 1), (0, 2, 1), (1, 2, 1)))
        assert value == 1
        assert G.mul(G.mul(h01, h12), G.inv(h02)) in image
    assert len(state.table) == G.order ** 2 * len(image)


@pytest.mark.parametrize("name", SAMPLES)
def test_birth_then_death(name):
    cm = builtin(name)
    state = w.evaluate(cm, rb.stack(rb.birth(), rb.house()))
    assert state.dense() == [[1]]


@pytest.mark.parametrize("name", ["cm_02", "cm_z2z4", "cm_s3"])
def test_pachner_on_square(name):
    cm = builtin(name)
    c = ph.square().body
    ref = w.evaluate_complex(cm, c)
    assert w.evaluate_complex(cm, pachner_flip(c, c.internal_edges()[0])) == ref
    assert w.evaluate_complex(cm, pachner_subdivide(c, 1)) == ref


@pytest.mark.parametrize("name", ["cm_02", "cm_s3"])
def test_triangle_pair_functoriality(name):
    cm = builtin(name)
    t1, t2 = rb.triangle_ribbon(), rb.triangle_ribbon(reverse=True)
    assert w.evaluate(cm, rb.stack(t1, t2)) == w.compose_states(w.evaluate(cm, t1), w.evaluate(cm, t2))


def test_identity_cylinder_is_idempotent():
    cm = builtin("cm_02")
    ident = rb.identity_cylinder(rb.c_minus())
    e = w.evaluate(cm, ident)
    assert w.compose_states(e, e) == e == w.evaluate(cm, rb.stack(ident, ident))


def test_identity_cylinder_acts_trivially_on_invariant_states():
    cm = builtin("cm_02")
    r = rb.cup()
    e = w.evaluate(cm, r)
    assert w.compose_states(e, w.evaluate(cm, rb.identity_cylinder(r.target))) == e


def test_compose_needs_matching_spaces():
    cm = builtin("cm_02")
    with pytest.raises(SpaceMismatch):
        w.compose_states(w.evaluate(cm, rb.cup()), w.evaluate(cm, rb.b_times()))


@pytest.mark.parametrize("name", SAMPLES)
def test_collar_average(name):
    cm = builtin(name)
    for a, b in ((1, 1), (1, 2), (2, 2)):
        assert w.collar_average(cm, a, b) == Fraction(1, cm.coker_order)


def test_single_pair_sums_factor_through_the_collar():
    cm = builtin("cm_z2z4")
    cup, cap = rb.cup(), rb.cap()
    for pairs in (((0, 0),), ((1, 1),)):
        lhs = w.evaluate(cm, rb.connected_sum(cup, cap, pairs))
        rhs = w.tensor_with_collar(cm, w.evaluate(cm, cup), w.evaluate(cm, cap), w.collars(cup, cap, pairs))
        assert lhs == rhs


def test_partition_needs_closed_input():
    with pytest.raises(DomainError) as info:
        w.partition_function(builtin("cm_02"), ph.square())
    assert info.value.precondition == "closed polyhedron"


def test_mirror_pairing_is_a_sum_of_squares():
    cm = builtin("cm_02")
    for r in (rb.cup(), rb.saddle(), rb.cusp()):
        state = w.evaluate(cm, r)
        value = w.orientation_pairing(cm, w.evaluate(cm, rb.dagger1(r)), state)
        assert value == sum(v * v for v in state.table.values())


def test_framing_reversal_keeps_the_state():
    cm = builtin("cm_s3")
    r = rb.fold_crossing()
    assert w.evaluate(cm, rb.dagger2(r)).table == w.evaluate(cm, r).table


def test_pairing_with_zero_state():
    cm = builtin("cm_02")
    state = w.evaluate(cm, rb.cup())
    zero = w.WilsonState(state.order, state.target, state.source, {})
    assert w.orientation_pairing(cm, zero, state) == 0


def test_psd():
    assert w.is_psd([[1, 1], [1, 1]])
    assert not w.is_psd([[1, 2], [2, 1]])
    assert not w.is_psd([[0, 1], [1, 0]])
    i = Cyclotomic.phase(Fraction(1, 4))
    minus_i = Cyclotomic.phase(Fraction(3, 4))
    assert w.is_psd([[2, i], [minus_i, 2]])
    assert not w.is_psd([[1, 2 * i], [2 * minus_i, 1]])


def test_gram_matrix_of_closing_ribbons():
    cm = builtin("cm_s3")
    c = rb.circle_graph()
    ribbons = [rb.cone_to_point(c), rb.stack(rb.identity_cylinder(c), rb.house())]
    g, ok = w.reflection_positivity_check(cm, ribbons)
    assert ok and len(g) == 2 and g[0][1] == g[1][0]


def test_workers_do_not_change_the_state():
    cm = builtin("cm_02")
    r = rb.saddle()
    assert w.evaluate(cm, r, workers=2) == w.evaluate(cm, r)


def test_constant_gerbe_scales_by_one_phase_per_triple_edge():
    cm = builtin("cm_02")
    c = ph.triple_point().body
    plain = w.evaluate_complex(cm, c)
    gerbe = ph.constant_gerbe(ph.full_domain(cm.H.order), Fraction(1, 4))
    twisted = w.evaluate_complex(cm, c, gerbe)
    phase = Cyclotomic.phase(Fraction(1, 4))
    assert {k: simplify(v * phase) for k, v in plain.table.items()} == twisted.table


def test_inconsistent_gerbe_is_rejected():
    cm = builtin("cm_02")
    bad = dict(ph.constant_gerbe(ph.full_domain(2)).phases)
    bad[(0, 1, 0)] = Fraction(1, 2)
    with pytest.raises(InconsistentGerbe):
        w.evaluate_complex(cm, ph.triple_point().body, ph.GerbeDatum(bad))


def test_state_round_trip():
    cm = builtin("cm_02")
    gerbe = ph.constant_gerbe(ph.full_domain(2), Fraction(1, 3))
    state = w.evaluate_complex(cm, ph.triple_point().body, gerbe)
    again = w.WilsonState.from_dict(state.to_dict(), state.source, state.target)
    assert again.table == state.table
