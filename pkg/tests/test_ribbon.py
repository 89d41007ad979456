import pytest

from twohol import ribbon as rb
from twohol.errors import ContractionError, GeometryError, StackingError, SummabilityError

GENERATORS = {
    "cup": ((0, 2), (6, 9, 4), 2),
    "cap": ((2, 0), (6, 9, 4), 2),
    "b_times": ((2, 2), (12, 21, 10), 4),
    "b_plus": ((2, 2), (12, 21, 10), 4),
    "house": ((0, 0), (4, 5, 2), 0),
    "birth": ((0, 0), (4, 5, 2), 0),
    "saddle": ((2, 2), (9, 14, 6), 4),
    "cusp": ((1, 1), (6, 9, 4), 2),
    "fold_crossing": ((2, 2), (10, 17, 8), 4),
    "reidemeister_i": ((1, 1), (6, 9, 4), 2),
    "reidemeister_ii": ((2, 2), (13, 26, 14), 4),
    "reidemeister_iii": ((3, 3), (15, 27, 13), 6),
}


@pytest.mark.parametrize("name", sorted(GENERATORS))
def test_generator_shapes(name):
    r = getattr(rb, name)().validate()
    sig, cells, marks = GENERATORS[name]
    assert r.signature == sig
    assert (r.body.n_vertices, len(r.body.edges), len(r.body.faces)) == cells
    assert len(r.markings) == marks
    r.polyhedron()


@pytest.mark.parametrize("name", sorted(GENERATORS))
def test_round_trip(name):
    r = getattr(rb, name)()
    assert rb.Ribbon.from_dict(r.to_dict()) == r


def test_malformed_record():
    data = rb.cup().to_dict()
    del data["maps"]
    with pytest.raises(GeometryError) as info:
        rb.Ribbon.from_dict(data)
    assert info.value.precondition == "schema"


def test_unit_law():
    for name in ("b_times", "saddle", "cup"):
        r = getattr(rb, name)()
        assert rb.stack(r, rb.unit(r.target)) == r
        assert rb.canonical_form(rb.stack(rb.unit(r.source), r)) == rb.canonical_form(r)


def test_stacking_is_associative():
    a, b, c = rb.b_plus(), rb.crossing_change(), rb.b_times()
    left, right = rb.stack(rb.stack(a, b), c), rb.stack(a, rb.stack(b, c))
    assert left == right


def test_stacking_needs_matching_graphs():
    with pytest.raises(StackingError):
        rb.stack(rb.cup(), rb.b_times())


def test_crossing_change_census():
    x = rb.stack(rb.stack(rb.b_plus(), rb.crossing_change()), rb.b_times())
    census = x.polyhedron().census()
    assert census["trisection_vertices"] == 0
    assert census["triple_edges"] == 6
    parts = [rb.b_plus(), rb.crossing_change(), rb.b_times()]
    glued = [rb.b_plus().target, rb.b_times().source]
    chi = sum(p.body.euler_characteristic() for p in parts) - sum(g.n_vertices - len(g.edges) for g in glued)
    assert x.body.euler_characteristic() == chi


def test_sum_associativity():
    one = rb.identity_cylinder(rb.strands(1))
    left = rb.connected_sum(rb.connected_sum(rb.cup(), one, ((0, 0),)), rb.cap(), ((1, 0),))
    right = rb.connected_sum(rb.cup(), rb.connected_sum(one, rb.cap(), ((1, 0),)), ((0, 0),))
    assert rb.canonical_form(left) == rb.canonical_form(right)


def test_cup_cap_sum_closes_the_circle():
    s = rb.connected_sum(rb.cup(), rb.cap(), ((0, 0), (1, 1)))
    assert s.source == rb.circle_graph()
    assert not s.markings


def test_sum_needs_compatible_markings():
    with pytest.raises(SummabilityError):
        rb.connected_sum(rb.cup(), rb.cup(), ((0, 0),))
    with pytest.raises(SummabilityError):
        rb.connected_sum(rb.cup(), rb.cap(), ())


def test_daggers():
    r = rb.fold_crossing()
    assert rb.dagger1(rb.dagger1(r)) == r
    assert rb.dagger2(rb.dagger2(r)) == r
    assert rb.dagger1(rb.dagger2(r)) == rb.dagger2(rb.dagger1(r))
    assert rb.dagger1(r).source.edges == tuple((d, s) for s, d in r.target.edges)


def test_contraction_commutes_with_framing_reversal():
    r = rb.fold_crossing()
    assert rb.contract_edge(rb.dagger2(r), 2) == rb.dagger2(rb.contract_edge(r, 2))


def test_contraction_errors():
    g = rb.torus_standard_graph()
    with pytest.raises(ContractionError):
        rb.contract_graph_edge(g, 0)
    with pytest.raises(ContractionError):
        rb.contract_graph_edge(rb.strands(1), 0)


def test_close_graph_errors():
    with pytest.raises(StackingError):
        rb.close_graph(rb.c_minus())
    with pytest.raises(StackingError):
        rb.close_graph(rb.strands(1))


def test_torus_standard_graph():
    g = rb.torus_standard_graph()
    assert (g.n_vertices, len(g.edges)) == (1, 2)
    assert rb.genus(g) == 1
    assert rb.genus(rb.close_graph(rb.b_times_graph())) == 1


def test_b_plus_closes_to_the_mirror_rotation():
    t = rb.torus_standard_graph()
    p = rb.contract_graph_edge(rb.close_graph(rb.b_plus_graph()), 0)
    assert rb._cyclic_key(p.rotation[0]) == rb._cyclic_key(tuple(reversed(t.rotation[0])))
    assert rb._cyclic_key(p.rotation[0]) != rb._cyclic_key(t.rotation[0])


def test_graph_filling_of_torus():
    c = rb.graph_filling(rb.torus_standard_graph())
    assert (c.n_vertices, len(c.edges), len(c.faces)) == (1, 3, 2)
    assert c.euler_characteristic() == 0 and c.is_closed()


def test_pi_twist():
    d = rb.disjoint(rb.cusp(), rb.reidemeister_i())
    once = rb.pi_twist(d)
    twice = rb.pi_twist(once)
    assert once.twist == 1 and twice.twist == 2
    assert twice.target == d.target
    assert rb.canonical_form(twice) != rb.canonical_form(d)
    with pytest.raises(GeometryError):
        rb.pi_twist(rb.cusp())


def test_empty_ribbon_is_a_stacking_unit():
    e = rb.empty_ribbon()
    assert rb.stack(e, e) == e


def test_canonical_form_ignores_relabeling():
    a = rb.connected_sum(rb.cup(), rb.cap(), ((0, 0),))
    b = rb.connected_sum(rb.cup(), rb.cap(), ((1, 1),))
    assert rb.canonical_form(a) == rb.canonical_form(b)
    assert rb.canonical_form(rb.b_times()) != rb.canonical_form(rb.saddle())
