import pytest

from twohol.complex import (Gluing, GluingSet, TwoComplex, assemble, chain_gluing_sets, from_triangles,
                            is_regular, make_unbroken, pachner_flip, pachner_merge, pachner_subdivide,
                            source_path, tree_gluing_sets)
from twohol.errors import GeometryError
from twohol import polyhedron as ph


def test_square_cells():
    c = ph.square().body
    assert (c.n_vertices, len(c.edges), len(c.faces)) == (4, 5, 2)
    assert len(c.internal_edges()) == 1
    assert c.euler_characteristic() == 1


def test_round_trip():
    for p in (ph.square(), ph.gamma_plus(), ph.coordinate_planes_s3()):
        c = p.body
        assert TwoComplex.from_dict(c.to_dict()) == c


def test_face_slots_must_close():
    c = from_triangles(3, [(0, 1, 2)])
    bad = TwoComplex(c.n_vertices, c.edges, (type(c.faces[0])(tuple(reversed(c.faces[0].slots))),))
    with pytest.raises(GeometryError):
        bad.validate()


def test_assemble_two_triangles_into_a_square():
    c = assemble(2, [Gluing(0, 2, 1, 1)])
    assert (c.n_vertices, len(c.edges), len(c.faces)) == (4, 5, 2)
    assert is_regular(c)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_tree_gluings_have_short_source_paths(k):
    n = 0
    for gs in tree_gluing_sets(k):
        c = assemble(k, gs)
        if not is_regular(c):
            continue
        _, c2, p = make_unbroken(c, max_length=k - 1)
        assert p.length <= k - 1
        assert source_path(c2).length == p.length
        n += 1
    assert n > 0


def test_chain_count_matches_indexing():
    # (out slot != previous in slot) x in slot x direction per gluing
    assert sum(1 for _ in chain_gluing_sets(3)) == (3 * 3 * 2) * (2 * 3 * 2)


def test_flip_preserves_boundary_and_counts():
    c = ph.square().body
    e = c.internal_edges()[0]
    d = pachner_flip(c, e)
    assert len(d.edges) == len(c.edges) and len(d.faces) == 2
    assert sorted(c.endpoints(x) for x in c.boundary_edges()) == \
        sorted(d.endpoints(x) for x in d.boundary_edges())
    assert d.endpoints(d.internal_edges()[0]) != c.endpoints(e)


def test_subdivide_then_merge_restores_counts():
    c = ph.triangle().body
    s = pachner_subdivide(c, 0)
    assert (s.n_vertices, len(s.edges), len(s.faces)) == (4, 6, 3)
    m = pachner_merge(s, 3)
    assert (m.n_vertices, len(m.edges), len(m.faces)) == (3, 3, 1)


def test_components_of_disjoint_union():
    from twohol.complex import disjoint_union

    c, offsets = disjoint_union(ph.triangle().body, ph.square().body)
    assert offsets == (3, 3, 1)
    assert len(c.components()) == 2
