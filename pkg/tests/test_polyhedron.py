from fractions import Fraction
from itertools import combinations, product

import pytest

from twohol import polyhedron as ph
from twohol import tetra
from twohol.complex import TwoComplex, from_triangles
from twohol.errors import IncompleteDatum, MoveInapplicable, NotSimple, TwoholError
from twohol.group_core import builtin
from twohol.wilson import partition_function


def test_gallery_census():
    assert ph.gamma_plus().census()["trisection_vertices"] == 1
    assert ph.gamma_plus().census()["faces"] == 4
    assert ph.triple_point().census()["triple_edges"] == 1
    assert ph.triple_point().census()["regions"] == 3
    assert ph.triangle().census()["trisection_vertices"] == 0


def test_coordinate_planes_census():
    p = ph.coordinate_planes_s3()
    census = p.census()
    assert census["trisection_vertices"] == 1
    assert census["regions"] == 2
    assert census["boundary_edges"] == 0
    assert p.body.is_closed()
    assert ph.complement_balls(p) == 1


def test_ambient_triangulations():
    for p in (ph.coordinate_planes_s3(), ph.lens_spine()):
        tri = p.triangulation
        assert tri.size == 1 and tri.euler() == 0 and tri.is_orientable()


def test_four_faces_on_an_edge_is_not_simple():
    c = from_triangles(6, [(0, 1, k) for k in range(2, 6)])
    with pytest.raises(NotSimple):
        ph.stratify(c)


def test_round_trip_and_stored_strata():
    p = ph.coordinate_planes_s3()
    data = p.to_dict()
    assert ph.SimplePolyhedron.from_dict(data) == p
    data["strata"]["edges"][0] = "boundary"
    with pytest.raises(NotSimple):
        ph.SimplePolyhedron.from_dict(data)


def _first_site(p, move, sites):
    for site in sites:
        try:
            return move(p, site)
        except (MoveInapplicable, TwoholError):
            continue
    raise AssertionError("no applicable site")


def test_handle_moves_invert():
    p0 = ph.coordinate_planes_s3()
    p1 = ph.handle_move_02(p0, (0, (0, 1), 0, 1))
    assert p1.triangulation.size == 3
    back = _first_site(p1, ph.handle_move_20,
                       [(t, e) for t in range(3) for e in combinations(range(4), 2)])
    assert back.triangulation.size == 1
    p2 = ph.handle_move_23(p1, (1, 0))
    assert p2.triangulation.size == 4
    undo = _first_site(p2, ph.handle_move_32,
                       [(t, e) for t in range(4) for e in combinations(range(4), 2)])
    assert undo.triangulation.size == 3


def test_moves_keep_type_zero_and_euler():
    p = ph.handle_move_23(ph.handle_move_02(ph.coordinate_planes_s3(), (0, (0, 1), 0, 1)), (1, 0))
    assert ph.complement_balls(p) == 1
    assert p.triangulation.euler() == 0
    assert len(p.trisection_vertices()) == p.triangulation.size


def test_move_needs_ambient_triangulation():
    with pytest.raises(MoveInapplicable):
        ph.handle_move_02(ph.doubled_triangle(), (0, (0, 1), 0, 1))


def test_lens_space_counts_homomorphisms_to_coker():
    # |Hom(Z/4, Q)| for Q = coker t
    assert partition_function(builtin("cm_02"), ph.lens_spine()) == 2
    assert partition_function(builtin("cm_id2"), ph.lens_spine()) == 1
    assert partition_function(builtin("cm_s3"), ph.coordinate_planes_s3()) == 1


# -- gerbes -----------------------------------------------------------------------------

def test_constant_gerbe_passes_pentagon():
    assert ph.check_pentagon(ph.constant_gerbe(ph.full_domain(3), Fraction(1, 4)))


def test_hollow_tetrahedron_domain():
    faces = ph.hollow_tetrahedron()
    assert len(faces) == 4
    gamma = {p: Fraction(i, 7) for i, p in enumerate(combinations(range(4), 2))}
    sigma = ph.coboundary(gamma, faces)
    assert ph.check_pentagon(sigma, [(0, 1, 2, 3)])


def test_explicit_quadruple_needs_every_face():
    sigma = ph.GerbeDatum({(0, 1, 2): 0})
    with pytest.raises(IncompleteDatum):
        ph.check_pentagon(sigma, [(0, 1, 2, 3)])


def test_phases_are_reduced_mod_one():
    sigma = ph.GerbeDatum({(0, 0, 0): Fraction(5, 4)})
    assert sigma[(0, 0, 0)] == Fraction(1, 4)


def test_interchange_matches_brute_force():
    domain = ph.full_domain(2)
    gamma = {p: Fraction(v, 3) for p, v in zip(sorted({(a, b) for a in range(2) for b in range(2)}), (0, 1, 2, 1))}
    dot = ph.constant_gerbe(domain, Fraction(1, 6))
    cup = ph.gerbe_dot(ph.coboundary(gamma, domain), dot)
    fast = ph.check_gerbe_interchange(cup, dot)
    slow = ph.brute_force_interchange(cup, dot, 3)
    assert fast is not None and slow is not None
    assert ph.coboundary(fast, domain) == ph.coboundary(slow, domain)


def test_interchange_detects_obstruction():
    domain = ph.full_domain(2)
    cup = dict(ph.constant_gerbe(domain).phases)
    cup[(0, 1, 0)] = Fraction(1, 2)
    result = ph.check_gerbe_interchange(ph.GerbeDatum(cup), ph.constant_gerbe(domain))
    assert result is None
    assert ph.brute_force_interchange(ph.GerbeDatum(cup), ph.constant_gerbe(domain), 4) is None


def test_gerbe_round_trip():
    sigma = ph.coboundary({(0, 0): Fraction(1, 3), (0, 1): Fraction(1, 5), (1, 0): 0, (1, 1): Fraction(2, 3)},
                          ph.full_domain(2))
    assert ph.GerbeDatum.from_dict(sigma.to_dict()) == sigma


def test_tetra_permutations():
    for p in product(range(4), repeat=4):
        if len(set(p)) == 4:
            assert tetra.compose(p, tetra.inverse(p)) == (0, 1, 2, 3)
    assert tetra.parity((1, 0, 2, 3)) == 1
