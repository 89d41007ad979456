from fractions import Fraction

import pytest

from twohol import polyhedron as ph
from twohol.errors import DomainError, IncompleteDecoration
from twohol.gauge import (GaugeParam, apply_gauge, burnside_count, identity_param, orbit_count, orbits,
                          satisfies_constraint)
from twohol.group_core import SAMPLES, builtin
from twohol.holonomy import (Decoration, check_internal_invariance, count_fake_flat, enumerate_fake_flat,
                             is_fake_flat, total_surface_holonomy)


@pytest.mark.parametrize("name", SAMPLES)
def test_triangle_count(name):
    cm = builtin(name)
    assert count_fake_flat(cm, ph.triangle().body) == cm.G.order ** 2 * cm.H.order


@pytest.mark.parametrize("name", SAMPLES)
def test_square_count(name):
    # two free boundary paths from 0 to 2 plus one free edge per triangle
    cm = builtin(name)
    assert count_fake_flat(cm, ph.square().body) == cm.G.order ** 3 * cm.H.order ** 2


def test_enumerated_decorations_are_fake_flat():
    cm = builtin("cm_s3")
    c = ph.gamma_plus().body
    for d in enumerate_fake_flat(cm, c):
        assert is_fake_flat(cm, c, d)


def test_fixing_boundary_restricts_count():
    cm = builtin("cm_02")
    c = ph.triangle().body
    assert count_fake_flat(cm, c, {0: 1, 1: 1, 2: 0}) == 1 * cm.H.order


def test_fixing_interior_edge_is_rejected():
    cm = builtin("cm_02")
    c = ph.square().body
    with pytest.raises(DomainError):
        count_fake_flat(cm, c, {c.internal_edges()[0]: 0})


def test_incomplete_decoration():
    cm = builtin("cm_02")
    with pytest.raises(IncompleteDecoration):
        is_fake_flat(cm, ph.triangle().body, Decoration((0, 0), (0,)))


def test_total_holonomy_source_is_path_holonomy():
    cm = builtin("cm_s3")
    c = ph.square().body
    for d in list(enumerate_fake_flat(cm, c))[::37]:
        x = total_surface_holonomy(cm, c, d)
        assert x.target(cm) == cm.G.mul(x.g, cm.t[x.h])


@pytest.mark.parametrize("name", ["cm_02", "cm_z2z4"])
def test_internal_invariance_on_square(name):
    cm = builtin(name)
    c = ph.square().body
    assert all(check_internal_invariance(cm, c, d) for d in enumerate_fake_flat(cm, c))


def test_gauge_preserves_fake_flatness():
    cm = builtin("cm_s3")
    c = ph.triangle().body
    z = GaugeParam((1, 2, 3), (0, 1, 2))
    for d in list(enumerate_fake_flat(cm, c))[:20]:
        assert is_fake_flat(cm, c, apply_gauge(cm, c, d, z))


def test_identity_param_acts_trivially():
    cm = builtin("cm_s3")
    c = ph.square().body
    z = identity_param(c)
    assert satisfies_constraint(cm, c, z)
    for d in list(enumerate_fake_flat(cm, c))[:20]:
        assert apply_gauge(cm, c, d, z) == d


@pytest.mark.parametrize("name", ["cm_02", "cm_id2", "cm_s3"])
def test_orbits_match_burnside(name):
    cm = builtin(name)
    c = ph.square().body
    assert Fraction(orbit_count(cm, c)) == burnside_count(cm, c)


@pytest.mark.parametrize("name", ["cm_02", "cm_id2"])
def test_free_boundary_orbits_match_burnside(name):
    cm = builtin(name)
    c = ph.square().body
    assert Fraction(orbit_count(cm, c, fixed_boundary=False)) == burnside_count(cm, c, fixed_boundary=False)


def test_fixed_boundary_orbits_keep_boundary_labels():
    cm = builtin("cm_s3")
    c = ph.square().body
    bd = c.boundary_edges()
    for orbit in orbits(cm, c):
        assert len({tuple(d.edges[e] for e in bd) for d in orbit}) == 1
