from fractions import Fraction

import pytest

from twohol import polyhedron as ph
from twohol.group_core import builtin
from twohol.holonomy import count_fake_flat
from twohol.statesum import boundary_table, brute_force_table, count_configurations


def _clean(table):
    return {k: v for k, v in table.items() if v}


CASES = [(n, g) for n in ("cm_02", "cm_z2z4", "cm_s3") for g in ("triangle", "square", "gamma_plus")
         if (n, g) != ("cm_s3", "gamma_plus")]  # 6^8 edge labellings is too many for brute force


@pytest.mark.parametrize("name, geometry", CASES)
def test_elimination_matches_brute_force(name, geometry):
    cm = builtin(name)
    c = getattr(ph, geometry)().body
    keep = c.boundary_edges()
    assert _clean(boundary_table(cm, c, keep)) == brute_force_table(cm, c, keep)


@pytest.mark.parametrize("name", ["cm_02", "cm_s3"])
def test_configuration_count_matches_enumeration(name):
    cm = builtin(name)
    for p in (ph.square(), ph.triple_point()):
        assert count_configurations(cm, p.body) == count_fake_flat(cm, p.body)


def test_gerbe_weighted_table_matches_brute_force():
    cm = builtin("cm_02")
    c = ph.triple_point().body
    gerbe = ph.coboundary({(0, 0): Fraction(1, 3), (0, 1): 0, (1, 0): Fraction(1, 6), (1, 1): Fraction(1, 2)},
                          ph.full_domain(2))
    triple = [e for e, d in enumerate(c.edge_degree()) if d == 3]
    keep = c.boundary_edges()
    assert _clean(boundary_table(cm, c, keep, None, gerbe, triple)) == brute_force_table(cm, c, keep, gerbe, triple)
