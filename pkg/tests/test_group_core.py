import pytest

from twohol.errors import InvalidCrossedModule
from twohol.group_core import (SAMPLES, CrossedModule, FiniteGroup, TwoGroupElement, arrows, builtin,
                               check_interchange, cyclic_group, horizontal_inverse, horizontal_mult,
                               symmetric_group, validate, vertical_compose, whisker)


@pytest.mark.parametrize("name", SAMPLES + ("cm_s3_flat", "cm_z2_flat"))
def test_builtins_are_crossed_modules(name):
    cm = builtin(name)
    assert validate(cm) == []
    assert check_interchange(cm)


def test_orders():
    table = {name: (builtin(name).im_order, builtin(name).ker_order, builtin(name).coker_order)
             for name in SAMPLES}
    assert table == {"cm_triv": (1, 1, 1), "cm_id2": (2, 1, 1), "cm_02": (1, 2, 2),
                     "cm_z2z4": (2, 1, 2), "cm_s3": (3, 1, 2)}


def test_image_of_t_is_normal():
    for name in SAMPLES:
        cm = builtin(name)
        im = set(cm.image_t())
        assert all(cm.G.conj(g, x) in im for g in cm.G.elements for x in im)


def test_kernel_is_central():
    for name in SAMPLES:
        cm = builtin(name)
        for k in cm.kernel_t():
            assert all(cm.H.mul(k, h) == cm.H.mul(h, k) for h in cm.H.elements)


def test_symmetric_group_is_nonabelian_with_three_classes():
    S3 = symmetric_group(3)
    assert S3.order == 6 and not S3.is_abelian()
    assert len(S3.conjugacy_classes()) == 3


def test_peiffer_fails_for_nonabelian_fiber_over_trivial_base():
    S3 = symmetric_group(3)
    bad = CrossedModule(cyclic_group(1), S3, (0,) * 6, [list(range(6))])
    assert {v.axiom for v in validate(bad)} == {"peiffer"}


def test_nonhomomorphic_t_is_reported():
    Z2 = cyclic_group(2)
    bad = CrossedModule(Z2, Z2, (1, 0), [[0, 1], [0, 1]])
    assert any(v.axiom == "t:homomorphism" for v in validate(bad))


def test_non_group_table_is_reported():
    bad = CrossedModule(FiniteGroup([[0, 1], [1, 1]]), cyclic_group(1), (0,), [[0], [0]])
    assert validate(bad)


def test_schema_error():
    with pytest.raises(InvalidCrossedModule) as info:
        CrossedModule.from_dict({"order": [2, 2], "mul": [[[0, 1]], [[0]]], "t": [0, 0], "act": []})
    assert info.value.precondition == "schema"
    with pytest.raises(InvalidCrossedModule):
        CrossedModule.from_dict({"order": [2, 1]})


def test_round_trip():
    for name in SAMPLES:
        cm = builtin(name)
        assert CrossedModule.from_dict(cm.to_dict()) == cm


def test_arrow_laws_s3():
    cm = builtin("cm_s3")
    xs = arrows(cm)
    assert len(xs) == cm.G.order * cm.H.order
    unit = TwoGroupElement(0, 0)
    for x in xs:
        assert horizontal_mult(cm, x, unit) == x == horizontal_mult(cm, unit, x)
        assert horizontal_mult(cm, x, horizontal_inverse(cm, x)) == unit
        assert x.target(cm) == cm.G.mul(x.g, cm.t[x.h])
    for x in xs[:6]:
        for y in xs:
            prod = horizontal_mult(cm, x, y)
            assert prod.source(cm) == cm.G.mul(x.source(cm), y.source(cm))
            assert prod.target(cm) == cm.G.mul(x.target(cm), y.target(cm))


def test_vertical_composition_needs_matching_ends():
    from twohol.errors import CompositionError

    cm = builtin("cm_s3")
    x = TwoGroupElement(1, 0)
    with pytest.raises(CompositionError):
        vertical_compose(cm, x, TwoGroupElement(0, 0))
    y = TwoGroupElement(2, x.target(cm))
    assert vertical_compose(cm, x, y).source(cm) == x.source(cm)


def test_whisker_is_conjugation_by_an_identity_arrow():
    cm = builtin("cm_s3")
    for a in cm.G.elements:
        for x in arrows(cm):
            w = whisker(cm, a, x)
            assert w.source(cm) == cm.G.conj(a, x.source(cm))
            assert w.target(cm) == cm.G.conj(a, x.target(cm))
