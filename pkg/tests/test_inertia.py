from fractions import Fraction

import pytest

from stackyring import fixtures
from stackyring.errors import NotASector
from stackyring.inertia import (inertia_components, obstruction_exponents,
                                three_sectors)
from stackyring.lattice import FgAbGroup
from stackyring.stacky import ExtendedStackyFan


def p113():
    return ExtendedStackyFan.build(FgAbGroup(2, ()),
                                   [[1, 0], [0, 1], [-1, -3]],
                                   [[0, 1], [1, 2], [0, 2]])


def test_first_inertia_is_the_box(p112):
    comps = inertia_components(p112, 1)
    assert [c.elements[0].value for c in comps] == [(0, 0), (0, -1)]
    assert [c.total_age for c in comps] == [0, 1]
    # the twisted component is supported on the singular cone
    assert comps[1].joint_cone == (0, 2)
    assert comps[1].quotient.group.order() == 2


def test_second_inertia_counts():
    assert len(inertia_components(fixtures.load_fan("p112"), 2)) == 4
    assert len(inertia_components(fixtures.load_fan("p2"), 2)) == 1
    assert len(inertia_components(fixtures.load_fan("gerbe_r2"), 2)) == 4


def test_inertia_rejects_nonpositive_order(p112):
    with pytest.raises(ValueError):
        inertia_components(p112, 0)


def test_three_sector_counts():
    expected = {"p1": 1, "p2": 1, "p112": 4, "p112_hirzebruch": 1,
                "example_rank1": 7, "gerbe_r2": 4, "gerbe_r3": 9}
    for name, count in expected.items():
        assert len(three_sectors(fixtures.load_fan(name))) == count, name


def test_three_sector_complement_closes_the_triple(p112):
    for sector in three_sectors(p112):
        g1, g2, g3 = sector.elements
        total = p112.group.add(p112.group.add(g1.value, g2.value), g3.value)
        cone = sector.joint_cone
        coeffs = p112.fan.cone_coefficients(cone, p112.bar(total))
        assert coeffs is not None
        assert all(a == int(a) for a in coeffs)


def test_obstruction_trivial_for_inverse_pairs():
    for name in ("p112", "gerbe_r3", "example_rank1"):
        sfan = fixtures.load_fan(name)
        box = {b.value: b for b in sfan.box()}
        zero = box[sfan.group.zero()]
        for b in box.values():
            comp = sfan.box_complement(b, zero)
            assert obstruction_exponents(sfan, b, zero, comp) == frozenset()


def test_obstruction_exponents_nontrivial():
    sfan = p113()
    box = {b.value: b for b in sfan.box()}
    v2 = box[(0, -2)]
    assert v2.age == Fraction(4, 3)
    comp = sfan.box_complement(v2, v2)
    assert comp.value == (0, -2)
    rays = obstruction_exponents(sfan, v2, v2, v2)
    assert rays == frozenset({0, 2})

    v1 = box[(0, -1)]
    assert sfan.box_complement(v1, v1).value == (0, -1)
    # ages 2/3 + 2/3 + 2/3 = 2: both cone coefficients equal 1
    assert obstruction_exponents(sfan, v1, v1, v1) == frozenset()


def test_obstruction_rejects_wrong_complement():
    sfan = p113()
    box = {b.value: b for b in sfan.box()}
    v1, v2 = box[(0, -1)], box[(0, -2)]
    with pytest.raises(NotASector):
        obstruction_exponents(sfan, v1, v1, v2)


def test_all_fixture_sectors_validate():
    for name in fixtures.FAN_FIXTURES:
        sfan = fixtures.load_fan(name)
        for sector in three_sectors(sfan):
            rays = obstruction_exponents(sfan, *sector.elements)
            assert rays <= set(sector.joint_cone)
