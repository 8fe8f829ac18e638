"""Box elements, decomposition, and quotient stacky fans."""

from fractions import Fraction

import pytest

import oracles
from stackyring import fixtures
from stackyring.errors import (InfiniteCokernel, NoCommonCone,
                               OutsideSupport)
from stackyring.lattice import FgAbGroup
from stackyring.stacky import ExtendedStackyFan


def half_line():
    # incomplete fan: single ray on the line
    return ExtendedStackyFan.build(FgAbGroup(1, ()), [[1]], [[0]], [[-1]])


def test_build_rejects_bad_input():
    with pytest.raises(InfiniteCokernel):
        ExtendedStackyFan.build(FgAbGroup(2, ()), [[1, 0], [-1, 0]],
                                [[0], [1]])
    with pytest.raises(ValueError):
        # zero ray lift has no direction
        ExtendedStackyFan.build(FgAbGroup(1, ()), [[0]], [[0]])


def test_box_p112(p112):
    box = p112.box()
    assert [b.value for b in box] == [(0, 0), (0, -1)]
    zero, v = box
    assert zero.age == 0 and zero.min_cone == ()
    assert v.min_cone == (0, 2)
    assert v.coeffs == (Fraction(1, 2), Fraction(1, 2))
    assert v.age == 1


def test_box_matches_oracle_on_top_cones():
    for name in fixtures.FAN_FIXTURES:
        sfan = fixtures.load_fan(name)
        for cone in sfan.fan.max_cones:
            got = {b.value for b in sfan.box_of_cone(cone)}
            want = oracles.box_values(sfan.group.rank, sfan.group.torsion,
                                      [sfan.ray_lifts[i] for i in cone])
            assert got == want, (name, cone)


def test_box_of_face_is_subset():
    sfan = fixtures.load_fan("p112")
    top = {b.value for b in sfan.box_of_cone((0, 2))}
    for face in ((0,), (2,), ()):
        sub = {b.value for b in sfan.box_of_cone(face)}
        assert sub <= top


def test_box_decompose(p112):
    v, mult = p112.box_decompose((1, -1))
    assert v.value == (0, -1)
    assert {i: k for i, k in mult.items() if k} == {0: 1}

    v, mult = p112.box_decompose((-2, -5))
    assert v.value == (0, -1)
    assert {i: k for i, k in mult.items() if k} == {2: 2}

    v, mult = p112.box_decompose((0, 0))
    assert v.value == (0, 0)
    assert not any(mult.values())


def test_box_decompose_round_trip(p112):
    for c in ((3, 1), (-4, -9), (5, -2), (0, -3)):
        v, mult = p112.box_decompose(c)
        total = v.value
        for i, k in mult.items():
            total = p112.group.add(total,
                                   p112.group.scale(k, p112.ray_lifts[i]))
        assert total == c


def test_box_decompose_outside_support():
    sfan = half_line()
    with pytest.raises(OutsideSupport):
        sfan.box_decompose((-1,))


def test_box_complement(p112):
    zero, v = p112.box()
    assert p112.box_complement(v, v).value == (0, 0)
    assert p112.box_complement(zero, v).value == (0, -1)
    assert p112.box_complement(zero, zero).value == (0, 0)


def test_smooth_refinement_box_is_trivial():
    sfan = ExtendedStackyFan.build(
        FgAbGroup(2, ()), [[1, 0], [0, 1], [-1, -2], [0, -1]],
        [[0, 1], [1, 2], [2, 3], [0, 3]])
    assert [b.value for b in sfan.box()] == [(0, 0)]


def test_box_complement_requires_common_cone():
    sfan = fixtures.load_fan("example_rank1")
    by_value = {b.value: b for b in sfan.box()}
    plus, minus = by_value[(1,)], by_value[(-1,)]
    assert plus.min_cone == (0,) and minus.min_cone == (1,)
    with pytest.raises(NoCommonCone):
        sfan.box_complement(plus, minus)


def test_gerbe_box_is_whole_group():
    sfan = fixtures.load_fan("gerbe_z4z9")
    values = {b.value for b in sfan.box()}
    assert values == set(sfan.group.elements())
    assert all(b.age == 0 for b in sfan.box())


def test_local_group_orders(p112):
    lg, _ = p112.local_group((0, 2))
    assert lg.order() == 2
    lg, _ = p112.local_group((0, 1))
    assert lg.order() == 1
    lg, _ = p112.local_group((1, 2))
    assert lg.order() == 1


def test_normalize_extra_data_reduces_into_box():
    big = ExtendedStackyFan.build(FgAbGroup(1, ()), [[2], [-2]],
                                  [[0], [1]], [[1], [3], [2]])
    norm, warnings = big.normalize_extra_data()
    assert norm.extra == ((1,), (1,), (0,))
    assert warnings == ()


def test_normalize_extra_data_warns_outside_support():
    sfan = half_line()
    norm, warnings = sfan.normalize_extra_data()
    assert norm.extra == ((-1,),)
    assert warnings == (1,)


def test_quotient_stacky_fan(p112):
    q = p112.quotient_stacky_fan((0, 2))
    assert q.group.order() == 2
    assert q.fan.ambient_dim == 0
    assert q.fan.max_cones == ((),)
    # quotient by the zero cone is the fan itself
    assert p112.quotient_stacky_fan(()) == p112


def test_quotient_keeps_extra_data():
    sfan = fixtures.load_fan("example_rank1")
    q = sfan.quotient_stacky_fan((0,))
    assert q.fan.ambient_dim == 0
    assert len(q.extra) >= 1
