"""Tests for the cyclic group core."""

import cmath

import numpy as np
import pytest

from symrigid.core.cyclic import (
    CyclicGroup,
    GroupMismatchError,
    RepresentationError,
    divisors,
    rep_value,
    rotation,
    s_class,
    s_set,
    subgroup_generated,
)


class TestGroupArithmetic:
    def test_addition_wraps(self):
        group = CyclicGroup(6)
        assert (group(4) + group(5)).value == 3

    def test_half_turn_is_its_own_inverse(self):
        group = CyclicGroup(6)
        assert (-group(3)).value == 3
        assert group.half_turn().value == 3
        assert CyclicGroup(5).half_turn() is None

    def test_subtraction(self):
        group = CyclicGroup(8)
        assert (group(1) - group(3)).value == 6

    @pytest.mark.parametrize("k,value,order", [(8, 6, 4), (8, 0, 1), (9, 3, 3), (7, 2, 7)])
    def test_order(self, k, value, order):
        assert CyclicGroup(k)(value).order() == order

    def test_mismatched_groups(self):
        with pytest.raises(GroupMismatchError):
            CyclicGroup(6)(1) + CyclicGroup(8)(1)

    def test_order_below_two_rejected(self):
        with pytest.raises(ValueError):
            CyclicGroup(1)


class TestSubgroups:
    def test_generated_subgroup(self):
        sub = subgroup_generated(CyclicGroup(12), [4, 6])
        assert sub.order == 6
        assert sub.contains(2)
        assert not sub.contains(3)

    def test_empty_generators_give_trivial_subgroup(self):
        assert subgroup_generated(CyclicGroup(5), []).is_trivial

    def test_divisors(self):
        assert divisors(12) == [1, 2, 3, 4, 6, 12]


class TestSSets:
    def test_s0_of_nine_three(self):
        assert s_set(9, 3, 0) == {3}

    def test_two_excluded_for_odd_j(self):
        assert s_set(6, 3, 0) == {3}
        assert s_set(6, 3, 1) == frozenset()
        assert s_set(6, 3, -1) == frozenset()

    def test_even_j(self):
        assert s_set(8, 4, 0) == {2, 4}
        assert s_set(8, 2, 0) == {2}
        assert s_set(6, 2, -1) == {3}

    @pytest.mark.parametrize("k,j,order,expected", [
        (9, 3, 3, 0), (6, 2, 3, -1), (8, 3, 4, -1), (7, 3, 2, None), (8, 4, 8, None),
    ])
    def test_s_class(self, k, j, order, expected):
        assert s_class(k, j, order) == expected

    def test_bad_index(self):
        with pytest.raises(ValueError):
            s_set(6, 2, 2)
        with pytest.raises(RepresentationError):
            s_set(6, 6, 0)


class TestRepresentations:
    def test_rotation_quarter_turn(self):
        assert np.allclose(rotation(CyclicGroup(4)(1)) @ [1.0, 0.0], [0.0, 1.0])

    def test_rep_value(self):
        group = CyclicGroup(4)
        assert cmath.isclose(rep_value(2, group(1)), -1)
        assert cmath.isclose(rep_value(0, group(3)), 1)

    def test_rep_value_is_a_character(self):
        group = CyclicGroup(7)
        a, b = group(3), group(5)
        assert cmath.isclose(rep_value(2, a + b), rep_value(2, a) * rep_value(2, b))

    def test_rep_index_range(self):
        with pytest.raises(RepresentationError):
            rep_value(4, CyclicGroup(4)(1))


@pytest.mark.parametrize("k", range(2, 13))
class TestExhaustiveLaws:
    def test_group_laws(self, k):
        group = CyclicGroup(k)
        elements = group.elements()
        for a in elements:
            assert a + group.identity == a == group.identity + a
            assert (a + a.inverse()).is_identity()
            for b in elements:
                assert a.compose(b) == a + b == b + a
                for c in elements:
                    assert (a + b) + c == a + (b + c)

    def test_rotation_is_a_homomorphism(self, k):
        elements = CyclicGroup(k).elements()
        for a in elements:
            for b in elements:
                assert np.allclose(rotation(a + b), rotation(a) @ rotation(b), rtol=0, atol=1e-12)

    def test_rep_value_is_a_homomorphism(self, k):
        elements = CyclicGroup(k).elements()
        for j in range(k):
            for a in elements:
                for b in elements:
                    product = rep_value(j, a) * rep_value(j, b)
                    assert abs(rep_value(j, a + b) - product) <= 1e-12

    def test_subgroup_orders_divide_k(self, k):
        group = CyclicGroup(k)
        for a in range(k):
            for b in range(k):
                assert k % subgroup_generated(group, [a, b]).order == 0
