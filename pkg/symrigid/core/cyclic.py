"""!
@file core/cyclic.py
@brief Exact arithmetic for the cyclic group Z_k and its planar actions.

@details
Group elements are stored as integers modulo k so that every combinatorial
layer stays exact. Floating point only appears in the two actions of the
group on the plane: the rotation matrix of an element and the scalar value
of the one-dimensional representations rho_j.

@author symrigid Contributors
@version 0.1.0
"""

from __future__ import annotations

import cmath
from collections.abc import Iterable
from dataclasses import dataclass
from math import gcd
from typing import Union

import numpy as np

## Planar rotation matrix (2x2, orthogonal, determinant +1).
Rotation2 = np.ndarray

## Unit-modulus complex scalar.
RepValue = complex


class GroupMismatchError(ValueError):
    """!
    @brief Raised when elements of cyclic groups of different order are combined.
    """


class RepresentationError(ValueError):
    """!
    @brief Raised when a representation index j lies outside its valid range.
    """


@dataclass(frozen=True)
class CyclicGroup:
    """!
    @brief The additive cyclic group Z_k.

    @details
    The generator gamma corresponds to 1 and acts on the plane as the
    anti-clockwise rotation by 2*pi/k.

    @section cyclic_example Example Usage
    @code{.py}
    group = CyclicGroup(6)
    a = group(4)
    b = group(5)
    assert (a + b).value == 3
    assert (-group(3)).value == 3
    @endcode
    """
    k: int

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"cyclic group order must be at least 2, got {self.k}")

    def __call__(self, value: int) -> GroupElement:
        return GroupElement(value % self.k, self)

    @property
    def identity(self) -> GroupElement:
        return GroupElement(0, self)

    @property
    def generator(self) -> GroupElement:
        return GroupElement(1 % self.k, self)

    def elements(self) -> list[GroupElement]:
        """Return every element in increasing value order."""
        return [GroupElement(value, self) for value in range(self.k)]

    def half_turn(self) -> GroupElement | None:
        """!
        @brief The element gamma^{k/2}, present only when k is even.

        @return The half-turn element, or None for odd k
        """
        if self.k % 2:
            return None
        return GroupElement(self.k // 2, self)


@dataclass(frozen=True)
class GroupElement:
    """!
    @brief An element gamma^value of a cyclic group.

    @param value Integer representative in [0, k-1]
    @param group Owning cyclic group
    """
    value: int
    group: CyclicGroup

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.group.k:
            raise ValueError(
                f"group element {self.value} out of range for Z_{self.group.k}"
            )

    @property
    def k(self) -> int:
        return self.group.k

    def _check(self, other: GroupElement) -> None:
        if other.group.k != self.group.k:
            raise GroupMismatchError(
                f"cannot combine elements of Z_{self.group.k} and Z_{other.group.k}"
            )

    def compose(self, other: GroupElement) -> GroupElement:
        """!
        @brief Group law of Z_k (addition modulo k).

        @param other Element of the same group
        @return The composed element
        @throws GroupMismatchError If the groups differ in order
        """
        self._check(other)
        return GroupElement((self.value + other.value) % self.k, self.group)

    def inverse(self) -> GroupElement:
        return GroupElement((-self.value) % self.k, self.group)

    def is_identity(self) -> bool:
        return self.value == 0

    def order(self) -> int:
        """Order of the cyclic subgroup generated by this element."""
        return self.k // gcd(self.k, self.value)

    def __add__(self, other: GroupElement) -> GroupElement:
        return self.compose(other)

    def __sub__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return self.compose(other.inverse())

    def __neg__(self) -> GroupElement:
        return self.inverse()

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


## Anything accepted where a group element of a known group is expected.
GainLike = Union[GroupElement, int]


@dataclass(frozen=True)
class SubgroupDescriptor:
    """!
    @brief A subgroup of Z_k, determined entirely by its order.

    @param group The ambient cyclic group
    @param order Order n of the subgroup; it is isomorphic to Z_n
    """
    group: CyclicGroup
    order: int

    @property
    def generator(self) -> GroupElement:
        """Canonical generator k/n of the subgroup."""
        return GroupElement((self.group.k // self.order) % self.group.k, self.group)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def contains(self, element: GainLike) -> bool:
        value = int(element) % self.group.k
        return value % (self.group.k // self.order) == 0


def rotation(delta: GroupElement) -> Rotation2:
    """!
    @brief Matrix tau(delta) of the anti-clockwise rotation by 2*pi*value/k.

    @param delta Group element
    @return 2x2 rotation matrix
    """
    theta = 2.0 * np.pi * delta.value / delta.k
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def rep_value(j: int, delta: GroupElement) -> RepValue:
    """!
    @brief Value of the representation rho_j at delta, exp(2*pi*i*j*value/k).

    @param j Representation index, 0 <= j <= k-1
    @param delta Group element
    @return Unit-modulus complex scalar
    @throws RepresentationError If j is out of range
    """
    if not 0 <= j < delta.k:
        raise RepresentationError(f"representation index j={j} out of range for k={delta.k}")
    return cmath.exp(2j * cmath.pi * ((j * delta.value) % delta.k) / delta.k)


def subgroup_generated(group: CyclicGroup, gens: Iterable[GainLike]) -> SubgroupDescriptor:
    """!
    @brief Subgroup generated by a set of elements.

    @details
    The order is k / gcd(k, g_1, ..., g_m); the empty set generates the
    trivial subgroup.

    @param group Ambient cyclic group
    @param gens Generators, as elements or integer values
    @return Descriptor of the generated subgroup
    @throws GroupMismatchError If a generator belongs to another group
    """
    divisor = group.k
    for g in gens:
        if isinstance(g, GroupElement) and g.k != group.k:
            raise GroupMismatchError(f"generator from Z_{g.k} used in Z_{group.k}")
        divisor = gcd(divisor, int(g) % group.k)
    return SubgroupDescriptor(group, group.k // divisor)


def divisors(k: int) -> list[int]:
    return [n for n in range(1, k + 1) if k % n == 0]


def s_set(k: int, j: int, i: int) -> frozenset[int]:
    """!
    @brief The set S_i(k, j) of admissible subgroup orders.

    @details
    Collects every divisor n >= 2 of k with j congruent to i modulo n,
    leaving out n = 2 when j is odd.

    @param k Group order
    @param j Representation index, 0 <= j <= k-1
    @param i One of -1, 0, 1
    @return Set of subgroup orders
    """
    if not 0 <= j < k:
        raise RepresentationError(f"representation index j={j} out of range for k={k}")
    if i not in (-1, 0, 1):
        raise ValueError(f"S-set index must be -1, 0 or 1, got {i}")
    return frozenset(
        n for n in divisors(k)
        if n >= 2 and (j - i) % n == 0 and not (n == 2 and j % 2 == 1)
    )


def s_class(k: int, j: int, order: int) -> int | None:
    """!
    @brief Which S_i(k, j) contains a given subgroup order.

    @return 0 if the order lies in S_0, +1 or -1 for S_1 / S_-1, None otherwise
    """
    if order in s_set(k, j, 0):
        return 0
    for i in (1, -1):
        if order in s_set(k, j, i):
            return i
    return None
