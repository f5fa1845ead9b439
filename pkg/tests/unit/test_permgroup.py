"""Unit tests for permutation groups, subgroup sets and factorizations."""

import random

import pytest
from sympy.combinatorics import Permutation, PermutationGroup

from arctest.algebra.perm import Perm, compose, invert
from arctest.algebra.permgroup import (
    PermGroup,
    SubgroupSet,
    closure,
    conjugacy_classes,
    conjugate_subgroup,
    coset_transitivity,
    double_coset,
    factorization_conditions,
    in_double_coset,
    intersect,
    is_factorization,
    is_normal,
    is_primitive,
    is_quasiprimitive,
    is_regular,
    minimal_normal_subgroups,
    normal_closure,
    product_group,
    product_set,
)
from arctest.core.errors import (
    BoundExceededError,
    DegreeMismatchError,
    NotSubgroupError,
    NotTransitiveError,
    PointOutOfRangeError,
)


def group(degree, *cycle_lists):
    return PermGroup(degree, [Perm.from_cycles(degree, cycles) for cycles in cycle_lists])


def symmetric(n):
    return group(n, [tuple(range(n))], [(0, 1)])


def alternating(n):
    if n % 2:
        return group(n, [tuple(range(n))], [(0, 1, 2)])
    return group(n, [(0, 1, 2)], [tuple(range(1, n))])


def cyclic(n):
    return group(n, [tuple(range(n))])


def sympy_order(g):
    return PermutationGroup([Permutation(list(x.images)) for x in g.generators]).order()


class TestOrderAndMembership:
    """Test stabilizer-chain order and membership."""

    @pytest.mark.parametrize(
        "g, expected",
        [
            (symmetric(3), 6),
            (symmetric(5), 120),
            (alternating(5), 60),
            (alternating(6), 360),
            (cyclic(8), 8),
            (group(4, [(0, 1, 2, 3)], [(0, 2)]), 8),
        ],
    )
    def test_order(self, g, expected):
        """Test orders of small classical groups."""
        assert g.order() == expected

    def test_trivial_group(self):
        """Test a group with no generators."""
        g = PermGroup(4)
        assert g.order() == 1
        assert g.is_trivial()

    @pytest.mark.parametrize("seed", range(8))
    def test_random_groups_match_sympy(self, seed):
        """Test seeded random generating sets against sympy and closure."""
        rng = random.Random(seed)
        degree = rng.randint(4, 7)
        gens = []
        for _ in range(rng.randint(1, 3)):
            images = list(range(degree))
            rng.shuffle(images)
            gens.append(Perm(images))
        g = PermGroup(degree, gens)
        assert g.order() == sympy_order(g)
        assert g.order() == len(closure(degree, gens))

    def test_contains(self):
        """Test membership of even and odd permutations in A5."""
        a5 = alternating(5)
        assert a5.contains(Perm.from_cycles(5, [(0, 1), (2, 3)]))
        assert not a5.contains(Perm.from_cycles(5, [(0, 1)]))

    def test_contains_degree_mismatch(self):
        """Test membership of a permutation of the wrong degree."""
        with pytest.raises(DegreeMismatchError):
            symmetric(3).contains(Perm.identity(4))

    def test_generator_degree_mismatch(self):
        """Test that mixed-degree generators are rejected."""
        with pytest.raises(DegreeMismatchError):
            PermGroup(3, [Perm.identity(4)])

    def test_elements_sorted_and_complete(self):
        """Test explicit element listing."""
        elements = symmetric(4).elements()
        assert len(elements) == 24
        assert elements == sorted(elements)
        assert elements[0].is_identity()

    def test_elements_bound(self):
        """Test that enumeration beyond max_elements raises BoundExceededError."""
        with pytest.raises(BoundExceededError) as info:
            symmetric(6).elements(max_elements=100)
        assert info.value.limit == "max_elements"

    def test_closure_bound(self):
        """Test the closure oracle respects its bound."""
        with pytest.raises(BoundExceededError):
            closure(5, list(symmetric(5).generators), max_elements=50)

    def test_random_element_is_member(self):
        """Test seeded random elements lie in the group."""
        g = alternating(6)
        rng = random.Random(3)
        assert all(g.contains(g.random_element(rng)) for _ in range(20))


class TestOrbitsAndStabilizers:
    """Test orbits, transitivity and stabilizers."""

    def test_orbits(self):
        """Test orbit partition of an intransitive group."""
        g = group(6, [(0, 1, 2)], [(3, 4)])
        assert g.orbits() == [[0, 1, 2], [3, 4], [5]]
        assert not g.is_transitive()

    def test_orbit_point_out_of_range(self):
        """Test orbit of a point beyond the degree."""
        with pytest.raises(PointOutOfRangeError):
            cyclic(4).orbit(4)

    def test_point_stabilizer_order(self):
        """Test |G_x| = |G| / |x^G|."""
        s5 = symmetric(5)
        assert s5.point_stabilizer(2).order() == 24

    @pytest.mark.parametrize(
        "g",
        [
            symmetric(5),
            alternating(6),
            cyclic(6),
            group(6, [(0, 1, 2)], [(3, 4)]),
            group(4, [(0, 1, 2, 3)], [(0, 2)]),
            group(7, [tuple(range(7))], [(1, 2, 4), (3, 6, 5)]),
            group(8, [(0, 1, 2, 3)], [(4, 5, 6, 7)], [(0, 4), (1, 5), (2, 6), (3, 7)]),
        ],
    )
    def test_orbit_stabilizer(self, g):
        """Test |x^G| |G_x| = |G| at every point."""
        for x in range(g.degree):
            assert len(g.orbit(x)) * g.point_stabilizer(x).order() == g.order()

    def test_sequence_stabilizer(self):
        """Test the pointwise stabilizer of a sequence."""
        s5 = symmetric(5)
        stab = s5.sequence_stabilizer([3, 1])
        assert stab.order() == 6
        assert all(x[3] == 3 and x[1] == 1 for x in stab.elements())

    def test_prefix_stabilizer_orders(self):
        """Test stabilizer orders along a sequence."""
        assert symmetric(5).prefix_stabilizer_orders([0, 1, 2]) == [120, 24, 6, 2]


class TestSubgroupSets:
    """Test explicit subgroup operations."""

    def setup_method(self):
        """S4 with a point stabilizer and the rotations of the square."""
        self.s4 = symmetric(4)
        self.s3 = SubgroupSet.generated_by(4, [Perm.from_cycles(4, [(0, 1, 2)]), Perm.from_cycles(4, [(0, 1)])])
        self.c4 = SubgroupSet.generated_by(4, [Perm.from_cycles(4, [(0, 1, 2, 3)])])

    def test_generated_by(self):
        """Test explicit closure of generators."""
        assert self.s3.order == 6
        assert self.c4.order == 4

    def test_generators_regenerate(self):
        """Test that the greedy generators generate the same set."""
        assert SubgroupSet.generated_by(4, self.s3.generators()) == self.s3

    def test_check_rejects_non_subgroup(self):
        """Test closure checking of an element list."""
        with pytest.raises(NotSubgroupError):
            SubgroupSet(3, [Perm.identity(3), Perm.from_cycles(3, [(0, 1, 2)])], check=True)

    def test_intersect(self):
        """Test S3 ∩ C4 is trivial."""
        assert intersect(self.s3, self.c4).order == 1

    def test_intersect_degree_mismatch(self):
        """Test intersecting groups of different degrees."""
        with pytest.raises(DegreeMismatchError):
            intersect(self.s3, symmetric(3))

    def test_conjugate_subgroup(self):
        """Test conjugating the stabilizer of 3 gives the stabilizer of 3^g."""
        g = Perm.from_cycles(4, [(0, 3)])
        conj = conjugate_subgroup(self.s3, g)
        assert all(x[0] == 0 for x in conj)

    def test_product_set_and_double_coset(self):
        """Test HK and HgK sizes."""
        assert len(product_set(self.s3, self.c4)) == 24
        g = Perm.from_cycles(4, [(0, 3)])
        hgh = double_coset(self.s3, g, self.s3)
        assert len(hgh) == 18
        assert in_double_coset(compose(g, Perm.from_cycles(4, [(0, 1)])), self.s3, g, self.s3)

    def test_product_set_bound(self):
        """Test HK enumeration bound."""
        with pytest.raises(BoundExceededError):
            product_set(self.s3, self.c4, max_elements=10)


class TestFactorization:
    """Test the factorization predicates."""

    def setup_method(self):
        """S4 = S3 C4 holds, S4 = C2 C4 does not."""
        self.s4 = symmetric(4)
        self.s3 = SubgroupSet.generated_by(4, [Perm.from_cycles(4, [(0, 1, 2)]), Perm.from_cycles(4, [(0, 1)])])
        self.c4 = SubgroupSet.generated_by(4, [Perm.from_cycles(4, [(0, 1, 2, 3)])])
        self.c2 = SubgroupSet.generated_by(4, [Perm.from_cycles(4, [(0, 1)])])

    def test_is_factorization(self):
        """Test the order identity."""
        assert is_factorization(self.s4, self.s3, self.c4)
        assert not is_factorization(self.s4, self.c2, self.c4)

    def test_factorization_requires_subgroups(self):
        """Test that H outside G is rejected."""
        a4 = alternating(4)
        with pytest.raises(NotSubgroupError):
            is_factorization(a4, self.c2, self.c4)

    def test_coset_transitivity(self):
        """Test transitivity of H on the right cosets of K."""
        assert coset_transitivity(self.s4, self.s3, self.c4)
        assert coset_transitivity(self.s4, self.c4, self.s3)
        assert not coset_transitivity(self.s4, self.c2, self.c4)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_conditions_agree(self, seed):
        """Test that every equivalent condition agrees."""
        rng = random.Random(seed)
        holds = factorization_conditions(self.s4, self.s3, self.c4, rng)
        fails = factorization_conditions(self.s4, self.c2, self.c4, rng)
        assert set(holds.values()) == {True}
        assert set(fails.values()) == {False}
        assert "hk_equals_g" in holds


class TestNormalSubgroups:
    """Test normal closures, classes and minimal normal subgroups."""

    def test_normal_closure_of_double_transposition(self):
        """Test the normal closure of (01)(23) in S4 is V4."""
        n = normal_closure(symmetric(4), Perm.from_cycles(4, [(0, 1), (2, 3)]))
        assert n.order() == 4

    def test_normal_closure_of_three_cycle(self):
        """Test the normal closure of a 3-cycle in S5 is A5."""
        assert normal_closure(symmetric(5), Perm.from_cycles(5, [(0, 1, 2)])).order() == 60

    def test_conjugacy_classes_of_s4(self):
        """Test S4 has five classes covering 24 elements."""
        classes = conjugacy_classes(symmetric(4))
        assert len(classes) == 5
        assert sum(len(c) for c in classes) == 24

    def test_is_normal(self):
        """Test A4 is normal in S4 and a point stabilizer is not."""
        s4 = symmetric(4)
        assert is_normal(s4, alternating(4))
        assert not is_normal(s4, group(4, [(0, 1, 2)], [(0, 1)]))

    def test_minimal_normal_subgroups(self):
        """Test S4 has V4 as its unique minimal normal subgroup."""
        minimal = minimal_normal_subgroups(symmetric(4))
        assert [m.order() for m in minimal] == [4]

    def test_minimal_normal_subgroups_of_simple_group(self):
        """Test A5 is its own minimal normal subgroup."""
        minimal = minimal_normal_subgroups(alternating(5))
        assert [m.order() for m in minimal] == [60]

    def test_minimal_normal_subgroups_of_klein_four_group(self):
        """Test the regular C2 x C2 has its three subgroups of order 2 as minimal normal subgroups."""
        v4 = group(4, [(0, 1), (2, 3)], [(0, 2), (1, 3)])
        minimal = minimal_normal_subgroups(v4)
        assert [m.order() for m in minimal] == [2, 2, 2]
        involutions = {x for m in minimal for x in m.elements() if not x.is_identity()}
        assert len(involutions) == 3


class TestActionProperties:
    """Test quasiprimitivity, primitivity and regularity."""

    def test_quasiprimitive(self):
        """Test S4 is quasiprimitive and D4 is not."""
        assert is_quasiprimitive(symmetric(4))
        assert not is_quasiprimitive(group(4, [(0, 1, 2, 3)], [(0, 2)]))

    def test_regular_cyclic_group_is_not_quasiprimitive(self):
        """Test the regular C6 has an intransitive normal subgroup and the regular C5 does not."""
        assert not is_quasiprimitive(cyclic(6))
        assert is_quasiprimitive(cyclic(5))

    def test_quasiprimitive_needs_transitive(self):
        """Test the transitivity precondition."""
        with pytest.raises(NotTransitiveError):
            is_quasiprimitive(group(4, [(0, 1)]))

    def test_primitive(self):
        """Test S5 primitive, D4 and C6 imprimitive, C5 primitive."""
        assert is_primitive(symmetric(5))
        assert not is_primitive(group(4, [(0, 1, 2, 3)], [(0, 2)]))
        assert not is_primitive(cyclic(6))
        assert is_primitive(cyclic(5))

    def test_primitive_with_supplied_stabilizer(self):
        """Test the stabilizer shortcut gives the same verdict."""
        s4 = symmetric(4)
        stab = list(s4.point_stabilizer(0).generators)
        assert is_primitive(s4, point_stabilizer=stab)

    def test_primitive_needs_transitive(self):
        """Test the transitivity precondition."""
        with pytest.raises(NotTransitiveError):
            is_primitive(group(4, [(0, 1)]))

    def test_regular(self):
        """Test regularity of C7 and of the Klein four-group, and its failure for S3."""
        assert is_regular(cyclic(7))
        assert is_regular(group(4, [(0, 1), (2, 3)], [(0, 2), (1, 3)]))
        assert not is_regular(symmetric(3))
        assert not is_regular(group(4, [(0, 1)]))

    def test_product_group(self):
        """Test G x H acts on pairs with order |G||H|."""
        p = product_group(cyclic(3), symmetric(3))
        assert p.degree == 9
        assert p.order() == 18
        assert p.is_transitive()
        assert invert(p.generators[0]) in set(p.elements())
