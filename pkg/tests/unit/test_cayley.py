"""Unit tests for multiplication-table groups and their automorphisms."""

import pytest

from arctest.algebra.cayley import AutomorphismSet, CayleyGroup, catalog_group
from arctest.algebra.perm import Perm
from arctest.core.errors import InputError, InvalidGroupTableError
from arctest.selftest import corrupt_table


def cyclic_table(k):
    """Z_k with the identity moved to index k-1: index i stands for i + 1 mod k."""
    value = [(i + 1) % k for i in range(k)]
    index = {v: i for i, v in enumerate(value)}
    return [[index[(value[a] + value[b]) % k] for b in range(k)] for a in range(k)]


class TestCayleyGroup:
    """Test table construction and validation."""

    def test_identity_is_last(self):
        """Test the identity sits at index k-1."""
        gens = [Perm.from_cycles(3, [(0, 1)]), Perm.from_cycles(3, [(0, 1, 2)])]
        group = CayleyGroup.from_permutations("s3", 3, gens)
        assert len(group) == 6
        assert group.labels[group.identity].is_identity()
        assert all(group.mul(group.identity, a) == a for a in range(6))

    def test_labels_follow_lexicographic_order(self):
        """Test non-identity labels are in lexicographic order."""
        group, _ = catalog_group("a4")
        rest = list(group.labels[:-1])
        assert rest == sorted(rest)

    def test_inverse(self):
        """Test a * a^-1 is the identity."""
        group, _ = catalog_group("a5")
        assert all(group.mul(a, group.inv(a)) == group.identity for a in range(len(group)))

    def test_index_of_unknown_element(self):
        """Test a permutation outside the group."""
        group, _ = catalog_group("a4")
        with pytest.raises(InputError):
            group.index_of(Perm.from_cycles(4, [(0, 1)]))

    def test_cyclic_table_is_valid(self):
        """Test a hand-written table passes validation."""
        group = CayleyGroup(cyclic_table(5), name="c5")
        assert group.is_abelian()
        assert group.axiom_violations() == []

    def test_non_latin_row_rejected(self):
        """Test a repeated entry in a row."""
        table = cyclic_table(3)
        table[0] = [0, 0, 1]
        with pytest.raises(InvalidGroupTableError):
            CayleyGroup(table)

    def test_identity_not_last(self):
        """Test a table whose last element is not the identity."""
        k = 3
        table = [[(a + b) % k for b in range(k)] for a in range(k)]
        group = CayleyGroup(table, validate=False)
        assert any("identity" in problem for problem in group.axiom_violations())


class TestAssociativity:
    """Test the associativity check on a corrupted S3 table."""

    def setup_method(self):
        """S3 with r = (0 1 2) and s = (0 1)."""
        self.s3, _ = catalog_group("s3")
        self.r = self.s3.index_of(Perm.from_cycles(3, [(0, 1, 2)]))
        self.s = self.s3.index_of(Perm.from_cycles(3, [(0, 1)]))

    def test_corrupted_table_keeps_latin_square(self):
        """Test the swap keeps rows and columns bijective with the same identity."""
        broken = CayleyGroup(corrupt_table(self.s3, self.r, self.s), validate=False)
        problems = broken.axiom_violations()
        assert len(problems) == 1
        assert problems[0].startswith("associativity fails")

    def test_corrupted_table_rejected(self):
        """Test construction with validation raises InvalidGroupTableError."""
        with pytest.raises(InvalidGroupTableError, match="associativity"):
            CayleyGroup(corrupt_table(self.s3, self.r, self.s))

    def test_sampled_check_finds_failure(self):
        """Test the seeded sampled path on the same table."""
        broken = CayleyGroup(corrupt_table(self.s3, self.r, self.s), validate=False)
        problems = broken.axiom_violations(exhaustive_max=0, samples=5000, seed=1)
        assert any(p.startswith("associativity") for p in problems)


class TestStructure:
    """Test centre, simplicity and generators."""

    @pytest.mark.parametrize("name, simple", [("s3", False), ("a4", False), ("a5", True), ("c6", False)])
    def test_is_simple(self, name, simple):
        """Test simplicity of the catalog groups."""
        group, _ = catalog_group(name)
        assert group.is_simple() == simple

    def test_centerless(self):
        """Test S3 and A5 are centreless and nonabelian, C6 is not."""
        assert catalog_group("s3")[0].is_centerless_nonabelian()
        assert catalog_group("a5")[0].is_centerless_nonabelian()
        assert not catalog_group("c6")[0].is_centerless_nonabelian()

    def test_generators_span(self):
        """Test the greedy generating set generates the group."""
        group, _ = catalog_group("a5")
        assert len(group.closure(group.generators())) == 60

    def test_conjugation_fixes_identity(self):
        """Test t -> s^-1 t s fixes the identity."""
        group, _ = catalog_group("a4")
        assert all(group.conjugation(s)[group.identity] == group.identity for s in range(len(group)))


class TestAutomorphisms:
    """Test Aut(T) from an overgroup."""

    @pytest.mark.parametrize("name, order, outer", [("s3", 6, 1), ("a4", 24, 2), ("a5", 120, 2)])
    def test_orders(self, name, order, outer):
        """Test |Aut(T)| and |Out(T)|."""
        _, automorphisms = catalog_group(name)
        assert len(automorphisms) == order
        assert automorphisms.outer_count() == outer

    def test_members_are_homomorphisms(self):
        """Test every member preserves the table."""
        _, automorphisms = catalog_group("a5")
        assert automorphisms.homomorphism_violations() == []

    def test_then_and_inverse(self):
        """Test composition with the inverse gives the identity."""
        _, automorphisms = catalog_group("a4")
        phi = next(phi for phi in automorphisms if not phi.inner)
        assert phi.then(phi.inverse()).is_identity()

    def test_non_normalising_overgroup(self):
        """Test an overgroup element that does not normalise T."""
        group, _ = catalog_group("c6")
        with pytest.raises(InputError, match="does not normalise"):
            AutomorphismSet.from_overgroup(group, [Perm.from_cycles(6, [(0, 1)])])

    def test_unlabelled_group(self):
        """Test a bare table carries no labels."""
        with pytest.raises(InputError):
            AutomorphismSet.from_overgroup(CayleyGroup(cyclic_table(4)), [])

    def test_unknown_catalog_name(self):
        """Test an unknown catalog name."""
        with pytest.raises(InputError, match="unknown group"):
            catalog_group("m11")
