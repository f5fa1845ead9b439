"""Unit tests for coset digraphs and their group-theoretic criteria."""

import pytest

from arctest.algebra.perm import Perm
from arctest.algebra.permgroup import PermGroup, SubgroupSet, is_quasiprimitive
from arctest.core.errors import (
    BoundExceededError,
    ConnectorInSubgroupError,
    ConnectorNotAntisymmetricError,
    InvalidCosetSpecError,
    NotNormalError,
    NotSubgroupError,
    NotTransitiveError,
)
from arctest.graphs.cosetgraph import (
    CosetDigraphSpec,
    build_coset_digraph,
    build_coset_space,
    connected_via_generation,
    criteria_report,
    normal_descent_checks,
    primitive_via_maximality,
    quasiprimitive_on_cosets,
    regularity_formula,
    s_arc_transitive_by_factorization,
    two_arc_check,
)
from arctest.graphs.digraph import is_connected, is_G_s_arc_transitive, new_digraph, regularity
from arctest.selftest import valid_connectors


def group(degree, *cycle_lists):
    return PermGroup(degree, [Perm.from_cycles(degree, cycles) for cycles in cycle_lists])


def subgroup(degree, *cycle_lists):
    return SubgroupSet.generated_by(degree, [Perm.from_cycles(degree, cycles) for cycles in cycle_lists])


def cyclic(n):
    return group(n, [tuple(range(n))])


A4 = group(4, [(0, 1, 2)], [(0, 1), (2, 3)])
A5 = group(5, [(0, 1, 2, 3, 4)], [(0, 1, 2)])
S4 = group(4, [(0, 1, 2, 3)], [(0, 1)])
DOUBLING = Perm([0, 2, 4, 6, 1, 3, 5])
F21 = PermGroup(7, [Perm.from_cycles(7, [tuple(range(7))]), DOUBLING])


class TestCosetDigraphSpec:
    """Test validation of (G, H, g)."""

    def test_valid_cyclic_spec(self):
        """Test Cos(C5, 1, g) is accepted."""
        spec = CosetDigraphSpec(cyclic(5), SubgroupSet(5, [Perm.identity(5)]), Perm.from_cycles(5, [(0, 1, 2, 3, 4)]))
        assert spec.index == 5

    def test_subgroup_outside_group(self):
        """Test H must lie in G."""
        with pytest.raises(NotSubgroupError):
            CosetDigraphSpec(cyclic(5), subgroup(5, [(0, 1)]), Perm.from_cycles(5, [(0, 1, 2, 3, 4)]))

    def test_connector_outside_group(self):
        """Test g must lie in G."""
        with pytest.raises(InvalidCosetSpecError):
            CosetDigraphSpec(cyclic(5), SubgroupSet(5, [Perm.identity(5)]), Perm.from_cycles(5, [(0, 1)]))

    def test_connector_in_subgroup(self):
        """Test g in H is rejected."""
        with pytest.raises(ConnectorInSubgroupError):
            CosetDigraphSpec(A5, subgroup(5, [(0, 1, 2)]), Perm.from_cycles(5, [(0, 2, 1)]))

    def test_involution_connector_is_symmetric(self):
        """Test g with g^-1 in HgH is rejected."""
        with pytest.raises(ConnectorNotAntisymmetricError):
            CosetDigraphSpec(cyclic(4), SubgroupSet(4, [Perm.identity(4)]), Perm.from_cycles(4, [(0, 2), (1, 3)]))

    def test_two_transitive_action_has_no_connector(self):
        """Test S3 on the cosets of <(0 1)> admits no antisymmetric connector."""
        s3 = group(3, [(0, 1, 2)], [(0, 1)])
        with pytest.raises(ConnectorNotAntisymmetricError):
            CosetDigraphSpec(s3, subgroup(3, [(0, 1)]), Perm.from_cycles(3, [(0, 1, 2)]))

    def test_conjugate(self):
        """Test g^-j H g^j."""
        h = SubgroupSet.generated_by(7, [DOUBLING])
        spec = CosetDigraphSpec(F21, h, Perm.from_cycles(7, [tuple(range(7))]))
        assert spec.conjugate(0) == spec.subgroup
        assert spec.conjugate(2).order == 3
        assert spec.conjugate(1) != spec.subgroup


class TestCosetSpace:
    """Test coset enumeration and the coset action."""

    def test_index(self):
        """Test |G : H| cosets."""
        space = build_coset_space(A5, subgroup(5, [(0, 1, 2, 3, 4)]))
        assert len(space) == 12

    def test_bound(self):
        """Test max_cosets."""
        with pytest.raises(BoundExceededError):
            build_coset_space(A5, SubgroupSet(5, [Perm.identity(5)]), max_cosets=10)

    def test_not_subgroup(self):
        """Test H outside G."""
        with pytest.raises(NotSubgroupError):
            build_coset_space(A5, subgroup(5, [(0, 1)]))

    def test_action_is_transitive(self):
        """Test R_H(G) is transitive on the cosets."""
        space = build_coset_space(S4, subgroup(4, [(0, 1, 2)]))
        assert space.acting_group().is_transitive()
        assert space.acting_group().order() == 24

    def test_kernel_of_normal_subgroup(self):
        """Test the kernel of S4 on the cosets of V4 is V4."""
        v4 = subgroup(4, [(0, 1), (2, 3)], [(0, 2), (1, 3)])
        space = build_coset_space(S4, v4)
        assert space.kernel().order == 4
        assert not space.is_faithful()

    def test_faithful_on_point_stabilizer_cosets(self):
        """Test S4 acts faithfully on the cosets of S3."""
        space = build_coset_space(S4, subgroup(4, [(0, 1, 2)], [(0, 1)]))
        assert space.is_faithful()


class TestCriteria:
    """Test each criterion against the explicit digraph."""

    def setup_method(self):
        """The Paley tournament on 7 vertices and a disconnected Cayley digraph of A4."""
        self.h = SubgroupSet.generated_by(7, [DOUBLING])
        self.paley = [CosetDigraphSpec(F21, self.h, g) for g in valid_connectors(F21, self.h, 4, 1000)]
        trivial = SubgroupSet(4, [Perm.identity(4)])
        self.triangles = [CosetDigraphSpec(A4, trivial, g) for g in valid_connectors(A4, trivial, 2, 1000)]
        self.specs = self.paley + self.triangles

    def test_corpus_is_populated(self):
        """Test both families admit antisymmetric connectors."""
        assert len(self.paley) == 4
        assert len(self.triangles) == 2

    def test_cyclic_digraph(self):
        """Test Cos(C5, 1, (0 1 2 3 4)) is a directed 5-cycle."""
        spec = CosetDigraphSpec(cyclic(5), SubgroupSet(5, [Perm.identity(5)]), Perm.from_cycles(5, [(0, 1, 2, 3, 4)]))
        built = build_coset_digraph(spec)
        assert built.digraph.n == 5
        assert regularity(built.digraph) == 1
        assert regularity_formula(spec) == 1
        assert is_connected(built.digraph)

    def test_regularity_formula(self):
        """Test |H : H ∩ g^-1Hg| equals the valency."""
        for spec in self.specs:
            assert regularity_formula(spec) == regularity(build_coset_digraph(spec).digraph)
        assert regularity_formula(self.paley[0]) == 3
        assert regularity_formula(self.triangles[0]) == 1

    def test_connected_via_generation(self):
        """Test <H, g> = G iff the digraph is connected."""
        for spec in self.specs:
            assert connected_via_generation(spec) == is_connected(build_coset_digraph(spec).digraph)
        assert connected_via_generation(self.paley[0])
        assert not connected_via_generation(self.triangles[0])

    def test_disconnected_cyclic(self):
        """Test a non-generating connector gives a disconnected digraph."""
        square = Perm.from_cycles(6, [(0, 2, 4), (1, 3, 5)])
        spec = CosetDigraphSpec(cyclic(6), SubgroupSet(6, [Perm.identity(6)]), square)
        assert not connected_via_generation(spec)
        assert not is_connected(build_coset_digraph(spec).digraph)

    @pytest.mark.parametrize("s", [1, 2, 3])
    def test_factorization_matches_oracle(self, s):
        """Test the factorization chain against the s-arc orbit oracle."""
        for spec in self.specs:
            built = build_coset_digraph(spec)
            assert s_arc_transitive_by_factorization(spec, s) == is_G_s_arc_transitive(built.digraph, built.acting, s)

    def test_paley_tournament_is_not_two_arc_transitive(self):
        """Test F21 is regular on the arcs of the Paley tournament."""
        for spec in self.paley:
            assert not s_arc_transitive_by_factorization(spec, 2)
            assert not two_arc_check(spec)

    def test_two_arc_check_is_chain_at_two(self):
        """Test the two-arc check matches the chain for s = 2."""
        for spec in self.specs:
            assert two_arc_check(spec) == s_arc_transitive_by_factorization(spec, 2)

    def test_every_coset_digraph_is_arc_transitive(self):
        """Test s = 1 always holds."""
        for spec in self.specs:
            assert s_arc_transitive_by_factorization(spec, 1)
            built = build_coset_digraph(spec)
            assert is_G_s_arc_transitive(built.digraph, built.acting, 1)

    @pytest.mark.parametrize("s", [2, 3])
    def test_s_arc_transitivity_is_monotone(self, s):
        """Test (G,s)-arc-transitivity implies (G,s-1)-arc-transitivity, by the chain and by the oracle."""
        for spec in self.specs:
            built = build_coset_digraph(spec)
            if is_G_s_arc_transitive(built.digraph, built.acting, s):
                assert is_G_s_arc_transitive(built.digraph, built.acting, s - 1)
            if s_arc_transitive_by_factorization(spec, s):
                assert s_arc_transitive_by_factorization(spec, s - 1)

    @pytest.mark.parametrize(
        "g, h, connector",
        [
            (F21, SubgroupSet.generated_by(7, [DOUBLING]), Perm.from_cycles(7, [tuple(range(7))])),
            (cyclic(5), SubgroupSet(5, [Perm.identity(5)]), Perm.from_cycles(5, [(0, 1, 2, 3, 4)])),
            (cyclic(6), SubgroupSet(6, [Perm.identity(6)]), Perm.from_cycles(6, [(0, 2, 4), (1, 3, 5)])),
            (A4, SubgroupSet(4, [Perm.identity(4)]), Perm.from_cycles(4, [(0, 1, 2)])),
        ],
    )
    def test_vertex_primitive_digraphs_are_connected(self, g, h, connector):
        """Test a digraph on which G acts primitively is connected."""
        spec = CosetDigraphSpec(g, h, connector)
        if primitive_via_maximality(spec):
            assert is_connected(build_coset_digraph(spec).digraph)
        assert primitive_via_maximality(spec) == (spec.index in (5, 7))

    def test_negative_s(self):
        """Test s < 0 is rejected."""
        with pytest.raises(ValueError):
            s_arc_transitive_by_factorization(self.specs[0], -1)

    def test_primitive_via_maximality(self):
        """Test a point stabilizer of F21 is maximal and the trivial subgroup of A4 is not."""
        assert primitive_via_maximality(self.paley[0])
        assert not primitive_via_maximality(self.triangles[0])
        c7 = CosetDigraphSpec(cyclic(7), SubgroupSet(7, [Perm.identity(7)]), Perm.from_cycles(7, [tuple(range(7))]))
        assert primitive_via_maximality(c7)

    def test_quasiprimitive_on_cosets(self):
        """Test A5 is quasiprimitive on any cosets and S4 is not on the cosets of C3."""
        assert quasiprimitive_on_cosets(A5, subgroup(5, [(0, 1, 2, 3, 4)]))
        assert quasiprimitive_on_cosets(F21, self.h)
        assert not quasiprimitive_on_cosets(S4, subgroup(4, [(0, 1, 2)]))

    def test_quasiprimitive_matches_explicit_action(self):
        """Test the coset-free test against is_quasiprimitive on the coset action."""
        for h in (subgroup(4, [(0, 1, 2)]), subgroup(4, [(0, 1, 2)], [(0, 1)])):
            space = build_coset_space(S4, h)
            assert quasiprimitive_on_cosets(S4, h) == is_quasiprimitive(space.acting_group())


class TestCriteriaReport:
    """Test the combined report."""

    def setup_method(self):
        """The Paley tournament as a coset digraph of F21."""
        h = SubgroupSet.generated_by(7, [DOUBLING])
        self.spec = CosetDigraphSpec(F21, h, Perm.from_cycles(7, [tuple(range(7))]))

    def test_all_claims_pass(self):
        """Test every criterion agrees with the explicit digraph."""
        report = criteria_report(self.spec, (2, 3))
        assert report.ok
        assert "coset.s_arc_transitive.s3" in report
        regular = report["coset.regularity_formula"].witness
        assert regular["criterion"] == regular["direct"] == 3
        assert report["coset.s_arc_transitive.s2"].witness == {"criterion": False, "direct": False}
        assert report["coset.faithful"].witness["faithful"]
        assert report["coset.monotone"].witness == {"s": [1, 2, 3]}

    def test_explicit_skipped_beyond_bound(self):
        """Test the explicit comparison is skipped when the index exceeds max_vertices."""
        report = criteria_report(self.spec, (2,), max_vertices=5, prefix="small")
        assert report["small.explicit"].status == "skipped"
        assert "direct" not in report["small.regularity_formula"].witness
        assert "small.faithful" not in report

    def test_explicit_off(self):
        """Test explicit=False never builds the digraph."""
        report = criteria_report(self.spec, (2,), explicit=False)
        assert report["coset.explicit"].reason == "explicit build off"


class TestNormalDescent:
    """Test the consequences of a vertex-transitive normal subgroup."""

    def test_directed_cycle(self):
        """Test C7 acting regularly on a directed 7-cycle."""
        cycle = new_digraph(7, [(i, (i + 1) % 7) for i in range(7)])
        report = normal_descent_checks(cycle, cyclic(7), cyclic(7), 2)
        assert report.ok
        assert report["descent.directed_cycle"].passed()
        assert report["descent.factorization.i2"].passed()

    def test_precondition_failure_skips_the_rest(self):
        """Test a regular group on Cay(C7, {1, 2}) fails the 2-arc precondition."""
        jumps = new_digraph(7, [(i, (i + s) % 7) for i in range(7) for s in (1, 2)])
        report = normal_descent_checks(jumps, cyclic(7), cyclic(7), 2)
        assert report["descent.precondition"].failed()
        assert report["descent.directed_cycle"].status == "skipped"

    def test_not_normal(self):
        """Test M must be normal in G."""
        cycle = new_digraph(4, [(i, (i + 1) % 4) for i in range(4)])
        d4 = group(4, [(0, 1, 2, 3)])
        with pytest.raises(NotNormalError):
            normal_descent_checks(cycle, d4, group(4, [(0, 1)]), 1)

    def test_not_transitive(self):
        """Test M must be transitive."""
        cycle = new_digraph(4, [(i, (i + 1) % 4) for i in range(4)])
        c4 = cyclic(4)
        with pytest.raises(NotTransitiveError):
            normal_descent_checks(cycle, c4, group(4, [(0, 2), (1, 3)]), 1)

    def test_s_must_be_positive(self):
        """Test s = 0 is rejected."""
        cycle = new_digraph(3, [(0, 1), (1, 2), (2, 0)])
        with pytest.raises(ValueError):
            normal_descent_checks(cycle, cyclic(3), cyclic(3), 0)
