"""Unit tests for the built-in acceptance suite plumbing."""

import pytest

from arctest.algebra.permgroup import PermGroup, SubgroupSet, is_normal
from arctest.core.config import Config
from arctest.core.report import Claim, Report
from arctest.graphs.cosetgraph import CosetDigraphSpec, regularity_formula
from arctest.selftest import (
    SUITES,
    _scoped,
    circulant,
    corpus_groups,
    selected_suites,
    selftest,
    valid_connectors,
)


class TestSuiteSelection:
    """Test which suites a filter runs."""

    def test_no_filter_runs_everything(self):
        """Test every suite runs without a filter."""
        assert selected_suites(None) == list(SUITES)
        assert selected_suites("") == list(SUITES)

    def test_suite_prefix(self):
        """Test a filter shorter than a suite prefix."""
        assert selected_suites("arith") == ["arithmetic."]

    def test_claim_prefix(self):
        """Test a filter inside one suite."""
        assert selected_suites("diagonal.s3.explicit") == ["diagonal."]

    def test_no_match(self):
        """Test an unknown prefix selects nothing."""
        assert selected_suites("zzz") == []


class TestScoped:
    """Test claim-id rewriting."""

    def test_prefix_replaced(self):
        """Test only ids with the old prefix change."""
        report = Report()
        report.add(Claim("families.gamma_n.index", "index", "pass"))
        report.add(Claim("arithmetic.n5.two_adic", "two-adic", "pass"))
        scoped = _scoped(report, "families.gamma_n.", "families.gamma_5.")
        assert [c.claim_id for c in scoped] == ["families.gamma_5.index", "arithmetic.n5.two_adic"]


class TestHelpers:
    """Test corpus helpers."""

    def test_circulant(self):
        """Test Cay(C_n, S) has n·|S| arcs."""
        assert circulant(7, [1, 2]).arc_count == 14

    def test_corpus_labels_unique(self):
        """Test labels do not collide."""
        labels = [label for label, _, _ in corpus_groups()]
        assert len(labels) == len(set(labels))

    def test_valid_connectors_skip_involutions(self):
        """Test only elements of order at least 3 connect Cay(C4, {g})."""
        group = dict((label, g) for label, g, _ in corpus_groups())["c4"]
        trivial = SubgroupSet(4, [group.identity])
        connectors = valid_connectors(group, trivial, 5, 100)
        assert len(connectors) == 2
        assert all(g.order() == 4 for g in connectors)

    def test_corpus_mostly_uses_proper_non_normal_subgroups(self):
        """Test more corpus groups take H nontrivial and not normal than take H = 1."""
        proper = 0
        for _, group, h_gens in corpus_groups():
            if h_gens and not is_normal(group, PermGroup(group.degree, h_gens)):
                proper += 1
        assert proper > len(corpus_groups()) - proper

    @pytest.mark.parametrize("label, index", [("f21_c3", 7), ("f39_c3", 13)])
    def test_frobenius_entries_have_valency_three(self, label, index):
        """Test the affine groups give two 3-valent connectors on p cosets of a C3."""
        group, h_gens = {name: (g, h) for name, g, h in corpus_groups()}[label]
        subgroup = SubgroupSet.generated_by(group.degree, h_gens)
        connectors = valid_connectors(group, subgroup, 2, 1000)
        assert len(connectors) == 2
        for g in connectors:
            spec = CosetDigraphSpec(group, subgroup, g)
            assert spec.index == index
            assert regularity_formula(spec) == 3


class TestSelftest:
    """Test the fast suites end to end."""

    def test_arithmetic_suite(self):
        """Test the arithmetic suite passes and carries an input digest."""
        report = selftest(Config.get_defaults(), "arithmetic.")
        assert report.ok
        assert len(report) == 9
        assert report.input_digest

    @pytest.mark.parametrize("prefix", ["permgroup.", "digraph."])
    def test_fast_suites_pass(self, prefix):
        """Test small suites pass and keep only filtered claims."""
        report = selftest(Config.get_defaults(), prefix)
        assert report.ok
        assert len(report) > 0
        assert all(claim.claim_id.startswith(prefix) for claim in report)
