"""Unit tests for claims and reports."""

import json

import pytest

from arctest.algebra.perm import Perm
from arctest.core.errors import BoundExceededError, NotTransitiveError
from arctest.core.report import Claim, Report, digest_inputs


class TestClaim:
    """Test the Claim dataclass."""

    def test_skipped_needs_reason(self):
        """Test a skipped claim without a reason is rejected."""
        with pytest.raises(ValueError):
            Claim("a", "statement", "skipped")

    def test_to_dict_without_timing(self):
        """Test elapsed_ms is dropped when timing is off."""
        claim = Claim("a", "statement", "pass", {"k": 2}, elapsed_ms=3.2)
        assert claim.to_dict(include_timing=False) == {
            "claim": "a",
            "statement": "statement",
            "status": "pass",
            "witness": {"k": 2},
        }


class TestReportCheck:
    """Test Report.check error handling."""

    def test_pass_and_fail(self):
        """Test the boolean verdict becomes the status."""
        report = Report()
        report.check("a", "holds", lambda: (True, {}))
        report.check("b", "fails", lambda: (False, {"why": "no"}))
        assert report["a"].passed()
        assert report["b"].failed()
        assert report.exit_code == 1
        assert [c.claim_id for c in report.failures] == ["b"]

    def test_bound_exceeded_skips(self):
        """Test a BoundExceededError inside a check skips the claim."""

        def too_big():
            raise BoundExceededError("max_vertices", 10, 5)

        report = Report()
        claim = report.check("a", "big", too_big)
        assert claim.status == "skipped"
        assert claim.witness == {"bound": "max_vertices"}
        assert report.ok

    def test_domain_error_fails(self):
        """Test any other ArctestError becomes a failed claim."""

        def intransitive():
            raise NotTransitiveError("not transitive")

        claim = Report().check("a", "transitive", intransitive)
        assert claim.failed()
        assert claim.witness == {"error": "NotTransitiveError"}
        assert claim.reason == "not transitive"

    def test_other_exceptions_propagate(self):
        """Test a programming error is not swallowed."""
        with pytest.raises(ZeroDivisionError):
            Report().check("a", "broken", lambda: (1 / 0, {}))

    def test_duplicate_id(self):
        """Test claim ids are unique."""
        report = Report()
        report.check("a", "holds", lambda: (True, {}))
        with pytest.raises(ValueError, match="duplicate"):
            report.check("a", "again", lambda: (True, {}))

    def test_witness_made_jsonable(self):
        """Test sets, tuples and permutations in witnesses become JSON values."""
        claim = Report().check("a", "holds", lambda: (True, {"s": {3, 1}, "t": (1, 2), "p": Perm([1, 0])}))
        assert claim.witness == {"s": [1, 3], "t": [1, 2], "p": [1, 0]}


class TestReportOutput:
    """Test filtering, JSON and digests."""

    def setup_method(self):
        """A small report."""
        self.report = Report()
        self.report.check("group.order", "order", lambda: (True, {"order": 60}))
        self.report.skip("digraph.big", "big", "too large")

    def test_filtered(self):
        """Test prefix filtering keeps order and metadata."""
        kept = self.report.filtered("group.")
        assert [c.claim_id for c in kept] == ["group.order"]
        assert self.report.filtered(None) is self.report

    def test_to_json_keys(self):
        """Test top-level keys of the report document."""
        data = json.loads(self.report.to_json())
        assert set(data) == {"tool", "version", "input_digest", "claims", "digest"}
        assert data["tool"] == "arctest"

    def test_digest_ignores_timing(self):
        """Test two runs with different timings share a digest."""
        other = Report()
        other.add(Claim("group.order", "order", "pass", {"order": 60}, elapsed_ms=99.0))
        other.skip("digraph.big", "big", "too large")
        assert other.digest() == self.report.digest()

    def test_digest_inputs_is_order_sensitive(self):
        """Test the input digest is stable and depends on argument order."""
        assert digest_inputs("a", 1) == digest_inputs("a", 1)
        assert digest_inputs("a", 1) != digest_inputs(1, "a")

    def test_extend(self):
        """Test merging two reports."""
        merged = Report().extend(self.report)
        assert len(merged) == 2
        assert "digraph.big" in merged
