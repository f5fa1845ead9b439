"""Claims and reports.

A :class:`Report` is an ordered list of :class:`Claim` objects. Each claim names a
mathematical statement, whether it held, and the witness data that shows why.
"""

import hashlib
import json
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Literal, Optional, Tuple

from arctest import __version__
from arctest.core.errors import ArctestError, BoundExceededError

logger = logging.getLogger(__name__)

ClaimStatus = Literal["pass", "fail", "skipped"]
CheckResult = Tuple[bool, Dict[str, Any]]


@dataclass
class Claim:
    """Outcome of one checked statement.

    Attributes:
        claim_id: Dotted identifier, unique within a report
        statement: The statement being checked, in words
        status: "pass", "fail", or "skipped"
        witness: JSON-compatible evidence
        reason: Why the claim was skipped or failed with an error
        elapsed_ms: Wall-clock time of the check
    """

    claim_id: str
    statement: str
    status: ClaimStatus
    witness: Dict[str, Any] = field(default_factory=dict)
    reason: Optional[str] = None
    elapsed_ms: float = 0.0

    def __post_init__(self) -> None:
        if self.status == "skipped" and not self.reason:
            raise ValueError(f"skipped claim {self.claim_id} needs a reason")

    def passed(self) -> bool:
        """Return True if the statement held."""
        return self.status == "pass"

    def failed(self) -> bool:
        """Return True if the statement was refuted or its check errored."""
        return self.status == "fail"

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "claim": self.claim_id,
            "statement": self.statement,
            "status": self.status,
            "witness": self.witness,
        }
        if self.reason is not None:
            data["reason"] = self.reason
        if include_timing:
            data["elapsed_ms"] = round(self.elapsed_ms, 3)
        return data


@dataclass
class Report:
    """Ordered collection of claims with a deterministic digest."""

    tool: str = "arctest"
    version: str = __version__
    input_digest: str = ""
    claims: List[Claim] = field(default_factory=list)

    def __iter__(self) -> Iterator[Claim]:
        return iter(self.claims)

    def __len__(self) -> int:
        return len(self.claims)

    def __getitem__(self, claim_id: str) -> Claim:
        for claim in self.claims:
            if claim.claim_id == claim_id:
                return claim
        raise KeyError(claim_id)

    def __contains__(self, claim_id: object) -> bool:
        return any(claim.claim_id == claim_id for claim in self.claims)

    def add(self, claim: Claim) -> Claim:
        """Append a claim.

        Raises:
            ValueError: If the claim id is already present
        """
        if claim.claim_id in self:
            raise ValueError(f"duplicate claim id: {claim.claim_id}")
        self.claims.append(claim)
        logger.debug("%s: %s", claim.claim_id, claim.status)
        return claim

    def check(self, claim_id: str, statement: str, fn: Callable[[], CheckResult]) -> Claim:
        """Run ``fn`` and record its verdict.

        ``fn`` returns ``(holds, witness)``. A :class:`BoundExceededError` skips the
        claim; any other :class:`ArctestError` raised inside the check becomes a
        failed claim carrying the error message.
        """
        start = time.perf_counter()
        try:
            holds, witness = fn()
            status: ClaimStatus = "pass" if holds else "fail"
            reason = None
        except BoundExceededError as exc:
            status, witness, reason = "skipped", {"bound": exc.limit}, str(exc)
        except ArctestError as exc:
            status, witness, reason = "fail", {"error": type(exc).__name__}, str(exc)
        elapsed = (time.perf_counter() - start) * 1000.0
        return self.add(Claim(claim_id, statement, status, _jsonable(witness), reason, elapsed))

    def skip(self, claim_id: str, statement: str, reason: str) -> Claim:
        return self.add(Claim(claim_id, statement, "skipped", {}, reason))

    def extend(self, other: "Report") -> "Report":
        for claim in other.claims:
            self.add(claim)
        return self

    def filtered(self, prefix: Optional[str]) -> "Report":
        """Claims whose id starts with ``prefix`` (all claims when prefix is empty)."""
        if not prefix:
            return self
        kept = [claim for claim in self.claims if claim.claim_id.startswith(prefix)]
        return Report(self.tool, self.version, self.input_digest, kept)

    @property
    def failures(self) -> List[Claim]:
        return [claim for claim in self.claims if claim.failed()]

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "tool": self.tool,
            "version": self.version,
            "input_digest": self.input_digest,
            "claims": [claim.to_dict(include_timing) for claim in self.claims],
        }
        if include_timing:
            data["digest"] = self.digest()
        return data

    def to_json(self, indent: Optional[int] = 2, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=indent, sort_keys=True)

    def digest(self) -> str:
        """SHA-256 of the report with timing fields removed."""
        payload = json.dumps(self.to_dict(include_timing=False), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def digest_inputs(*parts: Any) -> str:
    """Stable digest of JSON-compatible command inputs."""
    payload = json.dumps(_jsonable(list(parts)), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(key): _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_jsonable(item) for item in value)
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    if hasattr(value, "to_json"):
        return value.to_json()
    if hasattr(value, "__index__"):
        return int(value)
    return str(value)
