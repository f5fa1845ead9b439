"""Exception hierarchy for arctest.

Every error that the command line maps to exit code 2 derives from
:class:`InputError`.
"""

from typing import Any


class ArctestError(Exception):
    """Base class for all arctest errors."""


class InputError(ArctestError):
    """The caller supplied data that cannot be used."""


class InvalidPermutationError(InputError):
    """An image array is not a bijection on {0, ..., n-1}."""


class DegreeMismatchError(InputError):
    """Two permutations (or a permutation and a group) disagree on degree."""

    def __init__(self, left: int, right: int):
        super().__init__(f"degree mismatch: {left} != {right}")
        self.left = left
        self.right = right


class PointOutOfRangeError(InputError):
    """A point index lies outside {0, ..., degree-1}."""

    def __init__(self, point: Any, degree: int):
        super().__init__(f"point {point!r} out of range for degree {degree}")
        self.point = point
        self.degree = degree


class BoundExceededError(InputError):
    """An explicit enumeration would exceed a configured limit."""

    def __init__(self, limit: str, requested: int, bound: int, hint: str = ""):
        message = f"{limit}: {requested} exceeds bound {bound}"
        if hint:
            message = f"{message} ({hint})"
        super().__init__(message)
        self.limit = limit
        self.requested = requested
        self.bound = bound


class InvalidDigraphError(InputError):
    """Arc data violates the digraph axioms."""


class ReflexiveArcError(InvalidDigraphError):
    """A loop v -> v was supplied."""


class AntisymmetryError(InvalidDigraphError):
    """Both u -> v and v -> u were supplied."""


class VertexRangeError(InvalidDigraphError):
    """An arc endpoint is not a vertex."""


class NotSubgroupError(InputError):
    """A claimed subgroup has a generator outside the parent group."""


class InvalidCosetSpecError(InputError):
    """The connector does not define a coset digraph."""


class ConnectorInSubgroupError(InvalidCosetSpecError):
    """The connector g lies in H."""


class ConnectorNotAntisymmetricError(InvalidCosetSpecError):
    """g^-1 lies in HgH, so the arc relation would be symmetric."""


class NotAutomorphismError(InputError):
    """A permutation does not preserve the arc set."""


class NotNormalError(InputError):
    """A subgroup is not normalised by the ambient group."""


class NotTransitiveError(InputError):
    """A group is not transitive where transitivity is required."""


class InvalidGroupTableError(InputError):
    """A multiplication table fails the group axioms."""


class InvalidDiagonalGroupError(InputError):
    """The group is abelian or has a nontrivial centre."""


class EnumerationError(InputError):
    """A tuple does not enumerate the group exactly once."""


class ProductFactorError(ArctestError):
    """No coordinatewise relabeling turns the digraph into a direct power."""


class InvalidFamilyParameterError(InputError):
    """A family parameter is outside its admissible range."""
