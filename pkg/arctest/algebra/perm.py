"""Permutations as image tuples.

Permutations act on the right: ``i ** (p * q) == (i ** p) ** q``, so
``compose(p, q)`` maps ``i`` to ``q[p[i]]``. Ordering between permutations is the
lexicographic order of their image tuples.
"""

import math
from functools import total_ordering
from typing import Iterable, List, Sequence, Tuple

from arctest.core.errors import DegreeMismatchError, InvalidPermutationError, PointOutOfRangeError

Images = Tuple[int, ...]


@total_ordering
class Perm:
    """A permutation of {0, ..., n-1} stored as its image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        n = len(images)
        if sorted(images) != list(range(n)):
            raise InvalidPermutationError(f"not a permutation of 0..{n - 1}: {list(images)}")
        self.images: Images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: Images) -> "Perm":
        perm = cls.__new__(cls)
        perm.images = images
        perm._hash = hash(images)
        return perm

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Perm":
        """Build a permutation from 0-based disjoint cycles.

        Raises:
            PointOutOfRangeError: If a cycle mentions a point outside the degree
            InvalidPermutationError: If the cycles are not disjoint
        """
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            for point in cycle:
                if not 0 <= point < degree:
                    raise PointOutOfRangeError(point, degree)
                if point in seen:
                    raise InvalidPermutationError(f"cycles overlap at point {point}")
                seen.add(point)
            for position, point in enumerate(cycle):
                images[point] = cycle[(position + 1) % len(cycle)]
        return cls._trusted(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __getitem__(self, point: int) -> int:
        return self.images[point]

    def __len__(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Perm") -> "Perm":
        return compose(self, other)

    def __invert__(self) -> "Perm":
        return invert(self)

    def __pow__(self, exponent: int) -> "Perm":
        base = self if exponent >= 0 else invert(self)
        exponent = abs(exponent)
        result = Perm.identity(self.degree)
        while exponent:
            if exponent & 1:
                result = compose(result, base)
            base = compose(base, base)
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Perm):
            return NotImplemented
        return self._hash == other._hash and self.images == other.images

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if self.is_identity():
            return f"Perm.identity({self.degree})"
        body = "".join("(" + " ".join(map(str, cycle)) + ")" for cycle in self.cycles())
        return f"Perm<{self.degree}>{body}"

    def is_identity(self) -> bool:
        return all(i == image for i, image in enumerate(self.images))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point, ordered by that point."""
        seen = [False] * self.degree
        result = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                continue
            cycle = [start]
            seen[start] = True
            point = self.images[start]
            while point != start:
                cycle.append(point)
                seen[point] = True
                point = self.images[point]
            result.append(tuple(cycle))
        return result

    def cycle_type(self) -> Tuple[int, ...]:
        return tuple(sorted((len(cycle) for cycle in self.cycles()), reverse=True))

    def order(self) -> int:
        return math.lcm(1, *(len(cycle) for cycle in self.cycles()))

    def support(self) -> List[int]:
        return [i for i, image in enumerate(self.images) if i != image]

    def restrict(self, points: Sequence[int]) -> "Perm":
        """Action on an invariant block of points, relabeled 0..len(points)-1.

        Raises:
            InvalidPermutationError: If the points are not permuted among themselves
        """
        position = {point: index for index, point in enumerate(points)}
        try:
            return Perm(position[self.images[point]] for point in points)
        except KeyError:
            raise InvalidPermutationError(f"{list(points)} is not invariant under {self!r}") from None

    def to_json(self) -> List[int]:
        return list(self.images)


def compose(p: Perm, q: Perm) -> Perm:
    """Product ``p * q``: apply ``p`` first, then ``q``.

    Raises:
        DegreeMismatchError: If the degrees differ
    """
    if len(p.images) != len(q.images):
        raise DegreeMismatchError(len(p.images), len(q.images))
    return Perm._trusted(tuple(map(q.images.__getitem__, p.images)))


def invert(p: Perm) -> Perm:
    inverse = [0] * len(p.images)
    for point, image in enumerate(p.images):
        inverse[image] = point
    return Perm._trusted(tuple(inverse))


def identity(degree: int) -> Perm:
    return Perm.identity(degree)


def conjugate(p: Perm, g: Perm) -> Perm:
    """``g^-1 p g``, the image of ``p`` under conjugation by ``g``."""
    return compose(compose(invert(g), p), g)
