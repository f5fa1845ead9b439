"""Finite groups given by multiplication tables, and their automorphisms.

Elements are indices 0..k-1, ordered by the lexicographic order of a permutation
representation, except that the identity is moved to the end (index k-1).
"""

import logging
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from arctest.algebra.perm import Perm, compose, conjugate, invert
from arctest.algebra.permgroup import DEFAULT_MAX_ELEMENTS, PermGroup
from arctest.core.errors import InputError, InvalidGroupTableError

logger = logging.getLogger(__name__)

Table = Tuple[Tuple[int, ...], ...]


class CayleyGroup:
    """A group of order k as a multiplication table with the identity at index k-1."""

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        labels: Optional[Sequence[Perm]] = None,
        name: str = "",
        validate: bool = True,
        exhaustive_max: int = 100,
        samples: int = 100_000,
        seed: int = 0,
    ):
        self.table: Table = tuple(tuple(row) for row in table)
        self.size = len(self.table)
        self.name = name
        self.labels: Tuple[Perm, ...] = tuple(labels) if labels is not None else ()
        self.identity = self.size - 1
        self.inverse: Tuple[int, ...] = tuple(self._find_inverse(a) for a in range(self.size))
        if validate:
            problems = self.axiom_violations(exhaustive_max, samples, seed)
            if problems:
                raise InvalidGroupTableError(f"{name or 'table'}: {problems[0]}")

    @classmethod
    def from_permutations(
        cls, name: str, degree: int, generators: Sequence[Perm], max_elements: int = DEFAULT_MAX_ELEMENTS
    ) -> "CayleyGroup":
        """Table of the group generated by ``generators``; identity moved to the last index."""
        elements = PermGroup(degree, generators).elements(max_elements)
        ordered = elements[1:] + elements[:1]
        index = {x: i for i, x in enumerate(ordered)}
        table = [[index[compose(x, y)] for y in ordered] for x in ordered]
        logger.debug("%s: table of order %d", name, len(ordered))
        return cls(table, ordered, name)

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"CayleyGroup({self.name or '?'}, order={self.size})"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def index_of(self, perm: Perm) -> int:
        try:
            return self.labels.index(perm)
        except ValueError:
            raise InputError(f"{perm!r} is not an element of {self.name}") from None

    def _find_inverse(self, a: int) -> int:
        for b, product in enumerate(self.table[a]):
            if product == self.identity:
                return b
        return -1

    def axiom_violations(self, exhaustive_max: int = 100, samples: int = 100_000, seed: int = 0) -> List[str]:
        """Failures of the group axioms; empty when the table is a group.

        Associativity is checked on every triple up to order ``exhaustive_max`` and on
        ``samples`` seeded random triples above it.
        """
        k = self.size
        problems: List[str] = []
        everything = set(range(k))
        for a, row in enumerate(self.table):
            if len(row) != k or set(row) != everything:
                problems.append(f"row {a} is not a permutation of the elements")
        for b in range(k):
            if {self.table[a][b] for a in range(k) if len(self.table[a]) == k} != everything:
                problems.append(f"column {b} is not a permutation of the elements")
        if problems:
            return problems
        e = self.identity
        for a in range(k):
            if self.table[e][a] != a or self.table[a][e] != a:
                problems.append(f"element {k - 1} is not a two-sided identity at {a}")
                break
        for a in range(k):
            b = self.inverse[a]
            if b < 0 or self.table[b][a] != e:
                problems.append(f"element {a} has no two-sided inverse")
                break
        t = self.table
        if k <= exhaustive_max:
            triples = ((a, b, c) for a in range(k) for b in range(k) for c in range(k))
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(k), rng.randrange(k), rng.randrange(k)) for _ in range(samples))
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                problems.append(f"associativity fails at ({a}, {b}, {c})")
                break
        return problems

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.size) for b in range(a + 1, self.size))

    def center(self) -> List[int]:
        t = self.table
        return [a for a in range(self.size) if all(t[a][b] == t[b][a] for b in range(self.size))]

    def is_centerless_nonabelian(self) -> bool:
        return self.center() == [self.identity] and not self.is_abelian()

    def conjugation(self, s: int) -> Tuple[int, ...]:
        """Images of t -> s^-1 t s."""
        t, si = self.table, self.inverse[s]
        return tuple(t[t[si][a]][s] for a in range(self.size))

    def closure(self, elements: Sequence[int]) -> List[int]:
        found = {self.identity}
        frontier = [self.identity]
        while frontier:
            a = frontier.pop()
            for s in elements:
                b = self.table[a][s]
                if b not in found:
                    found.add(b)
                    frontier.append(b)
        return sorted(found)

    def is_simple(self) -> bool:
        """No normal subgroup other than 1 and the whole group."""
        if self.size == 1:
            return False
        conjugations = [self.conjugation(s) for s in range(self.size)]
        for a in range(self.size - 1):
            if len(self.closure(sorted({images[a] for images in conjugations}))) < self.size:
                return False
        return True

    def generators(self) -> List[int]:
        """A generating set chosen greedily in index order."""
        gens: List[int] = []
        span = {self.identity}
        for a in range(self.size):
            if a not in span:
                gens.append(a)
                span = set(self.closure(gens))
        return gens


@dataclass(frozen=True)
class Automorphism:
    """An automorphism as a permutation of element indices.

    ``perm`` is also the index permutation z(φ): element i goes to element perm[i].
    """

    perm: Perm
    inner: bool
    label: str = ""

    def __call__(self, a: int) -> int:
        return self.perm.images[a]

    def then(self, other: "Automorphism") -> "Automorphism":
        perm = compose(self.perm, other.perm)
        return Automorphism(perm, self.inner and other.inner, f"{self.label}*{other.label}")

    def inverse(self) -> "Automorphism":
        return Automorphism(invert(self.perm), self.inner, f"{self.label}^-1")

    def is_identity(self) -> bool:
        return self.perm.is_identity()


class AutomorphismSet:
    """Aut(T) realised by conjugation inside a declared overgroup of T."""

    def __init__(self, group: CayleyGroup, members: Sequence[Automorphism], generators: Sequence[Automorphism]):
        self.group = group
        self.members: Tuple[Automorphism, ...] = tuple(members)
        self.generators: Tuple[Automorphism, ...] = tuple(generators)

    @classmethod
    def from_overgroup(cls, group: CayleyGroup, overgroup_generators: Sequence[Perm]) -> "AutomorphismSet":
        """Close the conjugation action of the overgroup generators on T.

        Raises:
            InputError: If T carries no permutation labels or an overgroup element
                does not normalise T
        """
        if not group.labels:
            raise InputError("automorphisms from an overgroup need permutation labels")
        inner_images = {group.conjugation(s) for s in range(group.size)}
        generators = []
        for index, x in enumerate(overgroup_generators):
            try:
                images = tuple(group.index_of(conjugate(label, x)) for label in group.labels)
            except InputError:
                raise InputError(f"overgroup generator {index} does not normalise {group.name}") from None
            generators.append(Automorphism(Perm(images), images in inner_images, f"c{index}"))

        identity = Automorphism(Perm.identity(group.size), True, "1")
        members: Dict[Perm, Automorphism] = {identity.perm: identity}
        frontier = [identity]
        while frontier:
            current = frontier.pop()
            for gen in generators:
                product = current.then(gen)
                if product.perm not in members:
                    product = Automorphism(product.perm, product.perm.images in inner_images, product.label)
                    members[product.perm] = product
                    frontier.append(product)
        ordered = [members[p] for p in sorted(members)]
        logger.debug("%s: |Aut| = %d, |Inn| = %d", group.name, len(ordered), len(inner_images))
        return cls(group, ordered, generators)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def inner(self) -> List[Automorphism]:
        return [phi for phi in self.members if phi.inner]

    def outer_count(self) -> int:
        """|Out(T)| = |Aut(T)| / |Inn(T)|."""
        return len(self.members) // len(self.inner)

    def homomorphism_violations(self) -> List[str]:
        """Members failing φ(ab) = φ(a)φ(b), checked on every pair."""
        t = self.group.table
        k = self.group.size
        bad = []
        for phi in self.members:
            images = phi.perm.images
            if any(images[t[a][b]] != t[images[a]][images[b]] for a in range(k) for b in range(k)):
                bad.append(phi.label)
        return bad


@dataclass(frozen=True)
class CatalogEntry:
    degree: int
    generators: Tuple[Tuple[Tuple[int, ...], ...], ...]
    overgroup: Tuple[Tuple[Tuple[int, ...], ...], ...]
    description: str


CATALOG: Dict[str, CatalogEntry] = {
    "s3": CatalogEntry(3, (((0, 1),), ((0, 1, 2),)), (((0, 1),), ((0, 1, 2),)), "S3; Aut(S3) = Inn(S3)"),
    "a4": CatalogEntry(4, (((0, 1, 2),), ((0, 1), (2, 3))), (((0, 1),), ((0, 1, 2, 3),)), "A4 inside S4"),
    "a5": CatalogEntry(5, (((0, 1, 2, 3, 4),), ((0, 1, 2),)), (((0, 1, 2, 3, 4),), ((0, 1),)), "A5 inside S5"),
    "c6": CatalogEntry(6, (((0, 1, 2, 3, 4, 5),),), (((0, 1, 2, 3, 4, 5),),), "C6, abelian"),
}


def catalog_group(name: str) -> Tuple[CayleyGroup, AutomorphismSet]:
    """Table and automorphism set of a built-in group.

    Raises:
        InputError: For an unknown name
    """
    entry = CATALOG.get(name.lower())
    if entry is None:
        raise InputError(f"unknown group {name!r}; choose from {', '.join(sorted(CATALOG))}")
    gens = [Perm.from_cycles(entry.degree, cycles) for cycles in entry.generators]
    over = [Perm.from_cycles(entry.degree, cycles) for cycles in entry.overgroup]
    group = CayleyGroup.from_permutations(name.lower(), entry.degree, gens)
    return group, AutomorphismSet.from_overgroup(group, over)
