"""Permutation groups: stabilizer chains, orbits, subgroups and factorizations.

Groups are described by generators. Order, membership and stabilizers come from a
deterministic Schreier-Sims stabilizer chain. Operations that need explicit elements
(intersections, products, double cosets, conjugacy classes) work on
:class:`SubgroupSet` carriers and refuse to enumerate beyond ``max_elements``.
"""

import logging
import random
from collections import deque
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

from arctest.algebra.perm import Perm, compose, conjugate, invert
from arctest.core.errors import (
    BoundExceededError,
    DegreeMismatchError,
    NotSubgroupError,
    NotTransitiveError,
    PointOutOfRangeError,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_ELEMENTS = 100_000


class StabilizerChain:
    """Base, strong generators and transversals for a permutation group.

    Level ``l`` stores the strong generators fixing ``base[:l]`` and a transversal
    mapping each point of the orbit of ``base[l]`` to an element carrying
    ``base[l]`` onto it. Points listed in ``base_prefix`` come first, in order, so
    the group of level ``len(base_prefix)`` is the pointwise stabilizer of the prefix.
    """

    def __init__(self, degree: int, generators: Sequence[Perm], base_prefix: Sequence[int] = ()):
        self.degree = degree
        self.base: List[int] = []
        self.strong: List[List[Perm]] = []
        self.transversals: List[Dict[int, Perm]] = []
        self._inverses: List[Dict[int, Perm]] = []
        self._identity = Perm.identity(degree)
        self._build(generators, base_prefix)

    @property
    def order(self) -> int:
        result = 1
        for transversal in self.transversals:
            result *= len(transversal)
        return result

    def level_order(self, level: int) -> int:
        """Order of the stabilizer of ``base[:level]``."""
        result = 1
        for transversal in self.transversals[level:]:
            result *= len(transversal)
        return result

    def strip(self, g: Perm, start: int = 0) -> Tuple[Perm, int]:
        """Sift ``g`` through the levels from ``start``.

        Returns:
            The residue and the level where sifting stopped (``len(base)`` if it
            passed every level)
        """
        h = g
        for level in range(start, len(self.base)):
            point = h.images[self.base[level]]
            if point not in self.transversals[level]:
                return h, level
            if point != self.base[level]:
                h = compose(h, self._inverse(level, point))
        return h, len(self.base)

    def contains(self, g: Perm) -> bool:
        if g.degree != self.degree:
            raise DegreeMismatchError(g.degree, self.degree)
        residue, level = self.strip(g)
        return level == len(self.base) and residue.is_identity()

    def level_generators(self, level: int) -> List[Perm]:
        return list(self.strong[level]) if level < len(self.strong) else []

    def iter_elements(self, start: int = 0) -> Iterator[Perm]:
        """Every element of the level-``start`` group, as products of transversal elements."""
        products = [self._identity]
        for level in range(len(self.base) - 1, start - 1, -1):
            coset_reps = list(self.transversals[level].values())
            products = [compose(x, u) for x in products for u in coset_reps]
        return iter(products)

    def random_element(self, rng: random.Random, start: int = 0) -> Perm:
        g = self._identity
        for level in range(len(self.base) - 1, start - 1, -1):
            transversal = self.transversals[level]
            g = compose(g, transversal[rng.choice(sorted(transversal))])
        return g

    def _inverse(self, level: int, point: int) -> Perm:
        cache = self._inverses[level]
        inverse = cache.get(point)
        if inverse is None:
            inverse = cache[point] = invert(self.transversals[level][point])
        return inverse

    def _add_level(self, point: int) -> None:
        self.base.append(point)
        self.strong.append([])
        self.transversals.append({point: self._identity})
        self._inverses.append({})

    def _refresh(self, level: int) -> None:
        root = self.base[level]
        transversal = {root: self._identity}
        queue = deque([root])
        generators = self.strong[level]
        while queue:
            point = queue.popleft()
            u = transversal[point]
            for s in generators:
                image = s.images[point]
                if image not in transversal:
                    transversal[image] = compose(u, s)
                    queue.append(image)
        self.transversals[level] = transversal
        self._inverses[level] = {}

    def _choose_point(self, h: Perm, pool: Sequence[Perm]) -> int:
        """Point moved by ``h`` with the largest orbit under ``pool`` plus ``h``; smallest on ties."""
        fixing = [s for s in pool if all(s.images[b] == b for b in self.base)] + [h]
        best, best_size = -1, 0
        seen: Set[int] = set()
        for start in h.support():
            if start in seen:
                continue
            orbit = _orbit_of(start, fixing)
            seen.update(orbit)
            moved = [p for p in orbit if h.images[p] != p]
            if len(orbit) > best_size:
                best, best_size = min(moved), len(orbit)
        return best

    def _build(self, generators: Sequence[Perm], base_prefix: Sequence[int]) -> None:
        gens: List[Perm] = []
        for g in generators:
            if g.degree != self.degree:
                raise DegreeMismatchError(g.degree, self.degree)
            if not g.is_identity() and g not in gens:
                gens.append(g)

        for point in dict.fromkeys(base_prefix):
            if not 0 <= point < self.degree:
                raise PointOutOfRangeError(point, self.degree)
            self._add_level(point)
        for g in gens:
            if all(g.images[b] == b for b in self.base):
                self._add_level(self._choose_point(g, gens))

        for level in range(len(self.base)):
            fixed = self.base[:level]
            self.strong[level] = [g for g in gens if all(g.images[b] == b for b in fixed)]
            self._refresh(level)

        checked: List[Set[Tuple[int, int]]] = [set() for _ in self.base]
        level = len(self.base) - 1
        while level >= 0:
            found = self._find_missing(level, checked[level])
            if found is None:
                level -= 1
                continue
            h, depth = found
            if depth == len(self.base):
                self._add_level(self._choose_point(h, self.strong[level]))
                checked.append(set())
            for lower in range(level + 1, depth + 1):
                self.strong[lower].append(h)
                self._refresh(lower)
                checked[lower] = set()
            level = depth
        logger.debug("chain degree=%d base=%s order=%d", self.degree, self.base, self.order)

    def _find_missing(self, level: int, checked: Set[Tuple[int, int]]) -> Optional[Tuple[Perm, int]]:
        transversal = self.transversals[level]
        for point in sorted(transversal):
            u = transversal[point]
            for index, s in enumerate(self.strong[level]):
                if (point, index) in checked:
                    continue
                checked.add((point, index))
                us = compose(u, s)
                target = s.images[point]
                if us == transversal[target]:
                    continue
                schreier = compose(us, self._inverse(level, target))
                h, depth = self.strip(schreier, level + 1)
                if depth < len(self.base) or not h.is_identity():
                    return h, depth
        return None


class PermGroup:
    """A permutation group of a given degree, described by generators.

    The stabilizer chain is built on first use and cached.
    """

    def __init__(self, degree: int, generators: Iterable[Perm] = (), chain: Optional[StabilizerChain] = None):
        self.degree = degree
        self.generators: Tuple[Perm, ...] = tuple(generators)
        for g in self.generators:
            if g.degree != degree:
                raise DegreeMismatchError(g.degree, degree)
        self._chain = chain
        self._prefix_chains: Dict[Tuple[int, ...], StabilizerChain] = {}

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, generators={len(self.generators)})"

    @property
    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self.degree, self.generators)
        return self._chain

    def order(self) -> int:
        return self.chain.order

    def contains(self, g: Perm) -> bool:
        return self.chain.contains(g)

    __contains__ = contains

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def orbit(self, point: int) -> List[int]:
        """Sorted orbit of ``point``.

        Raises:
            PointOutOfRangeError: If the point is not in {0, ..., degree-1}
        """
        if not 0 <= point < self.degree:
            raise PointOutOfRangeError(point, self.degree)
        return sorted(_orbit_of(point, self.generators))

    def orbits(self) -> List[List[int]]:
        seen = [False] * self.degree
        result = []
        for point in range(self.degree):
            if not seen[point]:
                orbit = self.orbit(point)
                for p in orbit:
                    seen[p] = True
                result.append(orbit)
        return result

    def is_transitive(self, domain: Optional[Iterable[int]] = None) -> bool:
        points = sorted(set(domain)) if domain is not None else list(range(self.degree))
        if not points:
            return True
        return self.orbit(points[0]) == points

    def point_stabilizer(self, point: int) -> "PermGroup":
        return self.sequence_stabilizer([point])

    def sequence_stabilizer(self, points: Sequence[int]) -> "PermGroup":
        """Pointwise stabilizer of ``points``, with its chain attached."""
        key = tuple(dict.fromkeys(points))
        chain = self._prefix_chains.get(key)
        if chain is None:
            chain = self._prefix_chains[key] = StabilizerChain(self.degree, self.generators, key)
        level = len(key)
        gens = chain.level_generators(level)
        tail = _tail_chain(chain, level)
        return PermGroup(self.degree, gens, chain=tail)

    def prefix_stabilizer_orders(self, points: Sequence[int]) -> List[int]:
        """Orders of the stabilizers of ``points[:j]`` for j = 0, ..., len(points)."""
        key = tuple(dict.fromkeys(points))
        self.sequence_stabilizer(key)
        chain = self._prefix_chains[key]
        return [chain.level_order(len(set(points[:j]))) for j in range(len(points) + 1)]

    def elements(self, max_elements: int = DEFAULT_MAX_ELEMENTS) -> List[Perm]:
        """All elements in lexicographic order of image tuples.

        Raises:
            BoundExceededError: If the order exceeds ``max_elements``
        """
        order = self.order()
        if order > max_elements:
            raise BoundExceededError("max_elements", order, max_elements)
        return sorted(self.chain.iter_elements())

    def random_element(self, rng: random.Random) -> Perm:
        return self.chain.random_element(rng)


def _tail_chain(chain: StabilizerChain, level: int) -> StabilizerChain:
    tail = StabilizerChain.__new__(StabilizerChain)
    tail.degree = chain.degree
    tail.base = chain.base[level:]
    tail.strong = chain.strong[level:]
    tail.transversals = chain.transversals[level:]
    tail._inverses = chain._inverses[level:]
    tail._identity = chain._identity
    return tail


def _orbit_of(point: int, generators: Sequence[Perm]) -> Set[int]:
    orbit = {point}
    queue = deque([point])
    while queue:
        p = queue.popleft()
        for s in generators:
            q = s.images[p]
            if q not in orbit:
                orbit.add(q)
                queue.append(q)
    return orbit


def closure(degree: int, generators: Sequence[Perm], max_elements: int = DEFAULT_MAX_ELEMENTS) -> Set[Perm]:
    """Exhaustive closure of the generators, used as an independent order oracle.

    Raises:
        BoundExceededError: If the closure grows past ``max_elements``
    """
    identity = Perm.identity(degree)
    elements = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for s in generators:
            y = compose(x, s)
            if y not in elements:
                elements.add(y)
                if len(elements) > max_elements:
                    raise BoundExceededError("max_elements", len(elements), max_elements)
                queue.append(y)
    return elements


class SubgroupSet:
    """A subgroup carried as its explicit, sorted element list."""

    def __init__(self, degree: int, elements: Iterable[Perm], check: bool = False):
        self.degree = degree
        self.elements: Tuple[Perm, ...] = tuple(sorted(set(elements)))
        self._members = frozenset(self.elements)
        if check:
            self._check_closed()

    @classmethod
    def from_group(cls, group: PermGroup, max_elements: int = DEFAULT_MAX_ELEMENTS) -> "SubgroupSet":
        return cls(group.degree, group.elements(max_elements))

    @classmethod
    def generated_by(
        cls, degree: int, generators: Sequence[Perm], max_elements: int = DEFAULT_MAX_ELEMENTS
    ) -> "SubgroupSet":
        return cls.from_group(PermGroup(degree, generators), max_elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.elements)

    def __contains__(self, g: object) -> bool:
        return g in self._members

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubgroupSet):
            return NotImplemented
        return self._members == other._members

    def __hash__(self) -> int:
        return hash(self._members)

    def __repr__(self) -> str:
        return f"SubgroupSet(degree={self.degree}, order={self.order})"

    @property
    def order(self) -> int:
        return len(self.elements)

    def generators(self) -> List[Perm]:
        """A small generating set, chosen greedily in lexicographic order."""
        gens: List[Perm] = []
        generated: Set[Perm] = {Perm.identity(self.degree)}
        for x in self.elements:
            if x not in generated:
                gens.append(x)
                generated = closure(self.degree, gens, max(len(self.elements), 1))
        return gens

    def to_group(self) -> PermGroup:
        return PermGroup(self.degree, self.generators())

    def _check_closed(self) -> None:
        if Perm.identity(self.degree) not in self._members:
            raise NotSubgroupError("element set does not contain the identity")
        for x in self.elements:
            if invert(x) not in self._members:
                raise NotSubgroupError(f"{x!r} has no inverse in the set")
            for y in self.elements:
                if compose(x, y) not in self._members:
                    raise NotSubgroupError(f"set is not closed: {x!r} * {y!r}")


GroupLike = Union[PermGroup, SubgroupSet]


def as_subgroup_set(group: GroupLike, max_elements: int = DEFAULT_MAX_ELEMENTS) -> SubgroupSet:
    if isinstance(group, SubgroupSet):
        if len(group) > max_elements:
            raise BoundExceededError("max_elements", len(group), max_elements)
        return group
    return SubgroupSet.from_group(group, max_elements)


def _order(group: GroupLike) -> int:
    return group.order if isinstance(group, SubgroupSet) else group.order()


def _check_degree(*groups: GroupLike) -> None:
    degrees = {group.degree for group in groups}
    if len(degrees) > 1:
        first, second = sorted(degrees)[:2]
        raise DegreeMismatchError(first, second)


def intersect(a: GroupLike, b: GroupLike, max_elements: int = DEFAULT_MAX_ELEMENTS) -> SubgroupSet:
    """Elementwise intersection of two explicit subgroups."""
    _check_degree(a, b)
    left = as_subgroup_set(a, max_elements)
    right = as_subgroup_set(b, max_elements)
    if len(right) < len(left):
        left, right = right, left
    return SubgroupSet(left.degree, (x for x in left if x in right))


def conjugate_subgroup(h: GroupLike, g: Perm, max_elements: int = DEFAULT_MAX_ELEMENTS) -> SubgroupSet:
    """``g^-1 H g``."""
    if g.degree != h.degree:
        raise DegreeMismatchError(g.degree, h.degree)
    return SubgroupSet(h.degree, (conjugate(x, g) for x in as_subgroup_set(h, max_elements)))


def product_set(h: GroupLike, k: GroupLike, max_elements: int = DEFAULT_MAX_ELEMENTS) -> Set[Perm]:
    """The set HK = {hk}."""
    _check_degree(h, k)
    left = as_subgroup_set(h, max_elements)
    right = as_subgroup_set(k, max_elements)
    if len(left) * len(right) > max_elements:
        raise BoundExceededError("max_elements", len(left) * len(right), max_elements)
    return {compose(x, y) for x in left for y in right}


def double_coset(
    h: GroupLike, g: Perm, k: GroupLike, max_elements: int = DEFAULT_MAX_ELEMENTS
) -> Set[Perm]:
    """The set HgK."""
    _check_degree(h, k)
    left = as_subgroup_set(h, max_elements)
    right = as_subgroup_set(k, max_elements)
    if len(left) * len(right) > max_elements:
        raise BoundExceededError("max_elements", len(left) * len(right), max_elements)
    return {compose(compose(x, g), y) for x in left for y in right}


def in_double_coset(
    x: Perm, h: GroupLike, g: Perm, k: GroupLike, max_elements: int = DEFAULT_MAX_ELEMENTS
) -> bool:
    return x in double_coset(h, g, k, max_elements)


def is_factorization(
    g: PermGroup, h: GroupLike, k: GroupLike, max_elements: int = DEFAULT_MAX_ELEMENTS
) -> bool:
    """G = HK, decided by |H ∩ K| |G| = |H| |K|.

    Raises:
        NotSubgroupError: If H or K has an element outside G
    """
    _require_subgroup(g, h)
    _require_subgroup(g, k)
    meet = intersect(h, k, max_elements)
    return meet.order * g.order() == _order(h) * _order(k)


def _require_subgroup(g: PermGroup, h: GroupLike) -> None:
    gens = h.generators if isinstance(h, PermGroup) else h.elements
    for x in gens:
        if not g.contains(x):
            raise NotSubgroupError(f"{x!r} is not in the ambient group")


def coset_representative(subgroup: SubgroupSet, x: Perm) -> Perm:
    """Lexicographically least element of the right coset ``subgroup * x``."""
    images = x.images
    return Perm._trusted(min(tuple(map(images.__getitem__, h.images)) for h in subgroup))


def coset_transitivity(
    g: PermGroup, h: GroupLike, k: GroupLike, max_elements: int = DEFAULT_MAX_ELEMENTS
) -> bool:
    """Whether H is transitive, by right multiplication, on the right cosets of K in G."""
    _require_subgroup(g, h)
    _require_subgroup(g, k)
    acting = as_subgroup_set(h, max_elements)
    cosets_of = as_subgroup_set(k, max_elements)
    index = g.order() // cosets_of.order
    reached = {coset_representative(cosets_of, x) for x in acting}
    return len(reached) == index


def factorization_conditions(
    g: PermGroup,
    h: GroupLike,
    k: GroupLike,
    rng: Optional[random.Random] = None,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> Dict[str, bool]:
    """Evaluate the equivalent forms of G = HK separately; they must all agree."""
    rng = rng or random.Random(0)
    left = as_subgroup_set(h, max_elements)
    right = as_subgroup_set(k, max_elements)
    order = g.order()
    x = g.random_element(rng)
    y = g.random_element(rng)
    conditions = {
        "order_identity": is_factorization(g, left, right, max_elements),
        "swapped": is_factorization(g, right, left, max_elements),
        "conjugated": is_factorization(
            g, conjugate_subgroup(left, x, max_elements), conjugate_subgroup(right, y, max_elements), max_elements
        ),
        "h_transitive_on_k_cosets": coset_transitivity(g, left, right, max_elements),
        "k_transitive_on_h_cosets": coset_transitivity(g, right, left, max_elements),
    }
    if order <= max_elements and len(left) * len(right) <= max_elements:
        conditions["hk_equals_g"] = len(product_set(left, right, max_elements)) == order
        conditions["kh_equals_g"] = len(product_set(right, left, max_elements)) == order
    return conditions


def normal_closure(g: PermGroup, x: Union[Perm, Sequence[Perm]]) -> PermGroup:
    """Smallest normal subgroup of G containing ``x``."""
    seeds = [x] if isinstance(x, Perm) else list(x)
    gens = [s for s in seeds if not s.is_identity()]
    closure_group = PermGroup(g.degree, gens)
    queue = deque(gens)
    while queue:
        n = queue.popleft()
        for s in g.generators:
            c = conjugate(n, s)
            if not closure_group.contains(c):
                gens.append(c)
                closure_group = PermGroup(g.degree, gens)
                queue.append(c)
    return closure_group


def conjugacy_class_reps(g: PermGroup, max_elements: int = DEFAULT_MAX_ELEMENTS) -> List[Perm]:
    """Least element of every conjugacy class, in increasing order."""
    return [cls[0] for cls in conjugacy_classes(g, max_elements)]


def conjugacy_classes(g: PermGroup, max_elements: int = DEFAULT_MAX_ELEMENTS) -> List[List[Perm]]:
    elements = g.elements(max_elements)
    assigned: Set[Perm] = set()
    classes = []
    for x in elements:
        if x in assigned:
            continue
        members = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for s in g.generators:
                z = conjugate(y, s)
                if z not in members:
                    members.add(z)
                    queue.append(z)
        assigned.update(members)
        classes.append(sorted(members))
    return classes


def is_normal(g: PermGroup, n: PermGroup, contains: Optional[Callable[[Perm], bool]] = None) -> bool:
    """Whether every conjugate of a generator of N by a generator of G lies in N."""
    member = contains or n.contains
    return all(member(conjugate(x, s)) for x in n.generators for s in g.generators)


def _domain(g: PermGroup, domain: Optional[Iterable[int]]) -> List[int]:
    points = sorted(set(domain)) if domain is not None else list(range(g.degree))
    for p in points:
        if not 0 <= p < g.degree:
            raise PointOutOfRangeError(p, g.degree)
    return points


def _restrict(g: PermGroup, points: List[int]) -> PermGroup:
    if len(points) == g.degree:
        return g
    return PermGroup(len(points), [s.restrict(points) for s in g.generators])


def is_quasiprimitive(
    g: PermGroup, domain: Optional[Iterable[int]] = None, max_elements: int = DEFAULT_MAX_ELEMENTS
) -> bool:
    """Transitive, and every nontrivial normal subgroup is transitive.

    Raises:
        NotTransitiveError: If G is not transitive on the domain
        BoundExceededError: If the class enumeration is too large
    """
    points = _domain(g, domain)
    if not g.is_transitive(points):
        raise NotTransitiveError("quasiprimitivity needs a transitive group")
    for x in conjugacy_class_reps(g, max_elements):
        if x.is_identity():
            continue
        if not normal_closure(g, x).is_transitive(points):
            logger.debug("normal closure of %r is intransitive", x)
            return False
    return True


def is_primitive(
    g: PermGroup, domain: Optional[Iterable[int]] = None, point_stabilizer: Optional[Sequence[Perm]] = None
) -> bool:
    """No nontrivial block system, by minimal-block search from each pair {first point, d}.

    ``point_stabilizer`` may supply generators of the stabilizer of the first domain
    point; one ``d`` per orbit of that stabilizer is then enough.

    Raises:
        NotTransitiveError: If G is not transitive on the domain
    """
    points = _domain(g, domain)
    if not g.is_transitive(points):
        raise NotTransitiveError("primitivity needs a transitive group")
    group = _restrict(g, points)
    n = group.degree
    if n <= 2:
        return True
    if point_stabilizer is not None:
        stab = [s.restrict(points) if len(points) != g.degree else s for s in point_stabilizer]
    else:
        stab = list(group.point_stabilizer(0).generators)
    candidates = sorted({min(orbit) for orbit in _suborbits(n, stab) if 0 not in orbit})
    return all(_minimal_block_size(group, d) == n for d in candidates)


def _suborbits(n: int, generators: Sequence[Perm]) -> List[Set[int]]:
    seen: Set[int] = set()
    result = []
    for p in range(n):
        if p not in seen:
            orbit = _orbit_of(p, generators)
            seen.update(orbit)
            result.append(orbit)
    return result


def _minimal_block_size(group: PermGroup, d: int) -> int:
    """Size of the smallest block containing 0 and d."""
    n = group.degree
    parent = list(range(n))
    size = [1] * n

    def find(p: int) -> int:
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    def union(a: int, b: int) -> bool:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        if size[ra] < size[rb]:
            ra, rb = rb, ra
        parent[rb] = ra
        size[ra] += size[rb]
        return True

    union(0, d)
    queue = deque([(0, d)])
    while queue:
        a, b = queue.popleft()
        for s in group.generators:
            x, y = s.images[a], s.images[b]
            if union(x, y):
                if size[find(0)] == n:
                    return n
                queue.append((x, y))
    return size[find(0)]


def is_regular(g: PermGroup, domain: Optional[Iterable[int]] = None) -> bool:
    """Transitive with trivial point stabilizers.

    Decided without a stabilizer chain: every Schreier generator of the stabilizer
    of the first point must be the identity. Transversal elements are rebuilt from a
    Schreier tree on demand, so large degrees stay within memory.
    """
    points = _domain(g, domain)
    if not g.is_transitive(points):
        return False
    group = _restrict(g, points)
    gens = list(group.generators)
    tree: Dict[int, Tuple[int, int]] = {0: (-1, -1)}
    queue = deque([0])
    while queue:
        p = queue.popleft()
        for index, s in enumerate(gens):
            q = s.images[p]
            if q not in tree:
                tree[q] = (p, index)
                queue.append(q)

    def transversal(point: int) -> Perm:
        word = []
        while tree[point][0] >= 0:
            point, index = tree[point]
            word.append(index)
        u = group.identity
        for index in reversed(word):
            u = compose(u, gens[index])
        return u

    for p in tree:
        u = transversal(p)
        for index, s in enumerate(gens):
            q = s.images[p]
            if tree[q] == (p, index):
                continue
            if compose(u, s) != transversal(q):
                return False
    return True


def minimal_normal_subgroups(g: PermGroup, max_elements: int = DEFAULT_MAX_ELEMENTS) -> List[PermGroup]:
    """Inclusion-minimal normal closures of the non-identity class representatives."""
    closures: List[PermGroup] = []
    for x in conjugacy_class_reps(g, max_elements):
        if x.is_identity():
            continue
        candidate = normal_closure(g, x)
        if not any(_same_group(candidate, known) for known in closures):
            closures.append(candidate)
    closures.sort(key=lambda n: n.order())
    minimal = [
        n
        for n in closures
        if not any(other.order() < n.order() and other.is_subgroup_of(n) for other in closures)
    ]
    logger.debug("minimal normal subgroup orders: %s", [n.order() for n in minimal])
    return minimal


def _same_group(a: PermGroup, b: PermGroup) -> bool:
    return a.order() == b.order() and a.is_subgroup_of(b)


def product_group(g: PermGroup, h: PermGroup) -> PermGroup:
    """G x H acting on pairs (u, v) indexed ``u * h.degree + v``."""
    m = h.degree
    gens = []
    for s in g.generators:
        gens.append(Perm._trusted(tuple(s.images[u] * m + v for u in range(g.degree) for v in range(m))))
    for t in h.generators:
        gens.append(Perm._trusted(tuple(u * m + t.images[v] for u in range(g.degree) for v in range(m))))
    return PermGroup(g.degree * m, gens)
