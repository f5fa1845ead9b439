"""Coset digraphs Cos(G, H, g) and the group-theoretic criteria for them.

Vertices are the right cosets Hx, numbered in lexicographic order of their
canonical representatives (the least element of the coset). Hx -> Hy is an arc
iff y x^-1 lies in HgH. Every criterion here is computed from G, H and g alone;
:func:`criteria_report` sets each one beside the matching computation on the
explicit digraph.
"""

import logging
from collections import deque
from typing import Callable, Dict, NamedTuple, Optional, Sequence, Tuple, Union

from arctest.algebra.perm import Perm, compose, invert
from arctest.algebra.permgroup import (
    DEFAULT_MAX_ELEMENTS,
    PermGroup,
    SubgroupSet,
    as_subgroup_set,
    conjugacy_class_reps,
    conjugate_subgroup,
    coset_representative,
    double_coset,
    intersect,
    is_normal,
    is_primitive,
    is_regular,
    normal_closure,
)
from arctest.core.errors import (
    BoundExceededError,
    ConnectorInSubgroupError,
    ConnectorNotAntisymmetricError,
    InvalidCosetSpecError,
    NotNormalError,
    NotSubgroupError,
    NotTransitiveError,
)
from arctest.core.report import Report
from arctest.graphs.digraph import (
    Digraph,
    count_s_arcs,
    first_s_arc,
    is_connected,
    is_directed_cycle,
    is_G_s_arc_transitive,
    regularity,
    require_automorphisms,
    tuple_orbit,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_COSETS = 1_000_000


class CosetSpace:
    """Right cosets of H in G with the right-multiplication action of G."""

    def __init__(self, group: PermGroup, subgroup: SubgroupSet, cosets: Sequence[Perm]):
        self.group = group
        self.subgroup = subgroup
        self.cosets: Tuple[Perm, ...] = tuple(cosets)
        self.index: Dict[Perm, int] = {rep: i for i, rep in enumerate(self.cosets)}
        self._acting: Optional[PermGroup] = None

    def __len__(self) -> int:
        return len(self.cosets)

    def __repr__(self) -> str:
        return f"CosetSpace(index={len(self.cosets)}, subgroup_order={self.subgroup.order})"

    def canonical(self, x: Perm) -> Perm:
        return coset_representative(self.subgroup, x)

    def coset_of(self, x: Perm) -> int:
        return self.index[self.canonical(x)]

    def action(self, g: Perm) -> Perm:
        """The permutation Hx -> Hxg of coset ids."""
        return Perm._trusted(tuple(self.coset_of(compose(rep, g)) for rep in self.cosets))

    def acting_group(self) -> PermGroup:
        if self._acting is None:
            self._acting = PermGroup(len(self.cosets), [self.action(s) for s in self.group.generators])
        return self._acting

    def induced(self, group: Union[PermGroup, Sequence[Perm]]) -> PermGroup:
        """A subgroup of G as permutations of coset ids."""
        gens = group.generators if isinstance(group, PermGroup) else group
        return PermGroup(len(self.cosets), [self.action(s) for s in gens])

    def kernel(self) -> SubgroupSet:
        """Elements of H fixing every coset (the kernel lies inside H)."""
        fixing = [
            h for h in self.subgroup if all(self.canonical(compose(rep, h)) == rep for rep in self.cosets)
        ]
        return SubgroupSet(self.group.degree, fixing)

    def is_faithful(self) -> bool:
        return self.kernel().order == 1


def build_coset_space(
    group: PermGroup,
    subgroup: Union[PermGroup, SubgroupSet],
    max_cosets: int = DEFAULT_MAX_COSETS,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> CosetSpace:
    """Enumerate the right cosets of H in G.

    Raises:
        NotSubgroupError: If H has an element outside G
        BoundExceededError: If the index or |H| is too large
    """
    h = as_subgroup_set(subgroup, max_elements)
    for x in h.generators():
        if not group.contains(x):
            raise NotSubgroupError(f"{x!r} is not in G")
    order = group.order()
    if order % h.order:
        raise NotSubgroupError(f"|H| = {h.order} does not divide |G| = {order}")
    index = order // h.order
    if index > max_cosets:
        raise BoundExceededError("max_cosets", index, max_cosets, "use the criteria without the explicit digraph")

    start = coset_representative(h, group.identity)
    found = {start}
    queue = deque([start])
    while queue:
        rep = queue.popleft()
        for s in group.generators:
            image = coset_representative(h, compose(rep, s))
            if image not in found:
                found.add(image)
                queue.append(image)
    logger.debug("enumerated %d cosets (index %d)", len(found), index)
    return CosetSpace(group, h, sorted(found))


class CosetDigraphSpec:
    """G, H and a connector g such that Cos(G, H, g) is a digraph.

    The coset space is enumerated on first use of :attr:`space`, so the criteria
    also run on indices too large to enumerate.

    Raises:
        NotSubgroupError: If H is not contained in G
        InvalidCosetSpecError: If g is not in G
        ConnectorInSubgroupError: If g lies in H
        ConnectorNotAntisymmetricError: If g^-1 lies in HgH
    """

    def __init__(
        self,
        group: PermGroup,
        subgroup: Union[PermGroup, SubgroupSet],
        connector: Perm,
        max_elements: int = DEFAULT_MAX_ELEMENTS,
        max_cosets: int = DEFAULT_MAX_COSETS,
    ):
        self.group = group
        self.subgroup = as_subgroup_set(subgroup, max_elements)
        self.connector = connector
        self.max_elements = max_elements
        self.max_cosets = max_cosets
        self._space: Optional[CosetSpace] = None
        for x in self.subgroup.generators():
            if not group.contains(x):
                raise NotSubgroupError(f"{x!r} is not in G")
        if not group.contains(connector):
            raise InvalidCosetSpecError("the connector is not in G")
        if connector in self.subgroup:
            raise ConnectorInSubgroupError("the connector lies in H")
        if invert(connector) in double_coset(self.subgroup, connector, self.subgroup, max_elements):
            raise ConnectorNotAntisymmetricError("g^-1 lies in HgH; the arc relation would be symmetric")

    @classmethod
    def from_space(cls, space: CosetSpace, connector: Perm, max_elements: int = DEFAULT_MAX_ELEMENTS):
        spec = cls(space.group, space.subgroup, connector, max_elements, max(len(space), 1))
        spec._space = space
        return spec

    def __repr__(self) -> str:
        return f"CosetDigraphSpec(index={self.index}, subgroup_order={self.subgroup.order})"

    @property
    def index(self) -> int:
        return self.group.order() // self.subgroup.order

    @property
    def space(self) -> CosetSpace:
        if self._space is None:
            self._space = build_coset_space(self.group, self.subgroup, self.max_cosets, self.max_elements)
        return self._space

    def conjugate(self, power: int) -> SubgroupSet:
        """g^-j H g^j for j = ``power``."""
        return conjugate_subgroup(self.subgroup, self.connector ** power, self.max_elements)


class CosetDigraph(NamedTuple):
    digraph: Digraph
    acting: PermGroup


def build_coset_digraph(spec: CosetDigraphSpec) -> CosetDigraph:
    """Explicit Cos(G, H, g) with R_H(G) acting on coset ids."""
    space = spec.space
    shifts = sorted({compose(spec.connector, h) for h in space.subgroup})
    rows = []
    for rep in space.cosets:
        rows.append({space.coset_of(compose(shift, rep)) for shift in shifts})
    digraph = Digraph(len(space), rows)
    acting = space.acting_group()
    require_automorphisms(digraph, acting)
    logger.debug("coset digraph: %d vertices, %d arcs", digraph.n, digraph.arc_count)
    return CosetDigraph(digraph, acting)


def regularity_formula(spec: CosetDigraphSpec) -> int:
    """|H : H ∩ g^-1 H g|."""
    meet = intersect(spec.subgroup, spec.conjugate(1), spec.max_elements)
    return spec.subgroup.order // meet.order


def connected_via_generation(spec: CosetDigraphSpec) -> bool:
    """Whether <H, g> = G."""
    gens = spec.subgroup.generators() + [spec.connector]
    return PermGroup(spec.group.degree, gens).order() == spec.group.order()


def primitive_via_maximality(spec: CosetDigraphSpec) -> bool:
    """Primitivity of G on the cosets, equivalent to maximality of H in G."""
    space = spec.space
    stabilizer = [space.action(h) for h in spec.subgroup.generators()]
    return is_primitive(space.acting_group(), point_stabilizer=stabilizer)


def _chain_term(spec: CosetDigraphSpec, first: int, last: int) -> SubgroupSet:
    """The intersection of g^-j H g^j over first <= j <= last."""
    result = spec.conjugate(first)
    for j in range(first + 1, last + 1):
        result = intersect(result, spec.conjugate(j), spec.max_elements)
    return result


def s_arc_transitive_by_factorization(spec: CosetDigraphSpec, s: int) -> bool:
    """The factorization chain for s-arc-transitivity of Cos(G, H, g).

    With L_i the intersection of g^-j H g^j over 0 <= j < i, each
    L_i = (L_i ∩ g H g^-1)(L_i ∩ g^-i H g^i) must hold for 1 <= i < s; every
    coset digraph is arc-transitive, so s <= 1 holds trivially.
    """
    if s < 0:
        raise ValueError(f"s must be non-negative, got {s}")
    for i in range(1, s):
        whole = _chain_term(spec, 0, i - 1)
        left = intersect(whole, spec.conjugate(-1), spec.max_elements)
        right = intersect(whole, spec.conjugate(i), spec.max_elements)
        meet = intersect(left, right, spec.max_elements)
        if meet.order * whole.order != left.order * right.order:
            logger.debug("factorization chain fails at i=%d", i)
            return False
    return True


def two_arc_check(spec: CosetDigraphSpec) -> bool:
    """H = (gHg^-1 ∩ H)(H ∩ g^-1Hg)."""
    h = spec.subgroup
    left = intersect(spec.conjugate(-1), h, spec.max_elements)
    right = intersect(h, spec.conjugate(1), spec.max_elements)
    meet = intersect(left, right, spec.max_elements)
    return meet.order * h.order == left.order * right.order


def quasiprimitive_on_cosets(
    group: PermGroup, subgroup: Union[PermGroup, SubgroupSet], max_elements: int = DEFAULT_MAX_ELEMENTS
) -> bool:
    """Quasiprimitivity of G on the right cosets of H without enumerating them.

    A normal subgroup N is transitive on the cosets iff NH = G, that is
    |N| |H| = |G| |N ∩ H|.
    """
    h = as_subgroup_set(subgroup, max_elements)
    order = group.order()
    for x in conjugacy_class_reps(group, max_elements):
        if x.is_identity():
            continue
        n = normal_closure(group, x)
        meet = sum(1 for y in h if n.contains(y))
        if n.order() * h.order != order * meet:
            logger.debug("normal closure of order %d is intransitive on cosets", n.order())
            return False
    return True


def criteria_report(
    spec: CosetDigraphSpec,
    s_values: Sequence[int] = (2, 3),
    explicit: bool = True,
    max_vertices: int = DEFAULT_MAX_COSETS,
    prefix: str = "coset",
) -> Report:
    """Every criterion for ``spec``, each beside its direct digraph counterpart when built."""
    report = Report()
    built: Optional[CosetDigraph] = None
    if explicit and spec.index <= min(max_vertices, spec.max_cosets):
        built = build_coset_digraph(spec)

    formula = regularity_formula(spec)
    report.check(
        f"{prefix}.regularity_formula",
        "Cos(G,H,g) is |H : H ∩ g⁻¹Hg|-regular",
        lambda: _agree(formula, None if built is None else regularity(built.digraph)),
    )
    generated = connected_via_generation(spec)
    report.check(
        f"{prefix}.connected_via_generation",
        "Cos(G,H,g) is connected iff <H, g> = G",
        lambda: _agree(generated, None if built is None else is_connected(built.digraph)),
    )
    two_arc = two_arc_check(spec)
    report.check(
        f"{prefix}.two_arc_check",
        "Cos(G,H,g) is (G,2)-arc-transitive iff H = (gHg⁻¹ ∩ H)(H ∩ g⁻¹Hg)",
        lambda: _agree(two_arc, s_arc_transitive_by_factorization(spec, 2), "chain_s2"),
    )
    verdicts = {}
    oracles = {}
    for s in s_values:
        verdict = verdicts[s] = s_arc_transitive_by_factorization(spec, s)
        oracle = None if built is None else is_G_s_arc_transitive(built.digraph, built.acting, s)
        oracles[s] = oracle
        report.check(
            f"{prefix}.s_arc_transitive.s{s}",
            f"the factorization chain decides ({s})-arc-transitivity of Cos(G,H,g)",
            lambda verdict=verdict, oracle=oracle: _agree(verdict, oracle),
        )
    if built is not None:
        report.check(
            f"{prefix}.arc_transitive",
            "Cos(G,H,g) is R_H(G)-arc-transitive",
            lambda: (_oracle(built, oracles, 1), {}),
        )
        report.check(
            f"{prefix}.monotone",
            "(G,s)-arc-transitivity implies (G,s-1)-arc-transitivity",
            lambda: _monotone(oracles, verdicts),
        )
        report.check(
            f"{prefix}.primitive_via_maximality",
            "G is primitive on the cosets iff H is maximal in G",
            lambda: _primitive_claim(spec, built.digraph),
        )
        report.check(
            f"{prefix}.faithful",
            "the kernel of the coset action",
            lambda: (True, {"faithful": spec.space.is_faithful(), "kernel_order": spec.space.kernel().order}),
        )
    else:
        reason = f"{spec.index} cosets exceeds max_vertices {max_vertices}" if explicit else "explicit build off"
        report.skip(f"{prefix}.explicit", "criteria compared with the explicit digraph", reason)
    return report


def _agree(criterion, direct, label: str = "direct"):
    witness = {"criterion": criterion}
    if direct is None:
        return True, witness
    witness[label] = direct
    return criterion == direct, witness


def _oracle(built: CosetDigraph, oracles: Dict[int, Optional[bool]], s: int) -> bool:
    if oracles.get(s) is None:
        oracles[s] = is_G_s_arc_transitive(built.digraph, built.acting, s)
    return oracles[s]


def _monotone(oracles: Dict[int, Optional[bool]], verdicts: Dict[int, bool]):
    """Ordered by s, each chain of verdicts may only switch from true to false."""
    broken = {}
    for label, chain in (("direct", oracles), ("criterion", verdicts)):
        ordered = [chain[s] for s in sorted(chain) if chain[s] is not None]
        if any(later and not earlier for earlier, later in zip(ordered, ordered[1:])):
            broken[label] = {f"s{s}": chain[s] for s in sorted(chain)}
    return not broken, broken or {"s": sorted(oracles)}


def _primitive_claim(spec: CosetDigraphSpec, digraph: Digraph):
    primitive = primitive_via_maximality(spec)
    connected = is_connected(digraph)
    # a vertex-primitive digraph is connected
    return (not primitive) or connected, {"primitive": primitive, "connected": connected}


def normal_descent_checks(
    graph: Digraph,
    group: PermGroup,
    normal: PermGroup,
    s: int,
    contains: Optional[Callable[[Perm], bool]] = None,
    prefix: str = "descent",
) -> Report:
    """Consequences of a vertex-transitive normal subgroup M of an s-arc-transitive G.

    Checks G = M G_{v1..vi} for 1 <= i <= s along the first s-arc, that the digraph
    is (M, s-1)-arc-transitive, and that a regular M forces a directed cycle when
    s >= 2. ``G = M G_x`` is decided as transitivity of M on the G-orbit of x.
    ``contains`` may replace the stabilizer-chain membership test of M.

    Raises:
        NotNormalError: If M is not normalised by G
        NotTransitiveError: If M is not transitive on the vertices
    """
    if s < 1:
        raise ValueError(f"descent needs s >= 1, got {s}")
    if not is_normal(group, normal, contains):
        raise NotNormalError("M is not normal in G")
    if not normal.is_transitive():
        raise NotTransitiveError("M is not transitive on the vertices")

    report = Report()
    arc_transitive = is_G_s_arc_transitive(graph, group, s)
    report.check(
        f"{prefix}.precondition",
        f"the digraph is (G,{s})-arc-transitive",
        lambda: (arc_transitive, {"s": s, "s_arcs": count_s_arcs(graph, s)}),
    )
    if not arc_transitive:
        for name in ("factorization", "m_arc_transitive", "directed_cycle"):
            report.skip(f"{prefix}.{name}", f"descent step {name}", "precondition failed")
        return report

    arc = first_s_arc(graph, s)
    for i in range(1, s + 1):
        tail = arc[1 : i + 1]
        report.check(
            f"{prefix}.factorization.i{i}",
            f"G = M·G_(v1..v{i})",
            lambda tail=tail: _orbit_factorization(group, normal, tail),
        )
    report.check(
        f"{prefix}.m_arc_transitive",
        f"the digraph is (M,{s - 1})-arc-transitive",
        lambda: (is_G_s_arc_transitive(graph, normal, s - 1), {"s": s - 1}),
    )
    regular = is_regular(normal)
    if regular and s >= 2:
        report.check(
            f"{prefix}.directed_cycle",
            "a (G,2)-arc-transitive digraph with a vertex-regular normal subgroup is a directed cycle",
            lambda: (is_directed_cycle(graph), {"m_regular": True, "valency": regularity(graph)}),
        )
    else:
        report.skip(
            f"{prefix}.directed_cycle",
            "a (G,2)-arc-transitive digraph with a vertex-regular normal subgroup is a directed cycle",
            "M is not regular" if not regular else "needs s >= 2",
        )
    return report


def _orbit_factorization(group: PermGroup, normal: PermGroup, points: Sequence[int]):
    whole = len(tuple_orbit(group, points))
    part = len(tuple_orbit(normal, points, limit=whole))
    return part == whole, {"g_orbit": whole, "m_orbit": part}

