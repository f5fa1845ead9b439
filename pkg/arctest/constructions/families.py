"""The family Γ_n = Cos(G, H, g) of 2-arc-transitive digraphs, n odd and at least 5.

G = (A_n × A_n) ⋊ <a> acts on 2n points, the two copies of A_n on the blocks
{0..n-1} and {n..2n-1}, with a swapping the blocks. H = <a, b> has order 4 and
the connector is g = ac.
"""

import logging
from dataclasses import dataclass
from math import factorial
from typing import Dict, List, Optional, Sequence

from sympy import factorint, integer_nthroot, multiplicity, primerange

from arctest.algebra.perm import Perm, compose, conjugate, invert
from arctest.algebra.permgroup import (
    PermGroup,
    SubgroupSet,
    in_double_coset,
    intersect,
    is_factorization,
    minimal_normal_subgroups,
    normal_closure,
)
from arctest.core.config import Config
from arctest.core.errors import InvalidFamilyParameterError
from arctest.core.report import Report
from arctest.graphs.cosetgraph import (
    CosetDigraph,
    CosetDigraphSpec,
    build_coset_digraph,
    connected_via_generation,
    quasiprimitive_on_cosets,
    regularity_formula,
    s_arc_transitive_by_factorization,
    two_arc_check,
)
from arctest.graphs.digraph import (
    count_s_arcs,
    is_connected,
    is_G_s_arc_transitive,
    regularity,
    stabilizer_chain_criterion,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GammaNData:
    """Ambient group, subgroup and the elements a, b, c, g of Γ_n."""

    n: int
    group: PermGroup
    subgroup: SubgroupSet
    a: Perm
    b: Perm
    c: Perm
    g: Perm

    @property
    def degree(self) -> int:
        return 2 * self.n

    @property
    def group_order(self) -> int:
        return 2 * (factorial(self.n) // 2) ** 2

    @property
    def index(self) -> int:
        return gamma_n_vertex_count(self.n)

    def spec(self, max_elements: int = 100_000, max_cosets: int = 1_000_000) -> CosetDigraphSpec:
        return CosetDigraphSpec(self.group, self.subgroup, self.g, max_elements, max_cosets)

    def socle(self) -> PermGroup:
        """A_n × A_n, the normal closure of a 3-cycle on the first block."""
        return normal_closure(self.group, Perm.from_cycles(self.degree, [(0, 1, 2)]))


def build_gamma_n(n: int) -> GammaNData:
    """Build G, H = <a, b> and g = ac for Γ_n.

    Raises:
        InvalidFamilyParameterError: If n is even or smaller than 5
    """
    if n < 5 or n % 2 == 0:
        raise InvalidFamilyParameterError(f"n must be odd and at least 5, got {n}")
    degree = 2 * n
    a = Perm.from_cycles(degree, [(i, n + i) for i in range(n)])
    b = Perm.from_cycles(degree, [(0, 1), (2, 3), (n, n + 1), (n + 2, n + 3)])
    c = Perm.from_cycles(degree, [[0, 2, *range(4, n)], list(range(n, degree))])
    g = compose(a, c)
    first_block = [Perm.from_cycles(degree, [(0, 1, 2)]), Perm.from_cycles(degree, [tuple(range(n))])]
    group = PermGroup(degree, first_block + [a])
    subgroup = SubgroupSet.generated_by(degree, [a, b])
    if not group.contains(g):
        raise InvalidFamilyParameterError(f"g = ac is not in G for n = {n}")
    logger.debug("Γ_%d: |G| = %d, %d cosets", n, group.order(), group.order() // subgroup.order)
    return GammaNData(n, group, subgroup, a, b, c, g)


def gamma_n_vertex_count(n: int) -> int:
    """(n!)^2 / 8."""
    return factorial(n) ** 2 // 8


def is_proper_power(number: int) -> bool:
    """Whether number = m^k for integers m, k >= 2.

    Raises:
        ValueError: If number < 2
    """
    if number < 2:
        raise ValueError(f"proper powers start at 4; got {number}")
    for k in range(2, number.bit_length() + 1):
        root, exact = integer_nthroot(number, k)
        if exact and root >= 2:
            return True
    return False


def bertrand_witness(n: int) -> Optional[int]:
    """A prime p with n/2 < p < n whose square exactly divides (n!)^2 / 8."""
    count = gamma_n_vertex_count(n)
    for p in primerange(n // 2 + 1, n):
        if multiplicity(p, count) == 2:
            return int(p)
    return None


def gamma_n_vertex_count_check(n: int, prefix: str = "arithmetic") -> Report:
    """(n!)^2 / 8 is not a proper power, with the prime and 2-adic witnesses.

    Raises:
        InvalidFamilyParameterError: If n is even or smaller than 5
    """
    if n < 5 or n % 2 == 0:
        raise InvalidFamilyParameterError(f"n must be odd and at least 5, got {n}")
    count = gamma_n_vertex_count(n)
    factors = {int(p): int(e) for p, e in factorint(count).items()}
    report = Report()
    base = f"{prefix}.n{n}"
    report.check(
        f"{base}.not_proper_power",
        "(n!)²/8 is not a proper power",
        lambda: (not is_proper_power(count), {"count": count, "factorization": factors}),
    )
    witness = bertrand_witness(n)
    report.check(
        f"{base}.bertrand_witness",
        "some prime p with n/2 < p < n divides (n!)²/8 exactly twice",
        lambda: (witness is not None, {"prime": witness}),
    )
    two_adic = factors.get(2, 0)
    report.check(
        f"{base}.two_adic",
        "the 2-adic valuation of (n!)²/8 is odd, so it is not a square",
        lambda: (two_adic % 2 == 1, {"valuation": two_adic}),
    )
    return report


def first_block_cycle(one_based: Sequence[int], n: int) -> Perm:
    return Perm.from_cycles(n, [[p - 1 for p in one_based]])


def expected_g_squared(n: int) -> List[int]:
    """π1(g²) as a 1-based cycle: 1, 2, the odd numbers from 5, 3, 4, the even numbers from 6."""
    return [1, 2, *range(5, n + 1, 2), 3, 4, *range(6, n, 2)]


def expected_g_power(n: int) -> List[int]:
    """π1(g^(n+1)) as a 1-based cycle: 1, 3, 2, 4, 5, ..., n."""
    return [1, 3, 2, *range(4, n + 1)]


def verify_gamma_n(n: int, explicit: bool = False, config: Optional[Config] = None) -> Report:
    """Every claim about Γ_n; with ``explicit`` also the checks on the enumerated digraph.

    Checks needing a class enumeration or an explicit digraph beyond the configured
    bounds are skipped with the bound as reason.

    Raises:
        InvalidFamilyParameterError: If n is even or smaller than 5
    """
    config = config or Config.get_defaults()
    max_elements = config.get("limits.max_elements")
    max_vertices = config.get("limits.max_vertices")
    data = build_gamma_n(n)
    spec = data.spec(max_elements, config.get("limits.max_cosets"))
    group, h = data.group, data.subgroup
    a, b, g = data.a, data.b, data.g
    ab = compose(a, b)
    identity = group.identity
    prefix = "families.gamma_n"
    report = Report()

    report.check(
        f"{prefix}.group_order",
        "|G| = 2(n!/2)²",
        lambda: (group.order() == data.group_order, {"order": group.order()}),
    )
    report.check(
        f"{prefix}.subgroup",
        "H = <a, b> = {1, a, b, ab} has order 4",
        lambda: (set(h) == {identity, a, b, ab}, {"order": h.order}),
    )
    report.check(
        f"{prefix}.index",
        "Γ_n has (n!)²/8 vertices",
        lambda: (spec.index == data.index, {"vertices": spec.index}),
    )
    report.check(f"{prefix}.connector_in_group", "g = ac lies in G", lambda: (group.contains(g), {}))
    report.check(
        f"{prefix}.antisymmetric",
        "g⁻¹ is not in HgH",
        lambda: (not in_double_coset(invert(g), h, g, h, max_elements), {}),
    )
    report.check(
        f"{prefix}.connected",
        "<H, g> = G, so Γ_n is connected",
        lambda: (connected_via_generation(spec), {}),
    )
    report.check(
        f"{prefix}.meet_conjugate",
        "H ∩ g⁻¹Hg = <a>",
        lambda: _is_set(intersect(h, spec.conjugate(1), max_elements), {identity, a}),
    )
    report.check(
        f"{prefix}.meet_inverse_conjugate",
        "H ∩ gHg⁻¹ = <ab>",
        lambda: _is_set(intersect(h, spec.conjugate(-1), max_elements), {identity, ab}),
    )
    report.check(
        f"{prefix}.conjugation_identity", "g⁻¹(ab)g = a", lambda: (conjugate(ab, g) == a, {})
    )
    left = SubgroupSet(h.degree, [identity, a])
    right = SubgroupSet(h.degree, [identity, ab])
    report.check(
        f"{prefix}.two_arc_factorization",
        "H = <a><ab> = (gHg⁻¹ ∩ H)(H ∩ g⁻¹Hg)",
        lambda: (two_arc_check(spec) and is_factorization(h.to_group(), left, right), {}),
    )
    report.check(
        f"{prefix}.regularity_formula",
        "Γ_n is 2-regular",
        lambda: (regularity_formula(spec) == 2, {"valency": regularity_formula(spec)}),
    )
    for s, expected in ((1, True), (2, True), (3, False)):
        report.check(
            f"{prefix}.chain.s{s}",
            f"the factorization chain {'holds' if expected else 'fails'} for s = {s}",
            lambda s=s, expected=expected: (s_arc_transitive_by_factorization(spec, s) is expected, {"s": s}),
        )
    report.check(
        f"{prefix}.quasiprimitive",
        "G is quasiprimitive on the cosets of H",
        lambda: (quasiprimitive_on_cosets(group, h, max_elements), {}),
    )

    socle = data.socle()
    socle_order = (factorial(n) // 2) ** 2
    report.check(
        f"{prefix}.socle",
        "G has a unique minimal normal subgroup, of order (n!/2)²",
        lambda: _unique_minimal(group, socle, socle_order, max_elements),
    )
    socle_stabilizer = [x for x in h if socle.contains(x)]
    report.check(
        f"{prefix}.socle_stabilizer",
        "the socle meets H in <b>",
        lambda: (set(socle_stabilizer) == {identity, b}, {"order": len(socle_stabilizer)}),
    )
    report.check(
        f"{prefix}.pa_consistent",
        "PA-consistent: the socle point stabilizer is nontrivial and smaller than a simple factor",
        lambda: (
            1 < len(socle_stabilizer) < factorial(n) // 2,
            {"label": "PA-consistent", "stabilizer_order": len(socle_stabilizer), "factor_order": factorial(n) // 2},
        ),
    )

    block = list(range(n))
    report.check(
        f"{prefix}.g_squared_shape",
        "π1(g²) = (1, 2, 5, 7, ..., n, 3, 4, 6, ..., n-1)",
        lambda: _shape((g**2).restrict(block), expected_g_squared(n), n),
    )
    report.check(
        f"{prefix}.g_power_shape",
        "π1(g^(n+1)) = (1, 3, 2, 4, 5, ..., n)",
        lambda: _shape((g ** (n + 1)).restrict(block), expected_g_power(n), n),
    )
    report.extend(gamma_n_vertex_count_check(n, prefix=f"{prefix}.arithmetic"))

    if not explicit:
        report.skip(f"{prefix}.explicit", "checks on the explicit digraph", "explicit build not requested")
    elif spec.index > max_vertices:
        report.skip(
            f"{prefix}.explicit",
            "checks on the explicit digraph",
            f"{spec.index} vertices exceeds max_vertices {max_vertices}",
        )
    else:
        report.extend(_explicit_checks(data, spec, build_coset_digraph(spec), socle))
    return report


def _explicit_checks(data: GammaNData, spec: CosetDigraphSpec, built: CosetDigraph, socle: PermGroup) -> Report:
    digraph, acting = built
    prefix = "families.gamma_n.explicit"
    order = data.group_order
    report = Report()
    report.check(
        f"{prefix}.vertices", "(n!)²/8 vertices", lambda: (digraph.n == data.index, {"vertices": digraph.n})
    )
    report.check(f"{prefix}.regular", "2-regular", lambda: (regularity(digraph) == 2, {"k": regularity(digraph)}))
    report.check(f"{prefix}.connected", "connected", lambda: (is_connected(digraph), {}))

    oracle = is_G_s_arc_transitive(digraph, acting, 2)
    criterion = s_arc_transitive_by_factorization(spec, 2)
    report.check(
        f"{prefix}.two_arc_oracle",
        "(G,2)-arc-transitive by the 2-arc orbit and by the factorization, with equal verdicts",
        lambda: (oracle and criterion, {"oracle": oracle, "criterion": criterion}),
    )
    report.check(
        f"{prefix}.stabilizer_chain",
        "the stabilizer-chain criterion agrees on s = 2",
        lambda: (stabilizer_chain_criterion(digraph, acting, 2) == oracle, {}),
    )
    two_arcs = count_s_arcs(digraph, 2)
    report.check(
        f"{prefix}.two_arc_regular",
        "G is regular on 2-arcs: there are exactly |G| of them",
        lambda: (two_arcs == order, {"two_arcs": two_arcs, "group_order": order}),
    )
    three_arcs = count_s_arcs(digraph, 3)
    report.check(
        f"{prefix}.not_three_arc",
        "Γ_n is not (G,3)-arc-transitive",
        lambda: (
            not is_G_s_arc_transitive(digraph, acting, 3),
            {"witness": f"3-arc count {three_arcs} > |G| {order}"},
        ),
    )
    report.check(
        f"{prefix}.vertex_stabilizer",
        "the stabilizer of a vertex in the coset action has order 4",
        lambda: (acting.point_stabilizer(0).order() == 4, {"order": acting.point_stabilizer(0).order()}),
    )
    report.check(
        f"{prefix}.socle_transitive",
        "the socle is transitive on the vertices",
        lambda: (spec.space.induced(socle).is_transitive(), {}),
    )
    report.check(f"{prefix}.faithful", "G acts faithfully on the cosets", lambda: (spec.space.is_faithful(), {}))
    return report


def _is_set(found: SubgroupSet, expected: set):
    return set(found) == expected, {"order": found.order}


def _shape(projected: Perm, one_based: List[int], n: int):
    expected = first_block_cycle(one_based, n)
    return projected == expected, {"cycles": [[p + 1 for p in cycle] for cycle in projected.cycles()]}


def _unique_minimal(group: PermGroup, socle: PermGroup, order: int, max_elements: int):
    minimal = minimal_normal_subgroups(group, max_elements)
    witness: Dict[str, object] = {"orders": [m.order() for m in minimal]}
    unique = len(minimal) == 1 and minimal[0].order() == order and socle.is_subgroup_of(minimal[0])
    return unique, witness
