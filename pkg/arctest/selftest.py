"""The built-in acceptance suite.

Each suite returns a :class:`Report` whose claim ids share the suite prefix, so
``--filter`` can select suites before they run. Everything here is deterministic
for a fixed configuration.
"""

import logging
import random
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import networkx as nx

from arctest.algebra.cayley import CayleyGroup, catalog_group
from arctest.algebra.perm import Perm
from arctest.algebra.permgroup import (
    PermGroup,
    SubgroupSet,
    closure,
    factorization_conditions,
    is_primitive,
    is_quasiprimitive,
    is_regular,
    product_group,
)
from arctest.constructions.diagonal import (
    build_explicit_gamma_T,
    diagonal_coset_spec,
    validate_diagonal_group,
    verify_diagonal,
)
from arctest.constructions.families import build_gamma_n, gamma_n_vertex_count_check, verify_gamma_n
from arctest.core.config import Config
from arctest.core.errors import InvalidCosetSpecError, InvalidDiagonalGroupError, ProductFactorError
from arctest.core.report import Claim, Report, digest_inputs
from arctest.graphs.cosetgraph import CosetDigraphSpec, build_coset_digraph, criteria_report, normal_descent_checks
from arctest.graphs.digraph import (
    Digraph,
    count_s_arcs,
    direct_product,
    encode,
    enumerate_s_arcs,
    extract_product_factor,
    is_G_s_arc_transitive,
    new_digraph,
    power,
    stabilizer_chain_criterion,
)
from arctest.plugins.group import sympy_order

logger = logging.getLogger(__name__)

Suite = Callable[["SelftestContext"], Report]


class SelftestContext:
    """Configuration plus objects shared between suites, built on first use."""

    def __init__(self, config: Config):
        self.config = config
        self.max_elements: int = config.get("limits.max_elements")
        self.max_vertices: int = config.get("limits.max_vertices")
        self._gamma5 = None

    @property
    def gamma5(self):
        """(data, spec, built) for Γ_5."""
        if self._gamma5 is None:
            data = build_gamma_n(5)
            spec = data.spec(self.max_elements, self.config.get("limits.max_cosets"))
            self._gamma5 = (data, spec, build_coset_digraph(spec))
        return self._gamma5


def cyclic_group(n: int) -> PermGroup:
    return PermGroup(n, [Perm.from_cycles(n, [tuple(range(n))])])


def circulant(n: int, jumps: Sequence[int]) -> Digraph:
    """Cay(C_n, S): i -> i + s for s in ``jumps``."""
    return new_digraph(n, [(i, (i + s) % n) for i in range(n) for s in jumps])


def _perm_group(degree: int, *cycle_lists: Sequence[Sequence[int]]) -> PermGroup:
    return PermGroup(degree, [Perm.from_cycles(degree, cycles) for cycles in cycle_lists])


def _scoped(report: Report, old: str, new: str) -> Report:
    """Copy of ``report`` with the claim-id prefix ``old`` replaced by ``new``."""
    scoped = Report()
    for claim in report:
        claim_id = new + claim.claim_id[len(old) :] if claim.claim_id.startswith(old) else claim.claim_id
        scoped.add(Claim(claim_id, claim.statement, claim.status, claim.witness, claim.reason, claim.elapsed_ms))
    return scoped


# permgroup


def _order_claim(group: PermGroup, max_elements: int):
    order = group.order()
    witness: Dict[str, object] = {"order": order, "sympy_order": sympy_order(group)}
    holds = order == witness["sympy_order"]
    if order <= max_elements:
        witness["closure_order"] = len(closure(group.degree, group.generators, max_elements))
        holds = holds and order == witness["closure_order"]
    return holds, witness


def permgroup_suite(ctx: SelftestContext) -> Report:
    report = Report()
    groups = {
        "c8": cyclic_group(8),
        "d5": _perm_group(5, [(0, 1, 2, 3, 4)], [(1, 4), (2, 3)]),
        "s5": _perm_group(5, [(0, 1, 2, 3, 4)], [(0, 1)]),
        "a5": _perm_group(5, [(0, 1, 2, 3, 4)], [(0, 1, 2)]),
        "a6": _perm_group(6, [(0, 1, 2, 3, 4)], [(0, 1, 2), (3, 4, 5)]),
        "gamma5": build_gamma_n(5).group,
    }
    for name, group in groups.items():
        report.check(
            f"permgroup.order.{name}",
            "the stabilizer chain order matches sympy and exhaustive closure",
            lambda group=group: _order_claim(group, ctx.max_elements),
        )

    s3 = _perm_group(3, [(0, 1, 2)], [(0, 1)])
    s4 = _perm_group(4, [(0, 1, 2, 3)], [(0, 1)])
    d4 = _perm_group(4, [(0, 1, 2, 3)], [(0, 2)])
    expectations: List[Tuple[str, str, Callable[[], bool], bool]] = [
        ("regular.c7", "C_7 is regular", lambda: is_regular(cyclic_group(7)), True),
        ("regular.s3", "S_3 on 3 points is not regular", lambda: is_regular(s3), False),
        ("primitive.s5", "S_5 is primitive", lambda: is_primitive(groups["s5"]), True),
        ("primitive.d4", "D_4 on the square preserves the diagonals", lambda: is_primitive(d4), False),
        ("quasiprimitive.s4", "S_4 is quasiprimitive", lambda: is_quasiprimitive(s4), True),
        ("quasiprimitive.d4", "D_4 has an intransitive normal subgroup", lambda: is_quasiprimitive(d4), False),
    ]
    for suffix, statement, fn, expected in expectations:
        report.check(
            f"permgroup.{suffix}",
            statement,
            lambda fn=fn, expected=expected: (fn() is expected, {"expected": expected}),
        )

    rng = random.Random(ctx.config.get("sampling.seed"))
    point_stabilizer = _perm_group(4, [(0, 1, 2)], [(0, 1)])
    rotations = _perm_group(4, [(0, 1, 2, 3)])
    transposition = _perm_group(4, [(0, 1)])
    for suffix, h, k, expected in (
        ("s4_s3_c4", point_stabilizer, rotations, True),
        ("s4_c2_c4", transposition, rotations, False),
    ):
        report.check(
            f"permgroup.factorization.{suffix}",
            "the equivalent forms of G = HK agree",
            lambda h=h, k=k, expected=expected: _conditions_agree(
                factorization_conditions(s4, h, k, rng, ctx.max_elements), expected
            ),
        )
    return report


def _conditions_agree(conditions: Dict[str, bool], expected: bool):
    return all(value is expected for value in conditions.values()), conditions


# digraph


def digraph_suite(ctx: SelftestContext) -> Report:
    report = Report()
    five, three = circulant(5, [1]), circulant(3, [1])
    product = direct_product(five, three)

    def networkx_agrees():
        tensor = nx.tensor_product(five.to_networkx(), three.to_networkx())
        expected = sorted((u1 * 3 + v1, u2 * 3 + v2) for (u1, v1), (u2, v2) in tensor.edges())
        return sorted(product.arcs()) == expected, {"arcs": product.arc_count}

    report.check("digraph.product.networkx", "the direct product is the tensor product", networkx_agrees)

    jumps = circulant(7, [1, 2])
    report.check(
        "digraph.s_arc_count",
        "counting s-arcs by walks matches enumeration",
        lambda: (
            all(count_s_arcs(jumps, s) == len(enumerate_s_arcs(jumps, s)) for s in range(4)),
            {"counts": [count_s_arcs(jumps, s) for s in range(4)]},
        ),
    )
    c7 = cyclic_group(7)
    dihedral = _perm_group(7, [tuple(range(7))], [(1, 6), (2, 5), (3, 4)])
    undirected = circulant(7, [1])
    for s in (1, 2):
        report.check(
            f"digraph.stabilizer_chain.s{s}",
            "the stabilizer-order criterion agrees with the orbit oracle",
            lambda s=s: _criterion_matches_oracle(jumps, c7, s),
        )
    report.check(
        "digraph.not_automorphism",
        "a reflection does not preserve a directed cycle",
        lambda: (not all(undirected.is_automorphism(p) for p in dihedral.generators), {}),
    )
    return report


def _criterion_matches_oracle(graph: Digraph, group: PermGroup, s: int):
    criterion = stabilizer_chain_criterion(graph, group, s)
    oracle = is_G_s_arc_transitive(graph, group, s)
    return criterion == oracle, {"criterion": criterion, "oracle": oracle}


# cosetgraph


def corpus_groups() -> List[Tuple[str, PermGroup, List[Perm]]]:
    """(label, G, generators of H) for the criterion/oracle corpus.

    Most entries take H nontrivial and not normal in G; the rest are Cayley digraphs.
    """
    entries: List[Tuple[str, PermGroup, List[Perm]]] = [(f"c{n}", cyclic_group(n), []) for n in (4, 5, 7)]
    entries += [
        ("s3", _perm_group(3, [(0, 1, 2)], [(0, 1)]), []),
        ("a4", _perm_group(4, [(0, 1, 2)], [(0, 1), (2, 3)]), []),
        ("d5", _perm_group(5, [(0, 1, 2, 3, 4)], [(1, 4), (2, 3)]), []),
        ("s4_c3", _perm_group(4, [(0, 1, 2, 3)], [(0, 1)]), [Perm.from_cycles(4, [(0, 1, 2)])]),
        ("a5_c5", _perm_group(5, [(0, 1, 2, 3, 4)], [(0, 1, 2)]), [Perm.from_cycles(5, [(0, 1, 2, 3, 4)])]),
        ("a5_c3", _perm_group(5, [(0, 1, 2, 3, 4)], [(0, 1, 2)]), [Perm.from_cycles(5, [(0, 1, 2)])]),
        ("s5_c5", _perm_group(5, [(0, 1, 2, 3, 4)], [(0, 1)]), [Perm.from_cycles(5, [(0, 1, 2, 3, 4)])]),
        (
            "a6_c5",
            _perm_group(6, [(0, 1, 2, 3, 4)], [(0, 1, 2), (3, 4, 5)]),
            [Perm.from_cycles(6, [(0, 1, 2, 3, 4)])],
        ),
    ]
    # x -> x + 1 and x -> ax modulo p, over the multiplications of order 3
    for p, cycles in ((7, [(1, 2, 4), (3, 6, 5)]), (13, [(1, 3, 9), (2, 6, 5), (4, 12, 10), (7, 8, 11)])):
        entries.append((f"f{3 * p}_c3", _perm_group(p, [tuple(range(p))], cycles), [Perm.from_cycles(p, cycles)]))
    return entries


def valid_connectors(group: PermGroup, subgroup: SubgroupSet, limit: int, max_elements: int) -> List[Perm]:
    """The first ``limit`` elements g, in lexicographic order, for which Cos(G, H, g) is a digraph."""
    found = []
    for g in group.elements(max_elements):
        try:
            CosetDigraphSpec(group, subgroup, g, max_elements)
        except InvalidCosetSpecError:
            continue
        found.append(g)
        if len(found) == limit:
            break
    return found


def coset_corpus(ctx: SelftestContext) -> List[Tuple[str, CosetDigraphSpec]]:
    specs = []
    for label, group, h_gens in corpus_groups():
        subgroup = SubgroupSet.generated_by(group.degree, h_gens, ctx.max_elements)
        for index, g in enumerate(valid_connectors(group, subgroup, 2, ctx.max_elements)):
            specs.append((f"{label}_g{index}", CosetDigraphSpec(group, subgroup, g, ctx.max_elements)))
    specs.append(("gamma5", ctx.gamma5[1]))
    s3, _ = catalog_group("s3")
    specs.append(("gamma_s3", diagonal_coset_spec(s3, ctx.max_elements)))
    return specs


def cosetgraph_suite(ctx: SelftestContext) -> Report:
    report = Report()
    corpus = coset_corpus(ctx)
    report.check(
        "cosetgraph.corpus.size",
        "the corpus holds at least 20 specs",
        lambda: (len(corpus) >= 20, {"specs": [label for label, _ in corpus]}),
    )
    for label, spec in corpus:
        report.extend(criteria_report(spec, (2, 3), True, ctx.max_vertices, prefix=f"cosetgraph.corpus.{label}"))
    return report


# diagonal


def corrupt_table(group: CayleyGroup, r: int, s: int) -> List[List[int]]:
    """Swap an intercalate of the table in rows r, r·r·s⁻¹ and columns r, s.

    The result is still a Latin square with the same identity and inverses when r
    has order 3 and s is an involution with s·r·s = r⁻¹; associativity fails.
    """
    table = [list(row) for row in group.table]
    a, c, d = r, r, s
    b = group.mul(a, group.mul(c, group.inv(d)))
    for row in (a, b):
        table[row][c], table[row][d] = table[row][d], table[row][c]
    return table


def diagonal_suite(ctx: SelftestContext) -> Report:
    report = Report()
    report.extend(_scoped(verify_diagonal("s3", "explicit", ctx.config), "diagonal.", "diagonal.s3."))
    report.extend(_scoped(verify_diagonal("a5", "element", ctx.config), "diagonal.", "diagonal.a5."))

    def c6_rejected():
        c6, _ = catalog_group("c6")
        try:
            validate_diagonal_group(c6)
        except InvalidDiagonalGroupError as exc:
            return True, {"error": str(exc)}
        return False, {}

    report.check("diagonal.c6.rejected", "an abelian T is rejected", c6_rejected)

    def fault_injection():
        s3, _ = catalog_group("s3")
        r = s3.index_of(Perm.from_cycles(3, [(0, 1, 2)]))
        s = s3.index_of(Perm.from_cycles(3, [(0, 1)]))
        broken = CayleyGroup(corrupt_table(s3, r, s), s3.labels, "s3-corrupted", validate=False)
        problems = broken.axiom_violations()
        return any("associativity" in problem for problem in problems), {"violations": problems}

    report.check("diagonal.fault_injection", "a corrupted table fails the associativity check", fault_injection)
    return report


# families and arithmetic


def families_suite(ctx: SelftestContext) -> Report:
    report = _scoped(verify_gamma_n(5, explicit=True, config=ctx.config), "families.gamma_n.", "families.gamma_5.")
    report.extend(_scoped(verify_gamma_n(7, config=ctx.config), "families.gamma_n.", "families.gamma_7."))
    return report


def arithmetic_suite(ctx: SelftestContext) -> Report:
    report = Report()
    for n in (5, 7, 9):
        report.extend(gamma_n_vertex_count_check(n))
    return report


# product


def product_suite(ctx: SelftestContext) -> Report:
    report = Report()
    five, c5 = circulant(5, [1]), cyclic_group(5)
    three, c3 = circulant(3, [1]), cyclic_group(3)
    _, _, gamma5 = ctx.gamma5
    cases = (
        ("c5_c5", five, c5, five, c5, 3),
        ("gamma5_c3", gamma5.digraph, gamma5.acting, three, c3, 2),
    )
    for label, left, g, right, h, s in cases:
        report.check(
            f"product.{label}.factors",
            f"both factors are ({s})-arc-transitive under their groups",
            lambda left=left, g=g, right=right, h=h, s=s: (
                is_G_s_arc_transitive(left, g, s) and is_G_s_arc_transitive(right, h, s),
                {"s": s},
            ),
        )
        report.check(
            f"product.{label}.product",
            f"the direct product is (G×H,{s})-arc-transitive",
            lambda left=left, g=g, right=right, h=h, s=s: (
                is_G_s_arc_transitive(direct_product(left, right), product_group(g, h), s),
                {"vertices": left.n * right.n},
            ),
        )

    square = power(five, 2)
    scale = Perm([0, 2, 4, 1, 3])
    relabel = Perm([encode((x, scale[y]), 5) for x in range(5) for y in range(5)])
    affine = PermGroup(5, [Perm.from_cycles(5, [(0, 1, 2, 3, 4)]), scale])
    variants = (
        ("plain", square, encode((1, 1), 5), None),
        ("relabeled", square.relabel(relabel), encode((1, 2), 5), affine),
    )
    for label, graph, head, component in variants:
        report.check(
            f"product.extract.{label}",
            "the factor Σ with Γ^h = Σ^2 is recovered from an arc",
            lambda graph=graph, head=head, component=component: _extract(graph, head, c5, component, five),
        )
    return report


def _extract(graph: Digraph, head: int, group: PermGroup, component: Optional[PermGroup], expected: Digraph):
    try:
        found = extract_product_factor(graph, 5, 2, group, (0, head), component)
    except ProductFactorError as exc:
        return False, {"error": str(exc)}
    return found.factor == expected, {
        "factor_arcs": sorted(found.factor.arcs()),
        "coordinate_maps": [p.to_json() for p in found.coordinate_maps],
    }


# descent


def descent_suite(ctx: SelftestContext) -> Report:
    report = Report()
    data, spec, gamma5 = ctx.gamma5
    socle = spec.space.induced(data.socle())
    report.extend(normal_descent_checks(gamma5.digraph, gamma5.acting, socle, 2, prefix="descent.gamma5"))
    cycle = circulant(7, [1])
    report.extend(normal_descent_checks(cycle, cyclic_group(7), cyclic_group(7), 2, prefix="descent.c7"))

    s3, automorphisms = catalog_group("s3")
    built = build_explicit_gamma_T(s3, automorphisms, max_vertices=ctx.max_vertices)
    lambda_group = PermGroup(built.digraph.n, built.m_generators + built.lambda_generators)
    report.extend(
        normal_descent_checks(
            built.digraph, lambda_group, built.m_group(), 2, contains=built.m_contains, prefix="descent.gamma_s3"
        )
    )

    def fault_injection():
        jumps = circulant(7, [1, 2])
        inner = normal_descent_checks(jumps, cyclic_group(7), cyclic_group(7), 2, prefix="descent.fault")
        precondition = inner["descent.fault.precondition"]
        return precondition.failed(), {"precondition": precondition.status, "witness": precondition.witness}

    report.check(
        "descent.fault_injection",
        "a 2-regular digraph with a vertex-regular group is not (G,2)-arc-transitive",
        fault_injection,
    )
    return report


SUITES: Dict[str, Suite] = {
    "permgroup.": permgroup_suite,
    "digraph.": digraph_suite,
    "cosetgraph.": cosetgraph_suite,
    "diagonal.": diagonal_suite,
    "families.": families_suite,
    "product.": product_suite,
    "descent.": descent_suite,
    "arithmetic.": arithmetic_suite,
}


def selected_suites(filter_prefix: Optional[str]) -> List[str]:
    """Suite prefixes that can contribute a claim matching ``filter_prefix``."""
    if not filter_prefix:
        return list(SUITES)
    return [p for p in SUITES if p.startswith(filter_prefix) or filter_prefix.startswith(p)]


def selftest(config: Optional[Config] = None, filter_prefix: Optional[str] = None) -> Report:
    """Run every suite matching ``filter_prefix`` and return the combined report."""
    config = config or Config.get_defaults()
    ctx = SelftestContext(config)
    report = Report()
    for prefix in selected_suites(filter_prefix):
        logger.info("suite %s", prefix.rstrip("."))
        report.extend(SUITES[prefix](ctx))
    report = report.filtered(filter_prefix)
    report.input_digest = digest_inputs("selftest", filter_prefix or "", config.to_dict())
    return report
