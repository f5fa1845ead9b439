"""`arctest group ...`: properties of a permutation group file."""

from typing import Callable

import click
from sympy.combinatorics import Permutation, PermutationGroup

from arctest.algebra.permgroup import PermGroup, is_primitive, is_quasiprimitive, is_regular
from arctest.core.formatting import format_cycles
from arctest.core.io import dump_group, load_group
from arctest.core.report import Report
from arctest.plugins.base import CommandPlugin, RunContext

GROUP_FILE = click.Path(exists=True, dir_okay=False)


def sympy_order(group: PermGroup) -> int:
    """|G| computed independently by sympy's Schreier-Sims."""
    gens = [Permutation(list(g.images)) for g in group.generators] or [Permutation(list(range(group.degree)))]
    return int(PermutationGroup(gens).order())


def order_report(group: PermGroup) -> Report:
    report = Report()
    report.check(
        "group.order",
        "|G| from the stabilizer chain agrees with an independent Schreier-Sims",
        lambda: _order_witness(group),
    )
    return report


def _order_witness(group: PermGroup):
    order, oracle = group.order(), sympy_order(group)
    return order == oracle, {"order": order, "sympy_order": oracle, "degree": group.degree}


def orbits_report(group: PermGroup) -> Report:
    report = Report()
    orbits = group.orbits()
    report.check(
        "group.orbits",
        "the orbits of G partition the points",
        lambda: (sorted(p for orbit in orbits for p in orbit) == list(range(group.degree)), {"orbits": orbits}),
    )
    report.check("group.transitive", "G is transitive", lambda: (len(orbits) == 1, {"orbit_count": len(orbits)}))
    return report


class GroupPlugin(CommandPlugin):
    """order, orbits, quasiprimitive, primitive and regular checks on a group file."""

    @property
    def name(self) -> str:
        return "group"

    def register(self, cli: click.Group, context_factory: Callable[[], RunContext]) -> None:
        @cli.group(name="group")
        def group_cmd():
            """Permutation group checks on a group JSON file."""

        @group_cmd.command()
        @click.argument("path", type=GROUP_FILE)
        def order(path):
            """Order of the group, cross-checked with sympy."""
            group = load_group(path)
            return context_factory().emit_report(order_report(group), [dump_group(group)])

        @group_cmd.command()
        @click.argument("path", type=GROUP_FILE)
        def orbits(path):
            """Orbits on the points and transitivity."""
            group = load_group(path)
            return context_factory().emit_report(orbits_report(group), [dump_group(group)])

        @group_cmd.command()
        @click.argument("path", type=GROUP_FILE)
        def quasiprimitive(path):
            """Whether every nontrivial normal subgroup is transitive."""
            run = context_factory()
            group = load_group(path)
            report = Report()
            report.check(
                "group.quasiprimitive",
                "G is quasiprimitive",
                lambda: (is_quasiprimitive(group, max_elements=run.config.get("limits.max_elements")), {}),
            )
            return run.emit_report(report, [dump_group(group)])

        @group_cmd.command()
        @click.argument("path", type=GROUP_FILE)
        def primitive(path):
            """Whether G preserves no nontrivial block system."""
            group = load_group(path)
            report = Report()
            report.check("group.primitive", "G is primitive", lambda: (is_primitive(group), {}))
            return context_factory().emit_report(report, [dump_group(group)])

        @group_cmd.command()
        @click.argument("path", type=GROUP_FILE)
        def regular(path):
            """Whether G is transitive with trivial point stabilizers."""
            group = load_group(path)
            report = Report()
            report.check(
                "group.regular",
                "G is regular",
                lambda: (
                    is_regular(group),
                    {"generators": [format_cycles(g) for g in group.generators]},
                ),
            )
            return context_factory().emit_report(report, [dump_group(group)])
