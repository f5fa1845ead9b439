"""`arctest digraph ...`: checks on digraph files."""

from typing import Callable

import click

from arctest.core.config import Config
from arctest.core.errors import BoundExceededError
from arctest.core.io import dump_digraph, dump_group, load_digraph, load_group
from arctest.core.report import Report
from arctest.graphs.digraph import (
    Digraph,
    count_s_arcs,
    direct_product,
    enumerate_s_arcs,
    is_connected,
    is_G_s_arc_transitive,
    regularity,
    stabilizer_chain_criterion,
)
from arctest.plugins.base import CommandPlugin, RunContext

DIGRAPH_FILE = click.Path(exists=True, dir_okay=False)


def require_s(s: int, config: Config) -> int:
    """Reject s above ``limits.max_s``.

    Raises:
        BoundExceededError: If s is too large
    """
    bound = config.get("limits.max_s")
    if s > bound:
        raise BoundExceededError("max_s", s, bound)
    return s


def s_arc_count_report(digraph: Digraph, s: int, max_elements: int) -> Report:
    report = Report()
    count = count_s_arcs(digraph, s)

    def agree():
        witness = {"s": s, "count": count}
        if count > max_elements:
            return True, witness
        listed = len(enumerate_s_arcs(digraph, s))
        witness["enumerated"] = listed
        return listed == count, witness

    report.check(f"digraph.s_arcs.s{s}", f"number of {s}-arcs", agree)
    return report


def s_arc_transitive_report(digraph: Digraph, group, s: int) -> Report:
    report = Report()
    oracle = is_G_s_arc_transitive(digraph, group, s)
    report.check(
        f"digraph.sarc_transitive.s{s}",
        f"G is transitive on the {s}-arcs",
        lambda: (oracle, {"s_arcs": count_s_arcs(digraph, s)}),
    )
    report.check(
        f"digraph.stabilizer_chain.s{s}",
        "the stabilizer-order criterion agrees with the orbit oracle",
        lambda: _agreement(stabilizer_chain_criterion(digraph, group, s), oracle),
    )
    return report


def _agreement(criterion: bool, oracle: bool):
    return criterion == oracle, {"criterion": criterion, "oracle": oracle}


class DigraphPlugin(CommandPlugin):
    """validate, regularity, connected, product, sarc-count and sarc-transitive."""

    @property
    def name(self) -> str:
        return "digraph"

    def register(self, cli: click.Group, context_factory: Callable[[], RunContext]) -> None:
        @cli.group(name="digraph")
        def digraph_cmd():
            """Checks on digraph JSON files."""

        @digraph_cmd.command()
        @click.argument("path", type=DIGRAPH_FILE)
        def validate(path):
            """Load and validate the arc set (no loops, no opposite arcs)."""
            digraph = load_digraph(path)
            report = Report()
            report.check(
                "digraph.valid",
                "the arc relation is irreflexive and antisymmetric",
                lambda: (True, {"n": digraph.n, "arcs": digraph.arc_count}),
            )
            return context_factory().emit_report(report, [dump_digraph(digraph)])

        @digraph_cmd.command(name="regularity")
        @click.argument("path", type=DIGRAPH_FILE)
        def regularity_cmd(path):
            """Common in- and out-valency."""
            digraph = load_digraph(path)
            report = Report()
            valency = regularity(digraph)
            report.check(
                "digraph.regular",
                "every vertex has the same in- and out-valency",
                lambda: (valency is not None, {"valency": valency}),
            )
            return context_factory().emit_report(report, [dump_digraph(digraph)])

        @digraph_cmd.command()
        @click.argument("path", type=DIGRAPH_FILE)
        def connected(path):
            """Weak connectivity."""
            digraph = load_digraph(path)
            report = Report()
            report.check("digraph.connected", "the digraph is connected", lambda: (is_connected(digraph), {}))
            return context_factory().emit_report(report, [dump_digraph(digraph)])

        @digraph_cmd.command()
        @click.argument("left", type=DIGRAPH_FILE)
        @click.argument("right", type=DIGRAPH_FILE)
        def product(left, right):
            """Direct product LEFT x RIGHT, written as a digraph file."""
            run = context_factory()
            a, b = load_digraph(left), load_digraph(right)
            bound = run.config.get("limits.max_vertices")
            if a.n * b.n > bound:
                raise BoundExceededError("max_vertices", a.n * b.n, bound)
            return run.emit_json(dump_digraph(direct_product(a, b)))

        @digraph_cmd.command(name="sarc-count")
        @click.option("--s", "s", type=click.IntRange(min=0), required=True, help="Arc length s")
        @click.argument("path", type=DIGRAPH_FILE)
        def sarc_count(s, path):
            """Number of s-arcs."""
            run = context_factory()
            require_s(s, run.config)
            digraph = load_digraph(path)
            report = s_arc_count_report(digraph, s, run.config.get("limits.max_elements"))
            return run.emit_report(report, [dump_digraph(digraph), s])

        @digraph_cmd.command(name="sarc-transitive")
        @click.option("--s", "s", type=click.IntRange(min=1), required=True, help="Arc length s")
        @click.argument("digraph_path", type=DIGRAPH_FILE)
        @click.argument("group_path", type=DIGRAPH_FILE)
        def sarc_transitive(s, digraph_path, group_path):
            """Whether GROUP acts transitively on the s-arcs of DIGRAPH."""
            run = context_factory()
            require_s(s, run.config)
            digraph = load_digraph(digraph_path)
            group = load_group(group_path)
            report = s_arc_transitive_report(digraph, group, s)
            return run.emit_report(report, [dump_digraph(digraph), dump_group(group), s])
