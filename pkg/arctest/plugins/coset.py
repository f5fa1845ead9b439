"""`arctest coset build|criteria`: coset digraphs from a spec file."""

from typing import Callable, Sequence

import click

from arctest.core.errors import BoundExceededError
from arctest.core.io import dump_coset_spec, dump_digraph, load_coset_spec
from arctest.core.report import Report
from arctest.graphs.cosetgraph import CosetDigraphSpec, build_coset_digraph, criteria_report, quasiprimitive_on_cosets
from arctest.plugins.base import CommandPlugin, RunContext
from arctest.plugins.digraph import require_s

SPEC_FILE = click.Path(exists=True, dir_okay=False)


def coset_criteria(spec: CosetDigraphSpec, s_values: Sequence[int], explicit: bool, max_vertices: int) -> Report:
    """The criteria report plus quasiprimitivity on the cosets."""
    report = criteria_report(spec, s_values, explicit, max_vertices)
    report.check(
        "coset.quasiprimitive",
        "every nontrivial normal subgroup N of G satisfies NH = G",
        lambda: (quasiprimitive_on_cosets(spec.group, spec.subgroup, spec.max_elements), {}),
    )
    return report


class CosetPlugin(CommandPlugin):
    """Explicit coset digraphs and their factorization criteria."""

    @property
    def name(self) -> str:
        return "coset"

    def register(self, cli: click.Group, context_factory: Callable[[], RunContext]) -> None:
        def load(run: RunContext, path: str) -> CosetDigraphSpec:
            return load_coset_spec(path, run.config.get("limits.max_elements"), run.config.get("limits.max_cosets"))

        @cli.group(name="coset")
        def coset_cmd():
            """Coset digraphs Cos(G, H, g) from a spec JSON file."""

        @coset_cmd.command()
        @click.argument("path", type=SPEC_FILE)
        def build(path):
            """Write the coset digraph and the acting generators as JSON."""
            run = context_factory()
            spec = load(run, path)
            bound = run.config.get("limits.max_vertices")
            if spec.index > bound:
                raise BoundExceededError("max_vertices", spec.index, bound)
            built = build_coset_digraph(spec)
            document = dump_digraph(built.digraph)
            document["acting_generators"] = [g.to_json() for g in built.acting.generators]
            document["coset_representatives"] = [rep.to_json() for rep in spec.space.cosets]
            return run.emit_json(document)

        @coset_cmd.command()
        @click.option(
            "--s",
            "s_values",
            type=click.IntRange(min=1),
            multiple=True,
            default=(2, 3),
            show_default=True,
            help="Arc length to decide; repeatable",
        )
        @click.option(
            "--explicit/--no-explicit",
            default=True,
            show_default=True,
            help="Compare every criterion with the explicit digraph when it fits max_vertices",
        )
        @click.argument("path", type=SPEC_FILE)
        def criteria(s_values, explicit, path):
            """Every group-theoretic criterion, with the matching digraph computation."""
            run = context_factory()
            for s in s_values:
                require_s(s, run.config)
            spec = load(run, path)
            values = tuple(sorted(set(s_values)))
            report = coset_criteria(spec, values, explicit, run.config.get("limits.max_vertices"))
            return run.emit_report(report, [dump_coset_spec(spec), list(values), explicit])
