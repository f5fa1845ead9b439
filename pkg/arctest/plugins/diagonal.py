"""`arctest diagonal ...`: the diagonal digraphs Γ(T) over catalog groups."""

from typing import Callable

import click

from arctest.algebra.cayley import CATALOG
from arctest.constructions.diagonal import verify_diagonal
from arctest.plugins.base import CommandPlugin, RunContext


class DiagonalPlugin(CommandPlugin):
    """Element-level and explicit checks on Γ(T)."""

    @property
    def name(self) -> str:
        return "diagonal"

    def register(self, cli: click.Group, context_factory: Callable[[], RunContext]) -> None:
        @cli.group(name="diagonal")
        def diagonal_cmd():
            """The diagonal digraph Γ(T) = Cos(T^|T|, D, g)."""

        @diagonal_cmd.command()
        @click.option("--group", "name", required=True, help=f"Catalog group: {', '.join(sorted(CATALOG))}")
        @click.option(
            "--level",
            type=click.Choice(["element", "explicit"]),
            default="element",
            show_default=True,
            help="element: identities on group elements; explicit: also build Γ(T)",
        )
        def check(name, level):
            """Run every check on Γ(T) for a catalog group."""
            run = context_factory()
            report = verify_diagonal(name, level, run.config)
            return run.emit_report(report, [name.lower(), level, run.config.to_dict()["sampling"]])

        @diagonal_cmd.command(name="catalog")
        def catalog_cmd():
            """List the catalog groups."""
            document = {
                name: {"degree": entry.degree, "description": entry.description} for name, entry in CATALOG.items()
            }
            return context_factory().emit_json(document)
