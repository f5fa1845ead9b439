"""`arctest gamma-n`: the Γ_n family."""

from typing import Callable

import click

from arctest.constructions.families import verify_gamma_n
from arctest.plugins.base import CommandPlugin, RunContext


class FamiliesPlugin(CommandPlugin):
    @property
    def name(self) -> str:
        return "families"

    def register(self, cli: click.Group, context_factory: Callable[[], RunContext]) -> None:
        @cli.command(name="gamma-n")
        @click.option("--n", "n", type=int, required=True, help="Odd n >= 5")
        @click.option(
            "--explicit/--no-explicit",
            default=False,
            show_default=True,
            help="Also build the digraph when it fits max_vertices",
        )
        def gamma_n(n, explicit):
            """Structural claims about Γ_n = Cos(G, H, g) with G = (A_n x A_n):<a>."""
            run = context_factory()
            report = verify_gamma_n(n, explicit, run.config)
            limits = run.config.to_dict()["limits"]
            return run.emit_report(report, [n, explicit, limits])
