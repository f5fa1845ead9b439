"""`arctest selftest`: the built-in acceptance suite."""

from typing import Callable

import click

from arctest.plugins.base import CommandPlugin, RunContext
from arctest.selftest import SUITES, selftest


class SelftestPlugin(CommandPlugin):
    @property
    def name(self) -> str:
        return "selftest"

    def register(self, cli: click.Group, context_factory: Callable[[], RunContext]) -> None:
        @cli.command(name="selftest")
        @click.option(
            "--filter",
            "filter_prefix",
            default=None,
            help=f"Run only claims with this id prefix; suites: {', '.join(p.rstrip('.') for p in SUITES)}",
        )
        def selftest_cmd(filter_prefix):
            """Run the acceptance suite."""
            run = context_factory()
            prefix = filter_prefix or run.filter_prefix
            report = selftest(run.config, prefix)
            return run.emit_report(report, ["selftest", prefix or "", run.config.to_dict()])
