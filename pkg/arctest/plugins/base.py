"""Base class for arctest command plugins and the per-run context they share."""

import json
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Sequence

import click
from rich.console import Console

from arctest.core.config import Config
from arctest.core.formatting import render_summary
from arctest.core.report import Report, digest_inputs

logger = logging.getLogger(__name__)


@dataclass
class RunContext:
    """Settings of one command-line invocation.

    Attributes:
        config: Effective configuration (file, then command-line overrides)
        report_path: Where the JSON output goes; stdout when None
        filter_prefix: Keep only claims whose id starts with this prefix
        console: Console for the human summary (stderr)
        summary: Print the summary table after a report
    """

    config: Config = field(default_factory=Config.get_defaults)
    report_path: Optional[str] = None
    filter_prefix: Optional[str] = None
    console: Console = field(default_factory=lambda: Console(stderr=True))
    summary: bool = True

    @property
    def indent(self) -> Optional[int]:
        indent = self.config.get("report.indent", 2)
        return indent or None

    def emit_report(self, report: Report, inputs: Sequence[Any] = ()) -> int:
        """Write ``report`` as JSON, print its summary and return its exit code."""
        report.input_digest = digest_inputs(*inputs)
        report = report.filtered(self.filter_prefix)
        self._write(report.to_json(indent=self.indent))
        if self.summary:
            render_summary(report, self.console)
        logger.info("%d claims, %d failed", len(report), len(report.failures))
        return report.exit_code

    def emit_json(self, document: Dict[str, Any]) -> int:
        """Write a non-report document (digraph files and the like)."""
        self._write(json.dumps(document, indent=self.indent, sort_keys=True))
        return 0

    def _write(self, text: str) -> None:
        if self.report_path:
            Path(self.report_path).write_text(text + "\n", encoding="utf-8")
            logger.debug("wrote %s", self.report_path)
        else:
            click.echo(text)


class CommandPlugin(ABC):
    """Base class for command plugins.

    Built-in plugins are registered by :mod:`arctest.cli`; third-party plugins are
    discovered from the ``arctest.commands`` entry-point group. A command returns
    its exit code: 0 when every claim passed, 1 when one failed.

    Example:
        ```python
        from arctest.plugins.base import CommandPlugin
        import click

        class OrderPlugin(CommandPlugin):
            @property
            def name(self):
                return "order"

            def register(self, cli, context_factory):
                @click.command()
                @click.argument("path", type=click.Path(exists=True, dir_okay=False))
                def order(path):
                    '''Print the order of a group file.'''
                    run = context_factory()
                    ...
                    return run.emit_report(report, [path])

                cli.add_command(order, name="order")
        ```
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """Plugin name for identification.

        Returns:
            str: A unique name for this plugin.
        """

    @abstractmethod
    def register(self, cli: click.Group, context_factory: Callable[[], RunContext]) -> None:
        """Register commands with the CLI group.

        Args:
            cli: Click group to register commands with.
            context_factory: Returns the :class:`RunContext` of the current invocation.
        """
