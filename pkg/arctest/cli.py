"""Command-line entry point with plugin discovery."""

import logging
import sys
from importlib.metadata import entry_points
from pathlib import Path
from typing import List, Optional, Sequence, Type

import click
import yaml

import arctest
from arctest.core.config import Config
from arctest.core.errors import InputError
from arctest.core.logs import configure_logging, verbosity_to_level
from arctest.plugins.base import CommandPlugin, RunContext
from arctest.plugins.coset import CosetPlugin
from arctest.plugins.diagonal import DiagonalPlugin
from arctest.plugins.digraph import DigraphPlugin
from arctest.plugins.families import FamiliesPlugin
from arctest.plugins.group import GroupPlugin
from arctest.plugins.selftest import SelftestPlugin

logger = logging.getLogger(__name__)

BUILTIN_PLUGINS: Sequence[Type[CommandPlugin]] = (
    GroupPlugin,
    DigraphPlugin,
    CosetPlugin,
    DiagonalPlugin,
    FamiliesPlugin,
    SelftestPlugin,
)

DEFAULT_CONFIG = Path(arctest.__file__).parent / "config.yaml"


def _root_group() -> click.Group:
    @click.group(name="arctest", context_settings={"help_option_names": ["-h", "--help"]})
    @click.version_option(arctest.__version__, prog_name="arctest")
    @click.option("--report", "report_path", type=click.Path(dir_okay=False, writable=True), help="Write JSON here")
    @click.option("--seed", type=click.IntRange(min=0), default=None, help="Seed for every sampled check")
    @click.option("--max-elements", type=click.IntRange(min=1), default=None, help="Largest explicit element set")
    @click.option("--max-vertices", type=click.IntRange(min=1), default=None, help="Largest explicit digraph")
    @click.option(
        "--config", "config_path", type=click.Path(exists=True, dir_okay=False), help="YAML file over the defaults"
    )
    @click.option("--filter", "filter_prefix", default=None, help="Keep only claims with this id prefix")
    @click.option("-v", "--verbose", count=True, help="INFO with -v, DEBUG with -vv (stderr)")
    @click.pass_context
    def cli(ctx, report_path, seed, max_elements, max_vertices, config_path, filter_prefix, verbose):
        """Verify arc-transitivity claims about coset digraphs."""
        try:
            config = Config.load(config_path or str(DEFAULT_CONFIG)).with_overrides(
                {
                    "sampling.seed": seed,
                    "limits.max_elements": max_elements,
                    "limits.max_vertices": max_vertices,
                }
            )
        except (ValueError, yaml.YAMLError) as exc:
            raise click.BadParameter(str(exc), param_hint="--config") from exc
        configure_logging(verbosity_to_level(config.get("logging.level"), verbose))
        ctx.obj = RunContext(config=config, report_path=report_path, filter_prefix=filter_prefix)

    return cli


class App:
    """The click group plus every registered plugin.

    Example:
        ```python
        app = App()
        exit_code = app.run(["gamma-n", "--n", "5"])
        ```
    """

    def __init__(
        self,
        plugin_group: str = "arctest.commands",
        builtin: Sequence[Type[CommandPlugin]] = BUILTIN_PLUGINS,
    ):
        """Initialize the application.

        Args:
            plugin_group: Entry point group name for third-party plugins.
            builtin: Plugin classes registered before discovery.
        """
        self.plugin_group = plugin_group
        self.cli = _root_group()
        self.plugins: List[CommandPlugin] = []
        for plugin_class in builtin:
            self._register(plugin_class())
        self._load_plugins()

    @staticmethod
    def context_factory() -> RunContext:
        ctx = click.get_current_context(silent=True)
        found = ctx.find_object(RunContext) if ctx is not None else None
        return found or RunContext()

    def _register(self, plugin: CommandPlugin) -> None:
        self.plugins.append(plugin)
        plugin.register(self.cli, self.context_factory)

    def _load_plugins(self) -> None:
        """Discover and register plugins from entry points."""
        known = {plugin.name for plugin in self.plugins}
        for ep in entry_points(group=self.plugin_group):
            plugin = ep.load()()
            if plugin.name in known:
                logger.warning("plugin %s from %s shadows a built-in; skipped", plugin.name, ep.value)
                continue
            known.add(plugin.name)
            self._register(plugin)

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """Execute one command line and return its exit code.

        0 when every claim passed, 1 when one failed, 2 on an input error.
        """
        args = list(argv) if argv is not None else sys.argv[1:]
        try:
            result = self.cli.main(args=args, prog_name="arctest", standalone_mode=False)
        except click.exceptions.Exit as exc:
            return exc.exit_code
        except click.Abort:
            click.echo("aborted", err=True)
            return 2
        except click.ClickException as exc:
            exc.show()
            return 2
        except InputError as exc:
            click.echo(f"error: {exc}", err=True)
            return 2
        except OSError as exc:
            click.echo(f"error: {exc}", err=True)
            return 2
        return result if isinstance(result, int) else 0


def run(argv: Optional[Sequence[str]] = None) -> int:
    return App().run(argv)


def main() -> None:
    sys.exit(run())
