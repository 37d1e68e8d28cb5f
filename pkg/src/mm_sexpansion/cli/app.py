"""The ``sexpansion`` command group: short command names, ``--version`` and the global options.

Commands register a short name with ``aliases``::

    @app.command("resonances", aliases=["res"])
    def resonances_command(): ...

Help lists the command as ``resonances (res)``.
"""

import importlib.metadata
from collections.abc import Callable
from dataclasses import dataclass
from typing import Annotated, Any

import click
import typer
from typer.core import TyperGroup

from mm_sexpansion.log import setup_logging
from mm_sexpansion.output import print_plain

PACKAGE_NAME = "mm-sexpansion"

# command name -> short names
COMMAND_ALIASES: dict[str, tuple[str, ...]] = {}


class AliasGroup(TyperGroup):
    """Group that resolves the short names in ``COMMAND_ALIASES``."""

    def get_command(self, ctx: click.Context, cmd_name: str) -> click.Command | None:
        """Look up a command by its name or one of its short names."""
        canonical = next((name for name, short in COMMAND_ALIASES.items() if cmd_name in short), cmd_name)
        return super().get_command(ctx, canonical)

    def format_help(self, ctx: click.Context, formatter: click.HelpFormatter) -> None:
        """Show ``name (short)`` in the command listing."""
        renamed = [(name, cmd) for name, cmd in self.commands.items() if COMMAND_ALIASES.get(name) and cmd.name == name]
        for name, cmd in renamed:
            cmd.name = f"{name} ({', '.join(COMMAND_ALIASES[name])})"
        try:
            super().format_help(ctx, formatter)
        finally:
            for name, cmd in renamed:
                cmd.name = name


class AliasTyper(typer.Typer):
    """Typer whose ``command`` decorator takes ``aliases``."""

    def __init__(self, **kwargs: Any) -> None:  # noqa: ANN401 - forwarded to Typer
        """Use AliasGroup and show help when no command is given."""
        kwargs.setdefault("cls", AliasGroup)
        kwargs.setdefault("no_args_is_help", True)
        kwargs.setdefault("pretty_exceptions_enable", False)
        super().__init__(**kwargs)

    def command(
        self,
        name: str | None = None,
        *,
        aliases: list[str] | None = None,
        **kwargs: Any,  # noqa: ANN401 - forwarded to Typer.command
    ) -> Callable[..., Any]:
        """Register a command; ``aliases`` needs an explicit ``name``."""
        if aliases:
            if name is None:
                raise ValueError("aliases need an explicit command name")
            COMMAND_ALIASES[name] = tuple(aliases)
        return super().command(name, **kwargs)


@dataclass(frozen=True, slots=True)
class GlobalOptions:
    """Options given before the subcommand."""

    threads: int = 1
    verbose: bool = False


def _print_version(value: bool) -> None:
    if value:
        print_plain(f"{PACKAGE_NAME}: {importlib.metadata.version(PACKAGE_NAME)}")
        raise typer.Exit


app = AliasTyper(name="sexpansion", help="S-expansions of Lie algebras by finite abelian semigroups.")


@app.callback()
def main_callback(
    ctx: typer.Context,
    threads: Annotated[int, typer.Option("--threads", "-t", min=1, help="Worker processes for enumeration and surveys.")] = 1,
    verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Debug logging on stderr.")] = False,
    _version: Annotated[
        bool | None,
        typer.Option("--version", "-V", callback=_print_version, is_eager=True, help="Show version."),
    ] = None,
) -> None:
    """S-expansions of Lie algebras by finite abelian semigroups."""
    setup_logging(verbose)
    ctx.obj = GlobalOptions(threads=threads, verbose=verbose)
