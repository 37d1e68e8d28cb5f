"""Output functions for formatted printing."""

from collections.abc import Callable, Mapping, Sequence
from fractions import Fraction
from typing import Any, NoReturn

import rich
import tomlkit
import typer
from mm_std import json_dumps
from rich.console import Console
from rich.syntax import Syntax
from rich.table import Table

from .isomorphism import Permutation
from .resonance import Subset

JSON_TYPE_HANDLERS: dict[type[Any], Callable[[Any], Any]] = {
    Fraction: lambda v: str(v),
    Permutation: lambda p: list(p.image),
    Subset: lambda s: list(s.members),
}


def fatal(message: str) -> NoReturn:
    """Print an error message to stderr and exit with code 1."""
    typer.echo(message, err=True)
    raise typer.Exit(1)


def format_number(value: Fraction | int) -> str:
    """Render an exact number: integers without a decimal point, other rationals as p/q."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_matrix(rows: Sequence[Sequence[Fraction | int]]) -> str:
    """Render a matrix with right-aligned columns, one row per line."""
    cells = [[format_number(v) for v in row] for row in rows]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def print_plain(*messages: object) -> None:
    """Print to stdout without any formatting."""
    print(*messages)  # noqa: T201 - printing is the function's purpose


def to_json(data: object) -> str:
    """Serialize to JSON with handlers for exact numbers, permutations and subsets."""
    return json_dumps(data, type_handlers=JSON_TYPE_HANDLERS)


def print_json(data: object) -> None:
    """Print object as formatted JSON."""
    rich.print_json(to_json(data))


def print_table(columns: list[str], rows: list[list[Any]], *, title: str | None = None, stderr: bool = False) -> None:
    """Print data as a formatted table."""
    table = Table(*columns, title=title)
    for row in rows:
        table.add_row(*(str(cell) for cell in row))
    console = Console(stderr=stderr)
    console.print(table)


def print_toml(content: str | Mapping[str, Any], *, line_numbers: bool = False, theme: str = "monokai") -> None:
    """Print TOML with syntax highlighting."""
    toml_string = tomlkit.dumps(content) if isinstance(content, Mapping) else content

    console = Console()
    syntax = Syntax(toml_string, "toml", theme=theme, line_numbers=line_numbers)
    console.print(syntax)
