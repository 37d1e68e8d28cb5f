"""Helpers shared by the commands: input resolution, catalogs, progress and error reporting."""

from collections.abc import Callable, Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Any, NoReturn

import typer
from mm_result import Result
from rich.console import Console
from rich.progress import BarColumn, MofNCompleteColumn, Progress, TextColumn, TimeElapsedColumn

from mm_sexpansion import catalog as catalog_io
from mm_sexpansion.catalog import Catalog, Equivalence, enumerate_catalog, filter_commutative
from mm_sexpansion.cayley import CayleyTable, family_table, load_table
from mm_sexpansion.errors import SExpansionError
from mm_sexpansion.liealg import NamedAlgebra, resolve_algebra
from mm_sexpansion.output import fatal, print_plain

from .app import GlobalOptions


@contextmanager
def domain_errors() -> Iterator[None]:
    """Turn domain errors into a message on stderr and exit code 1."""
    try:
        yield
    except SExpansionError as e:
        fatal(str(e))


def global_options(ctx: typer.Context) -> GlobalOptions:
    """Options given before the subcommand."""
    root = ctx.find_root()
    return root.obj if isinstance(root.obj, GlobalOptions) else GlobalOptions()


def load_failure(what: str, result: Result[Any]) -> NoReturn:
    """Report a failed loader result and exit(1)."""
    if result.error == "format_error" and result.context:
        fatal(f"{what}: line {result.context['line']}: {result.context['cause']}")
    fatal(f"{what}: {result.error}")


@contextmanager
def progress_bar(description: str) -> Iterator[Callable[[int, int], None]]:
    """Progress display on stderr, shown only when stderr is a terminal."""
    console = Console(stderr=True)
    columns = (TextColumn("{task.description}"), BarColumn(), MofNCompleteColumn(), TimeElapsedColumn())
    with Progress(*columns, console=console, transient=True, disable=not console.is_terminal) as progress:
        task = progress.add_task(description, total=None)

        def update(done: int, total: int) -> None:
            progress.update(task, completed=done, total=total)

        yield update


def resolve_table(table: str | None, family: str | None, catalog: Catalog | None = None) -> CayleyTable:
    """Table from a file, a family spec, or a catalog id when a catalog is given."""
    if (table is None) == (family is None):
        fatal("give either a table file or --family")
    if family is not None:
        with domain_errors():
            return family_table(family)
    if table is not None and table.isdigit() and catalog is not None:
        with domain_errors():
            return catalog.get(int(table))
    result = load_table(Path(str(table)))
    if result.is_err():
        load_failure(f"can't load table {table}", result)
    return result.unwrap()


def obtain_catalog(
    ctx: typer.Context,
    order: int | None,
    path: Path | None,
    *,
    commutative: bool = False,
    equivalence: Equivalence = Equivalence.ISO_ANTI,
) -> Catalog:
    """Catalog from a file, or enumerated on the fly for the given order."""
    if path is not None:
        result = catalog_io.load(path)
        if result.is_err():
            load_failure(f"can't load catalog {path}", result)
        c = result.unwrap()
    elif order is not None:
        with domain_errors(), progress_bar(f"order {order}") as progress:
            c = enumerate_catalog(order, equivalence, workers=global_options(ctx).threads, progress=progress)
    else:
        fatal("give --order or --catalog")
    return filter_commutative(c) if commutative else c


def resolve_algebra_or_exit(spec: str) -> NamedAlgebra:
    """Built-in algebra or algebra file, exiting on failure."""
    result = resolve_algebra(spec)
    if result.is_err():
        load_failure(f"can't load algebra {spec}", result)
    return result.unwrap()


def parse_indices(text: str) -> list[int]:
    """Parse ``1,2,3`` or ``1 2 3`` into integers."""
    try:
        return [int(v) for v in text.replace(",", " ").split()]
    except ValueError:
        fatal(f"'{text}' is not a list of indices")


def write_or_print(text: str, path: Path | None) -> None:
    """Write text to a file, or print it when no path is given."""
    if path is None:
        print_plain(text.rstrip("\n"))
    else:
        path.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def load_catalog_if(path: Path | None) -> Catalog | None:
    """Load a catalog when a path is given."""
    if path is None:
        return None
    result = catalog_io.load(path)
    if result.is_err():
        load_failure(f"can't load catalog {path}", result)
    return result.unwrap()
