"""Semigroup commands: check, zero, selector, iso, resonances, enumerate, profile."""

from pathlib import Path
from typing import Annotated

import typer

from mm_sexpansion import catalog as catalog_io
from mm_sexpansion.catalog import Equivalence, catalog_to_dict, catalog_to_text, enumerate_catalog, filter_commutative, lookup
from mm_sexpansion.cayley import find_zero, is_associative, is_commutative, semigroup_metric, show_selector
from mm_sexpansion.isomorphism import (
    find_all_anti_isomorphisms,
    find_all_isomorphisms,
    find_anti_isomorphism,
    find_isomorphism,
    permutation_listing,
)
from mm_sexpansion.liealg import determinant, eigen_signature
from mm_sexpansion.output import fatal, format_matrix, format_number, print_json, print_plain, print_table, to_json
from mm_sexpansion.resonance import find_all_resonances, find_resonances, show_resonances
from mm_sexpansion.survey import compactness_profile, scan_resonances, scan_zero, scan_zero_and_resonance

from .app import app
from .common import (
    domain_errors,
    global_options,
    load_catalog_if,
    obtain_catalog,
    progress_bar,
    resolve_table,
    write_or_print,
)

TableArg = Annotated[str | None, typer.Argument(help="Table file, or a catalog id together with --catalog.")]
FamilyOpt = Annotated[str | None, typer.Option("--family", "-f", help="Family member: se:N, sm:N or z:N.")]
OrderOpt = Annotated[int | None, typer.Option("--order", "-n", min=1, max=catalog_io.MAX_ORDER, help="Enumerate this order.")]
CatalogOpt = Annotated[Path | None, typer.Option("--catalog", "-c", help="Catalog file.")]
JsonOpt = Annotated[bool, typer.Option("--json", help="Print JSON.")]


@app.command("check")
def check_command(table: TableArg = None, family: FamilyOpt = None, catalog: CatalogOpt = None, json_: JsonOpt = False) -> None:
    """Report associativity, commutativity and the zero element of a table."""
    c = load_catalog_if(catalog)
    t = resolve_table(table, family, c)
    associative, commutative, zero = is_associative(t), is_commutative(t), find_zero(t)
    if json_:
        print_json({"order": t.order, "associative": associative, "commutative": commutative, "zero": zero})
        return
    print_plain("associative" if associative else "not associative")
    print_plain("commutative" if commutative else "not commutative")
    print_plain(f"zero: {zero if zero is not None else 'none'}")


@app.command("zero")
def zero_command(
    ctx: typer.Context,
    table: TableArg = None,
    family: FamilyOpt = None,
    order: OrderOpt = None,
    catalog: CatalogOpt = None,
    json_: JsonOpt = False,
) -> None:
    """Zero element of a table, or every commutative catalog entry with one."""
    if table is not None or family is not None:
        t = resolve_table(table, family, load_catalog_if(catalog))
        zero = find_zero(t)
        if json_:
            print_json({"zero": zero})
        else:
            print_plain(zero if zero is not None else "none")
        return
    c = obtain_catalog(ctx, order, catalog, commutative=True)
    found = scan_zero(c)
    if json_:
        print_json({"order": c.order, "count": len(found), "semigroups": [{"id": i, "zero": z} for i, z in found]})
        return
    for i, z in found:
        print_plain(f"#{i} zero {z}")
    print_plain(f"{len(found)} semigroups with a zero element")


@app.command("selector", aliases=["sel"])
def selector_command(
    table: TableArg = None,
    family: FamilyOpt = None,
    catalog: CatalogOpt = None,
    metric: Annotated[bool, typer.Option("--metric", "-m", help="Also print the semigroup metric.")] = False,
) -> None:
    """Print the selector boxes of a table."""
    t = resolve_table(table, family, load_catalog_if(catalog))
    print_plain(show_selector(t))
    if metric:
        with domain_errors():
            g = semigroup_metric(t)
        print_plain("*********")
        print_plain("Semigroup metric g^S:")
        print_plain(format_matrix(g.entries))
        print_plain(f"determinant: {format_number(determinant(g))}")
        print_plain(f"eigen signature: {eigen_signature(g)}")


@app.command("iso")
def iso_command(
    first: TableArg = None,
    second: Annotated[str | None, typer.Argument(help="Second table file.")] = None,
    family: FamilyOpt = None,
    catalog: CatalogOpt = None,
    all_: Annotated[bool, typer.Option("--all", "-a", help="Print every witness.")] = False,
    anti: Annotated[bool, typer.Option("--anti", help="Search anti-isomorphisms.")] = False,
    list_permutations: Annotated[
        int | None, typer.Option("--list-permutations", help="List the permutations of 1..n and exit.")
    ] = None,
) -> None:
    """Find an isomorphism between two tables, or the catalog entry of one table."""
    if list_permutations is not None:
        with domain_errors():
            print_plain(permutation_listing(list_permutations))
        return
    c = load_catalog_if(catalog)
    if c is not None:
        t = resolve_table(first, family)
        with domain_errors():
            match = lookup(c, t)
        if match is None:
            print_plain("none")
            return
        print_plain(f"#{match.id}{' (anti)' if match.anti else ''}")
        if all_:
            entry = c.get(match.id)
            witnesses = find_all_anti_isomorphisms(entry, t) if match.anti else find_all_isomorphisms(entry, t)
            for w in witnesses:
                print_plain(w)
        else:
            print_plain(match.witness)
        return
    if second is None:
        fatal("give two tables, or one table with --catalog")
    a = resolve_table(first, family)
    b = resolve_table(second, None)
    if all_:
        witnesses = find_all_anti_isomorphisms(a, b) if anti else find_all_isomorphisms(a, b)
        for w in witnesses:
            print_plain(w)
        if not witnesses:
            print_plain("none")
        return
    witness = find_anti_isomorphism(a, b) if anti else find_isomorphism(a, b)
    print_plain(witness if witness is not None else "none")


@app.command("resonances", aliases=["res"])
def resonances_command(
    ctx: typer.Context,
    table: TableArg = None,
    family: FamilyOpt = None,
    k0: Annotated[int | None, typer.Option("--k0", help="Size of S0.")] = None,
    k1: Annotated[int | None, typer.Option("--k1", help="Size of S1.")] = None,
    order: OrderOpt = None,
    catalog: CatalogOpt = None,
    with_zero: Annotated[bool, typer.Option("--with-zero", help="Only semigroups that also have a zero.")] = False,
    json_: JsonOpt = False,
) -> None:
    """List the resonant decompositions of a table, or count them over a catalog."""
    if (k0 is None) != (k1 is None):
        fatal("--k0 and --k1 go together")
    if table is not None or family is not None:
        t = resolve_table(table, family, load_catalog_if(catalog))
        if not is_associative(t):
            fatal("resonances need an associative table")
        with domain_errors():
            pairs = find_resonances(t, k0, k1) if k0 is not None and k1 is not None else find_all_resonances(t)
        if json_:
            print_json([{"s0": p.s0, "s1": p.s1} for p in pairs])
        else:
            print_plain(show_resonances(family or str(table), pairs))
        return
    c = obtain_catalog(ctx, order, catalog, commutative=True)
    found = [(i, pairs) for i, _, pairs in scan_zero_and_resonance(c)] if with_zero else scan_resonances(c)
    total = sum(len(pairs) for _, pairs in found)
    if json_:
        print_json(
            {
                "order": c.order,
                "semigroups": len(found),
                "resonances": total,
                "entries": [{"id": i, "resonances": [{"s0": p.s0, "s1": p.s1} for p in pairs]} for i, pairs in found],
            }
        )
        return
    for i, pairs in found:
        print_plain(f"#{i}: {len(pairs)} resonances")
    print_plain(
        f"There are {len(found)} semigroups with at least one resonance and there are in total {total} different resonances."
    )


@app.command("enumerate", aliases=["enum"])
def enumerate_command(
    ctx: typer.Context,
    order: Annotated[int, typer.Option("--order", "-n", min=1, max=catalog_io.MAX_ORDER, help="Semigroup order.")],
    equivalence: Annotated[Equivalence, typer.Option("--equivalence", "-e", help="Identify tables up to this.")] = (
        Equivalence.ISO_ANTI
    ),
    iso_only: Annotated[bool, typer.Option("--iso-only", help="Up to isomorphism only; same as -e iso.")] = False,
    commutative: Annotated[bool, typer.Option("--commutative", help="Keep commutative semigroups only.")] = False,
    direct: Annotated[bool, typer.Option("--direct", help="Search symmetric tables directly; ids are renumbered.")] = False,
    output: Annotated[Path | None, typer.Option("--output", "-o", help="Write the catalog to this file.")] = None,
    json_: JsonOpt = False,
) -> None:
    """Enumerate all semigroups of an order up to isomorphism (and anti-isomorphism)."""
    if direct and not commutative:
        fatal("--direct needs --commutative")
    if iso_only:
        equivalence = Equivalence.ISO
    with domain_errors(), progress_bar(f"order {order}") as progress:
        c = enumerate_catalog(
            order, equivalence, commutative_only=direct, workers=global_options(ctx).threads, progress=progress
        )
    if commutative and not direct:
        c = filter_commutative(c)
    if json_:
        write_or_print(to_json(catalog_to_dict(c)), output)
    elif output is not None:
        catalog_io.save(c, output)
        print_plain(f"{len(c)} semigroups written to {output}")
    else:
        write_or_print(catalog_to_text(c), None)


@app.command("profile")
def profile_command(ctx: typer.Context, order: OrderOpt = None, catalog: CatalogOpt = None, json_: JsonOpt = False) -> None:
    """Eigen signature and determinant of the semigroup metric of every commutative entry."""
    c = obtain_catalog(ctx, order, catalog, commutative=True)
    profile = compactness_profile(c)
    dets = {t.id: determinant(semigroup_metric(t)) for t in c}
    if json_:
        print_json(
            [
                {"id": i, "signature": [s.n_pos, s.n_neg, s.n_zero], "det": dets[i]}
                for i, s in profile
            ]
        )
        return
    print_table(
        ["id", "n_pos", "n_neg", "n_zero", "det g^S"],
        [[i, s.n_pos, s.n_neg, s.n_zero, format_number(dets[i])] for i, s in profile],
        title=f"semigroup metrics, order {c.order}",
    )

