"""Expansion commands: expand and survey."""

from pathlib import Path
from typing import Annotated, Any

import typer

from mm_sexpansion import expansion
from mm_sexpansion.catalog import MAX_ORDER
from mm_sexpansion.config import SurveyConfig
from mm_sexpansion.expansion import Show, expand, resonant_subalgebra, zero_reduce
from mm_sexpansion.liealg import SubspaceDecomposition, determinant, killing_metric, show_adjoint
from mm_sexpansion.output import fatal, format_matrix, format_number, print_json, print_plain, print_table, to_json
from mm_sexpansion.resonance import ResonantPair, find_all_resonances, parse_resonance_spec, parse_subset
from mm_sexpansion.survey import ReportWriter, census, merge, prepare_resume, rows_to_csv

from .app import app
from .common import (
    domain_errors,
    global_options,
    load_catalog_if,
    obtain_catalog,
    parse_indices,
    progress_bar,
    resolve_algebra_or_exit,
    resolve_table,
    write_or_print,
)


@app.command("expand", aliases=["exp"])
def expand_command(
    ctx: typer.Context,
    semigroup: Annotated[
        str, typer.Option("--semigroup", "-s", help="Table file, family spec (se:N, sm:N, z:N) or catalog id.")
    ],
    algebra: Annotated[str, typer.Option("--algebra", "-g", help="Built-in algebra or algebra file.")] = "sl2",
    order: Annotated[int | None, typer.Option("--order", "-n", min=1, max=MAX_ORDER, help="Catalog order for ids.")] = None,
    catalog: Annotated[Path | None, typer.Option("--catalog", "-c", help="Catalog file for ids.")] = None,
    resonance: Annotated[
        str | None, typer.Option("--resonance", help="Resonance as S0=1,2,3,S1=1,4,5 with optional ,V0=1,V1=2,3.")
    ] = None,
    resonance_index: Annotated[
        int | None, typer.Option("--resonance-index", "-r", min=1, help="Use the k-th resonance found.")
    ] = None,
    s0: Annotated[str | None, typer.Option("--s0", help="S0 of the resonance, e.g. 1,2,3.")] = None,
    s1: Annotated[str | None, typer.Option("--s1", help="S1 of the resonance.")] = None,
    v0: Annotated[str | None, typer.Option("--v0", help="V0 generators; defaults to the algebra's decomposition.")] = None,
    v1: Annotated[str | None, typer.Option("--v1", help="V1 generators.")] = None,
    reduce: Annotated[bool, typer.Option("--reduce", help="Remove the zero-element sector.")] = False,
    show: Annotated[list[Show] | None, typer.Option("--show", help="Listings to print; repeatable.")] = None,
    source: Annotated[bool, typer.Option("--source", help="Print the source algebra first.")] = False,
    json_: Annotated[bool, typer.Option("--json", help="Print the retained algebra as JSON.")] = False,
) -> None:
    """Build an S-expanded algebra, optionally resonant and/or 0_S-reduced, and print it."""
    named = resolve_algebra_or_exit(algebra)
    g = named.constants
    c = load_catalog_if(catalog)
    if c is None and order is not None and semigroup.isdigit():
        c = obtain_catalog(ctx, order, None)
    family = semigroup if ":" in semigroup else None
    t = resolve_table(None if family else semigroup, family, c)
    if (s0 is None) != (s1 is None):
        fatal("give --s0 and --s1 together")
    if sum(x is not None for x in (resonance, resonance_index, s0)) > 1:
        fatal("give only one of --resonance, --resonance-index and --s0/--s1")
    if (v0 is None) != (v1 is None):
        fatal("give --v0 and --v1 together")

    with domain_errors():
        pair: ResonantPair | None = None
        decomposition = named.decomposition
        if v0 is not None and v1 is not None:
            decomposition = SubspaceDecomposition.of(g.dim, parse_indices(v0), parse_indices(v1))
        if resonance is not None:
            spec = parse_resonance_spec(t.order, resonance)
            pair = spec.pair
            if spec.v0 is not None and spec.v1 is not None:
                if v0 is not None:
                    fatal("V0/V1 given both in --resonance and as --v0/--v1")
                decomposition = SubspaceDecomposition.of(g.dim, list(spec.v0), list(spec.v1))
        elif s0 is not None and s1 is not None:
            pair = ResonantPair(parse_subset(t.order, s0), parse_subset(t.order, s1))
        elif resonance_index is not None:
            pairs = find_all_resonances(t)
            if resonance_index > len(pairs):
                fatal(f"the semigroup has {len(pairs)} resonances, asked for #{resonance_index}")
            pair = pairs[resonance_index - 1]

        e = expand(g, t)
        if pair is not None:
            if decomposition is None:
                fatal(f"'{named.name}' has no default decomposition: give --v0 and --v1")
            e = resonant_subalgebra(e, pair, decomposition)
        if reduce:
            e = zero_reduce(e)

        if json_:
            print_json(expansion.to_dict(e))
            return
        if source:
            metric = killing_metric(g)
            print_plain(f"Killing-Cartan metric of {named.name}")
            print_plain(format_matrix(metric.entries))
            print_plain(f"whose determinant is: {format_number(determinant(metric))}")
            print_plain("")
            print_plain(show_adjoint(g))
            print_plain("")
        listings = [expansion.render(e, what) for what in (show or [Show.COMMUTATORS])]
        print_plain("\n\n".join(listings))


@app.command("survey", aliases=["sv"])
def survey_command(
    ctx: typer.Context,
    config: Annotated[Path | None, typer.Option("--config", help="TOML file with survey parameters.")] = None,
    print_config: Annotated[bool, typer.Option("--print-config", help="Print the effective config and exit.")] = False,
    algebra: Annotated[str | None, typer.Option("--algebra", "-g", help="Built-in algebra or algebra file.")] = None,
    order: Annotated[int | None, typer.Option("--order", "-n", min=1, max=MAX_ORDER, help="Semigroup order.")] = None,
    modes: Annotated[str | None, typer.Option("--modes", "-m", help="Comma-separated: full,res,red,resred.")] = None,
    v0: Annotated[str | None, typer.Option("--v0", help="V0 generators.")] = None,
    v1: Annotated[str | None, typer.Option("--v1", help="V1 generators.")] = None,
    tolerance: Annotated[float | None, typer.Option("--tolerance", help="Relative eigenvalue tolerance.")] = None,
    catalog: Annotated[Path | None, typer.Option("--catalog", "-c", help="Catalog file instead of enumerating.")] = None,
    output: Annotated[Path | None, typer.Option("--output", "-o", help="CSV report; stdout when omitted.")] = None,
    json_output: Annotated[Path | None, typer.Option("--json", help="Also write the JSON report here.")] = None,
    resume: Annotated[bool, typer.Option("--resume", help="Skip ids already present in the CSV report.")] = False,
) -> None:
    """Expand an algebra by every commutative semigroup of an order and report which expansions are semisimple."""
    cfg = SurveyConfig.load_or_exit(config) if config else SurveyConfig()
    changes: dict[str, Any] = {
        "algebra": algebra,
        "order": order,
        "modes": modes,
        "v0": parse_indices(v0) if v0 is not None else None,
        "v1": parse_indices(v1) if v1 is not None else None,
        "tolerance": tolerance,
        "catalog": catalog,
        "output": output,
        "json_output": json_output,
        "resume": resume or None,
    }
    threads = global_options(ctx).threads
    if threads > 1:
        changes["threads"] = threads
    cfg = SurveyConfig.unwrap_or_exit(cfg.override({k: v for k, v in changes.items() if v is not None}))
    if print_config:
        cfg.print_and_exit()

    named = resolve_algebra_or_exit(cfg.algebra)
    decomposition = named.decomposition
    with domain_errors():
        if cfg.v0 is not None and cfg.v1 is not None:
            decomposition = SubspaceDecomposition.of(named.constants.dim, cfg.v0, cfg.v1)
    if decomposition is None and any(m.resonant for m in cfg.modes):
        fatal(f"'{named.name}' has no default decomposition: give --v0 and --v1 for the resonant modes")
    c = obtain_catalog(ctx, cfg.order, cfg.catalog, commutative=True)

    with domain_errors():
        previous = prepare_resume(cfg.output) if cfg.resume and cfg.output else []
    writer = ReportWriter(cfg.output, append=cfg.resume) if cfg.output else None
    try:
        with domain_errors(), progress_bar(f"{named.name} over order {c.order}") as progress:
            report = census(
                named.constants,
                decomposition,
                c,
                set(cfg.modes),
                workers=cfg.threads,
                tolerance=cfg.tolerance,
                skip_ids={r.id for r in previous},
                writer=writer.write if writer else None,
                progress=progress,
            )
    finally:
        if writer:
            writer.close()
    report = merge(report, previous)

    if writer is None:
        write_or_print(rows_to_csv(report.rows), None)
    if cfg.json_output:
        write_or_print(to_json(report.to_dict()), cfg.json_output)
    print_table(
        ["mode", "#G", "rows", "#pss", "failed"],
        [[s.mode.short, s.semigroups, s.rows, s.pss, s.failed] for s in report.summary()],
        title=f"{named.name} over order {c.order}",
        stderr=True,
    )
