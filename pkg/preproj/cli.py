"""preproj CLI: main entry point."""

from __future__ import annotations

import functools
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable

import click
from rich.console import Console
from rich.logging import RichHandler

from preproj import __version__
from preproj.algebra.oracle import oracle_dimension
from preproj.config import InstanceConfig, ProjectConfig, load_config, load_instance
from preproj.engine import InstanceContext, PreprojEngine, default_cache_path
from preproj.errors import PreprojError, classify_exception
from preproj.export import hasse_dot, quiver_dot, sttilt_dot, valued_graph_dot, write_dot
from preproj.tilting.lattice import check_order, check_pair, itrigid_set
from preproj.tui.panels import (
    print_error,
    print_header,
    print_instance,
    print_instances,
    print_lattice,
    print_report,
    print_weyl,
)
from preproj.verify.suite import SUITES, parse_sample, run_suites
from preproj.weyl import meet_irreducibles

console = Console()


def _setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), rich_tracebacks=verbose, show_path=False)],
        force=True,
    )


def handle_errors(func: Callable[..., Any]) -> Callable[..., Any]:
    """Render engine errors as panels and exit with their category's code."""
    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except PreprojError as exc:
            classified = classify_exception(exc)
            print_error(classified)
            sys.exit(classified.exit_code)
    return wrapper


def _echo_json(data: Any) -> None:
    click.echo(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False))


def _resolve_instance(
    config: ProjectConfig,
    instance: str,
    field_text: str | None,
    max_degree: int | None,
) -> InstanceConfig:
    """A registry name or a path to an instance file."""
    path = Path(instance)
    cfg = load_instance(path) if path.suffix in (".json", ".yaml", ".yml") or path.exists() else config.instance(instance)
    if field_text is not None or max_degree is not None:
        cfg = cfg.with_overrides(field_text, max_degree)
    return cfg


def _open(
    config_path: str | None,
    instance: str,
    field_text: str | None = None,
    max_degree: int | None = None,
    cache: str | None = None,
    construct: bool = True,
    write_cache: bool = False,
) -> tuple[PreprojEngine, InstanceContext]:
    config = load_config(config_path)
    engine = PreprojEngine(config)
    cfg = _resolve_instance(config, instance, field_text, max_degree)
    return engine, engine.open(cfg, cache=cache, construct=construct, write_cache=write_cache)


def instance_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """Options shared by every per-instance command."""
    func = click.argument("instance")(func)
    func = click.option("--config", "-c", "config_path", help="Path to preproj.yaml")(func)
    func = click.option("--field", "field_text", help="Ground field: rational or p:PRIME")(func)
    func = click.option("--max-degree", type=int, help="Degree bound for the completion")(func)
    func = click.option("--cache", "cache_path", help="Algebra cache file")(func)
    return func


# ─── CLI Group ────────────────────────────────────────────────


@click.group(invoke_without_command=True)
@click.option("--version", is_flag=True, help="Show version")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging")
@click.pass_context
def main(ctx: click.Context, version: bool, verbose: bool) -> None:
    """preproj: generalized preprojective algebras Π(C, D)

    Builds Π from symmetrizable Cartan data, computes the ideals I_w for
    w in the Weyl group, the support τ-tilting lattice, and verifies the
    structural statements about them instance by instance.

    \b
    INSTANCE is a name from preproj.yaml (or a built-in desk instance
    such as B2, G2, A3) or a path to a YAML/JSON instance file.
    """
    _setup_logging(verbose)
    if version:
        click.echo(f"preproj v{__version__}")
        return

    if ctx.invoked_subcommand is None:
        print_header()
        click.echo(ctx.get_help())


# ─── INSTANCES ────────────────────────────────────────────────


@main.command()
@click.option("--config", "-c", "config_path", help="Path to preproj.yaml")
@handle_errors
def instances(config_path: str | None) -> None:
    """List the configured and built-in instances."""
    config = load_config(config_path)
    print_instances(config)
    g = config.global_
    console.print(f"[dim]jobs={g.jobs} iso_trials={g.iso_trials} seed={g.seed} cache_dir={g.cache_dir}[/]")


# ─── INSPECT ──────────────────────────────────────────────────


@main.command()
@instance_options
@click.option("--dot", "dot_path", help="Write the valued graph Γ(C) as DOT")
@click.option("--quiver", "quiver_path", help="Write the double quiver as DOT")
@click.option("--json", "as_json", is_flag=True, help="Print JSON instead of tables")
@handle_errors
def inspect(
    instance: str, config_path: str | None, field_text: str | None, max_degree: int | None,
    cache_path: str | None, dot_path: str | None, quiver_path: str | None, as_json: bool,
) -> None:
    """Classification, g/f tables and the quiver presentation."""
    _, ctx = _open(config_path, instance, field_text, max_degree, cache_path, construct=False)

    if dot_path:
        write_dot(valued_graph_dot(ctx.cartan, ctx.name), dot_path)
    if quiver_path:
        write_dot(quiver_dot(ctx.presentation, ctx.name), quiver_path)

    if as_json:
        _echo_json({
            **ctx.descriptor(),
            "arrows": [{"label": a.label, "source": a.source + 1, "target": a.target + 1} for a in ctx.presentation.arrows],
            "relations": ctx.presentation.relation_lines(),
        })
        return
    print_instance(ctx)
    if not ctx.kind.is_dynkin:
        console.print("[yellow]⚠ Π is not constructed: it is finite-dimensional only for Dynkin type[/]")


# ─── BUILD ────────────────────────────────────────────────────


@main.command()
@instance_options
@click.option("--oracle", is_flag=True, help="Cross-check dim Π against the brute-force oracle")
@handle_errors
def build(
    instance: str, config_path: str | None, field_text: str | None, max_degree: int | None,
    cache_path: str | None, oracle: bool,
) -> None:
    """Complete the relations, assemble Π and write the algebra cache."""
    engine, ctx = _open(config_path, instance, field_text, max_degree, cache_path, construct=False)
    if not ctx.kind.is_dynkin:
        ctx.require_algebra()
    ctx = engine.open(ctx.config, cache=cache_path, write_cache=True)
    A = ctx.require_algebra()
    path = Path(cache_path) if cache_path else default_cache_path(ctx.config, engine.settings, ctx.cartan, ctx.field)
    console.print(f"[bold green]✅ Built Π for {ctx.name}[/]: dim {A.dim}")
    console.print(f"[dim]📦 Cache: {path}[/]")

    if oracle:
        result = oracle_dimension(ctx.presentation, ctx.field)
        if result.dim != A.dim:
            console.print(f"[bold red]❌ Oracle dimension {result.dim} ≠ {A.dim}[/]")
            sys.exit(1)
        console.print(f"[green]Oracle agrees[/] (dim {result.dim}, path length bound {result.length_bound})")


# ─── WEYL ─────────────────────────────────────────────────────


@main.command()
@instance_options
@click.option("--hasse", "hasse_path", help="Write the Hasse diagram of the weak order as DOT")
@click.option("--json", "as_json", is_flag=True, help="Print JSON instead of tables")
@handle_errors
def weyl(
    instance: str, config_path: str | None, field_text: str | None, max_degree: int | None,
    cache_path: str | None, hasse_path: str | None, as_json: bool,
) -> None:
    """Weyl group elements, the right weak order and its irreducibles."""
    _, ctx = _open(config_path, instance, field_text, max_degree, cache_path, construct=False)
    poset = ctx.poset
    if hasse_path:
        write_dot(hasse_dot(poset, ctx.name), hasse_path)
    if as_json:
        W = ctx.group
        _echo_json({
            "order": len(W),
            "elements": [
                {"w": w.label, "length": w.length,
                 "ascents": [i + 1 for i in W.ascents(w)], "descents": [i + 1 for i in W.descents(w)]}
                for w in W
            ],
            "hasse_edges": len(poset.hasse_edges),
            "meet_irreducibles": [w.label for w in meet_irreducibles(poset)],
        })
        return
    print_weyl(poset)


# ─── STTILT ───────────────────────────────────────────────────


@main.command()
@instance_options
@click.option("--dot", "dot_path", help="Write the support τ-tilting lattice as DOT")
@click.option("--json", "as_json", is_flag=True, help="Print JSON instead of tables")
@click.option("--check", is_flag=True, help="Check the pair invariants and the Fac order")
@handle_errors
def sttilt(
    instance: str, config_path: str | None, field_text: str | None, max_degree: int | None,
    cache_path: str | None, dot_path: str | None, as_json: bool, check: bool,
) -> None:
    """The ideals I_w as support τ-tilting modules, ordered by Fac inclusion."""
    _, ctx = _open(config_path, instance, field_text, max_degree, cache_path)
    lattice = ctx.lattice
    if check:
        for node in lattice.ordered():
            check_pair(node)
        check_order(lattice)
    rigid = itrigid_set(ctx.calculus)
    if dot_path:
        write_dot(sttilt_dot(lattice, ctx.name), dot_path)
    if as_json:
        _echo_json({
            "instance": ctx.descriptor(),
            "nodes": [node.to_dict() for node in lattice.ordered()],
            "edges": [[u.label, v.label, i + 1] for u, v, i in lattice.edges],
            "itrigid": [m.label for m in rigid],
        })
        return
    print_lattice(lattice, rigid)


# ─── VERIFY ───────────────────────────────────────────────────


@main.command()
@instance_options
@click.option("--suite", "-s", "suites", multiple=True, default=("all",),
              type=click.Choice([*SUITES, "all"]), help="Suite to run (repeatable)")
@click.option("--report", "report_path", help="Write the JSON report here")
@click.option("--sample", "sample_text", help="Check only K random elements: SEED:K")
@click.option("--jobs", "-j", type=int, help="Concurrent checks")
@click.option("--json", "as_json", is_flag=True, help="Print the JSON report")
@click.option("--no-timing", is_flag=True, help="Leave wall times out of the report")
@handle_errors
def verify(
    instance: str, config_path: str | None, field_text: str | None, max_degree: int | None,
    cache_path: str | None, suites: tuple[str, ...], report_path: str | None,
    sample_text: str | None, jobs: int | None, as_json: bool, no_timing: bool,
) -> None:
    """Run verification suites; exit 1 if any check fails."""
    sample = parse_sample(sample_text)
    _, ctx = _open(config_path, instance, field_text, max_degree, cache_path)
    ctx.require_algebra()
    report = run_suites(ctx, suites, jobs=jobs, sample=sample)

    if report_path:
        report.save(report_path, include_timing=not no_timing)
    if as_json:
        click.echo(report.to_json(include_timing=not no_timing), nl=False)
    else:
        print_report(report)
        if report_path:
            console.print(f"[dim]📄 Report: {report_path}[/]")
    sys.exit(report.exit_code)


if __name__ == "__main__":
    main()
