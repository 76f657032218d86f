"""Rich tables and panels for instances, lattices and verification reports."""

from __future__ import annotations

from typing import TYPE_CHECKING

from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from preproj import __version__

if TYPE_CHECKING:
    from preproj.config import ProjectConfig
    from preproj.engine import InstanceContext
    from preproj.errors import ClassifiedError
    from preproj.tilting.lattice import RigidMember, SttiltLattice
    from preproj.verify.report import CheckResult, VerificationReport
    from preproj.weyl import WeakOrderPoset

console = Console()

STATUS_ICONS = {
    "pass":    "✅",
    "fail":    "❌",
    "skipped": "⏭️",
}

STATUS_COLORS = {
    "pass": "green",
    "fail": "red",
    "skipped": "yellow",
}

CLASS_COLORS = {
    "Dynkin": "bright_green",
    "Euclidean": "bright_yellow",
    "Other": "bright_red",
}


def format_duration(seconds: float) -> str:
    if seconds < 1:
        return f"{seconds * 1000:.0f}ms"
    if seconds < 60:
        return f"{seconds:.1f}s"
    return f"{seconds / 60:.1f}m"


def format_matrix(rows) -> str:
    return "\n".join(" ".join(f"{v:>3}" for v in row) for row in rows)


# ─── Instance ─────────────────────────────────────────────────


def make_instance_table(ctx: InstanceContext) -> Table:
    cd = ctx.cartan
    table = Table(title=f"🔷 {ctx.name}", show_header=False, border_style="bright_black", padding=(0, 2))
    table.add_column("Key", style="bold", min_width=14)
    table.add_column("Value", min_width=30)

    tag = ctx.kind.tag.value
    table.add_row("Classification", Text(tag, style=f"bold {CLASS_COLORS.get(tag, 'white')}"))
    table.add_row("Cartan matrix", format_matrix(cd.C))
    table.add_row("Symmetrizer", " ".join(str(d) for d in cd.D))
    table.add_row("Orientation", ", ".join(f"({i + 1},{j + 1})" for i, j in sorted(cd.omega)) or "—")
    table.add_row("Field", "ℚ" if ctx.field.characteristic == 0 else f"GF({ctx.field.characteristic})")
    if ctx.algebra is not None:
        table.add_row("dim Π", str(ctx.algebra.dim))
    elif not ctx.kind.is_dynkin:
        table.add_row("Π", Text("not constructed (finite-dimensional only for Dynkin type)", style="dim"))
    return table


def make_gf_table(ctx: InstanceContext) -> Table:
    cd = ctx.cartan
    table = Table(title="g / f", header_style="bold", border_style="bright_black")
    table.add_column("(i,j)", style="bold")
    table.add_column("c_ij", justify="right")
    table.add_column("g_ij", justify="right")
    table.add_column("f_ij", justify="right")
    for i, j in sorted(cd.g):
        table.add_row(f"({i + 1},{j + 1})", str(cd.C[i][j]), str(cd.g[(i, j)]), str(cd.f[(i, j)]))
    return table


def make_relations_panel(ctx: InstanceContext) -> Panel:
    p = ctx.presentation
    arrows = ", ".join(f"{a.label}: {a.source + 1}→{a.target + 1}" for a in p.arrows)
    body = f"[bold]Arrows[/]\n{arrows}\n\n[bold]Relations[/]\n" + "\n".join(p.relation_lines())
    return Panel(body, title="Quiver presentation", border_style="bright_blue", padding=(1, 2))


def print_instance(ctx: InstanceContext, details: bool = True) -> None:
    console.print(make_instance_table(ctx))
    if details:
        console.print(make_gf_table(ctx))
        console.print(make_relations_panel(ctx))


def print_instances(config: ProjectConfig) -> None:
    table = Table(title="📚 Instances", header_style="bold", border_style="bright_black")
    table.add_column("Name", style="bold")
    table.add_column("Cartan")
    table.add_column("Symmetrizer")
    table.add_column("Field", style="dim")
    for name in sorted(config.instances):
        inst = config.instances[name]
        sym = inst.symmetrizer if isinstance(inst.symmetrizer, (str, list)) else f"{inst.symmetrizer.multiple}×minimal"
        fld = inst.field if isinstance(inst.field, str) else f"GF({inst.field.prime})"
        table.add_row(name, str(inst.cartan), str(sym), fld)
    console.print(table)


# ─── Weyl group and lattice ───────────────────────────────────


def print_weyl(poset: WeakOrderPoset) -> None:
    from preproj.weyl import join_irreducibles, meet_irreducibles

    W = poset.group
    mirr = set(meet_irreducibles(poset))
    jirr = set(join_irreducibles(poset))
    table = Table(title=f"W: {len(W)} elements", header_style="bold", border_style="bright_black")
    table.add_column("w", style="bold")
    table.add_column("ℓ", justify="right")
    table.add_column("Ascents")
    table.add_column("Descents")
    table.add_column("Irreducible", style="dim")
    for w in W:
        marks = [m for m, s in (("meet", mirr), ("join", jirr)) if w in s]
        table.add_row(
            w.label, str(w.length),
            " ".join(f"s{i + 1}" for i in W.ascents(w)) or "—",
            " ".join(f"s{i + 1}" for i in W.descents(w)) or "—",
            ", ".join(marks),
        )
    console.print(table)
    console.print(f"[dim]{len(poset.hasse_edges)} Hasse edges[/]")


def print_lattice(lattice: SttiltLattice, rigid: list[RigidMember] | None = None) -> None:
    table = Table(title="sτ-tilt Π", header_style="bold", border_style="bright_black")
    table.add_column("w", style="bold")
    table.add_column("I_w")
    table.add_column("dim", justify="right")
    table.add_column("Summand dims", style="dim")
    table.add_column("P", justify="center")
    for node in lattice.ordered():
        dims = "  ".join(str(list(s.module.dims)) for s in node.summands if s.nonzero) or "—"
        proj = " ".join(f"Πe{k + 1}" for k in node.projective_vertices) or "—"
        table.add_row(node.w.label, node.label, str(node.ideal.dim), dims, proj)
    console.print(table)
    if rigid is not None:
        console.print(f"[bold]itrigid[/] ({len(rigid)}): " + ", ".join(m.label for m in rigid))


# ─── Verification ─────────────────────────────────────────────


def make_summary_table(report: VerificationReport) -> Table:
    counts = report.counts()
    table = Table(title="🧪 Verification", show_header=True, header_style="bold bright_white",
                  border_style="bright_black", padding=(0, 1))
    table.add_column("Check", style="bold", min_width=24)
    table.add_column("Status", justify="center", min_width=8)
    table.add_column("Time", justify="right", style="dim", min_width=8)

    for c in sorted(report.checks, key=lambda c: c.name):
        status = c.status.value
        table.add_row(
            c.name,
            Text(f"{STATUS_ICONS[status]} {status}", style=STATUS_COLORS[status]),
            format_duration(c.wall_time),
        )

    table.add_section()
    total = sum(c.wall_time for c in report.checks)
    table.add_row(
        Text("TOTAL", style="bold white"),
        f"{counts['pass']} pass / {counts['fail']} fail / {counts['skipped']} skipped",
        format_duration(total),
    )
    return table


def make_failure_panel(result: CheckResult) -> Panel:
    lines = [f"[bold]{result.statement}[/]"]
    for key, value in sorted(result.witness.items()):
        lines.append(f"  {key}: {value}")
    return Panel("\n".join(lines), title=f"❌ {result.name}", border_style="red", padding=(0, 2))


def print_report(report: VerificationReport, quiet: bool = False) -> None:
    if not quiet:
        console.print(make_summary_table(report))
    for result in report.failures:
        console.print(make_failure_panel(result))
    for result in report.checks:
        if result.reason:
            console.print(f"[yellow]⏭️  {result.name}: {result.reason}[/]")
    verdict = "[bold green]All checks passed[/]" if report.ok else f"[bold red]{len(report.failures)} check(s) failed[/]"
    console.print(verdict)


def print_error(error: ClassifiedError) -> None:
    body = [error.summary, ""]
    for key, value in sorted(error.details.items()):
        body.append(f"[dim]{key}:[/] {value}")
    body.append(f"[dim]→ {error.suggested_action}[/]")
    console.print(Panel("\n".join(body), title=f"{error.category.value} error", border_style="red", padding=(0, 2)))


def print_header() -> None:
    console.print(f"[bold bright_magenta]preproj[/] [dim]v{__version__} · generalized preprojective algebras[/]")
