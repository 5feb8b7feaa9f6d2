import logging
import sys
from pathlib import Path
from typing import Optional

import click
from rich.console import Console
from rich.progress import Progress
from rich.table import Table

from . import __version__
from .edges import classify, edge_certificate
from .factor import parse_signature
from .families import build_coloring, validate
from .lattice import build_graph
from .models import AnalysisReport, DomainError, IdealGraphError, OracleBudget, Signature
from .oracles import validate_edge_coloring
from .report import (
    analyze as analyze_signature,
    certificate_document,
    dumps,
    graph_to_dot,
    graph_to_json,
    load_certificate,
    report_to_dict,
    resolve,
)
from .sweep import (
    FAILED,
    Check,
    SweepSummary,
    instances_for_signatures,
    instances_up_to,
    parse_signature_bounds,
    run_sweep,
)

console = Console(stderr=True)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2


class IdealGraphsGroup(click.Group):
    """Click group with our exit codes: 1 for usage and domain errors, 2 only for failed verification."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.ClickException as e:
            e.show()
            rv = EXIT_USAGE
        except click.Abort:
            console.print("[bold red]Aborted![/]")
            rv = EXIT_USAGE
        except IdealGraphError as e:
            logger.error(f"{type(e).__name__}: {e}")
            console.print(f"[bold red]Error:[/] {e}")
            rv = EXIT_USAGE
        code = rv if isinstance(rv, int) else EXIT_OK
        if not standalone_mode:
            return code
        sys.exit(code)


def _signature_option(ctx, param, value: Optional[str]) -> Optional[Signature]:
    if value is None:
        return None
    try:
        return parse_signature(value)
    except DomainError as e:
        raise click.BadParameter(str(e), ctx=ctx, param=param) from None


def _inputs(n: Optional[int], signature: Optional[Signature], fields: Optional[int] = None):
    if fields is not None:
        if n is not None or signature is not None:
            raise click.UsageError("--fields cannot be combined with N or --signature")
        signature = Signature((1,) * fields)
    if n is None and signature is None:
        raise click.UsageError("give N, --signature or --fields")
    return n, signature


def _write(text: str, out: Optional[Path]) -> None:
    if out is None:
        click.echo(text, nl=False)
        return
    out.write_text(text, encoding="utf-8")
    console.print(f"Wrote [bold]{out}[/]")


def _summary_table(report: AnalysisReport) -> Table:
    label = f"n={report.n}" if report.n else f"[{report.signature}]"
    table = Table(title=f"G(Z_n) for {label}, signature [{report.signature}]")
    table.add_column("Quantity", style="cyan", no_wrap=True)
    table.add_column("Value", justify="right", style="magenta")
    table.add_row("vertices", str(report.vertex_count))
    table.add_row("edges", str(report.edge_count))
    table.add_row("max degree", str(report.max_degree))
    table.add_row("omega", str(report.omega))
    table.add_row("chi", str(report.chi))
    table.add_row("edge class", f"{report.edge_class.classification.value} ({report.edge_class.reason.value})")
    for formula in report.formulas:
        if formula.applicable:
            table.add_row(formula.name, str(formula.value))
    return table


budget_vertices_option = click.option(
    '--budget-vertices', type=click.IntRange(min=1), default=None,
    help='Largest graph the exact oracles will search (default 200; 24 for edge classes)',
)
budget_seconds_option = click.option(
    '--budget-seconds', type=click.FloatRange(min=0, min_open=True), default=30.0, show_default=True,
    help='Time limit per oracle call',
)
signature_option = click.option(
    '--signature', callback=_signature_option, default=None,
    help='Prime exponents instead of n, e.g. 1,2,2',
)
n_argument = click.argument('n', type=click.IntRange(min=2), required=False)


def _budget(vertices: Optional[int], seconds: float, edges: Optional[int] = None, edge_check: bool = False) -> OracleBudget:
    defaults = OracleBudget()
    return OracleBudget(
        max_vertices=vertices or defaults.max_vertices,
        edge_max_vertices=(vertices if edge_check and vertices else defaults.edge_max_vertices),
        edge_max_edges=edges or defaults.edge_max_edges,
        time_limit=seconds,
    )


@click.group(cls=IdealGraphsGroup)
@click.version_option(__version__, prog_name="ideal-graphs")
@click.option('--verbose', is_flag=True, help='Debug logging on stderr')
@click.option('--log', type=click.Path(dir_okay=False, path_type=Path), default=None,
              help='Also write debug logs to this file')
def main(verbose: bool, log: Optional[Path]):
    """Ideal Graphs - clique, coloring and edge-class certificates for the ideal intersection graph of Z_n."""
    stream = logging.StreamHandler()
    stream.setLevel(logging.DEBUG if verbose else logging.WARNING)
    handlers = [stream]
    if log:
        file_handler = logging.FileHandler(log, mode='w', encoding='utf-8')
        file_handler.setLevel(logging.DEBUG)
        handlers.append(file_handler)

    logging.basicConfig(
        level=logging.DEBUG if (verbose or log) else logging.WARNING,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )
    logger.info(f"--- Starting ideal-graphs {__version__} ---")


@main.command()
@n_argument
@signature_option
@click.option('--fields', type=click.IntRange(min=1), default=None,
              help='Analyze a product of this many fields')
@click.option('--oracle', is_flag=True, help='Confirm every value with the exact oracles')
@budget_vertices_option
@budget_seconds_option
@click.option('--out', type=click.Path(dir_okay=False, path_type=Path), default=None,
              help='Write the JSON report here and print a summary instead')
@click.pass_context
def analyze(ctx, n, signature, fields, oracle, budget_vertices, budget_seconds, out):
    """Report omega, chi, closed forms and the edge class."""
    n, signature = _inputs(n, signature, fields)
    budget = _budget(budget_vertices, budget_seconds)
    report = analyze_signature(n, signature, oracle=oracle, budget=budget)
    if fields is not None:
        report.notes.append(f"product of {fields} fields: same ideal lattice as a squarefree n with {fields} primes")

    _write(dumps(report_to_dict(report)), out)
    if out is not None:
        console.print(_summary_table(report))

    if report.failed:
        for note in report.notes:
            console.print(f"[yellow]{note}[/]")
        console.print("[bold red]Verification failed.[/]")
        ctx.exit(EXIT_VERIFICATION)


@main.command()
@n_argument
@signature_option
@click.option('--out', type=click.Path(dir_okay=False, path_type=Path), default=None,
              help='Certificate file (stdout when omitted)')
@budget_vertices_option
@budget_seconds_option
@click.pass_context
def certify(ctx, n, signature, out, budget_vertices, budget_seconds):
    """Write a clique and coloring certificate, plus an edge coloring when small enough."""
    n, signature = _inputs(n, signature)
    n, factorization, s = resolve(n, signature)
    budget = _budget(budget_vertices, budget_seconds)
    graph = build_graph(s, factorization)
    cert = build_coloring(s)
    if not validate(cert, graph):
        console.print(f"[bold red]Constructed certificate for [{s}] does not validate.[/]")
        ctx.exit(EXIT_VERIFICATION)

    edge_coloring, method = None, None
    if graph.order <= budget.edge_max_vertices and graph.edge_count <= budget.edge_max_edges:
        edge_coloring, method = edge_certificate(graph, classify(s), budget)
    else:
        logger.info(f"Edge coloring omitted: {graph.order} vertices, {graph.edge_count} edges over budget")

    _write(dumps(certificate_document(graph, cert, edge_coloring, method)), out)

    if out is not None:
        _, reloaded, reloaded_edges = load_certificate(out)
        if not validate(reloaded, graph) or (reloaded_edges is not None and not validate_edge_coloring(graph, reloaded_edges)):
            console.print(f"[bold red]Written certificate {out} does not validate on reload.[/]")
            ctx.exit(EXIT_VERIFICATION)
        console.print(f"Certificate: {graph.order} vertices, omega = chi = [bold]{cert.chi}[/]")


@main.command()
@n_argument
@signature_option
@click.option('--format', 'fmt', type=click.Choice(['dot', 'json']), default='dot', show_default=True,
              help='Output format')
@click.option('--out', type=click.Path(dir_okay=False, path_type=Path), default=None,
              help='Output file (stdout when omitted)')
def export(n, signature, fmt, out):
    """Export the graph as DOT or a JSON adjacency list."""
    n, signature = _inputs(n, signature)
    n, factorization, s = resolve(n, signature)
    graph = build_graph(s, factorization)
    if fmt == 'dot':
        name = f"Z_{n}" if n else f"signature {s}"
        _write(graph_to_dot(graph, name), out)
    else:
        _write(dumps(graph_to_json(graph)), out)


def _sweep_table(summary: SweepSummary, show_failures: bool) -> Table:
    table = Table(title=f"Sweep: {summary.check.value}")
    table.add_column("Status", style="cyan", no_wrap=True)
    table.add_column("Count", justify="right", style="magenta")
    table.add_row("verified", str(summary.verified))
    table.add_row("undecided", str(summary.undecided))
    table.add_row("[bold red]FAILED[/]" if summary.failed else "FAILED", str(summary.failed))
    table.add_row("skipped", str(summary.skipped))
    if show_failures:
        for outcome in summary.failures:
            table.add_row(f"[red]{outcome.instance.label}[/]", outcome.detail)
    return table


def _sweep_document(summary: SweepSummary) -> dict:
    return {
        "version": __version__,
        "check": summary.check.value,
        "counts": {
            "verified": summary.verified,
            "undecided": summary.undecided,
            "FAILED": summary.failed,
            "skipped": summary.skipped,
        },
        "failures": [
            {
                "signature": list(o.instance.signature.exponents),
                "ns": list(o.instance.ns),
                "detail": o.detail,
                "report": o.report,
            }
            for o in summary.failures
        ],
    }


@main.command()
@click.option('--max', 'max_n', type=click.IntRange(min=2), default=None, help='Sweep every n from 2 to this bound')
@click.option('--signatures', 'bounds', default=None, help='Sweep signatures, e.g. "m<=4,exp<=3"')
@click.option('--check', type=click.Choice([c.value for c in Check]), required=True, help='What to verify')
@budget_vertices_option
@click.option('--budget-edges', type=click.IntRange(min=1), default=None,
              help='Largest edge count for the exact edge-class search (default 80)')
@budget_seconds_option
@click.option('--jobs', type=click.IntRange(min=1), default=1, show_default=True, help='Worker processes')
@click.option('--show-failures/--no-show-failures', default=True, help='List failures in the summary table')
@click.pass_context
def sweep(ctx, max_n, bounds, check, budget_vertices, budget_edges, budget_seconds, jobs, show_failures):
    """Batch-verify constructions, closed forms or edge classes against the oracles."""
    if (max_n is None) == (bounds is None):
        raise click.UsageError("give exactly one of --max or --signatures")
    check = Check(check)
    budget = _budget(budget_vertices, budget_seconds, budget_edges, edge_check=check is Check.EDGE_CLASS)

    if max_n is not None:
        with console.status("[bold green]Factoring..."):
            instances = instances_up_to(max_n)
    else:
        try:
            instances = instances_for_signatures(*parse_signature_bounds(bounds))
        except IdealGraphError as e:
            raise click.BadParameter(str(e), param_hint="'--signatures'") from None

    console.print(f"Checking [bold]{len(instances)}[/] signatures for {check.value}.")
    with Progress(console=console, transient=True) as progress:
        task = progress.add_task("[green]Sweeping...", total=len(instances))

        def advance(outcome):
            if outcome.status == FAILED:
                progress.console.print(f"[red]FAILED[/] {outcome.instance.label}: {outcome.detail}")
            progress.advance(task)

        summary = run_sweep(instances, check, budget, jobs=jobs, on_result=advance)

    console.print(_sweep_table(summary, show_failures))
    click.echo(dumps(_sweep_document(summary)), nl=False)
    if summary.failed:
        ctx.exit(EXIT_VERIFICATION)


if __name__ == '__main__':
    main()
