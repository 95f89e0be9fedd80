from __future__ import annotations

import functools
from typing import Any, Callable

import click
import structlog
from pydantic import ValidationError

from .config.schema import SpectralConfig, ZdqConfig
from .config.settings import Settings, load_config
from .export.formats import ExportFormat, export_graph, stream_edgelist
from .graph.builders import build_graph
from .graph.models import BuildMethod
from .ring.modulus import check_modulus, require_odd_prime
from .ring.quaternion import closed_form_vertex_count
from .report.run_report import build_run_report
from .report.tables import TableName, build_all_tables, build_table
from .report.verify import run_verification
from .spectral.eigen import graph_spectrum
from .spectral.energy import energy_basic_bounds, energy_report, two_adic_energy_bound
from .utils.errors import UsageError, ZdqError
from .utils.logging import setup_logging

_log = structlog.get_logger()

# graphs above this many vertices are exported edge by edge from the brute-force stream
_STREAM_EXPORT_VERTICES = 8192


def _exit_on_error(func: Callable) -> Callable:
    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except ZdqError as exc:
            _log.error("command_failed", command=func.__name__, error=str(exc))
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(exc.exit_code) from exc
        except ValidationError as exc:
            click.echo(f"error: invalid configuration: {exc}", err=True)
            raise SystemExit(UsageError.exit_code) from exc

    return wrapper


def _load(config: str, tol: float | None = None) -> ZdqConfig:
    cfg = load_config(Settings(config_path=config))
    setup_logging(cfg.logging.level, cfg.logging.file, cfg.logging.format)
    if tol is not None:
        spectral = SpectralConfig.model_validate({**cfg.spectral.model_dump(), "jacobi_tol": tol})
        cfg = cfg.model_copy(update={"spectral": spectral})
    return cfg


config_option = click.option("--config", default="config/default.yaml", help="Config file path")
tol_option = click.option("--tol", type=float, default=None, help="Eigensolver tolerance")
allow_large_option = click.option(
    "--allow-large", is_flag=True, default=False, help="Lift the brute-force pair-test budget"
)
method_option = click.option(
    "--method",
    type=click.Choice(["auto", *(m.value for m in BuildMethod if m is not BuildMethod.SYNTHETIC)]),
    default="auto",
    help="Construction: structured for odd primes, brute force otherwise",
)


@click.group()
def cli():
    """Zero-divisor graphs of Lipschitz quaternion rings modulo n."""
    pass


@cli.command()
@click.option("--n", "n", type=int, required=True, help="Modulus")
@method_option
@click.option("--format", "fmt", type=click.Choice([f.value for f in ExportFormat]), default="edgelist")
@click.option("--out", default=None, help="Write the graph here")
@allow_large_option
@config_option
@_exit_on_error
def build(n: int, method: str, fmt: str, out: str | None, allow_large: bool, config: str) -> None:
    """Build G_n and print a summary line."""
    cfg = _load(config)
    graph = build_graph(
        check_modulus(n, cfg.budget.max_modulus),
        method=method,
        allow_large=allow_large,
        max_pair_tests=cfg.budget.brute_max_pair_tests,
    )
    if out:
        export_graph(graph, fmt, out)
    click.echo(
        f"n={n} method={graph.method.value} vertices={graph.num_vertices} "
        f"edges={graph.num_edges} decision_tests={graph.decision_tests}"
    )


@cli.command()
@click.option("--n", "n", type=int, required=True, help="Modulus")
@method_option
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
@tol_option
@allow_large_option
@config_option
@_exit_on_error
def spectrum(n: int, method: str, fmt: str, tol: float | None, allow_large: bool, config: str) -> None:
    """Spectral and invariant report for G_n."""
    cfg = _load(config, tol)
    report = build_run_report(n, cfg, method=method, allow_large=allow_large)
    click.echo(report.to_json() if fmt == "json" else report.to_text())


@cli.command()
@click.option("--p", "p", type=int, required=True, help="Odd prime")
@tol_option
@allow_large_option
@config_option
@_exit_on_error
def verify(p: int, tol: float | None, allow_large: bool, config: str) -> None:
    """Cross-check the structured G_p against brute force."""
    cfg = _load(config, tol)
    report = run_verification(p, cfg, allow_large=allow_large)
    for line in report.lines():
        click.echo(line)
    if not report.passed:
        failure = report.first_failure
        click.echo(f"error: check {failure.name} failed: {failure.detail}", err=True)
        raise SystemExit(1)


@cli.command()
@click.argument("which", type=click.Choice(["all", *(t.value for t in TableName)]))
@config_option
@_exit_on_error
def tables(which: str, config: str) -> None:
    """Recompute a published table beside its reference values."""
    cfg = _load(config)
    results = build_all_tables(cfg) if which == "all" else [build_table(which, cfg)]
    for result in results:
        click.echo(result.render())
        click.echo()
    if not all(r.all_match for r in results):
        raise SystemExit(1)


@cli.command()
@click.option("--n", "n", type=int, required=True, help="Modulus")
@click.option("--format", "fmt", type=click.Choice([f.value for f in ExportFormat]), default="edgelist")
@click.option("--out", required=True, help="Output path")
@method_option
@allow_large_option
@config_option
@_exit_on_error
def export(n: int, fmt: str, out: str, method: str, allow_large: bool, config: str) -> None:
    """Write G_n as an edge list, Matrix Market or GraphML file."""
    cfg = _load(config)
    modulus = check_modulus(n, cfg.budget.max_modulus)
    expected = closed_form_vertex_count(modulus)
    if (
        fmt == ExportFormat.EDGELIST.value
        and method in ("auto", BuildMethod.BRUTE.value)
        and not modulus.is_odd_prime
        and expected is not None
        and expected > _STREAM_EXPORT_VERTICES
    ):
        edges = stream_edgelist(
            n, out, allow_large=allow_large, max_pair_tests=cfg.budget.brute_max_pair_tests
        )
        click.echo(f"n={n} method=brute vertices={expected} edges={edges}")
        return
    graph = build_graph(
        modulus, method=method, allow_large=allow_large, max_pair_tests=cfg.budget.brute_max_pair_tests
    )
    export_graph(graph, fmt, out)
    click.echo(f"n={n} method={graph.method.value} vertices={graph.num_vertices} edges={graph.num_edges}")


@cli.command()
@click.option("--p", "p", type=int, default=None, help="Odd prime: decomposition and bounds")
@click.option("--n", "n", type=int, default=None, help="Modulus: direct eigensolve")
@click.option("--t", "t", type=int, default=None, help="Exponent of 2: clique lower bound")
@tol_option
@allow_large_option
@config_option
@_exit_on_error
def energy(
    p: int | None, n: int | None, t: int | None, tol: float | None, allow_large: bool, config: str
) -> None:
    """Graph energy, exact or bounded."""
    if sum(v is not None for v in (p, n, t)) != 1:
        raise UsageError("give exactly one of --p, --n, --t")
    cfg = _load(config, tol)
    spectral = cfg.spectral
    if p is not None:
        report = energy_report(
            require_odd_prime(p),
            tol=spectral.jacobi_tol,
            backend=spectral.backend.value,
            jacobi_max_order=spectral.jacobi_max_order,
            max_order=cfg.budget.dense_eig_max_order,
        )
        click.echo(f"p={p} vertices={report.num_vertices}")
        click.echo(f"  forced_part: {report.forced_part}")
        click.echo(f"  reduced_energy: {report.reduced_energy:.6f}")
        click.echo(f"  energy: {report.total_energy:.6f}")
        click.echo(f"  bound_quotient: {report.bound_quotient:.6f}")
        click.echo(f"  bound_moment: {report.bound_moment:.6f}")
        click.echo(f"  complete_graph_energy: {report.complete_graph_energy}")
        click.echo(f"  hyperenergetic: {report.hyperenergetic}")
        return
    if t is not None:
        click.echo(f"t={t} n={2**t} energy_at_least={two_adic_energy_bound(t)}")
        return
    graph = build_graph(
        check_modulus(n, cfg.budget.max_modulus),
        allow_large=allow_large,
        max_pair_tests=cfg.budget.brute_max_pair_tests,
    )
    eigen = graph_spectrum(
        graph,
        tol=spectral.jacobi_tol,
        max_order=cfg.budget.dense_eig_max_order,
        backend=spectral.backend.value,
        jacobi_max_order=spectral.jacobi_max_order,
        max_sweeps=spectral.jacobi_max_sweeps,
    )
    two_rho, edge_bound = energy_basic_bounds(eigen, graph.num_edges)
    click.echo(f"n={n} vertices={graph.num_vertices} solver={eigen.solver}")
    click.echo(f"  energy: {eigen.energy:.6f}")
    click.echo(f"  lower_bound_two_rho: {two_rho:.6f}")
    click.echo(f"  lower_bound_edges: {edge_bound:.6f}")
    click.echo(f"  complete_graph_energy: {2 * (graph.num_vertices - 1)}")


if __name__ == "__main__":
    cli()
