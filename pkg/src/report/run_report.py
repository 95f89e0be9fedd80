from __future__ import annotations

import json
import math
import time
from typing import Literal

import structlog
from pydantic import BaseModel

from .. import __version__
from ..config.schema import ZdqConfig
from ..graph.builders import build_graph
from ..graph.clique import expected_clique_size
from ..graph.models import ZdGraph
from ..invariants.measures import compute_invariants
from ..ring.modulus import Modulus, check_modulus
from ..spectral.eigen import EigenSpectrum, graph_spectrum, spectral_radius_power
from ..spectral.energy import energy_basic_bounds, energy_report
from ..spectral.odd_prime import (
    charpoly_factorization,
    nullity_rank_bounds,
    quotient_matrix,
    spectral_radius_closed,
    two_adic_bounds,
)

logger = structlog.get_logger()

TOOL_VERSION = __version__


class SpectralRadius(BaseModel):
    value: float
    method: Literal["dense_solve", "power_iteration", "closed_form"]


class EigenvalueGroup(BaseModel):
    value: float
    multiplicity: int


class EnergyBlock(BaseModel):
    value: float | None = None
    lower_bound_two_rho: float | None = None
    lower_bound_edges: float | None = None
    forced_part: int | None = None
    reduced_energy: float | None = None
    bound_quotient: float | None = None
    bound_moment: float | None = None
    complete_graph_energy: int | None = None
    hyperenergetic: bool | None = None


class OddPrimeBlock(BaseModel):
    p: int
    closed_form_radius: float
    quotient_matrix: list[list[int]]
    cell_sizes: list[int]
    zero_multiplicity: int
    minus_one_multiplicity: int
    rank_bound: int
    reduced_charpoly: list[int] | None = None


class RunReport(BaseModel):
    """Everything one command computed; fields that were not computed stay null."""

    n: int
    method: str
    num_vertices: int
    num_edges: int
    degree_histogram: dict[int, int]
    spectral_radius: SpectralRadius | None = None
    eigenvalues: list[EigenvalueGroup] | None = None
    nullity_bound: int | None = None
    observed_nullity: int | None = None
    energy: EnergyBlock | None = None
    diameter: int | None = None
    domination_number: int | None = None
    girth: int | Literal["inf"] | None = None
    clique_bound: int | None = None
    radius_lower_bound: int | None = None
    odd_prime: OddPrimeBlock | None = None
    tool_version: str = TOOL_VERSION
    wall_time_ms: float | None = None

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)

    def to_text(self) -> str:
        lines = []
        for key, value in self.model_dump(mode="json").items():
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=False)
            elif value is None:
                value = "null"
            lines.append(f"{key}: {value}")
        return "\n".join(lines)


def _grouped(spectrum: EigenSpectrum, config: ZdqConfig) -> list[EigenvalueGroup]:
    return [
        EigenvalueGroup(value=v, multiplicity=m)
        for v, m in spectrum.grouped(atol=config.spectral.multiplicity_atol)
    ]


def _odd_prime_block(p: int, config: ZdqConfig) -> OddPrimeBlock:
    q = quotient_matrix(p)
    nullity, minus_one, rank = nullity_rank_bounds(p)
    reduced = None
    if (p + 1) ** 2 <= config.budget.charpoly_max_order:
        reduced = charpoly_factorization(p, max_order=config.budget.charpoly_max_order).reduced_charpoly
    return OddPrimeBlock(
        p=p,
        closed_form_radius=spectral_radius_closed(p),
        quotient_matrix=[list(row) for row in q.entries],
        cell_sizes=list(q.cell_sizes),
        zero_multiplicity=nullity,
        minus_one_multiplicity=minus_one,
        rank_bound=rank,
        reduced_charpoly=reduced,
    )


def spectral_fields(graph: ZdGraph, config: ZdqConfig) -> dict:
    """Radius, grouped spectrum, nullity and energy for a built graph, within budget."""
    spectral = config.spectral
    modulus = graph.modulus
    fields: dict = {}
    if graph.num_vertices <= config.budget.dense_eig_max_order:
        spectrum = graph_spectrum(
            graph,
            tol=spectral.jacobi_tol,
            max_order=config.budget.dense_eig_max_order,
            backend=spectral.backend.value,
            jacobi_max_order=spectral.jacobi_max_order,
            max_sweeps=spectral.jacobi_max_sweeps,
        )
        two_rho, edge_bound = energy_basic_bounds(spectrum, graph.num_edges)
        fields["spectral_radius"] = SpectralRadius(value=spectrum.radius, method="dense_solve")
        fields["eigenvalues"] = _grouped(spectrum, config)
        fields["observed_nullity"] = spectrum.multiplicity(0.0, spectral.multiplicity_atol)
        fields["energy"] = EnergyBlock(
            value=spectrum.energy,
            lower_bound_two_rho=two_rho,
            lower_bound_edges=edge_bound,
            complete_graph_energy=2 * (graph.num_vertices - 1),
            hyperenergetic=spectrum.energy > 2 * (graph.num_vertices - 1),
        )
    elif modulus is not None and modulus.is_odd_prime:
        fields["spectral_radius"] = SpectralRadius(
            value=spectral_radius_closed(modulus.n), method="closed_form"
        )
    else:
        logger.info("dense_spectrum_skipped", vertices=graph.num_vertices)
        radius = spectral_radius_power(
            graph, tol=spectral.power_tol, max_iter=spectral.power_max_iter
        )
        fields["spectral_radius"] = SpectralRadius(value=radius, method="power_iteration")

    if modulus is not None and modulus.is_odd_prime:
        p = modulus.n
        report = energy_report(
            p,
            tol=spectral.jacobi_tol,
            backend=spectral.backend.value,
            jacobi_max_order=spectral.jacobi_max_order,
            max_order=config.budget.dense_eig_max_order,
        )
        energy = fields.get("energy") or EnergyBlock()
        fields["energy"] = energy.model_copy(
            update={
                "value": energy.value if energy.value is not None else report.total_energy,
                "forced_part": report.forced_part,
                "reduced_energy": report.reduced_energy,
                "bound_quotient": report.bound_quotient,
                "bound_moment": report.bound_moment,
                "complete_graph_energy": report.complete_graph_energy,
                "hyperenergetic": report.hyperenergetic,
            }
        )
        fields["nullity_bound"] = nullity_rank_bounds(p)[0]
        fields["odd_prime"] = _odd_prime_block(p, config)
    return fields


def two_adic_fields(modulus: Modulus | None) -> dict:
    if modulus is None or not modulus.is_two_power or modulus.two_exponent < 2:
        return {}
    t = modulus.two_exponent
    radius_bound, _ = two_adic_bounds(t)
    return {"clique_bound": expected_clique_size(t), "radius_lower_bound": radius_bound}


def build_run_report(
    n: int,
    config: ZdqConfig,
    method: str = "auto",
    allow_large: bool = False,
    with_spectrum: bool = True,
) -> RunReport:
    start = time.perf_counter()
    budget = config.budget
    graph = build_graph(
        check_modulus(n, budget.max_modulus),
        method=method,
        allow_large=allow_large,
        max_pair_tests=budget.brute_max_pair_tests,
    )
    # a universal vertex settles domination at any size; otherwise search only small graphs
    invariants = compute_invariants(
        graph, domination_cap=graph.num_vertices, max_vertices=budget.domination_max_vertices
    )
    fields: dict = {}
    if with_spectrum:
        fields.update(spectral_fields(graph, config))
    fields.update(two_adic_fields(graph.modulus))
    girth_value = invariants.girth
    report = RunReport(
        n=n,
        method=graph.method.value,
        num_vertices=graph.num_vertices,
        num_edges=graph.num_edges,
        degree_histogram=invariants.degree_histogram,
        diameter=invariants.diameter,
        domination_number=invariants.domination_number,
        girth="inf" if math.isinf(girth_value) else int(girth_value),
        **fields,
    )
    report.wall_time_ms = round((time.perf_counter() - start) * 1000, 2)
    logger.info("run_report_built", n=n, method=report.method, wall_time_ms=report.wall_time_ms)
    return report
