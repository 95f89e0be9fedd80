from __future__ import annotations

import math
from dataclasses import dataclass

from ..graph.models import ZdGraph
from ..graph.reduced import build_reduced
from ..ring.modulus import require_odd_prime
from ..utils.errors import ResourceError, UsageError
from .eigen import EigenSpectrum, SpectrumSource, choose_backend, eig_sym, graph_spectrum
from .odd_prime import (
    radius_discriminant,
    spectral_radius_closed,
    trace_B_squared,
    vertex_count,
)


@dataclass(frozen=True)
class EnergyReport:
    p: int
    forced_part: int
    reduced_energy: float
    bound_quotient: float
    bound_moment: float
    num_vertices: int

    @property
    def total_energy(self) -> float:
        return self.forced_part + self.reduced_energy

    @property
    def complete_graph_energy(self) -> int:
        return 2 * (self.num_vertices - 1)

    @property
    def hyperenergetic(self) -> bool:
        return self.total_energy > self.complete_graph_energy

    @property
    def bounds_ordered(self) -> bool:
        """Whether bound_quotient <= bound_moment <= total_energy holds for this p."""
        return self.bound_quotient <= self.bound_moment <= self.total_energy


def quotient_energy_bound(p: int) -> float:
    """Forced part plus |lambda_+| + |lambda_-| of the quotient matrix."""
    p = require_odd_prime(p)
    return (p + 1) * (p - 2) + math.sqrt(radius_discriminant(p))


def moment_energy_bound(p: int) -> float:
    """Forced part plus tr(B_p^2) / rho(B_p)."""
    p = require_odd_prime(p)
    return (p + 1) * (p - 2) + trace_B_squared(p) / spectral_radius_closed(p)


def reduced_spectrum(
    p: int, tol: float = 1e-10, backend: str = "auto", jacobi_max_order: int = 200, max_order: int = 200
) -> EigenSpectrum:
    model = build_reduced(p)
    if model.order > max_order:
        raise ResourceError(f"B_{p} has order {model.order}, above the eigensolve cap {max_order}")
    chosen = choose_backend(model.order, backend, jacobi_max_order)
    return eig_sym(model.B, tol=tol, backend=chosen, source=SpectrumSource.FACTORED_MODEL)


def energy_report(
    p: int, tol: float = 1e-10, backend: str = "auto", jacobi_max_order: int = 200, max_order: int = 200
) -> EnergyReport:
    p = require_odd_prime(p)
    spectrum = reduced_spectrum(p, tol, backend, jacobi_max_order, max_order)
    return EnergyReport(
        p=p,
        forced_part=(p + 1) * (p - 2),
        reduced_energy=spectrum.energy,
        bound_quotient=quotient_energy_bound(p),
        bound_moment=moment_energy_bound(p),
        num_vertices=vertex_count(p),
    )


def energy_direct(
    graph: ZdGraph,
    tol: float = 1e-10,
    max_order: int = 2500,
    backend: str = "auto",
    jacobi_max_order: int = 200,
) -> float:
    """Sum of |eigenvalues| of the adjacency matrix."""
    return graph_spectrum(
        graph, tol=tol, max_order=max_order, backend=backend, jacobi_max_order=jacobi_max_order
    ).energy


def energy_basic_bounds(spectrum: EigenSpectrum, num_edges: int) -> tuple[float, float]:
    """(2 rho, 2|E| / rho); every graph energy is at least both."""
    rho = spectrum.radius
    if rho == 0:
        return (0.0, 0.0)
    return (2 * rho, 2 * num_edges / rho)


def two_adic_energy_bound(t: int) -> int:
    if t < 2:
        raise UsageError(f"two-adic energy bound needs t >= 2, got t = {t}")
    return 2 ** (4 * (t // 2) + 1) - 4
