from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import structlog

from ..config.schema import ZdqConfig
from ..graph.builders import build_brute, build_structured
from ..graph.correspondence import conjugation_permutation, structured_matches_brute
from ..graph.models import ZdGraph
from ..graph.reduced import build_reduced
from ..invariants.measures import diagonal_type_partition, is_automorphism, verify_equitable
from ..matrix_model.mat2 import Mat2
from ..ring.modulus import require_odd_prime
from ..spectral.eigen import graph_spectrum, spectral_radius_power
from ..spectral.energy import reduced_spectrum
from ..spectral.odd_prime import (
    closed_form_matches_quotient,
    degree_values,
    edge_count,
    nullity_rank_bounds,
    quotient_matrix,
    spectral_radius_closed,
    trace_B_squared,
    trace_B_squared_direct,
)
from ..utils.errors import VerificationError

logger = structlog.get_logger()


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class VerifyReport:
    p: int
    checks: list[CheckResult] = field(default_factory=list)
    brute_pair_tests: int = 0
    type_tests: int = 0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> CheckResult | None:
        return next((c for c in self.checks if not c.passed), None)

    def lines(self) -> list[str]:
        out = [c.line() for c in self.checks]
        out.append(f"pair tests: brute {self.brute_pair_tests}, type {self.type_tests}")
        return out


@dataclass
class _Context:
    p: int
    config: ZdqConfig
    brute: ZdGraph
    structured: ZdGraph


def _bijection(ctx: _Context) -> CheckResult:
    ok, pair = structured_matches_brute(ctx.brute, ctx.structured)
    if ok:
        return CheckResult("bijection", True, f"{ctx.brute.num_vertices} vertices map onto structured labels")
    if pair is None:
        return CheckResult("bijection", False, "vertex map is not a bijection")
    u, v = pair
    return CheckResult("bijection", False, f"adjacency differs at {ctx.brute.labels[u]} ~ {ctx.brute.labels[v]}")


def _degree_law(ctx: _Context) -> CheckResult:
    p = ctx.p
    d_diag, d_off = degree_values(p)
    expected = {d_diag: (p + 1) * (p - 1), d_off: p * (p + 1) * (p - 1)}
    for graph in (ctx.brute, ctx.structured):
        values, counts = np.unique(graph.degrees(), return_counts=True)
        observed = {int(v): int(c) for v, c in zip(values, counts)}
        if observed != expected:
            return CheckResult("degree_law", False, f"{graph.method.value}: {observed} != {expected}")
    return CheckResult("degree_law", True, f"{expected}")


def _edge_law(ctx: _Context) -> CheckResult:
    expected = edge_count(ctx.p)
    for graph in (ctx.brute, ctx.structured):
        if graph.num_edges != expected:
            return CheckResult("edge_law", False, f"{graph.method.value}: {graph.num_edges} != {expected}")
    return CheckResult("edge_law", True, f"|E| = {expected}")


def _equitable(ctx: _Context) -> CheckResult:
    result = verify_equitable(ctx.structured, diagonal_type_partition(ctx.structured))
    expected = quotient_matrix(ctx.p).as_array()
    if not result.is_equitable:
        vertex, cell, into, count, first = result.violation
        return CheckResult(
            "equitable_partition",
            False,
            f"vertex {ctx.structured.labels[vertex]} has {count} neighbours in cell {into}, expected {first}",
        )
    if not np.array_equal(result.quotient, expected):
        return CheckResult("equitable_partition", False, f"quotient {result.quotient.tolist()} != {expected.tolist()}")
    return CheckResult("equitable_partition", True, f"Q = {expected.tolist()}")


def _spectrum(ctx: _Context) -> CheckResult:
    spectral = ctx.config.spectral
    dense = graph_spectrum(
        ctx.structured,
        tol=spectral.jacobi_tol,
        max_order=ctx.config.budget.dense_eig_max_order,
        backend=spectral.backend.value,
        jacobi_max_order=spectral.jacobi_max_order,
    )
    reduced = reduced_spectrum(
        ctx.p,
        tol=spectral.jacobi_tol,
        backend=spectral.backend.value,
        jacobi_max_order=spectral.jacobi_max_order,
        max_order=ctx.config.budget.dense_eig_max_order,
    )
    zeros, minus_ones, _ = nullity_rank_bounds(ctx.p)
    rebuilt = np.sort(
        np.concatenate([np.zeros(zeros), -np.ones(minus_ones), reduced.eigenvalues])
    )[::-1]
    if len(rebuilt) != len(dense):
        return CheckResult("spectrum", False, f"{len(rebuilt)} rebuilt eigenvalues for {len(dense)} vertices")
    gap = float(np.max(np.abs(rebuilt - dense.eigenvalues)))
    if gap > spectral.atol + spectral.rtol * dense.radius:
        return CheckResult("spectrum", False, f"largest eigenvalue gap {gap:.3e}")
    return CheckResult("spectrum", True, f"max gap {gap:.1e}")


def _radius(ctx: _Context) -> CheckResult:
    spectral = ctx.config.spectral
    closed = spectral_radius_closed(ctx.p)
    if not closed_form_matches_quotient(ctx.p):
        return CheckResult("spectral_radius", False, "closed form disagrees with the quotient matrix")
    power = spectral_radius_power(ctx.structured, tol=spectral.power_tol, max_iter=spectral.power_max_iter)
    if abs(power - closed) > spectral.atol + spectral.rtol * closed:
        return CheckResult("spectral_radius", False, f"power iteration {power} vs closed form {closed}")
    return CheckResult("spectral_radius", True, f"rho = {closed:.4f}")


def _trace_identity(ctx: _Context) -> CheckResult:
    p = ctx.p
    values = (
        trace_B_squared(p),
        trace_B_squared_direct(p),
        2 * ctx.structured.num_edges - (p + 1) * (p - 2),
    )
    ok = len(set(values)) == 1
    return CheckResult("trace_B_squared", ok, " = ".join(str(v) for v in values))


def _automorphism(ctx: _Context) -> CheckResult:
    p = ctx.p
    for g in (Mat2(1, 1, 0, 1, p), Mat2(0, 1, 1, 0, p), Mat2(2, 0, 0, 1, p)):
        perm = conjugation_permutation(p, g)
        if not is_automorphism(ctx.structured, perm):
            return CheckResult("conjugation_automorphism", False, f"g = {g.entries} breaks adjacency")
    return CheckResult("conjugation_automorphism", True, "3 conjugations preserve adjacency")


def _reduced_model(ctx: _Context) -> CheckResult:
    try:
        build_reduced(ctx.p).validate()
    except VerificationError as exc:
        return CheckResult("reduced_model", False, str(exc))
    return CheckResult("reduced_model", True, "")


CHECKS: list[Callable[[_Context], CheckResult]] = [
    _bijection,
    _degree_law,
    _edge_law,
    _equitable,
    _reduced_model,
    _spectrum,
    _radius,
    _trace_identity,
    _automorphism,
]


def run_verification(p: int, config: ZdqConfig, allow_large: bool = False) -> VerifyReport:
    """Cross-validate the structured construction of G_p against brute force."""
    p = require_odd_prime(p)
    brute = build_brute(p, allow_large=allow_large, max_pair_tests=config.budget.brute_max_pair_tests)
    structured = build_structured(p)
    ctx = _Context(p=p, config=config, brute=brute, structured=structured)
    report = VerifyReport(p=p, brute_pair_tests=brute.decision_tests, type_tests=structured.decision_tests)
    for check in CHECKS:
        result = check(ctx)
        report.checks.append(result)
        if not result.passed:
            logger.warning("check_failed", check=result.name, p=p, detail=result.detail)
    return report
