import math

import pytest

from src.spectral.eigen import SpectrumSource, graph_spectrum
from src.spectral.energy import (
    energy_basic_bounds,
    energy_direct,
    energy_report,
    moment_energy_bound,
    quotient_energy_bound,
    reduced_spectrum,
    two_adic_energy_bound,
)
from src.utils.errors import ResourceError, UsageError

ENERGY_ROWS = [
    # p, forced, quotient bound, moment bound, energy
    (3, 4, 20.5227, 35.6829, 72.7095),
    (5, 18, 66.6724, 161.5800, 364.4303),
    (7, 40, 136.7523, 423.5501, 1016.3064),
]


@pytest.mark.parametrize("p,forced,lq,lm,total", ENERGY_ROWS)
def test_energy_report_odd_primes(p, forced, lq, lm, total):
    report = energy_report(p)
    assert report.forced_part == forced
    assert report.bound_quotient == pytest.approx(lq, abs=5e-5)
    assert report.bound_moment == pytest.approx(lm, abs=5e-5)
    assert report.total_energy == pytest.approx(total, abs=5e-5)
    assert report.total_energy == report.forced_part + report.reduced_energy
    assert report.hyperenergetic
    assert report.bounds_ordered


def test_energy_p3_complete_graph_comparison():
    report = energy_report(3)
    assert report.num_vertices == 32
    assert report.complete_graph_energy == 62


def test_quotient_bound_closed_form():
    assert quotient_energy_bound(3) == pytest.approx(4 + math.sqrt(273), rel=1e-12)
    assert moment_energy_bound(3) == pytest.approx(4 + 436 / ((11 + math.sqrt(273)) / 2), rel=1e-12)


def test_direct_energy_matches_decomposition(structured3, structured5):
    assert energy_direct(structured3) == pytest.approx(energy_report(3).total_energy, abs=1e-6)
    assert energy_direct(structured5) == pytest.approx(energy_report(5).total_energy, abs=1e-6)


def test_reduced_spectrum_source_and_cap():
    spectrum = reduced_spectrum(3)
    assert spectrum.source is SpectrumSource.FACTORED_MODEL
    assert len(spectrum) == 16
    with pytest.raises(ResourceError):
        reduced_spectrum(5, max_order=20)


def test_g2_energy_is_ten(g2):
    assert energy_direct(g2, backend="lapack") == pytest.approx(10.0, abs=1e-9)
    assert energy_direct(g2) == pytest.approx(10.0, abs=1e-8)


def test_g4_energy(brute4):
    energy = energy_direct(brute4)
    assert energy == pytest.approx(102.8092, abs=5e-5)
    assert energy >= two_adic_energy_bound(2)


def test_basic_bounds_hold(structured3, brute4, g2):
    for graph in (structured3, brute4, g2):
        spectrum = graph_spectrum(graph)
        two_rho, edge_bound = energy_basic_bounds(spectrum, graph.num_edges)
        assert spectrum.energy >= two_rho - 1e-9
        assert spectrum.energy >= edge_bound - 1e-9


def test_two_adic_energy_bounds():
    assert two_adic_energy_bound(2) == 28
    assert two_adic_energy_bound(3) == 28
    assert two_adic_energy_bound(4) == 508
    with pytest.raises(UsageError):
        two_adic_energy_bound(1)


def test_energy_report_needs_odd_prime():
    with pytest.raises(UsageError):
        energy_report(4)
