import math

import numpy as np
import pytest

from src.graph.builders import build_structured
from src.graph.reduced import build_reduced
from src.spectral.charpoly import (
    charpoly_exact,
    coefficient_bound,
    divide_linear,
    evaluate,
    linear_power,
    poly_mul,
    root_multiplicity,
)
from src.spectral.eigen import (
    SpectrumSource,
    choose_backend,
    eig_sym,
    graph_spectrum,
    jacobi_eigenvalues,
    spectral_radius_power,
)
from src.spectral.odd_prime import (
    charpoly_factorization,
    closed_form_matches_quotient,
    degree_values,
    edge_count,
    nullity_rank_bounds,
    quotient_matrix,
    spectral_radius_closed,
    trace_B_squared,
    trace_B_squared_direct,
    two_adic_bounds,
    vertex_count,
)
from src.utils.errors import NumericError, ResourceError, UsageError


def test_jacobi_complete_graph():
    values, sweeps = jacobi_eigenvalues(np.ones((4, 4)) - np.eye(4))
    assert values == pytest.approx([3, -1, -1, -1], abs=1e-10)
    assert sweeps >= 1


def test_jacobi_diagonal_needs_no_sweeps():
    values, sweeps = jacobi_eigenvalues(np.diag([2.0, -1.0, 5.0]))
    assert values.tolist() == [5.0, 2.0, -1.0]
    assert sweeps == 0


def test_jacobi_rejects_asymmetric():
    with pytest.raises(UsageError):
        jacobi_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_jacobi_sweep_cap():
    with pytest.raises(NumericError) as info:
        jacobi_eigenvalues(np.ones((4, 4)) - np.eye(4), max_sweeps=0)
    assert info.value.residual > 0


def test_jacobi_converges_on_a3(structured3):
    A = structured3.as_float()
    values, sweeps = jacobi_eigenvalues(A)
    assert sweeps < 30
    assert values == pytest.approx(np.sort(np.linalg.eigvalsh(A))[::-1], abs=1e-8)
    assert values[0] == pytest.approx(13.7614, abs=1e-4)


def test_jacobi_stops_on_nearly_diagonal_matrix():
    A = np.diag([1000.0, -750.0, 333.0, 12.5])
    A[0, 1] = A[1, 0] = 1e-14
    values, sweeps = jacobi_eigenvalues(A)
    assert sweeps == 0
    assert values == pytest.approx([1000.0, 333.0, 12.5, -750.0])


def test_eig_sym_tolerance_and_backend_checks():
    with pytest.raises(UsageError):
        eig_sym(np.eye(2), tol=0)
    with pytest.raises(UsageError):
        eig_sym(np.eye(2), backend="qr")


def test_choose_backend():
    assert choose_backend(150) == "jacobi"
    assert choose_backend(384) == "lapack"
    assert choose_backend(384, backend="jacobi") == "jacobi"


def test_g2_spectrum(g2):
    spectrum = graph_spectrum(g2)
    assert spectrum.eigenvalues == pytest.approx([3, 1, 1, -1, -1, -1, -2], abs=1e-9)
    assert spectrum.source is SpectrumSource.DENSE_SOLVE
    assert spectrum.grouped() == [(3.0, 1), (1.0, 2), (-1.0, 3), (-2.0, 1)]


def test_jacobi_and_lapack_agree(structured3):
    jacobi = graph_spectrum(structured3, backend="jacobi")
    lapack = graph_spectrum(structured3, backend="lapack")
    assert jacobi.solver == "jacobi" and lapack.solver == "lapack"
    assert np.allclose(jacobi.eigenvalues, lapack.eigenvalues, atol=1e-8)


def test_spectrum_trace_checks(structured3):
    spectrum = graph_spectrum(structured3)
    assert spectrum.check_traces(0.0, 2 * structured3.num_edges)
    assert not spectrum.check_traces(0.0, 2 * structured3.num_edges + 1)


def test_dense_budget(structured3):
    with pytest.raises(ResourceError):
        graph_spectrum(structured3, max_order=10)


def test_g4_spectral_radius(brute4):
    assert graph_spectrum(brute4).largest == pytest.approx(22.8577, abs=5e-5)
    assert spectral_radius_power(brute4) == pytest.approx(22.8577, abs=5e-5)


def test_power_iteration_rejects_bad_tolerance(g2):
    with pytest.raises(UsageError):
        spectral_radius_power(g2, tol=0)


def test_charpoly_small():
    assert charpoly_exact([[1, 12], [4, 10]]) == [1, -11, -38]
    assert charpoly_exact(np.zeros((3, 3), dtype=int)) == [1, 0, 0, 0]
    assert charpoly_exact(np.ones((4, 4), dtype=int) - np.eye(4, dtype=int)) == poly_mul(
        linear_power(3, 1), linear_power(-1, 3)
    )


def test_charpoly_order_cap():
    with pytest.raises(ResourceError):
        charpoly_exact(np.zeros((5, 5), dtype=int), max_order=4)


def test_charpoly_rejects_fractional_entries():
    with pytest.raises(UsageError):
        charpoly_exact(np.array([[0.5, 0.0], [0.0, 1.0]]))


def test_charpoly_trace_of_B3():
    coeffs = charpoly_exact(build_reduced(3).B)
    assert len(coeffs) == 17
    assert coeffs[0] == 1
    assert -coeffs[1] == 4


def _bareiss_det(rows):
    A = [[int(v) for v in row] for row in rows]
    size, sign, prev = len(A), 1, 1
    for k in range(size - 1):
        if A[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if A[r][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1]


def test_charpoly_matches_exact_determinants():
    M = np.random.default_rng(11).integers(-50, 51, size=(12, 12))
    coeffs = charpoly_exact(M)
    # coefficients far outside int64
    assert max(abs(c) for c in coeffs) > 2**63
    assert max(abs(c) for c in coeffs) <= coefficient_bound(M.tolist())
    for x in (-3, 0, 2, 97):
        assert evaluate(coeffs, x) == _bareiss_det(x * np.eye(12, dtype=np.int64) - M)


def test_charpoly_needs_row_swaps():
    shift = np.zeros((6, 6), dtype=int)
    for r in range(5):
        shift[r, r + 1] = 1
    shift[5, 0] = 1
    assert charpoly_exact(shift) == [1, 0, 0, 0, 0, 0, -1]


def test_charpoly_of_B11_degree_and_trace():
    factored = charpoly_factorization(11)
    coeffs = factored.reduced_charpoly
    assert len(coeffs) == 145
    assert -coeffs[1] == 12 * 9
    assert factored.total_degree == vertex_count(11)


def test_polynomial_helpers():
    f = poly_mul(linear_power(0, 2), linear_power(-1, 3))
    assert root_multiplicity(f, 0) == 2
    assert root_multiplicity(f, -1) == 3
    assert root_multiplicity(f, 1) == 0
    assert evaluate([1, -11, -38], 0) == -38
    quotient, remainder = divide_linear([1, -3, 2], 1)
    assert (quotient, remainder) == ([1, -2], 0)


@pytest.mark.parametrize("p,zeros,minus_ones", [(3, 12, 4), (5, 90, 18), (7, 280, 40)])
def test_charpoly_factorization_multiplicities(p, zeros, minus_ones):
    factored = charpoly_factorization(p)
    assert factored.zero_multiplicity == zeros
    assert factored.minus_one_multiplicity == minus_ones
    assert len(factored.reduced_charpoly) - 1 == (p + 1) ** 2
    assert factored.total_degree == vertex_count(p)
    assert factored.reduced_charpoly[0] == 1


def test_charpoly_of_A3_factors_exactly(structured3):
    factored = charpoly_factorization(3)
    full = charpoly_exact(structured3.adjacency.astype(np.int64), max_order=32)
    expected = poly_mul(
        poly_mul(linear_power(0, factored.zero_multiplicity), linear_power(-1, factored.minus_one_multiplicity)),
        factored.reduced_charpoly,
    )
    assert full == expected
    assert factored.observed_nullity == root_multiplicity(full, 0)
    assert factored.observed_minus_one_multiplicity == root_multiplicity(full, -1)


def test_dense_spectrum_splits_into_forced_and_reduced(structured3):
    dense = graph_spectrum(structured3)
    reduced = eig_sym(build_reduced(3).B.astype(float))
    zeros, minus_ones, _ = nullity_rank_bounds(3)
    rebuilt = np.sort(np.concatenate([np.zeros(zeros), -np.ones(minus_ones), reduced.eigenvalues]))[::-1]
    assert np.allclose(rebuilt, dense.eigenvalues, atol=1e-6)
    assert dense.multiplicity(0.0) >= 12
    assert dense.multiplicity(-1.0) >= 4


def test_quotient_matrices():
    q3 = quotient_matrix(3)
    assert q3.entries == ((1, 12), (4, 10))
    assert q3.cell_sizes == (8, 24)
    assert q3.charpoly == [1, -11, -38]
    assert quotient_matrix(5).entries == ((3, 40), (8, 36))
    for p in (3, 5, 7, 11):
        assert quotient_matrix(p).row_sums == degree_values(p)


@pytest.mark.parametrize(
    "p,exact,rounded",
    [
        (3, (11 + math.sqrt(273)) / 2, 13.7614),
        (5, (39 + math.sqrt(2369)) / 2, 43.8362),
        (7, (83 + math.sqrt(9361)) / 2, 89.8761),
    ],
)
def test_spectral_radius_closed_form(p, exact, rounded):
    closed = spectral_radius_closed(p)
    assert closed == pytest.approx(exact, rel=1e-12)
    assert closed == pytest.approx(quotient_matrix(p).roots()[0], rel=1e-12)
    assert round(closed, 4) == rounded
    assert closed_form_matches_quotient(p)
    assert spectral_radius_power(build_structured(p)) == pytest.approx(closed, rel=1e-6)


def test_spectral_radius_closed_form_needs_odd_prime():
    with pytest.raises(UsageError):
        spectral_radius_closed(9)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_degree_and_edge_laws(p):
    graph = build_structured(p)
    d_diag, d_off = degree_values(p)
    values, counts = np.unique(graph.degrees(), return_counts=True)
    assert dict(zip(values.tolist(), counts.tolist())) == {
        d_diag: (p + 1) * (p - 1),
        d_off: p * (p + 1) * (p - 1),
    }
    assert d_off - d_diag == 1
    assert graph.num_edges == edge_count(p)


@pytest.mark.parametrize("p,value", [(3, 436), (5, 6294), (7, 34472), (11, 330972)])
def test_trace_B_squared_three_ways(p, value):
    assert trace_B_squared(p) == value
    assert trace_B_squared_direct(p) == value
    assert 2 * edge_count(p) - (p + 1) * (p - 2) == value


def test_nullity_rank_bounds():
    assert nullity_rank_bounds(3) == (12, 4, 20)
    assert nullity_rank_bounds(5) == (90, 18, 54)


def test_two_adic_bounds():
    assert two_adic_bounds(2) == (14, 105)
    assert two_adic_bounds(3) == (14, 105)
    assert two_adic_bounds(4) == (254, 32385)
    with pytest.raises(UsageError):
        two_adic_bounds(1)


def test_g4_respects_two_adic_bounds(brute4):
    radius_bound, edge_bound = two_adic_bounds(2)
    assert graph_spectrum(brute4).radius >= radius_bound
    assert brute4.num_edges >= edge_bound
