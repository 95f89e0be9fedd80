from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
import structlog

from ..graph.models import ZdGraph
from ..utils.decorators import log_duration
from ..utils.errors import NumericError, ResourceError, UsageError

logger = structlog.get_logger()

SYMMETRY_ATOL = 1e-12


class SpectrumSource(str, Enum):
    DENSE_SOLVE = "dense_solve"
    FACTORED_MODEL = "factored_model"


@dataclass(frozen=True, eq=False)
class EigenSpectrum:
    """Eigenvalue multiset, sorted descending."""

    eigenvalues: np.ndarray
    source: SpectrumSource
    tolerance: float
    solver: str = "jacobi"

    def __len__(self) -> int:
        return len(self.eigenvalues)

    @property
    def radius(self) -> float:
        return float(np.max(np.abs(self.eigenvalues)))

    @property
    def largest(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def energy(self) -> float:
        return float(np.abs(self.eigenvalues).sum())

    def multiplicity(self, target: float, atol: float = 1e-6) -> int:
        return int(np.count_nonzero(np.abs(self.eigenvalues - target) < atol))

    def grouped(self, atol: float = 1e-6, decimals: int = 6) -> list[tuple[float, int]]:
        """(value, multiplicity) clusters in descending order."""
        groups: list[tuple[float, int]] = []
        for value in self.eigenvalues:
            if groups and abs(groups[-1][0] - value) < atol:
                head, count = groups[-1]
                groups[-1] = (head, count + 1)
            else:
                groups.append((float(value), 1))
        return [(round(v, decimals) + 0.0, c) for v, c in groups]

    def check_traces(self, trace: float, trace_of_square: float, rtol: float = 1e-6) -> bool:
        """Sum and sum of squares against tr(M) and tr(M^2)."""
        scale = max(1.0, abs(trace_of_square))
        ok_sum = abs(float(self.eigenvalues.sum()) - trace) <= rtol * scale
        ok_sq = abs(float((self.eigenvalues**2).sum()) - trace_of_square) <= rtol * scale
        return ok_sum and ok_sq


def _require_symmetric(M: np.ndarray) -> np.ndarray:
    A = np.array(M, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise UsageError(f"expected a square matrix, got shape {A.shape}")
    if not np.allclose(A, A.T, rtol=0.0, atol=SYMMETRY_ATOL):
        raise UsageError("matrix is not symmetric")
    return A


def _off_norm(A: np.ndarray) -> float:
    # summed over off-diagonal entries directly, not as a difference of squares
    off = A.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def jacobi_eigenvalues(
    M: np.ndarray, tol: float = 1e-10, max_sweeps: int = 100
) -> tuple[np.ndarray, int]:
    """Cyclic Jacobi rotations on a working copy; returns (eigenvalues, sweeps used).

    Stops once the off-diagonal Frobenius norm falls below tol * max(1, ||M||_F).
    """
    A = _require_symmetric(M)
    size = A.shape[0]
    threshold = tol * max(1.0, float(np.linalg.norm(A)))
    off = _off_norm(A)
    sweeps = 0
    while off >= threshold:
        if sweeps >= max_sweeps:
            raise NumericError(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {off:.3e})",
                residual=off,
            )
        sweeps += 1
        skip = threshold / (size * size)
        for p in range(size - 1):
            for q in range(p + 1, size):
                apq = A[p, q]
                if abs(apq) <= skip:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                sign = 1.0 if theta >= 0 else -1.0
                t = sign / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = A[q, p] = 0.0
        off = _off_norm(A)
    logger.debug("jacobi_converged", order=size, sweeps=sweeps, residual=off)
    return np.sort(np.diagonal(A).copy())[::-1], sweeps


@log_duration("eig_sym_timing")
def eig_sym(
    M: np.ndarray,
    tol: float = 1e-10,
    max_sweeps: int = 100,
    backend: str = "jacobi",
    source: SpectrumSource = SpectrumSource.DENSE_SOLVE,
) -> EigenSpectrum:
    """All eigenvalues of a real symmetric matrix.

    ``backend`` is "jacobi" (cyclic rotations), "lapack" (numpy.linalg.eigvalsh)
    or "auto", which is not resolved here; callers choose via ``choose_backend``.
    """
    if tol <= 0:
        raise UsageError("tolerance must be positive")
    if backend == "lapack":
        A = _require_symmetric(M)
        values = np.sort(np.linalg.eigvalsh(A))[::-1]
        return EigenSpectrum(values, source, tol, solver="lapack")
    if backend != "jacobi":
        raise UsageError(f"unknown eigen backend {backend!r}")
    values, _ = jacobi_eigenvalues(M, tol=tol, max_sweeps=max_sweeps)
    return EigenSpectrum(values, source, tol, solver="jacobi")


def choose_backend(order: int, backend: str = "auto", jacobi_max_order: int = 200) -> str:
    if backend != "auto":
        return backend
    return "jacobi" if order <= jacobi_max_order else "lapack"


def graph_spectrum(
    graph: ZdGraph,
    tol: float = 1e-10,
    max_order: int = 2500,
    backend: str = "auto",
    jacobi_max_order: int = 200,
    max_sweeps: int = 100,
) -> EigenSpectrum:
    if graph.num_vertices > max_order:
        raise ResourceError(
            f"dense eigensolve of {graph.num_vertices} vertices exceeds budget {max_order}"
        )
    chosen = choose_backend(graph.num_vertices, backend, jacobi_max_order)
    return eig_sym(graph.as_float(), tol=tol, max_sweeps=max_sweeps, backend=chosen)


def _matvec(graph: ZdGraph, x: np.ndarray, chunk_rows: int) -> np.ndarray:
    y = np.empty_like(x)
    for start, rows in graph.row_blocks(chunk_rows):
        y[start : start + len(rows)] = rows.astype(np.float64) @ x
    return y


@log_duration("power_iteration_timing")
def spectral_radius_power(
    graph: ZdGraph, tol: float = 1e-12, max_iter: int = 10_000, chunk_rows: int = 512
) -> float:
    """Perron value by power iteration from the all-ones vector, bit rows unpacked in chunks."""
    if tol <= 0:
        raise UsageError("tolerance must be positive")
    size = graph.num_vertices
    if size == 0:
        return 0.0
    x = np.ones(size, dtype=np.float64) / np.sqrt(size)
    estimate = 0.0
    for iteration in range(1, max_iter + 1):
        y = _matvec(graph, x, chunk_rows)
        rayleigh = float(x @ y)
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            return 0.0
        x = y / norm
        if abs(rayleigh - estimate) < tol * max(1.0, abs(rayleigh)):
            logger.debug("power_iteration_converged", iterations=iteration, radius=rayleigh)
            return rayleigh
        estimate = rayleigh
    raise NumericError(
        f"power iteration did not converge in {max_iter} iterations (last estimate {estimate})",
        residual=estimate,
    )
