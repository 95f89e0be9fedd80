from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..graph.clique import expected_clique_size
from ..graph.reduced import build_reduced
from ..ring.modulus import require_odd_prime
from ..utils.errors import UsageError
from .charpoly import DEFAULT_MAX_ORDER, charpoly_exact, root_multiplicity


@dataclass(frozen=True)
class QuotientMatrix:
    """Quotient of the equitable partition D (diagonal types) | O (off-diagonal types)."""

    p: int
    entries: tuple[tuple[int, int], tuple[int, int]]
    cell_sizes: tuple[int, int]

    @property
    def trace(self) -> int:
        return self.entries[0][0] + self.entries[1][1]

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.entries
        return a * d - b * c

    @property
    def discriminant(self) -> int:
        return self.trace**2 - 4 * self.det

    @property
    def charpoly(self) -> list[int]:
        return [1, -self.trace, self.det]

    @property
    def row_sums(self) -> tuple[int, int]:
        return (sum(self.entries[0]), sum(self.entries[1]))

    def roots(self) -> tuple[float, float]:
        root = math.sqrt(self.discriminant)
        return ((self.trace + root) / 2, (self.trace - root) / 2)

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)


@dataclass(frozen=True)
class CharPolyFactorization:
    """chi_{A_p} = lambda^{zero_multiplicity} (lambda+1)^{minus_one_multiplicity} chi_{B_p}."""

    p: int
    zero_multiplicity: int
    minus_one_multiplicity: int
    reduced_charpoly: list[int]

    @property
    def total_degree(self) -> int:
        return self.zero_multiplicity + self.minus_one_multiplicity + len(self.reduced_charpoly) - 1

    @property
    def reduced_zero_multiplicity(self) -> int:
        """Extra zero eigenvalues contributed by B_p."""
        return root_multiplicity(self.reduced_charpoly, 0)

    @property
    def reduced_minus_one_multiplicity(self) -> int:
        return root_multiplicity(self.reduced_charpoly, -1)

    @property
    def observed_nullity(self) -> int:
        return self.zero_multiplicity + self.reduced_zero_multiplicity

    @property
    def observed_minus_one_multiplicity(self) -> int:
        return self.minus_one_multiplicity + self.reduced_minus_one_multiplicity


def vertex_count(p: int) -> int:
    return (p + 1) ** 2 * (p - 1)


def degree_values(p: int) -> tuple[int, int]:
    """(diagonal-type degree, off-diagonal-type degree)."""
    return (2 * p * p - p - 2, 2 * p * p - p - 1)


def edge_count(p: int) -> int:
    return (p * p - 1) * (2 * p**3 + p * p - 2 * p - 2) // 2


def quotient_matrix(p: int) -> QuotientMatrix:
    p = require_odd_prime(p)
    return QuotientMatrix(
        p=p,
        entries=((p - 2, 2 * p * (p - 1)), (2 * (p - 1), (2 * p - 1) * (p - 1))),
        cell_sizes=((p + 1) * (p - 1), p * (p + 1) * (p - 1)),
    )


def radius_discriminant(p: int) -> int:
    return 4 * p**4 - 4 * p * p - 8 * p + 9


def spectral_radius_closed(p: int) -> float:
    p = require_odd_prime(p)
    return p * p - p - 0.5 + 0.5 * math.sqrt(radius_discriminant(p))


def closed_form_matches_quotient(p: int) -> bool:
    """Integer identity: tr(Q_p) = 2p^2 - 2p - 1 and disc(Q_p) = 4p^4 - 4p^2 - 8p + 9."""
    q = quotient_matrix(p)
    return q.trace == 2 * p * p - 2 * p - 1 and q.discriminant == radius_discriminant(p)


def nullity_rank_bounds(p: int) -> tuple[int, int, int]:
    """(nullity lower bound, multiplicity of -1 lower bound, rank upper bound)."""
    p = require_odd_prime(p)
    return (p * (p + 1) * (p - 2), (p + 1) * (p - 2), (p + 1) * (2 * p - 1))


def charpoly_factorization(p: int, max_order: int = DEFAULT_MAX_ORDER) -> CharPolyFactorization:
    p = require_odd_prime(p)
    model = build_reduced(p)
    return CharPolyFactorization(
        p=p,
        zero_multiplicity=p * (p + 1) * (p - 2),
        minus_one_multiplicity=(p + 1) * (p - 2),
        reduced_charpoly=charpoly_exact(model.B, max_order=max_order),
    )


def trace_B_squared(p: int) -> int:
    p = require_odd_prime(p)
    return (p + 1) * (2 * p**4 - p**3 - 3 * p * p - p + 4)


def trace_B_squared_direct(p: int) -> int:
    B = build_reduced(p).B
    return int(np.trace(B @ B))


def two_adic_bounds(t: int) -> tuple[int, int]:
    """(spectral radius lower bound c_t - 1, edge lower bound C(c_t, 2)) for G_{2^t}."""
    if t < 2:
        raise UsageError(f"two-adic bounds need t >= 2, got t = {t}")
    c_t = expected_clique_size(t)
    return (c_t - 1, c_t * (c_t - 1) // 2)
