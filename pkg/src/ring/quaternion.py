from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ..utils.errors import UsageError
from .modulus import Modulus, as_modulus

_UNITS = ("", "i", "j", "k")


@dataclass(frozen=True, order=True)
class LipschitzQuaternion:
    """a + bi + cj + dk in L_n = Z_n[i, j, k], held in canonical form 0..n-1."""

    a: int
    b: int
    c: int
    d: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise UsageError(f"modulus must be >= 2, got {self.n}")
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, getattr(self, name) % self.n)

    @classmethod
    def zero(cls, n: int | Modulus) -> LipschitzQuaternion:
        return cls(0, 0, 0, 0, int(n))

    @classmethod
    def one(cls, n: int | Modulus) -> LipschitzQuaternion:
        return cls(1, 0, 0, 0, int(n))

    @property
    def coords(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def is_zero(self) -> bool:
        return self.coords == (0, 0, 0, 0)

    def conj(self) -> LipschitzQuaternion:
        return LipschitzQuaternion(self.a, -self.b, -self.c, -self.d, self.n)

    def scale(self, s: int) -> LipschitzQuaternion:
        return LipschitzQuaternion(s * self.a, s * self.b, s * self.c, s * self.d, self.n)

    def __add__(self, other: LipschitzQuaternion) -> LipschitzQuaternion:
        return q_add(self, other)

    def __mul__(self, other: LipschitzQuaternion) -> LipschitzQuaternion:
        return q_mul(self, other)

    def __neg__(self) -> LipschitzQuaternion:
        return self.scale(-1)

    def __sub__(self, other: LipschitzQuaternion) -> LipschitzQuaternion:
        return q_add(self, -other)

    def __str__(self) -> str:
        terms = []
        for coef, unit in zip(self.coords, _UNITS):
            if coef == 0:
                continue
            if unit and coef == 1:
                terms.append(unit)
            else:
                terms.append(f"{coef}{unit}")
        return "+".join(terms) if terms else "0"


def _check_same_modulus(x: LipschitzQuaternion, y: LipschitzQuaternion) -> None:
    if x.n != y.n:
        raise UsageError(f"modulus mismatch: {x.n} vs {y.n}")


def q_add(x: LipschitzQuaternion, y: LipschitzQuaternion) -> LipschitzQuaternion:
    _check_same_modulus(x, y)
    return LipschitzQuaternion(x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d, x.n)


def q_mul(x: LipschitzQuaternion, y: LipschitzQuaternion) -> LipschitzQuaternion:
    """Hamilton product reduced mod n (i^2 = j^2 = k^2 = -1, ij = k, jk = i, ki = j)."""
    _check_same_modulus(x, y)
    a1, b1, c1, d1 = x.coords
    a2, b2, c2, d2 = y.coords
    return LipschitzQuaternion(
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        x.n,
    )


def q_norm(x: LipschitzQuaternion) -> int:
    return (x.a * x.a + x.b * x.b + x.c * x.c + x.d * x.d) % x.n


def is_unit(x: LipschitzQuaternion) -> bool:
    # x * conj(x) = N(x), so x is invertible exactly when N(x) is
    return math.gcd(q_norm(x), x.n) == 1


def is_vertex(x: LipschitzQuaternion) -> bool:
    return not x.is_zero and not is_unit(x)


def enumerate_vertices(n: int | Modulus) -> list[LipschitzQuaternion]:
    """All nonzero zero divisors of L_n in lexicographic (a, b, c, d) order."""
    m = as_modulus(n).n
    return [
        LipschitzQuaternion(a, b, c, d, m)
        for a, b, c, d in itertools.product(range(m), repeat=4)
        if (a or b or c or d) and math.gcd((a * a + b * b + c * c + d * d) % m, m) != 1
    ]


def vertex_array(n: int | Modulus) -> np.ndarray:
    """Vertices of L_n as an (N, 4) int64 array, same order as ``enumerate_vertices``."""
    m = as_modulus(n).n
    grid = np.indices((m, m, m, m)).reshape(4, -1).T.astype(np.int64)
    norms = (grid * grid).sum(axis=1) % m
    nonunit = np.gcd(norms, m) != 1
    nonzero = grid.any(axis=1)
    return grid[nonunit & nonzero]


def hamilton_product_arrays(x: np.ndarray, y: np.ndarray, n: int) -> np.ndarray:
    """Elementwise Hamilton products of broadcastable (..., 4) coordinate arrays, mod n."""
    a1, b1, c1, d1 = (x[..., r] for r in range(4))
    a2, b2, c2, d2 = (y[..., r] for r in range(4))
    out = np.stack(
        [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ],
        axis=-1,
    )
    return np.mod(out, n)


def zero_product_mask(x: np.ndarray, y: np.ndarray, n: int) -> np.ndarray:
    """Boolean (len(x), len(y)) mask of x_r * y_s == 0 in L_n."""
    products = hamilton_product_arrays(x[:, None, :], y[None, :, :], n)
    return ~products.any(axis=-1)


def to_uv_coordinates(x: LipschitzQuaternion) -> tuple[int, int, int, int]:
    """Coordinates (e0, e1, e2, e3) of x in L_2 with x = e0 + e1*u + e2*v + e3*uv.

    u = 1+i, v = 1+j, uv = 1+i+j+k; this identifies L_2 with F_2[u, v]/(u^2, v^2).
    """
    if x.n != 2:
        raise UsageError(f"uv coordinates are defined for n = 2, got {x.n}")
    a, b, c, d = x.coords
    e3 = d
    e1 = (b + d) % 2
    e2 = (c + d) % 2
    e0 = (a + e1 + e2 + e3) % 2
    return (e0, e1, e2, e3)


def closed_form_vertex_count(n: int | Modulus) -> int | None:
    """|V(G_n)| for n an odd prime or a power of 2; None where no closed form is known."""
    m = as_modulus(n)
    if m.is_odd_prime:
        p = m.n
        return p**3 + p**2 - p - 1
    if m.is_two_power:
        return 2 ** (4 * m.two_exponent - 1) - 1
    return None
