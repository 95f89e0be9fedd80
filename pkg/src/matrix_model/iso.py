from __future__ import annotations

from dataclasses import dataclass

from ..ring.modulus import require_odd_prime
from ..ring.quaternion import LipschitzQuaternion
from ..utils.errors import UsageError
from .mat2 import Mat2


@dataclass(frozen=True)
class IsoParams:
    """Witness (a, b) with a^2 + b^2 = -1 in F_p, fixing one isomorphism L_p -> M_2(F_p)."""

    a: int
    b: int
    p: int

    def __post_init__(self) -> None:
        if (self.a * self.a + self.b * self.b + 1) % self.p != 0:
            raise UsageError(f"({self.a}, {self.b}) does not satisfy a^2 + b^2 = -1 mod {self.p}")

    @property
    def images(self) -> tuple[Mat2, Mat2, Mat2, Mat2]:
        """Images of 1, i, j, k."""
        a, b, p = self.a, self.b, self.p
        return (
            Mat2.identity(p),
            Mat2(a, b, b, -a, p),
            Mat2(b, -a, -a, -b, p),
            Mat2(0, 1, -1, 0, p),
        )


def find_iso_params(p: int) -> IsoParams:
    """Lexicographically least (a, b) with a^2 + b^2 = -1 mod p."""
    p = require_odd_prime(p)
    for a in range(p):
        for b in range(p):
            if (a * a + b * b + 1) % p == 0:
                return IsoParams(a, b, p)
    raise UsageError(f"no solution of a^2 + b^2 = -1 mod {p}")  # unreachable for odd p


def phi(x: LipschitzQuaternion, params: IsoParams) -> Mat2:
    if x.n != params.p:
        raise UsageError(f"quaternion modulus {x.n} does not match field F_{params.p}")
    one, i, j, k = params.images
    return one.scale(x.a) + i.scale(x.b) + j.scale(x.c) + k.scale(x.d)
