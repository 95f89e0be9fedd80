from __future__ import annotations

from dataclasses import dataclass, field

from ..utils.errors import UsageError

MAX_MODULUS = 2**15


def factorize(n: int) -> tuple[tuple[int, int], ...]:
    factors: list[tuple[int, int]] = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            factors.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        factors.append((n, 1))
    return tuple(factors)


@dataclass(frozen=True, order=True)
class Modulus:
    """The modulus n of Z_n, with its prime factorisation.

    Coordinates are kept below 2**15 so a^2+b^2+c^2+d^2 never overflows a
    machine word before reduction.
    """

    n: int
    factors: tuple[tuple[int, int], ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, int):
            raise UsageError(f"modulus must be an integer, got {self.n!r}")
        if self.n < 2:
            raise UsageError(f"modulus must be >= 2, got {self.n}")
        if self.n > MAX_MODULUS:
            raise UsageError(f"modulus {self.n} exceeds the supported limit {MAX_MODULUS}")
        object.__setattr__(self, "factors", factorize(self.n))

    @property
    def is_prime_power(self) -> bool:
        return len(self.factors) == 1

    @property
    def is_prime(self) -> bool:
        return self.is_prime_power and self.factors[0][1] == 1

    @property
    def is_odd_prime(self) -> bool:
        return self.is_prime and self.n != 2

    @property
    def is_two_power(self) -> bool:
        return self.is_prime_power and self.factors[0][0] == 2

    @property
    def two_exponent(self) -> int:
        """t with n = 2**t; only meaningful when ``is_two_power``."""
        if not self.is_two_power:
            raise UsageError(f"{self.n} is not a power of 2")
        return self.factors[0][1]

    def __int__(self) -> int:
        return self.n

    def __str__(self) -> str:
        return str(self.n)


def as_modulus(n: int | Modulus) -> Modulus:
    return n if isinstance(n, Modulus) else Modulus(n)


def require_odd_prime(p: int | Modulus) -> int:
    m = as_modulus(p)
    if not m.is_odd_prime:
        raise UsageError(f"{m.n} is not an odd prime")
    return m.n


def check_modulus(n: int | Modulus, limit: int) -> Modulus:
    """Modulus with a configured ceiling at or below the hard limit."""
    m = as_modulus(n)
    if m.n > limit:
        raise UsageError(f"modulus {m.n} exceeds the configured limit {limit}")
    return m
