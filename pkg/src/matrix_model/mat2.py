from __future__ import annotations

from dataclasses import dataclass

from ..utils.errors import UsageError


@dataclass(frozen=True, order=True)
class Mat2:
    """[[a, b], [c, d]] over F_p, entries held in 0..p-1."""

    a: int
    b: int
    c: int
    d: int
    p: int

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, getattr(self, name) % self.p)

    @classmethod
    def identity(cls, p: int) -> Mat2:
        return cls(1, 0, 0, 1, p)

    @classmethod
    def zero(cls, p: int) -> Mat2:
        return cls(0, 0, 0, 0, p)

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.p

    @property
    def is_zero(self) -> bool:
        return self.entries == (0, 0, 0, 0)

    @property
    def rank(self) -> int:
        if self.is_zero:
            return 0
        return 2 if self.det != 0 else 1

    def _check(self, other: Mat2) -> None:
        if self.p != other.p:
            raise UsageError(f"field mismatch: F_{self.p} vs F_{other.p}")

    def __add__(self, other: Mat2) -> Mat2:
        self._check(other)
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d, self.p)

    def __mul__(self, other: Mat2) -> Mat2:
        self._check(other)
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.p,
        )

    def scale(self, s: int) -> Mat2:
        return Mat2(s * self.a, s * self.b, s * self.c, s * self.d, self.p)

    def inverse(self) -> Mat2:
        if self.det == 0:
            raise UsageError("matrix is singular")
        inv = pow(self.det, -1, self.p)
        return Mat2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv, self.p)

    def apply(self, v: tuple[int, int]) -> tuple[int, int]:
        return ((self.a * v[0] + self.b * v[1]) % self.p, (self.c * v[0] + self.d * v[1]) % self.p)
