from __future__ import annotations

from dataclasses import dataclass

from ..ring.modulus import require_odd_prime
from ..utils.errors import DomainError, UsageError
from .mat2 import Mat2


@dataclass(frozen=True, order=True)
class ProjLine:
    """A point of P^1(F_p): the line spanned by (v1, v2), first nonzero coordinate 1.

    Index order: (1, m) -> m for m = 0..p-1, then (0, 1) -> p.
    """

    index: int
    v1: int
    v2: int
    p: int

    @classmethod
    def from_vector(cls, v1: int, v2: int, p: int) -> ProjLine:
        v1, v2 = v1 % p, v2 % p
        if v1:
            inv = pow(v1, -1, p)
            m = (v2 * inv) % p
            return cls(m, 1, m, p)
        if v2:
            return cls(p, 0, 1, p)
        raise DomainError("the zero vector spans no line")

    @classmethod
    def from_index(cls, index: int, p: int) -> ProjLine:
        if not 0 <= index <= p:
            raise UsageError(f"line index {index} outside 0..{p}")
        return cls(index, 1, index, p) if index < p else cls(p, 0, 1, p)

    @property
    def vector(self) -> tuple[int, int]:
        return (self.v1, self.v2)

    @property
    def annihilator(self) -> tuple[int, int]:
        """Covector f with f(v) = 0 for v on this line."""
        return (self.v2, (-self.v1) % self.p)

    def __str__(self) -> str:
        return f"({self.v1},{self.v2})"


@dataclass(frozen=True, order=True)
class TypeClass:
    """C_{L,M}: rank-one matrices with kernel L and image M (exactly p-1 of them)."""

    kernel_line: ProjLine
    image_line: ProjLine

    @property
    def p(self) -> int:
        return self.kernel_line.p

    @property
    def is_diagonal(self) -> bool:
        return self.kernel_line == self.image_line

    @property
    def index(self) -> int:
        """Lexicographic position of (L, M) among the (p+1)^2 types."""
        return self.kernel_line.index * (self.p + 1) + self.image_line.index

    def __str__(self) -> str:
        return f"{self.kernel_line}->{self.image_line}"


def proj_lines(p: int) -> list[ProjLine]:
    p = require_odd_prime(p)
    return [ProjLine.from_index(r, p) for r in range(p + 1)]


def type_classes(p: int) -> list[TypeClass]:
    lines = proj_lines(p)
    return [TypeClass(kernel, image) for kernel in lines for image in lines]


def kernel_line(A: Mat2) -> ProjLine:
    if A.rank != 1:
        raise DomainError(f"kernel line needs a rank-one matrix, got rank {A.rank}")
    if A.a or A.b:
        return ProjLine.from_vector(-A.b, A.a, A.p)
    return ProjLine.from_vector(-A.d, A.c, A.p)


def image_line(A: Mat2) -> ProjLine:
    if A.rank != 1:
        raise DomainError(f"image line needs a rank-one matrix, got rank {A.rank}")
    if A.a or A.c:
        return ProjLine.from_vector(A.a, A.c, A.p)
    return ProjLine.from_vector(A.b, A.d, A.p)


def classify(A: Mat2) -> TypeClass:
    if A.is_zero:
        raise DomainError("zero matrix has no type")
    if A.det != 0:
        raise DomainError("invertible matrix has no type")
    return TypeClass(kernel_line(A), image_line(A))


def class_generator(t: TypeClass) -> Mat2:
    """The outer product m * f_L with m generating the image and f_L killing the kernel."""
    m1, m2 = t.image_line.vector
    f1, f2 = t.kernel_line.annihilator
    return Mat2(m1 * f1, m1 * f2, m2 * f1, m2 * f2, t.p)


def class_member(t: TypeClass, c: int) -> Mat2:
    if not 1 <= c <= t.p - 1:
        raise UsageError(f"scalar {c} outside 1..{t.p - 1}")
    return class_generator(t).scale(c)


def class_scalar(A: Mat2, t: TypeClass | None = None) -> int:
    """The c in 1..p-1 with A = class_member(classify(A), c)."""
    t = t or classify(A)
    gen = class_generator(t)
    for g, x in zip(gen.entries, A.entries):
        if g:
            return (x * pow(g, -1, A.p)) % A.p
    raise DomainError("class generator is zero")  # unreachable for rank-one types


def product_is_zero_by_type(A: Mat2, B: Mat2) -> bool:
    """AB = 0 for rank-one A, B decided from types alone: Im(B) = Ker(A)."""
    return image_line(B) == kernel_line(A)


def act_on_line(g: Mat2, line: ProjLine) -> ProjLine:
    if g.det == 0:
        raise UsageError("group element must be invertible")
    w1, w2 = g.apply(line.vector)
    return ProjLine.from_vector(w1, w2, line.p)


def conjugate(g: Mat2, A: Mat2) -> Mat2:
    """g A g^-1; sends C_{L,M} to C_{gL,gM} and preserves zero products."""
    return g * A * g.inverse()
