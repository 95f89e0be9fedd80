"""Exact integer characteristic polynomials and small polynomial helpers.

Coefficient lists are highest degree first: [1, c_{d-1}, ..., c_0] for
lambda^d + c_{d-1} lambda^{d-1} + ... + c_0. Returned coefficients are Python ints.
"""

from __future__ import annotations

import math
from typing import Iterator

import numpy as np

from ..utils.errors import ResourceError, UsageError

DEFAULT_MAX_ORDER = 200
# order * q^2 stays inside int64 for q < 2^23 and orders up to 4096
_PRIME_CEILING = 1 << 23


def _as_int_matrix(M: np.ndarray | list[list[int]]) -> list[list[int]]:
    rows = [[int(v) for v in row] for row in np.asarray(M).tolist()]
    if any(len(row) != len(rows) for row in rows):
        raise UsageError("characteristic polynomial needs a square matrix")
    for row, original in zip(rows, np.asarray(M).tolist()):
        if any(v != o for v, o in zip(row, original)):
            raise UsageError("characteristic polynomial needs integer entries")
    return rows


def _is_prime(q: int) -> bool:
    if q < 2 or q % 2 == 0:
        return q == 2
    return all(q % f for f in range(3, math.isqrt(q) + 1, 2))


def _primes_descending(ceiling: int = _PRIME_CEILING) -> Iterator[int]:
    q = ceiling - 1 if ceiling % 2 == 0 else ceiling - 2
    while q > 2:
        if _is_prime(q):
            yield q
        q -= 2


def coefficient_bound(rows: list[list[int]]) -> int:
    """(1 + R)^d with R the largest row norm bounds every |c_k|.

    c_k sums C(d, k) principal minors, each at most R^k in size by Hadamard.
    """
    if not rows:
        return 1
    R = math.isqrt(max(sum(v * v for v in row) for row in rows)) + 1
    return (1 + R) ** len(rows)


def _hessenberg_mod(H: np.ndarray, q: int) -> np.ndarray:
    """Upper Hessenberg matrix similar to H over F_q, by elimination below the subdiagonal."""
    d = H.shape[0]
    for m in range(1, d - 1):
        nonzero = np.flatnonzero(H[m:, m - 1])
        if not len(nonzero):
            continue
        pivot = m + int(nonzero[0])
        if pivot != m:
            H[[m, pivot]] = H[[pivot, m]]
            H[:, [m, pivot]] = H[:, [pivot, m]]
        u = (H[m + 1 :, m - 1] * pow(int(H[m, m - 1]), q - 2, q)) % q
        if not u.any():
            continue
        # rows i > m lose u_i * row m; column m gains the matching column combination
        H[m + 1 :] = (H[m + 1 :] - u[:, None] * H[m]) % q
        H[:, m] = (H[:, m] + H[:, m + 1 :] @ u) % q
    return H


def _hessenberg_charpoly_mod(H: np.ndarray, q: int) -> list[int]:
    """Lowest degree first, via the leading-principal-block recurrence of a Hessenberg matrix."""
    d = H.shape[0]
    P = np.zeros((d + 1, d + 1), dtype=np.int64)
    P[0, 0] = 1
    for k in range(d):
        nxt = np.zeros(d + 1, dtype=np.int64)
        nxt[1:] = P[k, :-1]
        nxt = (nxt - H[k, k] * P[k]) % q
        if k:
            weights = np.zeros(k, dtype=np.int64)
            prod = 1
            for i in range(k - 1, -1, -1):
                prod = prod * int(H[i + 1, i]) % q
                weights[i] = int(H[i, k]) * prod % q
            nxt = (nxt - weights @ P[:k]) % q
        P[k + 1] = nxt
    return P[d].tolist()


def charpoly_exact(M: np.ndarray | list[list[int]], max_order: int = DEFAULT_MAX_ORDER) -> list[int]:
    """det(lambda I - M) over the integers.

    Each prime q < 2^23 gives the polynomial mod q through a Hessenberg form
    over F_q; Chinese remaindering combines primes until their product exceeds
    twice ``coefficient_bound``, which pins every coefficient exactly.
    """
    rows = _as_int_matrix(M)
    d = len(rows)
    if d > max_order:
        raise ResourceError(f"characteristic polynomial of order {d} exceeds cap {max_order}")
    if d == 0:
        return [1]
    bound = 2 * coefficient_bound(rows)
    values = [0] * (d + 1)
    modulus = 1
    for q in _primes_descending():
        H = np.array([[v % q for v in row] for row in rows], dtype=np.int64)
        residues = _hessenberg_charpoly_mod(_hessenberg_mod(H, q), q)
        step = pow(modulus % q, -1, q)
        values = [x + modulus * ((r - x) * step % q) for x, r in zip(values, residues)]
        modulus *= q
        if modulus > bound:
            break
    half = modulus // 2
    return [x - modulus if x > half else x for x in reversed(values)]


def poly_mul(f: list[int], g: list[int]) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for r, a in enumerate(f):
        if a:
            for s, b in enumerate(g):
                out[r + s] += a * b
    return out


def linear_power(root: int, exponent: int) -> list[int]:
    """(lambda - root)^exponent."""
    out = [1]
    for _ in range(exponent):
        out = poly_mul(out, [1, -root])
    return out


def divide_linear(f: list[int], root: int) -> tuple[list[int], int]:
    """Synthetic division of f by (lambda - root): (quotient, remainder)."""
    quotient: list[int] = []
    acc = 0
    for coef in f:
        acc = acc * root + coef
        quotient.append(acc)
    remainder = quotient.pop()
    return quotient, remainder


def root_multiplicity(f: list[int], root: int) -> int:
    """Exact multiplicity of an integer root."""
    count = 0
    while len(f) > 1:
        quotient, remainder = divide_linear(f, root)
        if remainder:
            break
        count += 1
        f = quotient
    return count


def evaluate(f: list[int], x: int) -> int:
    acc = 0
    for coef in f:
        acc = acc * x + coef
    return acc
