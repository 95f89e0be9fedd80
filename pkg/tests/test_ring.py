import itertools

import numpy as np
import pytest

from src.ring.modulus import Modulus, check_modulus, require_odd_prime
from src.ring.quaternion import (
    LipschitzQuaternion,
    closed_form_vertex_count,
    enumerate_vertices,
    hamilton_product_arrays,
    is_unit,
    is_vertex,
    q_mul,
    q_norm,
    to_uv_coordinates,
    vertex_array,
    zero_product_mask,
)
from src.utils.errors import UsageError


def Q(a, b, c, d, n):
    return LipschitzQuaternion(a, b, c, d, n)


def test_modulus_factorization():
    m = Modulus(12)
    assert m.factors == ((2, 2), (3, 1))
    assert not m.is_prime_power
    assert Modulus(8).is_two_power and Modulus(8).two_exponent == 3
    assert Modulus(7).is_odd_prime
    assert not Modulus(2).is_odd_prime


@pytest.mark.parametrize("n", [0, 1, 2**15 + 1])
def test_modulus_out_of_range(n):
    with pytest.raises(UsageError):
        Modulus(n)


def test_check_modulus_ceiling():
    assert check_modulus(8, 8).n == 8
    with pytest.raises(UsageError, match="configured limit"):
        check_modulus(9, 8)


def test_require_odd_prime():
    assert require_odd_prime(5) == 5
    with pytest.raises(UsageError):
        require_odd_prime(9)
    with pytest.raises(UsageError):
        require_odd_prime(2)


def test_canonical_coordinates():
    assert Q(-1, 5, 7, 3, 3).coords == (2, 2, 1, 0)


def test_hamilton_relations():
    n = 7
    i, j, k = Q(0, 1, 0, 0, n), Q(0, 0, 1, 0, n), Q(0, 0, 0, 1, n)
    minus_one = Q(-1, 0, 0, 0, n)
    assert i * i == minus_one and j * j == minus_one and k * k == minus_one
    assert i * j == k
    assert j * i == -k
    assert j * k == i
    assert k * i == j


def test_norm_is_product_with_conjugate():
    n = 5
    for x in [Q(1, 2, 3, 4, n), Q(0, 1, 1, 0, n), Q(3, 0, 0, 2, n)]:
        assert x * x.conj() == Q(q_norm(x), 0, 0, 0, n)


def test_unit_test_uses_norm():
    assert is_unit(Q(1, 1, 0, 0, 3))  # norm 2
    assert not is_unit(Q(1, 1, 1, 0, 3))  # norm 3 = 0
    assert is_vertex(Q(1, 1, 1, 0, 3))
    assert not is_vertex(Q(0, 0, 0, 0, 3))


def test_str_format():
    assert str(Q(1, 1, 1, 1, 2)) == "1+i+j+k"
    assert str(Q(0, 2, 0, 0, 3)) == "2i"
    assert str(Q(0, 0, 0, 0, 3)) == "0"
    assert str(Q(3, 0, 1, 2, 5)) == "3+j+2k"


def test_modulus_mismatch():
    with pytest.raises(UsageError):
        q_mul(Q(1, 0, 0, 0, 3), Q(1, 0, 0, 0, 5))


@pytest.mark.parametrize("n,count", [(2, 7), (3, 32), (4, 127), (5, 144), (6, 911), (7, 384)])
def test_vertex_counts(n, count):
    assert len(vertex_array(n)) == count


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_vertex_array_matches_enumeration(n):
    listed = [v.coords for v in enumerate_vertices(n)]
    assert [tuple(row) for row in vertex_array(n).tolist()] == listed


def test_vertices_are_exactly_zero_divisors():
    n = 4
    elements = [Q(*c, n) for c in itertools.product(range(n), repeat=4)]
    zero = Q(0, 0, 0, 0, n)
    vertices = set(enumerate_vertices(n))
    for x in elements:
        if x.is_zero:
            continue
        annihilated = any(not y.is_zero and (x * y == zero or y * x == zero) for y in elements)
        assert annihilated == (x in vertices)


def test_closed_form_vertex_count():
    assert closed_form_vertex_count(3) == 32
    assert closed_form_vertex_count(7) == 384
    assert closed_form_vertex_count(2) == 7
    assert closed_form_vertex_count(8) == 2047
    assert closed_form_vertex_count(16) == 32767
    assert closed_form_vertex_count(6) is None


def test_array_product_matches_scalar_product():
    n = 6
    verts = vertex_array(n)[:40]
    products = hamilton_product_arrays(verts[:, None, :], verts[None, :, :], n)
    for r in range(0, 40, 7):
        for s in range(0, 40, 5):
            x, y = Q(*verts[r], n), Q(*verts[s], n)
            assert tuple(products[r, s]) == (x * y).coords


def _random_elements(rng, n, count):
    return rng.integers(0, n, size=(count, 4), dtype=np.int64)


def _norms(x, n):
    return (x * x).sum(axis=-1) % n


@pytest.mark.parametrize("n", [2, 3, 4, 6, 8, 12, 97, 32768])
def test_norm_is_multiplicative(n):
    rng = np.random.default_rng(n)
    x, y = _random_elements(rng, n, 10_000), _random_elements(rng, n, 10_000)
    xy = hamilton_product_arrays(x, y, n)
    assert np.array_equal(_norms(xy, n), (_norms(x, n) * _norms(y, n)) % n)


@pytest.mark.parametrize("n", [2, 3, 4, 6, 8, 12, 97, 32768])
def test_product_is_associative(n):
    rng = np.random.default_rng(1000 + n)
    x, y, z = (_random_elements(rng, n, 10_000) for _ in range(3))
    left = hamilton_product_arrays(hamilton_product_arrays(x, y, n), z, n)
    right = hamilton_product_arrays(x, hamilton_product_arrays(y, z, n), n)
    assert np.array_equal(left, right)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_unit_test_agrees_with_inverse_search(n):
    elements = np.array(list(itertools.product(range(n), repeat=4)), dtype=np.int64)
    products = hamilton_product_arrays(elements[:, None, :], elements[None, :, :], n)
    has_inverse = (products == np.array([1, 0, 0, 0])).all(axis=-1).any(axis=1)
    for row, invertible in zip(elements, has_inverse):
        assert is_unit(Q(*map(int, row), n)) == bool(invertible)


def test_zero_product_mask_is_one_sided():
    n = 3
    verts = vertex_array(n)
    mask = zero_product_mask(verts, verts, n)
    # xy = 0 does not force yx = 0 in a noncommutative ring
    assert not np.array_equal(mask, mask.T)
    r, s = np.argwhere(mask & ~mask.T)[0]
    x, y = Q(*verts[r], n), Q(*verts[s], n)
    assert (x * y).is_zero and not (y * x).is_zero


def test_uv_coordinates():
    assert to_uv_coordinates(Q(1, 0, 0, 0, 2)) == (1, 0, 0, 0)
    assert to_uv_coordinates(Q(1, 1, 0, 0, 2)) == (0, 1, 0, 0)
    assert to_uv_coordinates(Q(1, 0, 1, 0, 2)) == (0, 0, 1, 0)
    assert to_uv_coordinates(Q(1, 1, 1, 1, 2)) == (0, 0, 0, 1)
    with pytest.raises(UsageError):
        to_uv_coordinates(Q(1, 0, 0, 0, 3))


def test_uv_products():
    u, v = Q(1, 1, 0, 0, 2), Q(1, 0, 1, 0, 2)
    assert (u * u).is_zero and (v * v).is_zero
    assert u * v == v * u == Q(1, 1, 1, 1, 2)


def test_g2_vertices_have_no_constant_term():
    for coords in itertools.product(range(2), repeat=4):
        x = Q(*coords, 2)
        if x.is_zero:
            continue
        assert is_vertex(x) == (to_uv_coordinates(x)[0] == 0)
