import itertools

import numpy as np
import pytest

from src.matrix_model.iso import IsoParams, find_iso_params, phi
from src.matrix_model.mat2 import Mat2
from src.matrix_model.projective import (
    ProjLine,
    TypeClass,
    act_on_line,
    class_member,
    class_scalar,
    classify,
    conjugate,
    image_line,
    kernel_line,
    product_is_zero_by_type,
    proj_lines,
    type_classes,
)
from src.ring.quaternion import LipschitzQuaternion, is_vertex
from src.utils.errors import DomainError, UsageError


def all_matrices(p):
    return [Mat2(*e, p) for e in itertools.product(range(p), repeat=4)]


def rank_one(p):
    return [A for A in all_matrices(p) if A.rank == 1]


@pytest.mark.parametrize("p,expected", [(3, (1, 1)), (5, (0, 2)), (7, (2, 3))])
def test_find_iso_params(p, expected):
    params = find_iso_params(p)
    assert (params.a, params.b) == expected


def test_iso_params_validated():
    with pytest.raises(UsageError):
        IsoParams(1, 0, 3)


@pytest.mark.parametrize("p", [3, 5])
def test_phi_images_satisfy_quaternion_relations(p):
    one, i, j, k = find_iso_params(p).images
    minus_one = one.scale(-1)
    assert i * i == minus_one and j * j == minus_one and k * k == minus_one
    assert i * j == k
    assert j * i == k.scale(-1)


def test_phi_is_ring_isomorphism_p3():
    p = 3
    params = find_iso_params(p)
    elements = [LipschitzQuaternion(*c, p) for c in itertools.product(range(p), repeat=4)]
    images = {x: phi(x, params) for x in elements}
    assert len(set(images.values())) == p**4
    for x in elements[::4]:
        for y in elements:
            assert images[x * y] == images[x] * images[y]
            assert images[x + y] == images[x] + images[y]


@pytest.mark.parametrize("p", [3, 5])
def test_phi_sends_vertices_to_rank_one(p):
    params = find_iso_params(p)
    for coords in itertools.product(range(p), repeat=4):
        x = LipschitzQuaternion(*coords, p)
        assert is_vertex(x) == (phi(x, params).rank == 1)


def test_phi_modulus_mismatch():
    with pytest.raises(UsageError):
        phi(LipschitzQuaternion(1, 0, 0, 0, 5), find_iso_params(3))


def test_proj_lines_order():
    lines = proj_lines(3)
    assert [line.vector for line in lines] == [(1, 0), (1, 1), (1, 2), (0, 1)]
    assert [line.index for line in lines] == [0, 1, 2, 3]
    assert ProjLine.from_vector(2, 1, 3) == ProjLine.from_index(2, 3)
    assert str(lines[3]) == "(0,1)"


def test_zero_vector_has_no_line():
    with pytest.raises(DomainError):
        ProjLine.from_vector(0, 0, 5)


def test_type_classes_cover_rank_one_matrices():
    for p in (3, 5):
        members = [class_member(t, c) for t in type_classes(p) for c in range(1, p)]
        assert len(members) == (p + 1) ** 2 * (p - 1)
        assert set(members) == set(rank_one(p))


@pytest.mark.parametrize("p", [3, 5])
def test_classify_inverts_class_member(p):
    for t in type_classes(p):
        for c in range(1, p):
            A = class_member(t, c)
            assert classify(A) == t
            assert class_scalar(A) == c
            assert A.apply(t.kernel_line.vector) == (0, 0)


def test_class_member_example():
    t = TypeClass(ProjLine.from_vector(0, 1, 3), ProjLine.from_vector(1, 0, 3))
    assert class_member(t, 1) == Mat2(1, 0, 0, 0, 3)
    assert class_member(t, 2) == Mat2(2, 0, 0, 0, 3)
    assert str(t) == "(0,1)->(1,0)"


def test_class_member_scalar_range():
    t = type_classes(3)[0]
    with pytest.raises(UsageError):
        class_member(t, 0)
    with pytest.raises(UsageError):
        class_member(t, 3)


def test_classify_rejects_zero_and_invertible():
    with pytest.raises(DomainError):
        classify(Mat2.zero(5))
    with pytest.raises(DomainError):
        classify(Mat2.identity(5))


def test_kernel_and_image_of_rank_one():
    A = Mat2(1, 2, 2, 4, 5)
    assert kernel_line(A) == ProjLine.from_vector(-2, 1, 5)
    assert image_line(A) == ProjLine.from_vector(1, 2, 5)


@pytest.mark.parametrize("p", [3, 5])
def test_type_rule_decides_products(p):
    matrices = rank_one(p)
    for A in matrices[:: max(1, len(matrices) // 40)]:
        for B in matrices:
            assert product_is_zero_by_type(A, B) == (A * B).is_zero


def test_mat2_inverse():
    g = Mat2(2, 1, 1, 1, 5)
    assert g * g.inverse() == Mat2.identity(5)
    with pytest.raises(UsageError):
        Mat2(1, 2, 2, 4, 5).inverse()


@pytest.mark.parametrize("entries", [(1, 1, 0, 1), (0, 1, 1, 0), (2, 1, 1, 1)])
def test_conjugation_moves_types(entries):
    p = 3
    g = Mat2(*entries, p)
    for t in type_classes(p):
        A = class_member(t, 1)
        image = classify(conjugate(g, A))
        assert image == TypeClass(act_on_line(g, t.kernel_line), act_on_line(g, t.image_line))


def test_act_on_line_needs_invertible():
    with pytest.raises(UsageError):
        act_on_line(Mat2(1, 0, 0, 0, 3), proj_lines(3)[0])


def test_phi_is_injective_and_maps_vertices_p7():
    params = find_iso_params(7)
    images = {}
    for coords in itertools.product(range(7), repeat=4):
        x = LipschitzQuaternion(*coords, 7)
        A = phi(x, params)
        assert A not in images
        images[A] = x
        assert is_vertex(x) == (A.rank == 1)
    assert len(images) == 7**4


def test_phi_is_multiplicative_p7():
    params = find_iso_params(7)
    rng = np.random.default_rng(7)
    for row in rng.integers(0, 7, size=(2_000, 8)):
        x = LipschitzQuaternion(*map(int, row[:4]), 7)
        y = LipschitzQuaternion(*map(int, row[4:]), 7)
        assert phi(x * y, params) == phi(x, params) * phi(y, params)
