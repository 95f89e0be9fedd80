from __future__ import annotations

import numpy as np

from ..matrix_model.iso import IsoParams, find_iso_params, phi
from ..matrix_model.mat2 import Mat2
from ..matrix_model.projective import class_member, class_scalar, classify, conjugate
from ..ring.modulus import require_odd_prime
from ..ring.quaternion import LipschitzQuaternion
from ..utils.errors import UsageError
from .builders import structured_labels
from .models import StructuredLabel, ZdGraph


def structured_index(label: StructuredLabel) -> int:
    p = label.type_class.p
    return label.type_class.index * (p - 1) + (label.c - 1)


def label_of_quaternion(x: LipschitzQuaternion, params: IsoParams) -> StructuredLabel:
    A = phi(x, params)
    t = classify(A)
    return StructuredLabel(t, class_scalar(A, t))


def vertex_bijection(brute: ZdGraph, params: IsoParams | None = None) -> np.ndarray:
    """perm[r] = structured index of brute vertex r under x -> (classify(phi(x)), c)."""
    if brute.modulus is None:
        raise UsageError("bijection needs a graph built from a modulus")
    p = require_odd_prime(brute.modulus)
    params = params or find_iso_params(p)
    return np.array(
        [structured_index(label_of_quaternion(x, params)) for x in brute.labels],
        dtype=np.int64,
    )


def structured_matches_brute(brute: ZdGraph, structured: ZdGraph) -> tuple[bool, tuple[int, int] | None]:
    """Entrywise comparison of A_brute and A_structured under the phi/classify bijection.

    Returns (ok, first mismatching brute pair).
    """
    perm = vertex_bijection(brute)
    if len(set(perm.tolist())) != len(perm) or len(perm) != structured.num_vertices:
        return False, None
    mapped = structured.permuted(perm)
    diff = np.argwhere(mapped != brute.adjacency)
    if len(diff):
        u, v = diff[0]
        return False, (int(u), int(v))
    return True, None


def conjugation_permutation(p: int, g: Mat2) -> np.ndarray:
    """perm[r] = structured index of g A_r g^-1, where A_r is structured vertex r."""
    p = require_odd_prime(p)
    perm = []
    for label in structured_labels(p):
        image = conjugate(g, class_member(label.type_class, label.c))
        t = classify(image)
        perm.append(structured_index(StructuredLabel(t, class_scalar(image, t))))
    return np.array(perm, dtype=np.int64)
