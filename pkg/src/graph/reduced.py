from __future__ import annotations

import numpy as np

from ..matrix_model.projective import type_classes
from ..ring.modulus import Modulus, require_odd_prime
from .builders import structured_labels
from .models import BuildMethod, ReducedModel, ZdGraph


def type_incidence(p: int) -> np.ndarray:
    """H_p: h[(L,M),(L',M')] = 1 iff M = L' or M' = L."""
    types = type_classes(p)
    kernels = np.array([t.kernel_line.index for t in types])
    images = np.array([t.image_line.index for t in types])
    H = (images[:, None] == kernels[None, :]) | (images[None, :] == kernels[:, None])
    return H.astype(np.int64)


def build_reduced(p: int) -> ReducedModel:
    p = require_odd_prime(p)
    types = type_classes(p)
    H = type_incidence(p)
    D = np.diag([1 if t.is_diagonal else 0 for t in types]).astype(np.int64)
    B = (p - 1) * H - D
    return ReducedModel(p=p, H=H, D=D, B=B)


def expand_reduced(model: ReducedModel) -> ZdGraph:
    """The blow-up H (x) J_{p-1} - D (x) I_{p-1} as a graph on structured labels."""
    size = model.p - 1
    blown = np.kron(model.H, np.ones((size, size), dtype=np.int64)) - np.kron(
        model.D, np.eye(size, dtype=np.int64)
    )
    return ZdGraph.from_adjacency(
        blown.astype(bool),
        labels=structured_labels(model.p),
        modulus=Modulus(model.p),
        method=BuildMethod.STRUCTURED,
        decision_tests=model.order**2,
    )


def block_pattern(p: int) -> list[str]:
    """Class-level block display: K = J - I on diagonal types, J for adjacent classes, O otherwise."""
    model = build_reduced(p)
    rows = []
    for r in range(model.order):
        row = []
        for s in range(model.order):
            if r == s and model.D[r, r]:
                row.append("K")
            elif r != s and model.H[r, s]:
                row.append("J")
            else:
                row.append("O")
        rows.append("".join(row))
    return rows
