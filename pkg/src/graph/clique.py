from __future__ import annotations

import itertools

import numpy as np

from ..ring.quaternion import LipschitzQuaternion, zero_product_mask
from ..utils.errors import UsageError
from .models import CliqueWitness


def two_adic_clique(t: int) -> CliqueWitness:
    """Nonzero multiples of 2^s in L_{2^t}; any two multiply to 2^{2s} * (...) = 0."""
    if t < 2:
        raise UsageError(f"two-adic clique needs t >= 2, got t = {t}")
    s = -(-t // 2)
    n = 2**t
    step = 2**s
    values = range(0, n, step)
    vertices = [
        LipschitzQuaternion(a, b, c, d, n)
        for a, b, c, d in itertools.product(values, repeat=4)
        if a or b or c or d
    ]
    return CliqueWitness(t=t, s=s, vertices=vertices)


def expected_clique_size(t: int) -> int:
    return 2 ** (4 * (t // 2)) - 1


def pairwise_annihilating(witness: CliqueWitness) -> bool:
    """True iff xy = yx = 0 for every pair of witness vertices."""
    coords = np.array([v.coords for v in witness.vertices], dtype=np.int64)
    mask = zero_product_mask(coords, coords, witness.n)
    return bool(mask.all())
