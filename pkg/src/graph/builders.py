from __future__ import annotations

from typing import Iterator

import numpy as np
import structlog

from ..matrix_model.projective import type_classes
from ..ring.modulus import Modulus, as_modulus, require_odd_prime
from ..ring.quaternion import LipschitzQuaternion, vertex_array, zero_product_mask
from ..utils.decorators import log_duration
from ..utils.errors import ResourceError, UsageError
from .models import BuildMethod, StructuredLabel, ZdGraph, pack_rows, packed_width, symmetrize_upper

logger = structlog.get_logger()

DEFAULT_MAX_PAIR_TESTS = 2_100_000
# entries of one broadcast product block; bounds peak memory of the brute builder
_CHUNK_ENTRIES = 1 << 21


def brute_pair_tests(num_vertices: int) -> int:
    return num_vertices * (num_vertices - 1) // 2


def check_brute_budget(
    n: int | Modulus, num_vertices: int, max_pair_tests: int, allow_large: bool
) -> None:
    pairs = brute_pair_tests(num_vertices)
    if pairs > max_pair_tests and not allow_large:
        logger.warning("budget_refused", n=int(n), pair_tests=pairs, budget=max_pair_tests)
        raise ResourceError(
            f"brute force on n={int(n)} needs {pairs} pair tests (budget {max_pair_tests}); "
            "pass --allow-large to override"
        )


def stream_brute_blocks(
    n: int | Modulus, vertices: np.ndarray | None = None
) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (row_start, block) covering the strict upper triangle of A_n.

    ``block[r, s]`` is the edge test for vertex pair (row_start + r, row_start + s);
    entries on or below the diagonal are False.
    """
    m = as_modulus(n).n
    verts = vertex_array(m) if vertices is None else vertices
    total = len(verts)
    start = 0
    while start < total:
        rows = max(1, _CHUNK_ENTRIES // max(1, total - start))
        stop = min(total, start + rows)
        head, tail = verts[start:stop], verts[start:]
        block = zero_product_mask(head, tail, m)
        block |= zero_product_mask(tail, head, m).T
        block &= np.triu(np.ones(block.shape, dtype=bool), k=1)
        yield start, block
        start = stop


def stream_brute_edges(
    n: int | Modulus, vertices: np.ndarray | None = None
) -> Iterator[tuple[int, int]]:
    """Edges (u, v), u < v, of G_n in ascending order without holding the full matrix."""
    for start, block in stream_brute_blocks(n, vertices):
        for r, s in np.argwhere(block):
            yield start + int(r), start + int(s)


@log_duration("build_brute_timing")
def build_brute(
    n: int | Modulus,
    allow_large: bool = False,
    max_pair_tests: int = DEFAULT_MAX_PAIR_TESTS,
) -> ZdGraph:
    """G_n by testing xy = 0 or yx = 0 on every vertex pair."""
    modulus = as_modulus(n)
    verts = vertex_array(modulus)
    check_brute_budget(modulus, len(verts), max_pair_tests, allow_large)

    size = len(verts)
    bits = np.zeros((size, packed_width(size)), dtype=np.uint8)
    for start, block in stream_brute_blocks(modulus, verts):
        rows = np.zeros((block.shape[0], size), dtype=bool)
        rows[:, start:] = block
        bits[start : start + block.shape[0]] = pack_rows(rows)
    symmetrize_upper(bits, size)

    labels = [LipschitzQuaternion(*map(int, row), modulus.n) for row in verts]
    graph = ZdGraph(
        modulus=modulus,
        labels=labels,
        bits=bits,
        method=BuildMethod.BRUTE,
        decision_tests=brute_pair_tests(len(verts)),
    )
    logger.info("graph_built", n=modulus.n, method="brute", vertices=graph.num_vertices, edges=graph.num_edges)
    return graph


def structured_labels(p: int) -> list[StructuredLabel]:
    return [StructuredLabel(t, c) for t in type_classes(p) for c in range(1, p)]


@log_duration("build_structured_timing")
def build_structured(p: int) -> ZdGraph:
    """A_p from projective-line incidence on types, one block decision per type pair."""
    p = require_odd_prime(p)
    types = type_classes(p)
    size = p - 1
    order = len(types) * size
    bits = np.zeros((order, packed_width(order)), dtype=np.uint8)
    clique_block = ~np.eye(size, dtype=bool)

    tests = 0
    for alpha_idx, alpha in enumerate(types):
        # one class row block at a time, packed as soon as it is filled
        block = np.zeros((size, order), dtype=bool)
        for beta_idx, beta in enumerate(types):
            tests += 1
            cols = slice(beta_idx * size, (beta_idx + 1) * size)
            if alpha_idx == beta_idx:
                if alpha.is_diagonal:
                    block[:, cols] = clique_block
            elif alpha.image_line == beta.kernel_line or beta.image_line == alpha.kernel_line:
                block[:, cols] = True
        bits[alpha_idx * size : (alpha_idx + 1) * size] = pack_rows(block)

    graph = ZdGraph(
        modulus=Modulus(p),
        labels=structured_labels(p),
        bits=bits,
        method=BuildMethod.STRUCTURED,
        decision_tests=tests,
    )
    logger.info("graph_built", n=p, method="structured", vertices=graph.num_vertices, edges=graph.num_edges)
    return graph


G2_LABELS = (
    LipschitzQuaternion(1, 1, 1, 1, 2),  # uv
    LipschitzQuaternion(1, 1, 0, 0, 2),  # u
    LipschitzQuaternion(0, 0, 1, 1, 2),  # u + uv
    LipschitzQuaternion(1, 0, 1, 0, 2),  # v
    LipschitzQuaternion(0, 1, 0, 1, 2),  # v + uv
    LipschitzQuaternion(0, 1, 1, 0, 2),  # u + v
    LipschitzQuaternion(1, 0, 0, 1, 2),  # u + v + uv
)

G2_ADJACENCY = (
    (0, 1, 1, 1, 1, 1, 1),
    (1, 0, 1, 0, 0, 0, 0),
    (1, 1, 0, 0, 0, 0, 0),
    (1, 0, 0, 0, 1, 0, 0),
    (1, 0, 0, 1, 0, 0, 0),
    (1, 0, 0, 0, 0, 0, 1),
    (1, 0, 0, 0, 0, 1, 0),
)


def build_g2() -> ZdGraph:
    """The friendship graph F_3 = G_2 with the vertex order uv, u, u+uv, v, v+uv, u+v, u+v+uv."""
    return ZdGraph.from_adjacency(
        np.array(G2_ADJACENCY, dtype=bool),
        labels=G2_LABELS,
        modulus=Modulus(2),
        method=BuildMethod.EXACT_G2,
    )


def build_graph(
    n: int | Modulus,
    method: str = "auto",
    allow_large: bool = False,
    max_pair_tests: int = DEFAULT_MAX_PAIR_TESTS,
) -> ZdGraph:
    """Dispatch on method: auto picks structured for odd primes, brute otherwise."""
    modulus = as_modulus(n)
    if method == "auto":
        method = BuildMethod.STRUCTURED.value if modulus.is_odd_prime else BuildMethod.BRUTE.value
    if method == BuildMethod.STRUCTURED.value:
        return build_structured(modulus.n)
    if method == BuildMethod.EXACT_G2.value:
        if modulus.n != 2:
            raise UsageError(f"exact_g2 builds n = 2 only, got n = {modulus.n}")
        return build_g2()
    if method != BuildMethod.BRUTE.value:
        raise UsageError(f"unknown build method {method!r}")
    return build_brute(modulus, allow_large=allow_large, max_pair_tests=max_pair_tests)
