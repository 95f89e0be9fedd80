from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import structlog

from ..graph.models import StructuredLabel, VertexLabel, ZdGraph
from ..utils.errors import DomainError, UsageError

logger = structlog.get_logger()

INFINITE_GIRTH = math.inf
_BFS_BLOCK = 512
_COLUMN_CHUNK = 512


def degree_histogram(graph: ZdGraph) -> dict[int, int]:
    counts = Counter(int(d) for d in graph.degrees())
    return dict(sorted(counts.items()))


def _expand(frontier: np.ndarray, graph: ZdGraph) -> np.ndarray:
    """Vertices adjacent to some frontier vertex, one row per BFS source."""
    f = frontier.astype(np.float32)
    out = np.empty(frontier.shape, dtype=bool)
    # column block of a symmetric matrix = transposed row block
    for start, rows in graph.row_blocks(_COLUMN_CHUNK):
        out[:, start : start + len(rows)] = (f @ rows.T.astype(np.float32)) > 0
    return out


def repeated_row_nullity(graph: ZdGraph) -> int:
    """Nullity lower bound: each repeated adjacency row adds a null vector e_u - e_v."""
    return graph.num_vertices - len(np.unique(graph.bits, axis=0))


def diameter(graph: ZdGraph) -> int:
    """Largest BFS eccentricity.

    Vertices with identical adjacency rows share an eccentricity, so BFS runs
    from one representative per distinct row, a block of sources at a time.
    """
    size = graph.num_vertices
    if size <= 1:
        return 0
    _, first = np.unique(graph.bits, axis=0, return_index=True)
    sources = np.sort(first)
    best = 0
    for start in range(0, len(sources), _BFS_BLOCK):
        block = sources[start : start + _BFS_BLOCK]
        reached = np.zeros((len(block), size), dtype=bool)
        reached[np.arange(len(block)), block] = True
        frontier = reached.copy()
        level = 0
        while not reached.all():
            frontier = _expand(frontier, graph) & ~reached
            if not frontier.any():
                r, v = np.argwhere(~reached)[0]
                raise DomainError(
                    f"graph is disconnected: {graph.labels[int(block[r])]} "
                    f"cannot reach {graph.labels[int(v)]}"
                )
            reached |= frontier
            level += 1
        best = max(best, level)
    logger.debug("diameter_computed", sources=len(sources), diameter=best)
    return best


def find_triangle(graph: ZdGraph) -> tuple[int, int, int] | None:
    for u in range(graph.num_vertices):
        neighbors = np.flatnonzero(graph.row(u))
        later = neighbors[neighbors > u]
        if len(later) < 2:
            continue
        for start in range(0, len(later), _BFS_BLOCK):
            sub = graph.rows_at(later[start : start + _BFS_BLOCK])[:, later]
            hits = np.argwhere(np.triu(sub, k=start + 1))
            if len(hits):
                v, w = hits[0]
                return (u, int(later[start + v]), int(later[w]))
    return None


def _shortest_cycle_bfs(graph: ZdGraph) -> float:
    best = INFINITE_GIRTH
    for root in range(graph.num_vertices):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in np.flatnonzero(graph.row(u)):
                v = int(v)
                if v not in dist:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif parent[u] != v:
                    best = min(best, dist[u] + dist[v] + 1)
    return best


@dataclass(frozen=True)
class GirthResult:
    girth: float
    triangle: tuple[int, int, int] | None = None


def girth(graph: ZdGraph) -> GirthResult:
    """Shortest cycle length; ``math.inf`` for a forest."""
    triangle = find_triangle(graph)
    if triangle is not None:
        return GirthResult(3, triangle)
    return GirthResult(_shortest_cycle_bfs(graph))


@dataclass(frozen=True)
class EquitableResult:
    is_equitable: bool
    quotient: np.ndarray | None = None
    # (vertex, from cell, into cell, its count, count of the cell's first vertex)
    violation: tuple[int, int, int, int, int] | None = None


def _check_partition(graph: ZdGraph, partition: Sequence[Sequence[int]]) -> list[np.ndarray]:
    cells = [np.asarray(cell, dtype=np.int64) for cell in partition]
    if any(len(cell) == 0 for cell in cells):
        raise UsageError("partition has an empty cell")
    flat = np.concatenate(cells)
    if len(flat) != graph.num_vertices or len(np.unique(flat)) != graph.num_vertices:
        raise UsageError("partition must cover every vertex exactly once")
    if flat.min() < 0 or flat.max() >= graph.num_vertices:
        raise UsageError("partition names a vertex outside the graph")
    return cells


def verify_equitable(graph: ZdGraph, partition: Sequence[Sequence[int]]) -> EquitableResult:
    cells = _check_partition(graph, partition)
    quotient = np.zeros((len(cells), len(cells)), dtype=np.int64)
    for i, cell_i in enumerate(cells):
        rows = graph.rows_at(cell_i)
        for j, cell_j in enumerate(cells):
            counts = rows[:, cell_j].sum(axis=1)
            expected = int(counts[0])
            bad = np.flatnonzero(counts != expected)
            if len(bad):
                vertex = int(cell_i[bad[0]])
                logger.info("partition_not_equitable", vertex=vertex, cell=i, into=j)
                return EquitableResult(False, violation=(vertex, i, j, int(counts[bad[0]]), expected))
            quotient[i, j] = expected
    return EquitableResult(True, quotient=quotient)


def diagonal_type_partition(graph: ZdGraph) -> list[list[int]]:
    """[D, O]: structured vertices of diagonal types, then the rest."""
    if not all(isinstance(label, StructuredLabel) for label in graph.labels):
        raise UsageError("diagonal/off-diagonal partition needs structured labels")
    diag = [r for r, label in enumerate(graph.labels) if label.type_class.is_diagonal]
    off = [r for r, label in enumerate(graph.labels) if not label.type_class.is_diagonal]
    return [diag, off]


@dataclass(frozen=True)
class CliqueCheck:
    is_clique: bool
    missing_edge: tuple[VertexLabel, VertexLabel] | None = None


def verify_clique(graph: ZdGraph, vertices: Sequence[VertexLabel]) -> CliqueCheck:
    indices = [graph.index_of(v) for v in vertices]
    for r, u in enumerate(indices):
        for v in indices[r + 1 :]:
            if u != v and not graph.has_edge(u, v):
                return CliqueCheck(False, (graph.labels[u], graph.labels[v]))
    return CliqueCheck(True)


def universal_vertex(graph: ZdGraph) -> VertexLabel | None:
    full = np.flatnonzero(graph.degrees() == graph.num_vertices - 1)
    return graph.labels[int(full[0])] if len(full) else None


@dataclass(frozen=True)
class DominationResult:
    number: int | None
    size_cap: int
    skipped: bool = False

    @property
    def exceeded_cap(self) -> bool:
        return self.number is None and not self.skipped

    def __str__(self) -> str:
        if self.skipped:
            return "not computed"
        return str(self.number) if self.number is not None else f"> {self.size_cap}"


def _closed_neighborhoods(graph: ZdGraph) -> list[int]:
    masks = []
    for u in range(graph.num_vertices):
        mask = 1 << u
        for v in np.flatnonzero(graph.row(u)):
            mask |= 1 << int(v)
        masks.append(mask)
    return masks


def _greedy_dominating(masks: list[int], full: int) -> int:
    covered, used = 0, 0
    while covered != full:
        best = max(range(len(masks)), key=lambda u: bin(masks[u] & ~covered).count("1"))
        covered |= masks[best]
        used += 1
    return used


def _dominates_within(masks: list[int], full: int, covered: int, budget: int) -> bool:
    if covered == full:
        return True
    if budget == 0:
        return False
    # the lowest undominated vertex must be covered by one of its closed neighbours
    target = (~covered & full & -(~covered & full)).bit_length() - 1
    candidates = masks[target]
    while candidates:
        low = candidates & -candidates
        u = low.bit_length() - 1
        candidates ^= low
        if _dominates_within(masks, full, covered | masks[u], budget - 1):
            return True
    return False


def domination_number(graph: ZdGraph, size_cap: int, max_vertices: int = 40) -> DominationResult:
    """Minimum dominating set size by iterative deepening; a universal vertex settles it at 1."""
    if graph.num_vertices == 0:
        return DominationResult(0, size_cap)
    if universal_vertex(graph) is not None:
        return DominationResult(1, size_cap)
    if graph.num_vertices > max_vertices:
        return DominationResult(None, size_cap, skipped=True)
    masks = _closed_neighborhoods(graph)
    full = (1 << graph.num_vertices) - 1
    greedy = _greedy_dominating(masks, full)
    for k in range(2, min(greedy, size_cap + 1)):
        if _dominates_within(masks, full, 0, k):
            return DominationResult(k, size_cap)
    if greedy <= size_cap:
        return DominationResult(greedy, size_cap)
    return DominationResult(None, size_cap)


def is_automorphism(graph: ZdGraph, perm: Sequence[int]) -> bool:
    idx = np.asarray(perm, dtype=np.int64)
    if sorted(idx.tolist()) != list(range(graph.num_vertices)):
        return False
    return bool(np.array_equal(graph.permuted(idx), graph.adjacency))


@dataclass(frozen=True)
class InvariantReport:
    degree_histogram: dict[int, int]
    edge_count: int
    diameter: int | None
    girth: float
    triangle: tuple[int, int, int] | None
    has_universal_vertex: bool
    domination_number: int | None = None

    def handshake_holds(self) -> bool:
        return sum(d * c for d, c in self.degree_histogram.items()) == 2 * self.edge_count


def compute_invariants(
    graph: ZdGraph, domination_cap: int | None = None, max_vertices: int = 40
) -> InvariantReport:
    girth_result = girth(graph)
    try:
        diam: int | None = diameter(graph)
    except DomainError:
        diam = None
    domination = None
    if domination_cap is not None:
        domination = domination_number(graph, domination_cap, max_vertices).number
    return InvariantReport(
        degree_histogram=degree_histogram(graph),
        edge_count=graph.num_edges,
        diameter=diam,
        girth=girth_result.girth,
        triangle=girth_result.triangle,
        has_universal_vertex=universal_vertex(graph) is not None,
        domination_number=domination,
    )
