"""Graph interchange formats: edge list, Matrix Market and GraphML."""

from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Iterable

import networkx as nx
import numpy as np
import structlog

from ..graph.builders import DEFAULT_MAX_PAIR_TESTS, check_brute_budget, stream_brute_edges
from ..graph.models import ZdGraph
from ..ring.modulus import as_modulus
from ..ring.quaternion import vertex_array
from ..utils.errors import ExportError, UsageError

logger = structlog.get_logger()

MM_HEADER = "%%MatrixMarket matrix coordinate pattern symmetric"


class ExportFormat(str, Enum):
    EDGELIST = "edgelist"
    MATRIXMARKET = "matrixmarket"
    GRAPHML = "graphml"


def _open_for_write(path: str | Path):
    try:
        target = Path(path)
        return open(target, "w", encoding="utf-8", newline="\n")
    except OSError as exc:
        raise ExportError(f"cannot write {path}: {exc}") from exc


def _read_text(path: str | Path) -> list[str]:
    try:
        return Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ExportError(f"cannot read {path}: {exc}") from exc


def write_edges(edges: Iterable[tuple[int, int]], path: str | Path) -> int:
    """Write "u v" lines as given; returns the number of lines."""
    count = 0
    with _open_for_write(path) as f:
        for u, v in edges:
            f.write(f"{u} {v}\n")
            count += 1
    return count


def write_edgelist(graph: ZdGraph, path: str | Path) -> int:
    edges = graph.edge_array()
    with _open_for_write(path) as f:
        if len(edges):
            np.savetxt(f, edges, fmt="%d")
    logger.info("graph_exported", format="edgelist", path=str(path), edges=len(edges))
    return len(edges)


def stream_edgelist(
    n: int,
    path: str | Path,
    allow_large: bool = False,
    max_pair_tests: int = DEFAULT_MAX_PAIR_TESTS,
) -> int:
    """Edge list of the brute-force G_n written block by block, never holding A_n."""
    modulus = as_modulus(n)
    verts = vertex_array(modulus)
    check_brute_budget(modulus, len(verts), max_pair_tests, allow_large)
    count = write_edges(stream_brute_edges(modulus, verts), path)
    logger.info("graph_exported", format="edgelist", path=str(path), edges=count, streamed=True)
    return count


def write_matrix_market(graph: ZdGraph, path: str | Path) -> None:
    edges = graph.edge_array()
    # lower triangle, 1-based: (v + 1, u + 1) for u < v, ascending by row then column
    lower = edges[:, ::-1] + 1
    lower = lower[np.lexsort((lower[:, 1], lower[:, 0]))]
    with _open_for_write(path) as f:
        f.write(f"{MM_HEADER}\n")
        f.write(f"{graph.num_vertices} {graph.num_vertices} {len(lower)}\n")
        if len(lower):
            np.savetxt(f, lower, fmt="%d")
    logger.info("graph_exported", format="matrixmarket", path=str(path), edges=len(lower))


def to_networkx(graph: ZdGraph) -> nx.Graph:
    G = nx.Graph()
    for r, label in enumerate(graph.label_strings()):
        G.add_node(r, label=label)
    G.add_edges_from(graph.edges())
    return G


def write_graphml(graph: ZdGraph, path: str | Path) -> None:
    try:
        nx.write_graphml(to_networkx(graph), str(path))
    except OSError as exc:
        raise ExportError(f"cannot write {path}: {exc}") from exc
    logger.info("graph_exported", format="graphml", path=str(path), edges=graph.num_edges)


def _as_format(fmt: str | ExportFormat) -> ExportFormat:
    try:
        return ExportFormat(fmt)
    except ValueError:
        raise UsageError(f"unknown export format {fmt!r}") from None


def export_graph(graph: ZdGraph, fmt: str | ExportFormat, path: str | Path) -> None:
    fmt = _as_format(fmt)
    if fmt is ExportFormat.EDGELIST:
        write_edgelist(graph, path)
    elif fmt is ExportFormat.MATRIXMARKET:
        write_matrix_market(graph, path)
    else:
        write_graphml(graph, path)


def _adjacency_from_pairs(pairs: np.ndarray, num_vertices: int) -> np.ndarray:
    adj = np.zeros((num_vertices, num_vertices), dtype=bool)
    if len(pairs):
        if pairs.min() < 0 or pairs.max() >= num_vertices:
            raise UsageError("edge endpoint outside the declared vertex range")
        adj[pairs[:, 0], pairs[:, 1]] = True
        adj[pairs[:, 1], pairs[:, 0]] = True
    return adj


def _parse_pairs(lines: list[str], path: str | Path) -> np.ndarray:
    rows = []
    for number, line in enumerate(lines, start=1):
        parts = line.split()
        if len(parts) != 2:
            raise UsageError(f"{path}:{number}: expected two vertex indices, got {line!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise UsageError(f"{path}:{number}: non-integer vertex index in {line!r}") from None
    return np.array(rows, dtype=np.int64).reshape(-1, 2)


def read_edgelist(path: str | Path, num_vertices: int | None = None) -> ZdGraph:
    """Edge lists carry no vertex count; without one it is the largest index plus one."""
    pairs = _parse_pairs([line for line in _read_text(path) if line.strip()], path)
    if num_vertices is None:
        num_vertices = int(pairs.max()) + 1 if len(pairs) else 0
    return ZdGraph.from_adjacency(_adjacency_from_pairs(pairs, num_vertices))


def read_matrix_market(path: str | Path) -> ZdGraph:
    lines = _read_text(path)
    if not lines or lines[0].strip() != MM_HEADER:
        raise UsageError(f"{path}: not a symmetric pattern Matrix Market file")
    body = [line for line in lines[1:] if line.strip() and not line.startswith("%")]
    if not body:
        raise UsageError(f"{path}: missing dimension line")
    try:
        rows, cols, nnz = (int(v) for v in body[0].split())
    except ValueError:
        raise UsageError(f"{path}: bad dimension line {body[0]!r}") from None
    if rows != cols:
        raise UsageError(f"{path}: matrix is {rows}x{cols}, not square")
    pairs = _parse_pairs(body[1:], path) - 1
    if len(pairs) != nnz:
        raise UsageError(f"{path}: header declares {nnz} entries, found {len(pairs)}")
    return ZdGraph.from_adjacency(_adjacency_from_pairs(pairs, rows))


def read_graphml(path: str | Path) -> ZdGraph:
    try:
        G = nx.read_graphml(str(path), node_type=int)
    except OSError as exc:
        raise ExportError(f"cannot read {path}: {exc}") from exc
    order = sorted(G.nodes)
    if order != list(range(len(order))):
        raise UsageError(f"{path}: nodes must be numbered 0..|V|-1")
    adj = nx.to_numpy_array(G, nodelist=order, dtype=bool)
    labels = [G.nodes[r].get("label", str(r)) for r in order]
    return ZdGraph.from_adjacency(adj, labels)


def import_graph(path: str | Path, fmt: str | ExportFormat) -> ZdGraph:
    fmt = _as_format(fmt)
    if fmt is ExportFormat.EDGELIST:
        return read_edgelist(path)
    if fmt is ExportFormat.MATRIXMARKET:
        return read_matrix_market(path)
    return read_graphml(path)
