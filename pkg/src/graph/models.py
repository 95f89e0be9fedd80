from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Sequence, Union

import numpy as np

from ..matrix_model.projective import TypeClass
from ..ring.modulus import Modulus
from ..ring.quaternion import LipschitzQuaternion, closed_form_vertex_count
from ..utils.errors import UsageError, VerificationError


class BuildMethod(str, Enum):
    BRUTE = "brute"
    STRUCTURED = "structured"
    EXACT_G2 = "exact_g2"
    # imported files and hand-made test graphs
    SYNTHETIC = "synthetic"


@dataclass(frozen=True, order=True)
class StructuredLabel:
    """Vertex (L, M, c) of the structured graph: the c-th member of class C_{L,M}."""

    type_class: TypeClass
    c: int

    def __str__(self) -> str:
        t = self.type_class
        return f"({t.kernel_line},{t.image_line},{self.c})"


VertexLabel = Union[LipschitzQuaternion, StructuredLabel, str, int]

# rows unpacked at a time by the chunked readers; a multiple of 8
ROW_CHUNK = 1024


def packed_width(num_vertices: int) -> int:
    return (num_vertices + 7) // 8


def pack_rows(rows: np.ndarray) -> np.ndarray:
    """Boolean rows to bytes, one bit per column, most significant bit first."""
    return np.packbits(np.asarray(rows, dtype=bool), axis=1)


def symmetrize_upper(bits: np.ndarray, num_vertices: int) -> None:
    """Turn a packed strict upper triangle U into U | U^T in place.

    Row blocks go top to bottom. Rows above the current block are already
    final, and their entries right of the diagonal are those of U.
    """
    for start in range(0, num_vertices, ROW_CHUNK):
        stop = min(num_vertices, start + ROW_CHUNK)
        rows = np.unpackbits(bits[start:stop], axis=1, count=num_vertices).astype(bool)
        cols = np.unpackbits(bits[:, start // 8 : (stop + 7) // 8], axis=1)[:, : stop - start]
        rows |= cols.astype(bool).T
        bits[start:stop] = pack_rows(rows)


@dataclass(eq=False)
class ZdGraph:
    """Simple graph on a dense symmetric bit matrix with zero diagonal.

    ``bits`` holds one packed row per vertex (``np.packbits`` layout), so the
    matrix costs one bit per ordered pair. ``adjacency`` unpacks all of it and
    is meant for small graphs; the chunked readers serve the rest.
    """

    modulus: Modulus | None
    labels: list[VertexLabel]
    bits: np.ndarray
    method: BuildMethod
    decision_tests: int = 0
    _index: dict[VertexLabel, int] = field(default_factory=dict, init=False, repr=False)
    _degrees: np.ndarray = field(default=None, init=False, repr=False)

    def __post_init__(self) -> None:
        bits = np.asarray(self.bits, dtype=np.uint8)
        size = len(self.labels)
        if bits.ndim != 2 or bits.shape != (size, packed_width(size)):
            raise UsageError(
                f"{size} labels need packed rows of shape {(size, packed_width(size))}, got {bits.shape}"
            )
        self.bits = bits
        degrees = np.zeros(size, dtype=np.int64)
        for start, rows in self.row_blocks():
            cols = np.unpackbits(bits[:, start // 8 : (start + len(rows) + 7) // 8], axis=1)
            mismatch = np.argwhere(rows != cols[:, : len(rows)].astype(bool).T)
            if len(mismatch):
                u, v = int(mismatch[0][0]) + start, int(mismatch[0][1])
                raise VerificationError(
                    f"adjacency matrix is not symmetric at ({u}, {v})", counterexample=(u, v)
                )
            loops = np.flatnonzero(rows[np.arange(len(rows)), start + np.arange(len(rows))])
            if len(loops):
                u = int(loops[0]) + start
                raise VerificationError(f"adjacency matrix has a loop at {u}", counterexample=(u, u))
            degrees[start : start + len(rows)] = rows.sum(axis=1)
        # padding bits past the last column stay clear
        padded = np.flatnonzero(bits[:, -1] & ((1 << (8 - size % 8)) - 1)) if size % 8 else []
        if len(padded):
            row = int(padded[0])
            raise VerificationError(
                f"adjacency row {row} carries bits past the last vertex", counterexample=row
            )
        expected = (
            closed_form_vertex_count(self.modulus)
            if self.modulus is not None and self.method is not BuildMethod.SYNTHETIC
            else None
        )
        if expected is not None and expected != size:
            raise VerificationError(f"G_{self.modulus.n} should have {expected} vertices, built {size}")
        bits.flags.writeable = False
        degrees.flags.writeable = False
        self._degrees = degrees
        self._index = {label: r for r, label in enumerate(self.labels)}

    @classmethod
    def from_adjacency(
        cls,
        adjacency: np.ndarray,
        labels: Sequence[VertexLabel] | None = None,
        modulus: Modulus | None = None,
        method: BuildMethod = BuildMethod.SYNTHETIC,
        decision_tests: int = 0,
    ) -> ZdGraph:
        adj = np.asarray(adjacency, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise UsageError(f"adjacency must be square, got shape {adj.shape}")
        return cls(
            modulus=modulus,
            labels=list(labels) if labels is not None else list(range(adj.shape[0])),
            bits=pack_rows(adj),
            method=method,
            decision_tests=decision_tests,
        )

    @property
    def num_vertices(self) -> int:
        return len(self.labels)

    @property
    def num_edges(self) -> int:
        return int(self._degrees.sum()) // 2

    @property
    def adjacency(self) -> np.ndarray:
        """The full boolean matrix, read-only."""
        adj = self.rows(0, self.num_vertices)
        adj.flags.writeable = False
        return adj

    def rows(self, start: int, stop: int) -> np.ndarray:
        return np.unpackbits(self.bits[start:stop], axis=1, count=self.num_vertices).astype(bool)

    def rows_at(self, indices: Sequence[int]) -> np.ndarray:
        idx = np.asarray(indices, dtype=np.int64)
        return np.unpackbits(self.bits[idx], axis=1, count=self.num_vertices).astype(bool)

    def row(self, u: int) -> np.ndarray:
        return self.rows(u, u + 1)[0]

    def row_blocks(self, chunk_rows: int = ROW_CHUNK) -> Iterator[tuple[int, np.ndarray]]:
        """(start, unpacked rows start..start+chunk_rows) over the whole matrix."""
        for start in range(0, self.num_vertices, chunk_rows):
            yield start, self.rows(start, start + chunk_rows)

    def degrees(self) -> np.ndarray:
        return self._degrees

    def index_of(self, label: VertexLabel) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UsageError(f"unknown vertex {label}") from None

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.bits[u, v >> 3] >> (7 - (v & 7))) & 1)

    def edge_array(self) -> np.ndarray:
        """(|E|, 2) array of pairs u < v in ascending lexicographic order."""
        parts = [np.empty((0, 2), dtype=np.int64)]
        for start, rows in self.row_blocks():
            upper = np.triu(rows, k=start + 1)
            hits = np.argwhere(upper)
            hits[:, 0] += start
            parts.append(hits)
        return np.concatenate(parts)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, v in self.edge_array():
            yield int(u), int(v)

    def label_strings(self) -> list[str]:
        return [str(label) for label in self.labels]

    def as_float(self) -> np.ndarray:
        return self.rows(0, self.num_vertices).astype(np.float64)

    def permuted(self, order: Sequence[int]) -> np.ndarray:
        """Adjacency with vertex r of the result being vertex order[r] of this graph."""
        idx = np.asarray(order, dtype=np.int64)
        return self.rows_at(idx)[:, idx]


@dataclass(frozen=True, eq=False)
class ReducedModel:
    """H_p, D_p and B_p = (p-1)H_p - D_p on the (p+1)^2 types."""

    p: int
    H: np.ndarray
    D: np.ndarray
    B: np.ndarray

    @property
    def order(self) -> int:
        return int(self.H.shape[0])

    def validate(self) -> None:
        p = self.p
        if not np.array_equal(self.H, self.H.T):
            raise VerificationError("H is not symmetric")
        row_sums = self.H.sum(axis=1)
        if not np.all(row_sums == 2 * p + 1):
            bad = int(np.flatnonzero(row_sums != 2 * p + 1)[0])
            raise VerificationError(
                f"H row {bad} sums to {row_sums[bad]}, expected {2 * p + 1}", counterexample=bad
            )
        if int(np.trace(self.D)) != p + 1 or np.count_nonzero(self.D) != p + 1:
            raise VerificationError("D must have exactly p+1 diagonal ones")
        if not np.array_equal(self.B, (p - 1) * self.H - self.D):
            raise VerificationError("B differs from (p-1)H - D")
        if int(np.trace(self.B)) != (p + 1) * (p - 2):
            raise VerificationError(f"trace(B) = {int(np.trace(self.B))}, expected {(p + 1) * (p - 2)}")


@dataclass(frozen=True)
class CliqueWitness:
    """The nonzero elements of 2^s L_{2^t}, s = ceil(t/2): a clique of G_{2^t}."""

    t: int
    s: int
    vertices: list[LipschitzQuaternion]

    @property
    def c_t(self) -> int:
        return len(self.vertices)

    @property
    def n(self) -> int:
        return 2**self.t
