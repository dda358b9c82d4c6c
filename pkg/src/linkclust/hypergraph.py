"""Storage and elementary queries for r-uniform hypergraphs.

Vertices are dense 0-based indices; edges are strictly sorted r-tuples of
distinct vertices.  Two derived representations back the distance queries:

* ``r == 2``: packed adjacency bit-rows, so the link distance of a pair is a
  popcount over XORed rows and edge membership is an O(1) bit test.
* ``r >= 3``: per-vertex links materialized as sorted integer-encoded
  (r-1)-tuples, so the link distance is a sorted-merge count.

Instances are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidInput, InvalidVertex

__all__ = [
    "Hypergraph",
    "Partition",
    "degree",
    "min_degree",
    "max_degree",
    "average_degree",
    "link",
    "hamming_distance",
    "induced",
]


def _encode_rows(rows: np.ndarray, base: int) -> np.ndarray:
    """Positional base-`base` encoding of sorted index rows into int64 keys."""
    k = rows.shape[1]
    if base > 1 and k * np.log2(base) >= 62:
        raise InvalidInput(
            f"vertex count {base} too large to encode {k}-tuples in 64 bits"
        )
    pows = (base ** np.arange(k - 1, -1, -1)).astype(np.int64)
    return rows.astype(np.int64) @ pows


def _decode_codes(codes: np.ndarray, base: int, k: int) -> np.ndarray:
    pows = (base ** np.arange(k - 1, -1, -1)).astype(np.int64)
    return (codes[:, None] // pows[None, :]) % base


class Hypergraph:
    """An immutable r-uniform hypergraph on vertices ``0..n-1``.

    Parameters
    ----------
    r:
        Uniformity, at least 2.
    n:
        Number of vertices.
    edges:
        Iterable of r-element vertex collections, or an ``(m, r)`` integer
        array.  Edges are canonicalized to sorted tuples; an edge with a
        repeated vertex, an out-of-range index, or a duplicate of another
        edge is rejected.
    """

    __slots__ = (
        "r",
        "n",
        "_edges",
        "_deg",
        "_rows",
        "_edge_codes",
        "_link_codes",
        "_link_off",
        "_hash",
    )

    def __init__(self, r: int, n: int, edges: Iterable[Iterable[int]] | np.ndarray):
        if not isinstance(r, (int, np.integer)) or r < 2:
            raise InvalidInput(f"uniformity must be an integer >= 2, got {r!r}")
        if not isinstance(n, (int, np.integer)) or n < 0:
            raise InvalidInput(f"vertex count must be a nonnegative integer, got {n!r}")
        self.r = int(r)
        self.n = int(n)

        if isinstance(edges, np.ndarray):
            arr = np.array(edges)
            if arr.dtype.kind != "i":
                arr = arr.astype(np.int64)
            if arr.size == 0:
                arr = arr.reshape(0, self.r).astype(np.int64)
            if arr.ndim != 2 or arr.shape[1] != self.r:
                raise InvalidInput(
                    f"edge array must have shape (m, {self.r}), got {arr.shape}"
                )
        else:
            rows = [tuple(e) for e in edges]
            if any(len(e) != self.r for e in rows):
                bad = next(e for e in rows if len(e) != self.r)
                raise InvalidInput(f"edge {bad!r} does not have {self.r} vertices")
            arr = (
                np.array(rows, dtype=np.int64)
                if rows
                else np.zeros((0, self.r), dtype=np.int64)
            )

        m = arr.shape[0]
        if m:
            lo, hi = int(arr.min()), int(arr.max())
            if lo < 0 or hi >= self.n:
                raise InvalidInput(
                    f"edge vertex {lo if lo < 0 else hi} outside [0, {self.n})"
                )
        base = max(self.n, 2)
        # Graphs ride a 32-bit flat-code pipeline: sorted pair codes double as
        # flat adjacency indices, keeping the hot passes sequential.
        small = self.r == 2 and self.n <= 46340
        if self.r == 2 and m:
            u = np.minimum(arr[:, 0], arr[:, 1])
            v = np.maximum(arr[:, 0], arr[:, 1])
            if np.any(u == v):
                w = int(u[u == v][0])
                raise InvalidInput(f"edge ({w}, {w}) has a repeated vertex")
            dtype = np.int32 if small else np.int64
            codes = np.sort(
                (u.astype(dtype) * dtype(base) + v.astype(dtype)), kind="stable"
            )
            if np.any(codes[1:] == codes[:-1]):
                at = int(codes[np.nonzero(codes[1:] == codes[:-1])[0][0]])
                raise InvalidInput(
                    f"duplicate edge ({at // base}, {at % base}); "
                    "multi-edges are rejected"
                )
            cu = codes // base
            arr = np.column_stack([cu, codes - cu * dtype(base)])
        elif m:
            arr.sort(axis=1)
            strict = np.all(arr[:, 1:] > arr[:, :-1], axis=1)
            if not strict.all():
                bad = arr[~strict][0]
                raise InvalidInput(f"edge {tuple(bad)} has a repeated vertex")
            codes = np.sort(_encode_rows(arr, base))
            if np.any(codes[1:] == codes[:-1]):
                at = int(np.nonzero(codes[1:] == codes[:-1])[0][0])
                dup = _decode_codes(codes[at : at + 1], base, self.r)[0]
                raise InvalidInput(f"duplicate edge {tuple(dup)}; multi-edges are rejected")
            # canonical lexicographic order, recovered arithmetically from the
            # sorted codes (cheaper than permuting the row array)
            arr = _decode_codes(codes, base, self.r)
        else:
            codes = np.zeros(0, dtype=np.int64)

        self._edges = arr
        self._edges.setflags(write=False)
        self._edge_codes = codes
        self._deg = (
            (
                np.bincount(arr[:, 0], minlength=self.n)
                + np.bincount(arr[:, 1], minlength=self.n)
            ).astype(np.int64)
            if m and self.r == 2
            else np.bincount(arr.ravel(), minlength=self.n).astype(np.int64)
            if m
            else np.zeros(self.n, dtype=np.int64)
        )
        self._hash = None

        if self.r == 2:
            self._rows = self._build_rows(arr, codes)
            self._link_codes = None
            self._link_off = None
        else:
            self._rows = None
            self._link_codes, self._link_off = self._build_links(arr)

    def _build_rows(self, arr: np.ndarray, codes: np.ndarray) -> np.ndarray:
        n = self.n
        base = max(n, 2)
        if n == 0:
            return np.zeros((0, 0), dtype=np.uint8)
        if n <= 8192:
            dense = np.zeros(n * n, dtype=bool)
            if arr.shape[0]:
                if base == n:
                    dense[codes] = True  # pair codes are flat adjacency indices
                else:
                    dense[arr[:, 0] * n + arr[:, 1]] = True
                rev = np.sort(arr[:, 1] * arr.dtype.type(n) + arr[:, 0], kind="stable")
                dense[rev] = True
            return np.packbits(dense.reshape(n, n), axis=1)
        packed = np.zeros((n, (n + 7) // 8), dtype=np.uint8)
        if arr.shape[0]:
            u, v = arr[:, 0], arr[:, 1]
            masks_v = (128 >> (v & 7)).astype(np.uint8)
            masks_u = (128 >> (u & 7)).astype(np.uint8)
            np.bitwise_or.at(packed, (u, v >> 3), masks_v)
            np.bitwise_or.at(packed, (v, u >> 3), masks_u)
        return packed

    def _build_links(self, arr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        m = arr.shape[0]
        base = max(self.n, 2)
        off = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(self._deg, out=off[1:])
        if m == 0:
            return np.zeros(0, dtype=np.int64), off
        verts = []
        codes = []
        cols = np.arange(self.r)
        for j in range(self.r):
            rest = arr[:, cols != j]
            verts.append(arr[:, j])
            codes.append(_encode_rows(rest, base))
        all_v = np.concatenate(verts)
        all_c = np.concatenate(codes)
        order = np.lexsort((all_c, all_v))
        return all_c[order], off

    # -- basic accessors ---------------------------------------------------

    def __len__(self) -> int:
        return self._edges.shape[0]

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        for row in self._edges:
            yield tuple(int(x) for x in row)

    def __contains__(self, edge: Iterable[int]) -> bool:
        return self.has_edge(edge)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (
            self.r == other.r
            and self.n == other.n
            and np.array_equal(self._edges, other._edges)
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.r, self.n, self._edges.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        return f"Hypergraph(r={self.r}, n={self.n}, m={len(self)})"

    @property
    def edge_array(self) -> np.ndarray:
        """Canonical ``(m, r)`` edge array, rows sorted lexicographically."""
        return self._edges

    @property
    def packed_adjacency(self) -> np.ndarray:
        """Packed adjacency bit-rows (graphs only): ``(n, ceil(n/8))`` uint8."""
        if self.r != 2:
            raise InvalidInput("packed adjacency rows exist only for r = 2")
        return self._rows

    def edge_list(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in row) for row in self._edges]

    def has_edge(self, edge: Iterable[int]) -> bool:
        e = tuple(sorted(int(x) for x in edge))
        if len(e) != self.r or len(set(e)) != self.r:
            return False
        if e[0] < 0 or e[-1] >= self.n:
            return False
        if self.r == 2:
            u, v = e
            return bool(self._rows[u, v >> 3] & (128 >> (v & 7)))
        code = int(_encode_rows(np.array([e], dtype=np.int64), max(self.n, 2))[0])
        i = int(np.searchsorted(self._edge_codes, code))
        return i < len(self._edge_codes) and int(self._edge_codes[i]) == code

    def _check_vertex(self, v: int) -> int:
        if not isinstance(v, (int, np.integer)) or v < 0 or v >= self.n:
            raise InvalidVertex(f"vertex {v!r} outside [0, {self.n})")
        return int(v)

    # -- degrees -----------------------------------------------------------

    def degree(self, v: int) -> int:
        """Number of edges containing ``v``."""
        return int(self._deg[self._check_vertex(v)])

    def degrees(self) -> np.ndarray:
        return self._deg

    def min_degree(self) -> int:
        if self.n == 0:
            raise InvalidInput("minimum degree of an empty vertex set is undefined")
        return int(self._deg.min())

    def max_degree(self) -> int:
        if self.n == 0:
            raise InvalidInput("maximum degree of an empty vertex set is undefined")
        return int(self._deg.max())

    def average_degree(self) -> float:
        if self.n == 0:
            raise InvalidInput("average degree of an empty vertex set is undefined")
        return self.r * len(self) / self.n

    # -- links and distances -----------------------------------------------

    def link(self, v: int) -> set[tuple[int, ...]]:
        """The set of (r-1)-tuples completing ``v`` to an edge."""
        v = self._check_vertex(v)
        if self.r == 2:
            bits = np.unpackbits(self._rows[v], count=self.n)
            return {(int(u),) for u in np.nonzero(bits)[0]}
        codes = self._link_codes[self._link_off[v] : self._link_off[v + 1]]
        rows = _decode_codes(codes, max(self.n, 2), self.r - 1)
        return {tuple(int(x) for x in row) for row in rows}

    def hamming_distance(self, u: int, v: int) -> int:
        """Size of the symmetric difference of the links of ``u`` and ``v``.

        For graphs this equals the Hamming distance of the two adjacency
        rows, with the positions of ``u`` and ``v`` themselves counted
        literally (so an edge ``{u, v}`` contributes 2).
        """
        u = self._check_vertex(u)
        v = self._check_vertex(v)
        if u == v:
            raise InvalidInput("link distance requires two distinct vertices")
        if self.r == 2:
            return int(np.bitwise_count(self._rows[u] ^ self._rows[v]).sum())
        return self._link_distance(u, v)

    def _link_distance(self, u: int, v: int) -> int:
        off = self._link_off
        a = self._link_codes[off[u] : off[u + 1]]
        b = self._link_codes[off[v] : off[v + 1]]
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 0:
            return len(a)
        idx = np.searchsorted(a, b)
        inside = idx < len(a)
        common = int(np.count_nonzero(a[np.minimum(idx, len(a) - 1)][inside] == b[inside]))
        return len(a) + len(b) - 2 * common

    def distances_from(self, v: int) -> np.ndarray:
        """Link distances from every vertex to ``v`` (entry ``v`` is 0)."""
        v = self._check_vertex(v)
        if self.r == 2:
            if self.n == 0:
                return np.zeros(0, dtype=np.int64)
            xored = self._rows ^ self._rows[v]
            return np.bitwise_count(xored).sum(axis=1).astype(np.int64)
        out = np.zeros(self.n, dtype=np.int64)
        for u in range(self.n):
            if u != v:
                out[u] = self._link_distance(u, v)
        return out

    # -- induced subgraphs ---------------------------------------------------

    def induced(self, subset: Iterable[int]) -> tuple["Hypergraph", dict[int, int]]:
        """Induced subgraph on ``subset``, relabeled to ``0..|subset|-1``.

        Returns the subgraph together with the old-to-new relabeling map.
        Vertices are relabeled in increasing order of their original index.
        """
        keep = np.unique(np.fromiter((int(x) for x in subset), dtype=np.int64))
        if keep.size and (keep[0] < 0 or keep[-1] >= self.n):
            raise InvalidVertex(f"subset contains a vertex outside [0, {self.n})")
        if len(self) and keep.size:
            mask = np.all(np.isin(self._edges, keep), axis=1)
            sub_edges = np.searchsorted(keep, self._edges[mask])
        else:
            sub_edges = np.zeros((0, self.r), dtype=np.int64)
        sub = Hypergraph(self.r, int(keep.size), sub_edges)
        mapping = {int(old): i for i, old in enumerate(keep)}
        return sub, mapping


class Partition:
    """An ordered list of disjoint vertex classes covering ``0..n-1``.

    Classes may be empty; :meth:`has_full_support` reports whether all of
    them are inhabited.  Disjointness and coverage are checked on
    construction.
    """

    __slots__ = ("n", "_num_classes", "_labels", "_classes_cache")

    def __init__(self, classes: Sequence[Iterable[int]], n: int):
        if n < 0:
            raise InvalidInput("vertex count must be nonnegative")
        self.n = int(n)
        labels = np.full(self.n, -1, dtype=np.int64)
        count = 0
        for i, cls in enumerate(classes):
            if isinstance(cls, np.ndarray):
                idx = np.unique(cls.astype(np.int64, copy=False))
            else:
                idx = np.unique(np.fromiter((int(x) for x in cls), dtype=np.int64))
            if idx.size and (idx[0] < 0 or idx[-1] >= self.n):
                raise InvalidVertex(f"class {i} contains a vertex outside [0, {self.n})")
            if np.any(labels[idx] != -1):
                clash = int(idx[labels[idx] != -1][0])
                raise InvalidInput(f"vertex {clash} appears in more than one class")
            labels[idx] = i
            count += 1
        if np.any(labels == -1):
            missing = int(np.nonzero(labels == -1)[0][0])
            raise InvalidInput(f"vertex {missing} is not covered by any class")
        self._num_classes = count
        self._labels = labels
        self._labels.setflags(write=False)
        self._classes_cache = None

    @classmethod
    def from_labels(cls, labels: np.ndarray, num_classes: int) -> "Partition":
        """Build from a per-vertex class-index array (disjointness and
        coverage hold by construction, so only the index range is checked)."""
        labels = np.ascontiguousarray(labels, dtype=np.int64)
        if num_classes < 0:
            raise InvalidInput("class count must be nonnegative")
        if labels.size and (labels.min() < 0 or labels.max() >= num_classes):
            raise InvalidInput("label outside [0, num_classes)")
        self = cls.__new__(cls)
        self.n = int(labels.size)
        self._num_classes = int(num_classes)
        self._labels = labels
        self._labels.setflags(write=False)
        self._classes_cache = None
        return self

    @property
    def num_classes(self) -> int:
        return self._num_classes

    @property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        if self._classes_cache is None:
            order = np.argsort(self._labels, kind="stable")
            bounds = np.searchsorted(self._labels[order], np.arange(self._num_classes + 1))
            self._classes_cache = tuple(
                tuple(int(v) for v in order[bounds[i] : bounds[i + 1]])
                for i in range(self._num_classes)
            )
        return self._classes_cache

    @property
    def labels(self) -> np.ndarray:
        return self._labels

    def sizes(self) -> tuple[int, ...]:
        counts = np.bincount(self._labels, minlength=self._num_classes)
        return tuple(int(c) for c in counts[: self._num_classes])

    def has_full_support(self) -> bool:
        """True when every class is nonempty."""
        return all(s > 0 for s in self.sizes())

    def nonempty_class_sets(self) -> frozenset[frozenset[int]]:
        """The set of nonempty classes, order-insensitively."""
        return frozenset(frozenset(c) for c in self.classes if c)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return (
            self.n == other.n
            and self._num_classes == other._num_classes
            and np.array_equal(self._labels, other._labels)
        )

    def __hash__(self) -> int:
        return hash((self.n, self._num_classes, self._labels.tobytes()))

    def __repr__(self) -> str:
        return f"Partition(n={self.n}, sizes={self.sizes()})"


# Module-level forms of the elementary queries.

def degree(hypergraph: Hypergraph, v: int) -> int:
    return hypergraph.degree(v)


def min_degree(hypergraph: Hypergraph) -> int:
    return hypergraph.min_degree()


def max_degree(hypergraph: Hypergraph) -> int:
    return hypergraph.max_degree()


def average_degree(hypergraph: Hypergraph) -> float:
    return hypergraph.average_degree()


def link(hypergraph: Hypergraph, v: int) -> set[tuple[int, ...]]:
    return hypergraph.link(v)


def hamming_distance(hypergraph: Hypergraph, u: int, v: int) -> int:
    return hypergraph.hamming_distance(u, v)


def induced(
    hypergraph: Hypergraph, subset: Iterable[int]
) -> tuple[Hypergraph, dict[int, int]]:
    return hypergraph.induced(subset)
