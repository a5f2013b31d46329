"""Immutable bipartite graphs and the exact verification kernel."""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .labels import Label, LabelCodec

INF = math.inf


class GraphError(ValueError):
    pass


class InvalidDegree(ValueError):
    pass


class BipartiteGraph:
    """A simple graph with a declared 2-colouring, stored as CSR arrays.

    ``offsets[v]:offsets[v+1]`` slices ``nbrs`` to the sorted neighbours of
    ``v``.  ``labels`` is optional; when present, vertices are ordered by
    their codec index.
    """

    def __init__(self, offsets, nbrs, side, labels: Sequence[Label] | None = None,
                 codec: LabelCodec | None = None):
        self.offsets = np.ascontiguousarray(offsets, dtype=np.int64)
        self.nbrs = np.ascontiguousarray(nbrs, dtype=np.int64)
        self.side = np.ascontiguousarray(side, dtype=np.int8)
        for arr in (self.offsets, self.nbrs, self.side):
            arr.flags.writeable = False
        self.labels = tuple(labels) if labels is not None else None
        self.codec = codec
        self._index = None
        if self.labels is not None and len(self.labels) != self.order:
            raise GraphError("label count does not match vertex count")
        if len(self.side) != self.order:
            raise GraphError("side array does not match vertex count")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], side=None,
                   labels=None, codec=None, strict: bool = True) -> BipartiteGraph:
        """Build from an undirected edge list.

        With ``strict`` a repeated edge or a self-loop raises
        :class:`GraphError` instead of being dropped.
        """
        pairs = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if len(pairs) and (pairs.min() < 0 or pairs.max() >= n):
            raise GraphError("edge endpoint out of range")
        loops = pairs[:, 0] == pairs[:, 1]
        if loops.any():
            if strict:
                raise GraphError(f"self-loop at vertex {int(pairs[loops][0, 0])}")
            pairs = pairs[~loops]
        lo = np.minimum(pairs[:, 0], pairs[:, 1])
        hi = np.maximum(pairs[:, 0], pairs[:, 1])
        key = lo * n + hi
        uniq, counts = np.unique(key, return_counts=True)
        if strict and (counts > 1).any():
            k = int(uniq[counts > 1][0])
            raise GraphError(f"duplicate edge {divmod(k, n)}")
        lo, hi = np.divmod(uniq, n)
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.add.at(offsets, src + 1, 1)
        np.cumsum(offsets, out=offsets)
        if side is None:
            side = np.zeros(n, dtype=np.int8)
        return cls(offsets, dst, side, labels=labels, codec=codec)

    # -- basic queries ------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.offsets) - 1

    @property
    def size(self) -> int:
        return len(self.nbrs) // 2

    def __len__(self):
        return self.order

    def neighbors(self, v: int) -> np.ndarray:
        self._check_vertex(v)
        return self.nbrs[self.offsets[v]:self.offsets[v + 1]]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return int(self.offsets[v + 1] - self.offsets[v])

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return bool(i < len(row) and row[i] == v)

    def edges(self) -> np.ndarray:
        """All edges as an ``(m, 2)`` array with ``u < v``, ascending."""
        src = np.repeat(np.arange(self.order, dtype=np.int64), self.degrees)
        keep = src < self.nbrs
        return np.stack([src[keep], self.nbrs[keep]], axis=1)

    def _check_vertex(self, v):
        if not 0 <= v < self.order:
            raise IndexError(f"vertex {v} out of range [0, {self.order})")

    # -- labels ---------------------------------------------------------------

    def label(self, v: int) -> Label:
        if self.labels is None:
            raise GraphError("graph carries no labels")
        return self.labels[v]

    def index(self, label: Label) -> int:
        if self.labels is None:
            raise GraphError("graph carries no labels")
        if self._index is None:
            self._index = {lab: i for i, lab in enumerate(self.labels)}
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"{label} is not a vertex of this graph") from None

    def __contains__(self, label) -> bool:
        try:
            self.index(label)
        except KeyError:
            return False
        return True

    def labeled_edges(self) -> set[frozenset[Label]]:
        lab = self.labels
        if lab is None:
            raise GraphError("graph carries no labels")
        return {frozenset((lab[u], lab[v])) for u, v in self.edges().tolist()}

    # -- derived graphs ---------------------------------------------------------

    def induced_subgraph(self, vertices) -> BipartiteGraph:
        """Subgraph on ``vertices``; relative vertex order is preserved."""
        keep = np.zeros(self.order, dtype=bool)
        keep[np.asarray(sorted(vertices), dtype=np.int64)] = True
        new_id = np.full(self.order, -1, dtype=np.int64)
        new_id[keep] = np.arange(int(keep.sum()))
        e = self.edges()
        e = e[keep[e[:, 0]] & keep[e[:, 1]]]
        labels = None
        if self.labels is not None:
            labels = [lab for lab, k in zip(self.labels, keep) if k]
        return BipartiteGraph.from_edges(
            int(keep.sum()), new_id[e], self.side[keep], labels=labels, codec=self.codec)

    def remove_vertices(self, vertices) -> BipartiteGraph:
        drop = set(int(v) for v in vertices)
        return self.induced_subgraph(v for v in range(self.order) if v not in drop)

    def with_edge(self, u: int, v: int) -> BipartiteGraph:
        e = np.vstack([self.edges(), [[u, v]]])
        return BipartiteGraph.from_edges(self.order, e, self.side, self.labels, self.codec)

    def without_edge(self, u: int, v: int) -> BipartiteGraph:
        e = self.edges()
        a, b = min(u, v), max(u, v)
        mask = ~((e[:, 0] == a) & (e[:, 1] == b))
        if mask.all():
            raise GraphError(f"({u}, {v}) is not an edge")
        return BipartiteGraph.from_edges(self.order, e[mask], self.side, self.labels, self.codec)

    def same_structure(self, other: BipartiteGraph) -> bool:
        return (np.array_equal(self.offsets, other.offsets)
                and np.array_equal(self.nbrs, other.nbrs)
                and np.array_equal(self.side, other.side))

    def __repr__(self):
        return f"BipartiteGraph(order={self.order}, size={self.size})"


# -- verification kernel ------------------------------------------------------

def _threads(threads):
    return 1 if not threads or threads <= 1 else kernels.set_threads(threads)


def girth(g: BipartiteGraph, threads: int = 1):
    """Exact girth; ``inf`` for a forest."""
    if g.order == 0:
        return INF
    t = _threads(threads)
    if t > 1:
        best = kernels.girth_chunked(g.offsets, g.nbrs, kernels.chunk_bounds(g.order, t))
    else:
        best = kernels.girth(g.offsets, g.nbrs)
    return INF if best == 0 else int(best)


def eccentricities(g: BipartiteGraph, threads: int = 1) -> np.ndarray:
    t = _threads(threads)
    if t > 1:
        return kernels.eccentricities_chunked(
            g.offsets, g.nbrs, kernels.chunk_bounds(g.order, t))
    return kernels.eccentricities(g.offsets, g.nbrs)


def diameter(g: BipartiteGraph, threads: int = 1):
    """Largest eccentricity, ``inf`` when disconnected, 0 for <= 1 vertex."""
    if g.order == 0:
        return 0
    ecc = eccentricities(g, threads)
    if (ecc < 0).any():
        return INF
    return int(ecc.max())


def degree_profile(g: BipartiteGraph) -> dict[int, int]:
    """Histogram ``{degree: vertex count}`` sorted by degree."""
    return dict(sorted(Counter(g.degrees.tolist()).items()))


def distance(g: BipartiteGraph, u: int, v: int):
    g._check_vertex(u)
    g._check_vertex(v)
    d = kernels.pair_distance(g.offsets, g.nbrs, u, v)
    return INF if d < 0 else int(d)


def distances_from(g: BipartiteGraph, src: int, max_depth: int = -1) -> np.ndarray:
    """BFS distances from ``src``; -1 for vertices not reached."""
    g._check_vertex(src)
    return kernels.bfs_distances(g.offsets, g.nbrs, src, max_depth)


def is_bipartite_consistent(g: BipartiteGraph) -> bool:
    e = g.edges()
    return bool((g.side[e[:, 0]] != g.side[e[:, 1]]).all())


def is_symmetric(g: BipartiteGraph) -> bool:
    return all(g.has_edge(int(w), v) for v in range(g.order) for w in g.neighbors(v))


def moore_bound(k: int) -> int:
    """Lower bound on the order of a k-regular graph of girth 8."""
    if not isinstance(k, int) or k < 2:
        raise InvalidDegree(f"degree must be an integer >= 2, got {k!r}")
    d = k - 1
    return 2 * (1 + d + d**2 + d**3)


@dataclass
class VerifyReport:
    order: int
    size: int
    degrees: dict[int, int]
    bipartite: bool
    girth: float | int | None
    diameter: float | int | None
    timings: dict[str, float] = field(default_factory=dict)
    expectations: dict[str, object] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        def num(x):
            return "inf" if x == INF else x
        return {
            "order": self.order,
            "size": self.size,
            "degrees": {str(k): v for k, v in self.degrees.items()},
            "bipartite": self.bipartite,
            "girth": num(self.girth),
            "diameter": num(self.diameter),
            "timings": {k: round(v, 6) for k, v in self.timings.items()},
            "expectations": self.expectations,
            "failures": self.failures,
            "ok": self.ok,
        }


def verify(g: BipartiteGraph, *, expect_order=None, expect_regular=None,
           expect_girth=None, expect_diameter=None, expect_bipartite=None,
           with_diameter: bool = True, threads: int = 1) -> VerifyReport:
    timings = {}

    def timed(name, fn):
        t0 = time.perf_counter()
        out = fn()
        timings[name] = time.perf_counter() - t0
        return out

    degrees = timed("degrees", lambda: degree_profile(g))
    bip = timed("bipartite", lambda: is_bipartite_consistent(g))
    gi = timed("girth", lambda: girth(g, threads))
    di = timed("diameter", lambda: diameter(g, threads)) if with_diameter else None

    expectations = {}
    failures = []

    def expect(name, wanted, got):
        if wanted is None:
            return
        expectations[name] = wanted
        if got != wanted:
            failures.append(f"{name}: expected {wanted}, got {got}")

    expect("order", expect_order, g.order)
    if expect_regular is not None:
        expectations["regular"] = expect_regular
        if list(degrees) != [expect_regular]:
            failures.append(f"regular: expected all degrees {expect_regular}, got {degrees}")
    expect("girth", expect_girth, gi)
    if expect_diameter is not None and not with_diameter:
        raise ValueError("diameter expectation given but diameter check disabled")
    expect("diameter", expect_diameter, di)
    expect("bipartite", expect_bipartite, bip)
    return VerifyReport(g.order, g.size, degrees, bip, gi, di, timings, expectations, failures)
