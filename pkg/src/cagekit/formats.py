"""Readers and writers for graph6, DIMACS edge, plain edge list and labeled JSON.

All writers are deterministic: vertices keep their index order and edges are
emitted ascending by ``(u, v)`` with ``u < v``.
"""

from __future__ import annotations

import json
from collections import deque
from pathlib import Path

import numpy as np

from .graph import BipartiteGraph, GraphError
from .labels import InvalidLabel, LabelCodec, label_from_json, label_to_json, validate

FORMATS = ("graph6", "dimacs-edge", "edge-list", "labeled-json")
SUFFIXES = {".g6": "graph6", ".graph6": "graph6", ".dimacs": "dimacs-edge",
            ".col": "dimacs-edge", ".edges": "edge-list", ".txt": "edge-list",
            ".json": "labeled-json"}

_WEIGHTS = np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8)


class GraphFormatError(ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def guess_format(path) -> str:
    fmt = SUFFIXES.get(Path(path).suffix.lower())
    if fmt is None:
        raise GraphFormatError(f"cannot infer format from {path!r}; pass --format")
    return fmt


# -- graph6 ---------------------------------------------------------------------

def _g6_order(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 68719476736:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise GraphFormatError(f"graph too large for graph6: {n}")


def to_graph6(g: BipartiteGraph, header: bool = False) -> bytes:
    n = g.order
    nbits = n * (n - 1) // 2
    bits = np.zeros(nbits + (-nbits) % 6, dtype=np.uint8)
    e = g.edges()
    if len(e):
        i, j = e[:, 0], e[:, 1]
        bits[j * (j - 1) // 2 + i] = 1  # upper triangle, column by column
    body = (bits.reshape(-1, 6) @ _WEIGHTS + 63).astype(np.uint8).tobytes()
    return (b">>graph6<<" if header else b"") + _g6_order(n) + body + b"\n"


def _g6_decode_order(data: bytes) -> tuple[int, int]:
    if not data:
        raise GraphFormatError("empty graph6 string", line=1)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) > 1 and data[1] == 126:
        digits, start = data[2:8], 8
    else:
        digits, start = data[1:4], 4
    if len(digits) != (6 if start == 8 else 3):
        raise GraphFormatError("truncated graph6 order", line=1)
    n = 0
    for d in digits:
        n = (n << 6) | (d - 63)
    return n, start


def from_graph6(data: bytes) -> BipartiteGraph:
    text = data.strip()
    if text.startswith(b">>graph6<<"):
        text = text[10:]
    if b"\n" in text:
        raise GraphFormatError("more than one graph in graph6 input", line=2)
    if any(c < 63 or c > 126 for c in text):
        raise GraphFormatError("byte outside graph6 range 63..126", line=1)
    n, start = _g6_decode_order(text)
    nbits = n * (n - 1) // 2
    body = np.frombuffer(text[start:], dtype=np.uint8)
    if len(body) != (nbits + 5) // 6:
        raise GraphFormatError(f"expected {(nbits + 5) // 6} data bytes, got {len(body)}", line=1)
    bits = np.unpackbits((body - 63)[:, None], axis=1)[:, 2:].ravel()
    pos = np.flatnonzero(bits[:nbits])
    if bits[nbits:].any():
        raise GraphFormatError("nonzero padding bits", line=1)
    # invert pos = j(j-1)/2 + i
    j = ((1 + np.sqrt(1 + 8 * pos.astype(np.float64))) // 2).astype(np.int64)
    j -= (j * (j - 1) // 2 > pos)
    j += ((j + 1) * j // 2 <= pos)
    i = pos - j * (j - 1) // 2
    return _unlabeled(n, np.stack([i, j], axis=1))


# -- DIMACS and edge list ---------------------------------------------------------

def to_dimacs(g: BipartiteGraph) -> bytes:
    e = g.edges()
    lines = [f"p edge {g.order} {len(e)}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in e.tolist()]
    return ("\n".join(lines) + "\n").encode()


def from_dimacs(data: bytes) -> BipartiteGraph:
    n = m = None
    edges = []
    for lineno, raw in enumerate(data.decode("ascii", errors="replace").splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        try:
            if parts[0] == "p":
                if n is not None or len(parts) != 4 or parts[1] != "edge":
                    raise ValueError("bad problem line")
                n, m = int(parts[2]), int(parts[3])
            elif parts[0] == "e":
                if n is None or len(parts) != 3:
                    raise ValueError("bad edge line")
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
                if not (0 <= u < n and 0 <= v < n):
                    raise ValueError("vertex out of range")
                edges.append((u, v))
            else:
                raise ValueError(f"unknown record {parts[0]!r}")
        except ValueError as exc:
            raise GraphFormatError(str(exc), line=lineno) from None
    if n is None:
        raise GraphFormatError("missing 'p edge' line")
    if m != len(edges):
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}")
    return _unlabeled(n, edges)


def to_edge_list(g: BipartiteGraph) -> bytes:
    return "".join(f"{u} {v}\n" for u, v in g.edges().tolist()).encode()


def from_edge_list(data: bytes, n: int | None = None) -> BipartiteGraph:
    """Order is ``max index + 1`` unless ``n`` is given."""
    edges = []
    for lineno, raw in enumerate(data.decode("ascii", errors="replace").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if len(parts) != 2:
                raise ValueError("expected two vertex indices")
            u, v = int(parts[0]), int(parts[1])
            if u < 0 or v < 0:
                raise ValueError("negative vertex index")
        except ValueError as exc:
            raise GraphFormatError(str(exc), line=lineno) from None
        edges.append((u, v))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return _unlabeled(n, edges)


# -- labeled JSON ---------------------------------------------------------------------

def to_labeled_json(g: BipartiteGraph, meta: dict | None = None) -> bytes:
    if g.labels is None:
        raise GraphError("labeled-json needs a labeled graph")
    doc = {
        "format": "cagekit-labeled-json",
        "q": g.codec.q if g.codec else None,
        **(meta or {}),
        "order": g.order,
        "size": g.size,
        "vertices": [label_to_json(lab) for lab in g.labels],
        "edges": g.edges().tolist(),
    }
    return (json.dumps(doc, separators=(",", ":"), ensure_ascii=True) + "\n").encode()


def from_labeled_json(data: bytes) -> BipartiteGraph:
    try:
        doc = json.loads(data)
        q = doc.get("q")
        labels = [label_from_json(v) for v in doc["vertices"]]
        if q is not None:
            labels = [validate(lab, q) for lab in labels]
        edges = [tuple(e) for e in doc["edges"]]
    except (json.JSONDecodeError, KeyError, TypeError, InvalidLabel) as exc:
        line = getattr(exc, "lineno", None)
        raise GraphFormatError(f"invalid labeled-json: {exc}", line=line) from None
    if len(set(labels)) != len(labels):
        raise GraphFormatError("duplicate vertex label")
    try:
        return BipartiteGraph.from_edges(
            len(labels), edges, [lab.side for lab in labels], labels=labels,
            codec=LabelCodec(q) if q is not None else None)
    except (GraphError, ValueError) as exc:
        raise GraphFormatError(str(exc)) from None


# -- dispatch ---------------------------------------------------------------------

def _two_colouring(n: int, edges) -> np.ndarray:
    """BFS 2-colouring, component roots get 0; odd cycles leave a clash."""
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    side = np.full(n, -1, dtype=np.int8)
    for root in range(n):
        if side[root] >= 0:
            continue
        side[root] = 0
        todo = deque([root])
        while todo:
            u = todo.popleft()
            for w in adj[u]:
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    todo.append(w)
    return side


def _unlabeled(n, edges) -> BipartiteGraph:
    edges = [tuple(map(int, e)) for e in edges]
    try:
        return BipartiteGraph.from_edges(n, edges, _two_colouring(n, edges))
    except GraphError as exc:
        raise GraphFormatError(str(exc)) from None


def dumps(g: BipartiteGraph, fmt: str, meta: dict | None = None) -> bytes:
    if fmt == "graph6":
        return to_graph6(g)
    if fmt == "dimacs-edge":
        return to_dimacs(g)
    if fmt == "edge-list":
        return to_edge_list(g)
    if fmt == "labeled-json":
        return to_labeled_json(g, meta)
    raise ValueError(f"unknown format {fmt!r}")


def loads(data: bytes, fmt: str) -> BipartiteGraph:
    if fmt == "graph6":
        return from_graph6(data)
    if fmt == "dimacs-edge":
        return from_dimacs(data)
    if fmt == "edge-list":
        return from_edge_list(data)
    if fmt == "labeled-json":
        return from_labeled_json(data)
    raise ValueError(f"unknown format {fmt!r}")


def read_graph(path, fmt: str | None = None) -> BipartiteGraph:
    fmt = fmt or guess_format(path)
    return loads(Path(path).read_bytes(), fmt)


def write_graph(g: BipartiteGraph, path, fmt: str | None = None, meta=None) -> None:
    fmt = fmt or guess_format(path)
    Path(path).write_bytes(dumps(g, fmt, meta))
