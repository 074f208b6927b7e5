"""Graphs, shift operators and graph products."""

import csv
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DuplicateEdge, GraphError, NegativeWeight, ParseError

__all__ = [
    "Graph",
    "ShiftKind",
    "path_graph",
    "cycle_graph",
    "cartesian_product",
    "random_geometric_graph",
    "shift_matrix",
    "from_edge_list",
    "to_edge_list",
]


class ShiftKind(enum.Enum):
    ADJACENCY = "adjacency"
    LAPLACIAN = "laplacian"
    CYCLIC_SHIFT = "cyclic"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise GraphError(f"unknown shift kind {value!r}") from None


@dataclass(frozen=True)
class Graph:
    """Weighted simple graph on vertices ``0..n-1``.

    Undirected graphs store every edge once; the reverse direction is
    implied.  ``meta`` carries generator details such as connectivity.
    """

    n: int
    edges: tuple
    directed: bool = False
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("graph needs at least one vertex")
        seen = set()
        for u, v, w in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not math.isfinite(w):
                raise GraphError(f"non-finite weight on edge ({u}, {v})")
            key = (u, v) if self.directed else (min(u, v), max(u, v))
            if key in seen:
                raise DuplicateEdge(f"duplicate edge ({u}, {v})")
            seen.add(key)

    @property
    def num_edges(self):
        return len(self.edges)

    def adjacency(self):
        a = np.zeros((self.n, self.n))
        for u, v, w in self.edges:
            if self.directed:
                # row receives from column: (A x)[v] = x[u]
                a[v, u] = w
            else:
                a[u, v] = w
                a[v, u] = w
        return a

    def is_connected(self):
        adj = {i: set() for i in range(self.n)}
        for u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        stack, seen = [0], {0}
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == self.n


def path_graph(n):
    if n < 2:
        raise GraphError("path graph needs n >= 2")
    return Graph(n, tuple((i, i + 1, 1.0) for i in range(n - 1)), meta={"name": f"P{n}"})


def cycle_graph(n, directed=False):
    if n < 3:
        raise GraphError("cycle graph needs n >= 3")
    edges = tuple((i, (i + 1) % n, 1.0) for i in range(n))
    return Graph(n, edges, directed=directed, meta={"name": f"C{n}", "cycle": True})


def cartesian_product(g1, g2):
    """Cartesian product; vertex ``(u, v)`` gets index ``u * g2.n + v``."""
    if g1.directed or g2.directed:
        raise GraphError("cartesian product is defined for undirected graphs only")
    n2 = g2.n
    edges = []
    for u1, u2, w in g1.edges:
        for v in range(n2):
            edges.append((u1 * n2 + v, u2 * n2 + v, w))
    for u in range(g1.n):
        for v1, v2, w in g2.edges:
            edges.append((u * n2 + v1, u * n2 + v2, w))
    edges.sort()
    return Graph(g1.n * n2, tuple(edges), meta={"factors": (g1.n, n2)})


def random_geometric_graph(n, radius, seed):
    """Unit-weight edges between uniform points in the unit square closer than ``radius``."""
    if n < 2:
        raise GraphError("random geometric graph needs n >= 2")
    if not 0 < radius <= math.sqrt(2):
        raise GraphError("radius must lie in (0, sqrt(2)]")
    rng = np.random.default_rng(seed)
    pts = rng.random((n, 2))
    dist = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
    edges = tuple(
        (i, j, 1.0) for i in range(n) for j in range(i + 1, n) if dist[i, j] < radius
    )
    g = Graph(n, edges, meta={"points": pts, "seed": seed, "radius": radius})
    g.meta["connected"] = g.is_connected()
    return g


def _is_directed_cycle(g):
    if not g.directed or g.num_edges != g.n:
        return False
    succ = {u: v for u, v, _ in g.edges}
    return len(succ) == g.n and all(succ.get(i) == (i + 1) % g.n for i in range(g.n))


def shift_matrix(g, kind):
    kind = ShiftKind.parse(kind)
    if kind is ShiftKind.CYCLIC_SHIFT:
        if not _is_directed_cycle(g):
            raise GraphError("cyclic shift requires a directed cycle")
        return g.adjacency()
    if g.directed:
        raise GraphError(f"{kind.value} shift requires an undirected graph")
    a = g.adjacency()
    if kind is ShiftKind.ADJACENCY:
        return a
    return np.diag(a.sum(axis=1)) - a


def _is_number(text):
    try:
        float(text)
    except ValueError:
        return False
    return True


def from_edge_list(path):
    """Read an undirected graph from ``u,v,w`` CSV rows (0-based, optional header)."""
    edges = []
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if lineno == 1 and not _is_number(row[0].strip()):
                continue
            if len(row) != 3:
                raise ParseError(f"expected 3 fields, got {len(row)}", lineno)
            try:
                u, v = int(row[0]), int(row[1])
                w = float(row[2])
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            if u < 0 or v < 0:
                raise ParseError("negative vertex index", lineno)
            if w < 0:
                raise NegativeWeight(f"line {lineno}: negative weight {w}")
            edges.append((u, v, w))
    if not edges:
        raise ParseError("no edges found")
    n = max(max(u, v) for u, v, _ in edges) + 1
    return Graph(n, tuple(edges), meta={"source": str(path)})


def to_edge_list(g, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write("u,v,w\n")
        for u, v, w in g.edges:
            fh.write(f"{u},{v},{w!r}\n")
