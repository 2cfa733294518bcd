"""Undirected simple graphs on dense integer ids, with truncated BFS helpers.

Power graphs G^ell are never materialized: the distance between u and v in
G^ell is ceil(d_G(u, v) / ell), and everything here works off d_G.
"""
from __future__ import annotations

import math
from bisect import bisect_left
from collections import deque
from typing import Callable, Iterable, Sequence

INF = math.inf


class GraphError(ValueError):
    pass


class Graph:
    """Immutable undirected simple graph with sorted adjacency lists."""

    __slots__ = ("n", "adj", "_m")

    def __init__(self, n: int, adj: list[list[int]]):
        self.n = n
        self.adj = adj
        self._m = sum(len(a) for a in adj) // 2

    @property
    def m(self) -> int:
        return self._m

    def edges(self):
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        if len(self.adj[u]) > len(self.adj[v]):
            u, v = v, u
        a = self.adj[u]
        i = bisect_left(a, v)
        return i < len(a) and a[i] == v

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Normalize an edge list into a Graph (deduplicated, symmetric, sorted)."""
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, [sorted(s) for s in nbrs])


def bounded_bfs(
    g: Graph,
    sources: Iterable[int],
    cap: float,
    allowed: Callable[[int], bool] | None = None,
) -> dict[int, int]:
    """Multi-source BFS returning {vertex: distance} for all vertices within `cap`.

    `allowed` restricts the search to an induced subgraph; sources failing it
    are dropped.
    """
    dist: dict[int, int] = {}
    queue = deque()
    for s in sources:
        if s not in dist and (allowed is None or allowed(s)):
            dist[s] = 0
            queue.append(s)
    adj = g.adj
    while queue:
        u = queue.popleft()
        du = dist[u]
        if du >= cap:
            continue
        for w in adj[u]:
            if w not in dist and (allowed is None or allowed(w)):
                dist[w] = du + 1
                queue.append(w)
    return dist


def bfs_until(g: Graph, source: int, targets: set[int]) -> dict[int, int]:
    """BFS from `source` that stops once every vertex of `targets` is reached.

    Returns distances of the visited vertices; targets in other components
    are simply absent from the result.
    """
    dist = {source: 0}
    remaining = len(targets) - (1 if source in targets else 0)
    if remaining == 0:
        return dist
    queue = deque([source])
    adj = g.adj
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if w not in dist:
                dist[w] = du
                if w in targets:
                    remaining -= 1
                    if remaining == 0:
                        return dist
                queue.append(w)
    return dist


def distance(g: Graph, u: int, v: int) -> float:
    if u == v:
        return 0
    d = bfs_until(g, u, {v})
    return d.get(v, INF)


def power_distance(g: Graph, ell: int, u: int, v: int) -> float:
    """Distance between u and v in G^ell, i.e. ceil(d_G(u, v) / ell)."""
    if ell < 1:
        raise GraphError("ell must be >= 1")
    d = distance(g, u, v)
    if d == INF:
        return INF
    return -(-int(d) // ell)


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int], dict[int, int]]:
    """Return (G[s], local->global list, global->local dict); local ids follow sorted order."""
    verts = sorted(set(s))
    index = {v: i for i, v in enumerate(verts)}
    adj = []
    for v in verts:
        adj.append([index[w] for w in g.adj[v] if w in index])
    return Graph(len(verts), adj), verts, index


def component_labels(g: Graph) -> tuple[list[int], int]:
    """Label vertices by component; labels ordered by minimum vertex id."""
    label = [-1] * g.n
    count = 0
    adj = g.adj
    for s in range(g.n):
        if label[s] >= 0:
            continue
        label[s] = count
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if label[w] < 0:
                    label[w] = count
                    stack.append(w)
        count += 1
    return label, count


def components(g: Graph) -> list[list[int]]:
    label, count = component_labels(g)
    parts: list[list[int]] = [[] for _ in range(count)]
    for v in range(g.n):
        parts[label[v]].append(v)
    return parts


def all_pairs_distances(g: Graph) -> list[list[float]]:
    """Plain BFS from every vertex. Only meant for small graphs and oracles."""
    out = []
    for s in range(g.n):
        d = bounded_bfs(g, [s], INF)
        out.append([d.get(v, INF) for v in range(g.n)])
    return out


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)] if n >= 3 else [])


def grid_graph(rows: int, cols: int) -> Graph:
    """Vertex (r, c) has id r * cols + c."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return build_graph(rows * cols, edges)


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def from_adjacency(adj: Sequence[Sequence[int]]) -> Graph:
    return build_graph(len(adj), [(u, v) for u, nb in enumerate(adj) for v in nb if u < v])
