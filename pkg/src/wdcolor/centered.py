"""Centered sets: balls, the union-combination bound, vertex-cover and apex colorers."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .bounds import bound_combine
from .coloring import Coloring, ColoringError, check_precoloring, extend_constant, measured_bound
from .graph import Graph, bounded_bfs, induced_subgraph


def ball(g: Graph, s: Sequence[int], r: int) -> list[int]:
    """Vertices within distance r of s, sorted."""
    return sorted(bounded_bfs(g, s, r))


@dataclass(frozen=True)
class CenteredWitness:
    centers: tuple[int, ...]
    radius: int
    k: int

    def check(self, g: Graph, z: Sequence[int]) -> None:
        if len(self.centers) > self.k:
            raise ColoringError(f"{len(self.centers)} centers exceed k={self.k}")
        reach = bounded_bfs(g, self.centers, self.radius)
        outside = [v for v in z if v not in reach]
        if outside:
            raise ColoringError(f"vertices {outside[:5]} are farther than {self.radius} from every center")


def combine_centered(
    g: Graph,
    ell: int,
    z: Sequence[int],
    witness: CenteredWitness,
    c_z: Mapping[int, int],
    c_rest: Coloring,
    N: int | None = None,
) -> tuple[Coloring, int]:
    """Union of a coloring on Z and a coloring of g - Z, with its combined bound.

    `c_rest` is indexed by the sorted vertices of g - Z. N is measured on
    (g - Z)^ell when not given.
    """
    zset = set(z)
    witness.check(g, sorted(zset))
    if set(c_z) != zset:
        raise ColoringError("c_z must color exactly the vertices of Z")
    m = c_rest.m
    check_precoloring(g.n, m, c_z)
    if c_rest.ell != ell:
        raise ColoringError(f"c_rest has scale {c_rest.ell}, expected {ell}")
    rest, verts, _ = induced_subgraph(g, (v for v in range(g.n) if v not in zset))
    c_rest.check_graph(rest)
    if N is None:
        N = max(measured_bound(rest, c_rest), 1)
    color = [0] * g.n
    for i, v in enumerate(verts):
        color[v] = c_rest.color[i]
    for v, x in c_z.items():
        color[v] = x
    return Coloring(ell, m, color), bound_combine(witness.k, witness.radius, ell, N)


def vertex_cover_2approx(g: Graph) -> list[int]:
    """Ends of a greedy maximal matching, scanning edges in sorted order."""
    matched = [False] * g.n
    for u, v in g.edges():
        if not matched[u] and not matched[v]:
            matched[u] = matched[v] = True
    return [v for v in range(g.n) if matched[v]]


def color_covered(g: Graph, ell: int, m: int, precoloring: Mapping[int, int] | None = None) -> tuple[Coloring, int]:
    """Extend a precoloring by color 1; every coloring of a small-cover graph is bounded.

    Vertices outside the radius-1 ball of the cover are isolated, so their
    components are singletons and the base diameter is 1.
    """
    pre = precoloring or {}
    cover = vertex_cover_2approx(g)
    c = extend_constant(g.n, ell, m, pre)
    return c, bound_combine(len(cover), 1, ell, 1)


class TrivialColorer:
    """Colorer for graphs on at most `max_vertices` vertices: any extension works."""

    name = "trivial"

    def __init__(self, max_vertices: int):
        self.max_vertices = max_vertices

    def __call__(self, g: Graph, ell: int, m: int, pre: Mapping[int, int]) -> Coloring:
        if g.n > self.max_vertices:
            raise ColoringError(f"graph has {g.n} > {self.max_vertices} vertices")
        return extend_constant(g.n, ell, m, pre)

    def bound(self, ell: int) -> int:
        return max(self.max_vertices - 1, 1)

    def __repr__(self):
        return f"TrivialColorer({self.max_vertices})"


class VertexCoverColorer:
    """Colorer for graphs with a vertex cover of at most `cover_size` vertices."""

    name = "vertex_cover"

    def __init__(self, cover_size: int):
        self.cover_size = cover_size

    def __call__(self, g: Graph, ell: int, m: int, pre: Mapping[int, int]) -> Coloring:
        cover = vertex_cover_2approx(g)
        if len(cover) > 2 * self.cover_size:
            raise ColoringError(f"graph has no vertex cover of size {self.cover_size}")
        return color_covered(g, ell, m, pre)[0]

    def bound(self, ell: int) -> int:
        return bound_combine(self.cover_size, 1, ell, 1)

    def __repr__(self):
        return f"VertexCoverColorer({self.cover_size})"


COLORERS = {"trivial": TrivialColorer, "vertex_cover": VertexCoverColorer}


def color_with_apices(
    g: Graph,
    apices: Sequence[int],
    base: Callable[[Graph], tuple[Coloring, int]],
    n_max: int | None = None,
) -> tuple[Coloring, int]:
    """Color apices 1, color g - Z with `base`, and combine with centers Z at radius 0.

    `base` receives g - Z (vertices relabelled in sorted order) and returns a
    coloring plus its bound on (g - Z)^ell.
    """
    z = sorted(set(apices))
    k = len(z) if n_max is None else n_max
    if len(z) > k:
        raise ColoringError(f"{len(z)} apices exceed the allowed {k}")
    rest, _, _ = induced_subgraph(g, (v for v in range(g.n) if v not in set(z)))
    c_rest, n_rest = base(rest)
    if not z:
        return c_rest, n_rest
    witness = CenteredWitness(tuple(z), 0, k)
    return combine_centered(g, c_rest.ell, z, witness, {v: 1 for v in z}, c_rest, N=max(n_rest, 1))
