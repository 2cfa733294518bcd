"""Seeded graph families that come with their structural witnesses.

Randomness comes from random.Random (MT19937) and only through its
random() method, whose output stream is fixed for a given seed across
platforms and Python versions.
"""
from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field

from .graph import Graph, build_graph, grid_graph
from .witness import Layering, RootedTreeDecomposition

FAMILIES = ("path", "cycle", "grid", "tree", "partial_ktree", "layered_random", "apexed")


@dataclass
class GenSpec:
    family: str
    n: int = 0
    k: int = 1
    rows: int = 0
    cols: int = 0
    p: float = 0.5
    seed: int = 0
    window: int | None = None

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class Generated:
    graph: Graph
    rtd: RootedTreeDecomposition | None = None
    layering: Layering | None = None
    apices: list[int] = field(default_factory=list)


class _Rng:
    def __init__(self, seed: int):
        self._r = random.Random(seed)

    def below(self, k: int) -> int:
        return min(int(self._r.random() * k), k - 1)

    def chance(self, p: float) -> bool:
        return self._r.random() < p


def _path_td(n: int) -> RootedTreeDecomposition:
    if n <= 1:
        return RootedTreeDecomposition([-1], 0, [list(range(n))])
    bags = [[i, i + 1] for i in range(n - 1)]
    return RootedTreeDecomposition([-1] + list(range(n - 2)), 0, bags)


def gen_path(n: int) -> Generated:
    g = build_graph(n, [(i, i + 1) for i in range(n - 1)])
    return Generated(g, _path_td(n), Layering(list(range(n))))


def gen_cycle(n: int) -> Generated:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    g = build_graph(n, [(i, (i + 1) % n) for i in range(n)])
    # path decomposition of the path 0..n-1 with vertex 0 added to every bag
    bags = [sorted({0, i, i + 1}) for i in range(1, n - 1)]
    rtd = RootedTreeDecomposition([-1] + list(range(len(bags) - 1)), 0, bags)
    layer = [min(i, n - i) for i in range(n)]
    return Generated(g, rtd, Layering(layer))


def grid_witness(rows: int, cols: int) -> tuple[RootedTreeDecomposition, Layering]:
    """Column path-decomposition (bags = two adjacent columns) and row layering."""
    def column(c):
        return [r * cols + c for r in range(rows)]

    if cols <= 1:
        rtd = RootedTreeDecomposition([-1], 0, [list(range(rows * cols))])
    else:
        bags = [sorted(column(c) + column(c + 1)) for c in range(cols - 1)]
        rtd = RootedTreeDecomposition([-1] + list(range(cols - 2)), 0, bags)
    return rtd, Layering([v // cols for v in range(rows * cols)])


def gen_grid(rows: int, cols: int) -> Generated:
    rtd, ly = grid_witness(rows, cols)
    return Generated(grid_graph(rows, cols), rtd, ly)


def gen_tree(n: int, seed: int) -> Generated:
    rng = _Rng(seed)
    par = [-1] + [rng.below(v) for v in range(1, n)]
    g = build_graph(n, [(v, par[v]) for v in range(1, n)])
    if n <= 1:
        return Generated(g, RootedTreeDecomposition([-1], 0, [list(range(n))]), Layering([0] * n))
    bags = [sorted((v, par[v])) for v in range(1, n)]
    tparent = [-1] + [par[v] - 1 if par[v] > 0 else 0 for v in range(2, n)]
    depth = [0] * n
    for v in range(1, n):
        depth[v] = depth[par[v]] + 1
    return Generated(g, RootedTreeDecomposition(tparent, 0, bags), Layering(depth))


def gen_partial_ktree(k: int, n: int, seed: int, p: float = 0.5, window: int | None = None) -> Generated:
    """Random subgraph of a k-tree, with the k-tree's decomposition (width <= k).

    Each new vertex attaches to k vertices of a random existing bag (or, with
    `window`, one of the `window` most recent bags) and keeps each of those
    edges with probability p, always keeping at least one.
    """
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    rng = _Rng(seed)
    first = list(range(min(n, k + 1)))
    edges = [(first[i], first[i + 1]) for i in range(len(first) - 1)]
    edges += [(a, b) for i, a in enumerate(first) for b in first[i + 2:] if rng.chance(p)]
    bags = [first]
    parent = [-1]
    for v in range(len(first), n):
        lo = 0 if window is None else max(0, len(bags) - window)
        t = lo + rng.below(len(bags) - lo)
        bag = bags[t]
        drop = rng.below(len(bag))
        base = bag[:drop] + bag[drop + 1:]
        keep = [u for u in base if rng.chance(p)]
        if not keep:
            keep = [base[rng.below(len(base))]]
        edges.extend((u, v) for u in keep)
        bags.append(sorted(base + [v]))
        parent.append(t)
    g = build_graph(n, edges)
    rtd = RootedTreeDecomposition(parent, 0, bags)
    return Generated(g, rtd, None)


def gen_layered_random(rows: int, cols: int, seed: int, p: float = 0.3) -> Generated:
    """Grid plus random down-right diagonals; the grid witnesses still apply."""
    rng = _Rng(seed)
    g0 = grid_graph(rows, cols)
    extra = [
        (r * cols + c, (r + 1) * cols + c + 1)
        for r in range(rows - 1)
        for c in range(cols - 1)
        if rng.chance(p)
    ]
    g = build_graph(rows * cols, list(g0.edges()) + extra)
    rtd, ly = grid_witness(rows, cols)
    return Generated(g, rtd, ly)


def gen_apexed(rows: int, cols: int, k: int) -> Generated:
    """Grid plus k universal apices (ids after the grid); witnesses describe the grid."""
    g0 = grid_graph(rows, cols)
    n0 = rows * cols
    apices = list(range(n0, n0 + k))
    edges = list(g0.edges())
    edges += [(a, v) for a in apices for v in range(n0)]
    edges += [(a, b) for i, a in enumerate(apices) for b in apices[i + 1:]]
    rtd, ly = grid_witness(rows, cols)
    return Generated(build_graph(n0 + k, edges), rtd, ly, apices)


def generate(spec: GenSpec) -> Generated:
    f = spec.family
    if f == "path":
        return gen_path(spec.n)
    if f == "cycle":
        return gen_cycle(spec.n)
    if f == "grid":
        return gen_grid(spec.rows, spec.cols)
    if f == "tree":
        return gen_tree(spec.n, spec.seed)
    if f == "partial_ktree":
        return gen_partial_ktree(spec.k, spec.n, spec.seed, spec.p, spec.window)
    if f == "layered_random":
        return gen_layered_random(spec.rows, spec.cols, spec.seed, spec.p)
    if f == "apexed":
        return gen_apexed(spec.rows, spec.cols, spec.k)
    raise ValueError(f"unknown family {f!r}; expected one of {', '.join(FAMILIES)}")


