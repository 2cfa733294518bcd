"""Brute-force ground truth on tiny graphs, plus the seeded generators."""
from __future__ import annotations

from .coloring import Coloring
from .generators import FAMILIES, Generated, GenSpec, generate  # noqa: F401
from .graph import INF, Graph, all_pairs_distances


class InstanceTooLarge(ValueError):
    pass


def power_matrix(g: Graph, ell: int) -> list[list[float]]:
    """Distances in G^ell, i.e. ceil(d_G / ell), INF across components."""
    d = all_pairs_distances(g)
    return [[x if x == INF else -(-x // ell) for x in row] for row in d]


def _search_order(g: Graph) -> list[int]:
    # BFS order keeps neighbours close, so merges (and cutoffs) happen early
    seen = [False] * g.n
    order = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = [s]
        for u in queue:
            order.append(u)
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


def brute_min_weak_diameter(g: Graph, ell: int, m: int, limit: int = 16) -> tuple[int, Coloring]:
    """Exact min over all m-colorings of the largest monochromatic weak diameter in G^ell.

    Colors are tried in canonical order (a new color only as the next unused
    one). Merging can only grow a component's weak diameter, so a partial
    assignment whose worst component already matches the best is cut.
    """
    if ell < 1 or m < 1:
        raise ValueError("need ell >= 1 and m >= 1")
    if g.n > limit:
        raise InstanceTooLarge(f"{g.n} vertices exceed the oracle limit of {limit}")
    if g.n == 0:
        return 0, Coloring(ell, m, [])
    D = power_matrix(g, ell)
    order = _search_order(g)
    color = [0] * g.n
    best = [INF, None]

    # comps: list of (color, members tuple, diameter)
    def rec(i: int, used: int, comps: list, worst: int) -> None:
        if worst >= best[0]:
            return
        if i == len(order):
            best[0], best[1] = worst, list(color)
            return
        v = order[i]
        for c in range(1, min(used + 1, m) + 1):
            color[v] = c
            merged = [v]
            diam = 0
            rest = []
            for comp in comps:
                cc, members, cd = comp
                if cc == c and any(D[v][u] <= 1 for u in members):
                    cross = max(D[x][y] for x in merged for y in members)
                    diam = max(diam, cd, cross)
                    merged.extend(members)
                else:
                    rest.append(comp)
            rest.append((c, tuple(merged), diam))
            rec(i + 1, max(used, c), rest, max(worst, diam))
            if best[0] == 0:
                return
        color[v] = 0

    rec(0, 0, [], 0)
    return int(best[0]), Coloring(ell, m, best[1])


def properly_colorable(g: Graph, ell: int, m: int) -> bool:
    """Whether G^ell has a proper m-coloring (plain backtracking, no diameter logic)."""
    D = power_matrix(g, ell)
    order = _search_order(g)
    color = [0] * g.n

    def rec(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for c in range(1, min(used + 1, m) + 1):
            if all(color[u] != c for u in range(g.n) if u != v and D[v][u] <= 1):
                color[v] = c
                if rec(i + 1, max(used, c)):
                    return True
        color[v] = 0
        return False

    return rec(0, 0)
