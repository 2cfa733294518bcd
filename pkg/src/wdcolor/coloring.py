"""Colorings of G^ell, their monochromatic components, and certification.

Monochromatic components of G^ell are found without building G^ell: for each
color we grow a multi-source BFS of depth ell // 2 from that color class,
labelling every reached vertex with its nearest source. Two sources are
within distance ell exactly when some shortest path between them is covered
by those balls, which shows up as an edge xy with d(x) + 1 + d(y) <= ell whose
ends carry different labels. Uniting along such edges gives the components and
also a spanning forest whose edges are G^ell edges; its diameter is a cheap
upper bound on the weak diameter.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .graph import INF, Graph, bfs_until


class ColoringError(ValueError):
    pass


@dataclass
class Coloring:
    """A total m-coloring of G^ell. `color[v]` lies in 1..m."""

    ell: int
    m: int
    color: list[int]

    def __post_init__(self):
        if self.ell < 1:
            raise ColoringError("ell must be >= 1")
        if self.m < 1:
            raise ColoringError("palette size must be >= 1")
        for v, x in enumerate(self.color):
            if not 1 <= x <= self.m:
                raise ColoringError(f"vertex {v} has color {x} outside 1..{self.m}")

    def __len__(self):
        return len(self.color)

    def check_graph(self, g: Graph) -> None:
        if len(self.color) != g.n:
            raise ColoringError(f"coloring has {len(self.color)} entries for {g.n} vertices")


@dataclass
class CoverFamily:
    """m collections of vertex sets; sets in one collection are more than ell apart."""

    ell: int
    families: list[list[list[int]]]


@dataclass
class ComponentRecord:
    color: int
    size: int
    diameter: float
    witness: tuple[int, int]
    exact: bool = True

    def to_json(self) -> dict:
        d = self.diameter
        return {
            "color": self.color,
            "size": self.size,
            "weak_diameter": None if d == INF else d,
            "witness": list(self.witness),
            "exact": self.exact,
        }


@dataclass
class CertificateReport:
    """Per-component weak diameters (in G^ell hops) against a claimed bound.

    Records marked exact=False carry an upper bound that was already enough to
    settle the comparison with the claim.
    """

    bound_claimed: float
    ell: int
    records: list[ComponentRecord]
    passed: bool
    extra: dict = field(default_factory=dict)

    @property
    def worst(self) -> ComponentRecord | None:
        return max(self.records, key=lambda r: (r.diameter, -r.witness[0]), default=None)

    @property
    def max_diameter(self) -> float:
        w = self.worst
        return 0 if w is None else w.diameter

    def graph_hops(self) -> list[float]:
        """Per-component bounds in G hops (each G^ell hop is at most ell G hops)."""
        return [r.diameter * self.ell for r in self.records]

    def to_json(self) -> dict:
        w = self.worst
        out = {
            "bound_claimed": None if self.bound_claimed == INF else self.bound_claimed,
            "ell": self.ell,
            "pass": self.passed,
            "components": len(self.records),
            "max_weak_diameter": None if self.max_diameter == INF else self.max_diameter,
            "worst": None if w is None else w.to_json(),
            "records": [r.to_json() for r in self.records],
        }
        out.update(self.extra)
        return out


# ---------------------------------------------------------------- components


class _DSU:
    __slots__ = ("parent",)

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


@dataclass
class MonoComponent:
    color: int
    members: list[int]
    tree_edges: list[tuple[int, int]]


def _close_classes(g: Graph, ell: int, classes: Iterable[list[int]], dsu: _DSU, forest: list | None):
    """Unite members of each class that lie within G-distance ell of each other."""
    n = g.n
    adj = g.adj
    depth_cap = ell // 2
    dist = [-1] * n
    label = [0] * n
    for sources in classes:
        touched = []
        queue = deque()
        for s in sources:
            if dist[s] < 0:
                dist[s] = 0
                label[s] = s
                touched.append(s)
                queue.append(s)
        while queue:
            u = queue.popleft()
            du = dist[u]
            if du >= depth_cap:
                continue
            lu = label[u]
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = du + 1
                    label[w] = lu
                    touched.append(w)
                    queue.append(w)
        for x in touched:
            dx = dist[x] + 1
            lx = label[x]
            for y in adj[x]:
                dy = dist[y]
                if y > x and dy >= 0 and dx + dy <= ell and label[y] != lx:
                    if dsu.union(lx, label[y]) and forest is not None:
                        forest.append((lx, label[y]))
        for x in touched:
            dist[x] = -1


def _color_classes(c: Coloring) -> list[list[int]]:
    classes: list[list[int]] = [[] for _ in range(c.m + 1)]
    for v, x in enumerate(c.color):
        classes[x].append(v)
    return classes[1:]


def mono_components_forest(g: Graph, c: Coloring) -> list[MonoComponent]:
    c.check_graph(g)
    dsu = _DSU(g.n)
    forest: list[tuple[int, int]] = []
    _close_classes(g, c.ell, _color_classes(c), dsu, forest)
    index: dict[int, int] = {}
    comps: list[MonoComponent] = []
    for v in range(g.n):
        r = dsu.find(v)
        if r not in index:
            index[r] = len(comps)
            comps.append(MonoComponent(c.color[v], [], []))
        comps[index[r]].members.append(v)
    for a, b in forest:
        comps[index[dsu.find(a)]].tree_edges.append((a, b))
    return comps


def mono_components(g: Graph, c: Coloring) -> list[tuple[int, list[int]]]:
    """Monochromatic components of G^ell as (color, sorted members), ordered by minimum vertex."""
    return [(mc.color, mc.members) for mc in mono_components_forest(g, c)]


# ---------------------------------------------------------------- diameters


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def weak_diameter_power(g: Graph, ell: int, s: Sequence[int], stop_above: float = INF):
    """Exact max over pairs of s of the G^ell distance, with an achieving pair.

    Returns (INF, pair) if s meets two components of g. With `stop_above` the
    scan ends as soon as a pair beyond it is found.
    """
    members = sorted(set(s))
    if not members:
        raise ValueError("weak diameter of an empty set")
    if len(members) == 1:
        return 0, (members[0], members[0])
    targets = set(members)
    best, pair = 0, (members[0], members[0])
    for u in members:
        dist = bfs_until(g, u, targets)
        for v in members:
            d = dist.get(v)
            if d is None:
                return INF, (min(u, v), max(u, v))
            if d > best:
                best, pair = d, (min(u, v), max(u, v))
        if _ceil_div(best, ell) > stop_above:
            break
    return _ceil_div(best, ell), pair


def _tree_diameter(edges: list[tuple[int, int]], start: int):
    nbrs: dict[int, list[int]] = {}
    for a, b in edges:
        nbrs.setdefault(a, []).append(b)
        nbrs.setdefault(b, []).append(a)

    def far(src):
        dist = {src: 0}
        queue = deque([src])
        last = src
        while queue:
            u = queue.popleft()
            last = u
            for w in nbrs.get(u, ()):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return last, dist[last], dist

    a, _, _ = far(start)
    b, d, dist_a = far(a)
    return d, (min(a, b), max(a, b))


def _bounded_eccentricities(g: Graph, members: list[int], limit: int):
    """Decide whether max pairwise d_G over `members` exceeds `limit`.

    Eccentricities restricted to the member set obey
    ecc(u) - d(u, v) <= ecc(v) <= ecc(u) + d(u, v), so a few sweeps usually
    settle every member. Returns (value, pair, exact): an upper bound when the
    answer is "within limit", else a lower bound above it.
    """
    targets = set(members)
    lo = dict.fromkeys(members, 0)
    hi = dict.fromkeys(members, INF)
    pair = (members[0], members[0])
    best_lo = 0
    pick_high = True
    while True:
        open_ = [v for v in members if hi[v] > limit and lo[v] <= limit]
        if not open_:
            break
        if pick_high:
            u = max(open_, key=lambda v: (hi[v], -v))
        else:
            u = min(open_, key=lambda v: (lo[v], v))
        pick_high = not pick_high
        dist = bfs_until(g, u, targets)
        ecc = 0
        far = u
        for v in members:
            d = dist.get(v)
            if d is None:
                return INF, (min(u, v), max(u, v)), True
            if d > ecc:
                ecc, far = d, v
        for v in members:
            d = dist[v]
            lo[v] = max(lo[v], d, ecc - d)
            hi[v] = min(hi[v], ecc + d)
        lo[u] = hi[u] = ecc
        if ecc > best_lo:
            best_lo, pair = ecc, (min(u, far), max(u, far))
        if best_lo > limit:
            return best_lo, pair, False
    top = max(hi.values())
    exact = top == best_lo
    return top, pair, exact


def _certify_component(g: Graph, ell: int, comp: MonoComponent, bound: float, exact: bool) -> ComponentRecord:
    members = comp.members
    if len(members) == 1:
        return ComponentRecord(comp.color, 1, 0, (members[0], members[0]), True)
    if exact:
        d, pair = weak_diameter_power(g, ell, members)
        return ComponentRecord(comp.color, len(members), d, pair, True)
    ub, pair = _tree_diameter(comp.tree_edges, members[0])
    if ub <= bound:
        return ComponentRecord(comp.color, len(members), ub, pair, ub <= 1)
    limit = bound * ell if bound != INF else INF
    d, pair, is_exact = _bounded_eccentricities(g, members, limit)
    if d == INF:
        return ComponentRecord(comp.color, len(members), INF, pair, True)
    return ComponentRecord(comp.color, len(members), _ceil_div(d, ell), pair, is_exact)


def certify(g: Graph, c: Coloring, bound: float, exact: bool = False) -> CertificateReport:
    """Check every monochromatic component of c in G^ell against `bound`.

    With exact=True every record holds the true weak diameter; otherwise
    records may hold upper bounds (pass) or lower bounds (fail) that decide
    the comparison.
    """
    comps = mono_components_forest(g, c)
    records = [_certify_component(g, c.ell, mc, bound, exact) for mc in comps]
    passed = all(r.diameter <= bound for r in records)
    return CertificateReport(bound, c.ell, records, passed)


def measured_bound(g: Graph, c: Coloring) -> int:
    """Exact maximum weak diameter over all monochromatic components."""
    rep = certify(g, c, 0, exact=True)
    return rep.max_diameter


# ---------------------------------------------------------------- covers


def coloring_to_cover(g: Graph, c: Coloring) -> CoverFamily:
    families: list[list[list[int]]] = [[] for _ in range(c.m)]
    for color, members in mono_components(g, c):
        families[color - 1].append(members)
    return CoverFamily(c.ell, families)


def validate_cover(g: Graph, cf: CoverFamily) -> None:
    """Raise ColoringError unless cf covers V(g) with separated sets in each family."""
    covered = [False] * g.n
    for i, fam in enumerate(cf.families):
        owner: dict[int, int] = {}
        for j, s in enumerate(fam):
            for v in s:
                if not 0 <= v < g.n:
                    raise ColoringError(f"family {i + 1} names vertex {v} outside the graph")
                if v in owner:
                    raise ColoringError(f"family {i + 1}: sets {owner[v]} and {j} share vertex {v}")
                owner[v] = j
                covered[v] = True
    _check_sets_apart(g, cf)
    missing = [v for v in range(g.n) if not covered[v]]
    if missing:
        raise ColoringError(f"vertices {missing[:5]} are not covered")


def _check_sets_apart(g: Graph, cf: CoverFamily) -> None:
    for i, fam in enumerate(cf.families):
        dsu = _DSU(g.n)
        owner = {v: j for j, s in enumerate(fam) for v in s}
        _close_classes(g, cf.ell, [[v for s in fam for v in s]], dsu, None)
        seen: dict[int, int] = {}
        for v, j in owner.items():
            r = dsu.find(v)
            if seen.setdefault(r, j) != j:
                raise ColoringError(f"family {i + 1}: two sets are within distance {cf.ell}")


def cover_to_coloring(g: Graph, cf: CoverFamily) -> Coloring:
    """Color each vertex by the first family covering it; check component containment."""
    m = len(cf.families)
    color = [0] * g.n
    owner: list[dict[int, int]] = []
    for i, fam in enumerate(cf.families):
        own = {}
        for j, s in enumerate(fam):
            for v in s:
                own[v] = j
                if color[v] == 0:
                    color[v] = i + 1
        owner.append(own)
    missing = [v for v in range(g.n) if color[v] == 0]
    if missing:
        raise ColoringError(f"cover misses vertices {missing[:5]}")
    c = Coloring(cf.ell, max(m, 1), color)
    for col, members in mono_components(g, c):
        own = owner[col - 1]
        sets = {own[v] for v in members}
        if len(sets) != 1:
            raise AssertionError(f"component of color {col} at {members[0]} spans several cover sets")
    return c


# ---------------------------------------------------------------- partial colorings


def check_precoloring(n: int, m: int, pre: Mapping[int, int]) -> None:
    for v, x in pre.items():
        if not 0 <= v < n:
            raise ColoringError(f"precolored vertex {v} outside 0..{n - 1}")
        if not 1 <= x <= m:
            raise ColoringError(f"precolor {x} of vertex {v} outside palette 1..{m}")


def extend_constant(n: int, ell: int, m: int, pre: Mapping[int, int], fill: int = 1) -> Coloring:
    check_precoloring(n, m, pre)
    color = [fill] * n
    for v, x in pre.items():
        color[v] = x
    return Coloring(ell, m, color)
