"""3-colorings for graphs of bounded layered tree-width, by strips of layers.

Strips of Q consecutive layers alternate between two kinds. Even strips are
colored at scale ell with colors {1, 2} on a copy widened by ell layers per
side, keeping only the core colors. Odd strips are colored at a larger scale
R on a copy widened by R layers, where R = 2 ell + 2 D_E + 1 and D_E bounds
the even-strip components in G hops; the tree-width colorer's two colors are
mapped to {s_j, 3}, with the shared color s_j alternating 2, 1, 2, 1 along
the odd strips.

Why this is bounded: color 3 never leaves an odd strip. A component of color
s can only reach the one odd strip with that shared color (the next odd strip
with the same s is two full strips away), and every even vertex in it lies
within D_E + ell of its odd part, which sits inside one R-scale component of
diameter D_O. So every component has G-diameter at most
max(D_E, D_O3, D_O + 2 ell + 2 D_E), and the claimed bound is that divided by
ell, rounded up. The result is certified anyway.
"""
from __future__ import annotations

from collections import deque
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

from .bounds import bound_combine
from .centered import color_with_apices
from .coloring import CertificateReport, Coloring, certify, mono_components_forest
from .graph import Graph, build_graph, induced_subgraph
from .tree_extension import color_bounded_treewidth
from .witness import Layering, LayeringError, RootedTreeDecomposition, layered_width, validate_layering, validate_td

StripColorer = Callable[[Graph, int, int, RootedTreeDecomposition], Coloring]


class EscalationExhausted(RuntimeError):
    def __init__(self, message: str, report: CertificateReport, plan: "StripPlan"):
        super().__init__(message)
        self.report = report
        self.plan = plan


@dataclass
class StripPlan:
    strip_width: int
    even_scale: int
    even_margin: int
    odd_scale: int
    odd_margin: int
    shared_colors: list[int]
    level: int
    measured: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class LayeredResult:
    coloring: Coloring
    bound: float
    escalations: int
    claimed: int
    plan: StripPlan
    report: CertificateReport

    def __iter__(self):
        return iter((self.coloring, self.bound, self.escalations))


def _default_strip_colorer(sub: Graph, scale: int, width: int, rtd: RootedTreeDecomposition) -> Coloring:
    return color_bounded_treewidth(sub, scale, width, rtd)[0]


def _bfs_parents(g: Graph, src: int, targets: set[int]):
    dist = {src: 0}
    par = {src: -1}
    left = len(targets) - (src in targets)
    queue = deque([src])
    while queue and left:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                par[w] = u
                if w in targets:
                    left -= 1
                queue.append(w)
    return dist, par


def diameter_upper(g: Graph, members: Sequence[int]) -> int:
    """Upper bound on max d_G over pairs of `members` (all in one component).

    Exact for small sets; otherwise d(x, c) + d(c, y) through a near-center c
    found by a double sweep.
    """
    members = list(members)
    if len(members) <= 1:
        return 0
    targets = set(members)
    if len(members) <= 48:
        best = 0
        for u in members:
            dist, _ = _bfs_parents(g, u, targets)
            best = max(best, max(dist[v] for v in members))
        return best
    dist, _ = _bfs_parents(g, members[0], targets)
    a = max(members, key=lambda v: dist[v])
    dist, par = _bfs_parents(g, a, targets)
    b = max(members, key=lambda v: dist[v])
    c = b
    for _ in range(dist[b] // 2):
        c = par[c]
    dist, _ = _bfs_parents(g, c, targets)
    top = sorted((dist[v] for v in members), reverse=True)
    return top[0] + top[1]


def _strip_piece(g, rtd, layer, lo_layer, hi_layer):
    verts = [v for v in range(g.n) if lo_layer <= layer[v] < hi_layer]
    sub, verts, idx = induced_subgraph(g, verts)
    bags = [[idx[v] for v in b if v in idx] for b in rtd.bags]
    srtd = RootedTreeDecomposition(list(rtd.parent), rtd.root, bags)
    width = max(max((len(b) for b in bags), default=1) - 1, 0)
    return sub, verts, srtd, width


def _color_strip(g, rtd, layer, j, Q, scale, margin, colorer):
    """Color the margin-widened strip j; return core colors and per-color core diameters."""
    lo, hi = j * Q, (j + 1) * Q
    sub, verts, srtd, width = _strip_piece(g, rtd, layer, lo - margin, hi + margin)
    if sub.n == 0:
        return {}, {}
    c = colorer(sub, scale, width, srtd)
    core = {}
    for i, v in enumerate(verts):
        if lo <= layer[v] < hi:
            core[i] = c.color[i]
    diam: dict[int, int] = {}
    for comp in mono_components_forest(sub, c):
        inside = [i for i in comp.members if i in core]
        if inside:
            d = diameter_upper(sub, inside)
            diam[comp.color] = max(diam.get(comp.color, 0), d)
    return {verts[i]: x for i, x in core.items()}, diam


def color_layered(
    g: Graph,
    ell: int,
    rtd: RootedTreeDecomposition,
    ly: Layering,
    w: int | None = None,
    escalation_cap: int = 4,
    strip_width: int | None = None,
    strip_colorer: StripColorer | None = None,
    exact: bool = False,
) -> LayeredResult:
    """Certified 3-coloring of G^ell from a layering and a tree-decomposition.

    Raises EscalationExhausted if no level up to `escalation_cap` certifies.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    validate_td(g, rtd)
    validate_layering(g, ly)
    if w is not None:
        lw = layered_width(g, rtd, ly)
        if lw > w:
            raise LayeringError(f"layered width {lw} exceeds w={w}")
    colorer = strip_colorer or _default_strip_colorer
    layer = ly.layer
    L = ly.num_layers
    Q = strip_width or 6 * ell
    report = plan = None
    for level in range(escalation_cap + 1):
        q = Q * 2**level
        strips = max(1, -(-L // q))
        color = [0] * g.n
        d_even = 0
        for j in range(0, strips, 2):
            core, diam = _color_strip(g, rtd, layer, j, q, ell, ell, colorer)
            for v, x in core.items():
                color[v] = x
            d_even = max([d_even, *diam.values()])
        R = (2 * ell + 2 * d_even + 1) * 2**level
        shared = []
        d_odd = d_three = 0
        for j in range(1, strips, 2):
            s = 2 if (j // 2) % 2 == 0 else 1
            shared.append(s)
            core, diam = _color_strip(g, rtd, layer, j, q, R, R, colorer)
            for v, x in core.items():
                color[v] = s if x == 1 else 3
            d_odd = max(d_odd, diam.get(1, 0))
            d_three = max(d_three, diam.get(2, 0))
        reach = max(d_even, d_three, d_odd + 2 * ell + 2 * d_even if shared else 0)
        claimed = -(-reach // ell)
        plan = StripPlan(q, ell, ell, R, R, shared, level,
                         {"even": d_even, "odd_shared": d_odd, "odd_three": d_three})
        c = Coloring(ell, 3, color)
        report = certify(g, c, claimed, exact=exact)
        report.extra["plan"] = plan.to_json()
        if report.passed:
            return LayeredResult(c, report.max_diameter, level, claimed, plan, report)
    raise EscalationExhausted(
        f"no certified coloring after {escalation_cap} escalations (worst {report.worst})", report, plan)


# ---------------------------------------------------------------- witness extension


def apply_clique_attachments(gp: Graph, additions: Sequence[tuple[int, Sequence[int]]]) -> Graph:
    edges = list(gp.edges())
    for i, (v, clique) in enumerate(additions):
        if v != gp.n + i:
            raise ValueError(f"new vertex {i} must have id {gp.n + i}, got {v}")
        edges.extend((u, v) for u in clique)
    return build_graph(gp.n + len(additions), edges)


def extend_witness_clique_attach(
    gp: Graph,
    rtd: RootedTreeDecomposition,
    ly: Layering,
    additions: Sequence[tuple[int, Sequence[int]]],
) -> tuple[RootedTreeDecomposition, Layering]:
    """Witnesses for gp plus new vertices, each adjacent to a clique of gp.

    The new vertex goes to the lower layer of its clique and gets a leaf bag
    clique + {v} hung off a bag containing the clique.
    """
    holders: list[list[int]] = [[] for _ in range(gp.n)]
    for t, bag in enumerate(rtd.bags):
        for v in bag:
            holders[v].append(t)
    bags = [list(b) for b in rtd.bags]
    parent = list(rtd.parent)
    layer = list(ly.layer)
    for i, (v, clique) in enumerate(additions):
        if v != gp.n + i:
            raise ValueError(f"new vertex {i} must have id {gp.n + i}, got {v}")
        cl = sorted(set(clique))
        for a_i, a in enumerate(cl):
            if not 0 <= a < gp.n:
                raise ValueError(f"clique vertex {a} is not a vertex of the base graph")
            for b in cl[a_i + 1:]:
                if not gp.has_edge(a, b):
                    raise ValueError(f"neighbor set of {v} is not a clique: {a} and {b} are not adjacent")
        if cl:
            host = None
            pivot = min(cl, key=lambda a: len(holders[a]))
            for t in holders[pivot]:
                bag = set(rtd.bags[t])
                if all(a in bag for a in cl):
                    host = t
                    break
            if host is None:
                raise ValueError(f"no bag contains the clique {cl}")
            layer.append(min(layer[a] for a in cl))
        else:
            host = rtd.root
            layer.append(0)
        parent.append(host)
        bags.append(cl + [v])
    return RootedTreeDecomposition(parent, rtd.root, bags), Layering(layer)


# ---------------------------------------------------------------- apices


def color_apex_layered(
    g: Graph,
    apices: Sequence[int],
    ell: int,
    rtd: RootedTreeDecomposition,
    ly: Layering,
    w: int | None = None,
    escalation_cap: int = 4,
) -> tuple[Coloring, int, LayeredResult]:
    """Layered coloring of g - Z combined with apices colored 1.

    The witnesses describe g - Z with vertices relabelled in sorted order.
    Returns the coloring, the bound bound_combine(|Z|, 0, ell, N) with N the
    measured layered bound, and the inner layered result.
    """
    holder = {}

    def base(rest: Graph):
        res = color_layered(rest, ell, rtd, ly, w=w, escalation_cap=escalation_cap)
        holder["res"] = res
        return res.coloring, max(int(res.bound), 1)

    c, bound = color_with_apices(g, apices, base)
    return c, bound, holder["res"]
