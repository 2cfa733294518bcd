"""Structural witnesses: rooted tree-decompositions, layerings and constructions."""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Sequence

from .graph import Graph


class DecompositionError(ValueError):
    """A tree-decomposition axiom or structural requirement is violated.

    `axiom` is one of "tree", "cover", "edge", "connected", "range"; `witness`
    holds the offending ids.
    """

    def __init__(self, axiom: str, message: str, witness: Any = None):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class LayeringError(ValueError):
    def __init__(self, message: str, edge: tuple[int, int] | None = None):
        super().__init__(message)
        self.edge = edge


class ConstructionError(ValueError):
    pass


class WidthExceeded(ConstructionError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class DecompositionMetrics:
    width: int
    adhesion: int


@dataclass
class RootedTreeDecomposition:
    """Tree given by a parent array (-1 at the root) plus one sorted bag per node."""

    parent: list[int]
    root: int
    bags: list[list[int]]

    @property
    def num_nodes(self) -> int:
        return len(self.bags)

    def children(self) -> list[list[int]]:
        ch: list[list[int]] = [[] for _ in self.bags]
        for t, p in enumerate(self.parent):
            if p >= 0:
                ch[p].append(t)
        return ch

    def tree_edges(self):
        for t, p in enumerate(self.parent):
            if p >= 0:
                yield (p, t)

    def preorder(self) -> list[int]:
        ch = self.children()
        order = []
        stack = [self.root]
        while stack:
            t = stack.pop()
            order.append(t)
            stack.extend(reversed(ch[t]))
        return order

    def metrics(self) -> DecompositionMetrics:
        width = max((len(b) for b in self.bags), default=0) - 1
        adhesion = 0
        for p, t in self.tree_edges():
            adhesion = max(adhesion, len(set(self.bags[p]).intersection(self.bags[t])))
        return DecompositionMetrics(width=max(width, -1), adhesion=adhesion)

    def rerooted(self, new_root: int) -> "RootedTreeDecomposition":
        nbrs: list[list[int]] = [[] for _ in self.bags]
        for p, t in self.tree_edges():
            nbrs[p].append(t)
            nbrs[t].append(p)
        parent = [-2] * len(self.bags)
        parent[new_root] = -1
        queue = deque([new_root])
        while queue:
            t = queue.popleft()
            for s in sorted(nbrs[t]):
                if parent[s] == -2:
                    parent[s] = t
                    queue.append(s)
        return RootedTreeDecomposition(parent, new_root, [list(b) for b in self.bags])

    def restricted(self, keep: dict[int, int]) -> "RootedTreeDecomposition":
        """Same tree, bags intersected with `keep` and relabelled through it."""
        bags = [sorted(keep[v] for v in b if v in keep) for b in self.bags]
        return RootedTreeDecomposition(list(self.parent), self.root, bags)


def _check_tree(rtd: RootedTreeDecomposition) -> tuple[list[int], list[int]]:
    k = rtd.num_nodes
    if len(rtd.parent) != k:
        raise DecompositionError("tree", "parent array and bag list differ in length")
    if k == 0:
        raise DecompositionError("tree", "decomposition has no nodes")
    if not 0 <= rtd.root < k or rtd.parent[rtd.root] != -1:
        raise DecompositionError("tree", f"root {rtd.root} is not a parentless node", rtd.root)
    for t, p in enumerate(rtd.parent):
        if t != rtd.root and not 0 <= p < k:
            raise DecompositionError("tree", f"node {t} has invalid parent {p}", t)
    order = rtd.preorder()
    if len(order) != k:
        missing = sorted(set(range(k)) - set(order))
        raise DecompositionError("tree", f"nodes {missing[:5]} are not reachable from the root", missing)
    depth = [0] * k
    for t in order:
        if t != rtd.root:
            depth[t] = depth[rtd.parent[t]] + 1
    return depth, order


def validate_td(g: Graph, rtd: RootedTreeDecomposition) -> DecompositionMetrics:
    """Check the three tree-decomposition axioms; raise DecompositionError on the first violation."""
    depth, order = _check_tree(rtd)
    n = g.n
    occurrences = [0] * n
    top = [-1] * n
    bagsets = [set(b) for b in rtd.bags]
    for t in order:
        bag = rtd.bags[t]
        if len(bagsets[t]) != len(bag):
            raise DecompositionError("range", f"bag {t} repeats a vertex", t)
        for v in bag:
            if not 0 <= v < n:
                raise DecompositionError("range", f"bag {t} contains vertex {v} outside 0..{n - 1}", (t, v))
            occurrences[v] += 1
            if top[v] < 0:
                top[v] = t
    for v in range(n):
        if occurrences[v] == 0:
            raise DecompositionError("cover", f"vertex {v} is in no bag", v)
    linked = [0] * n
    adhesion = 0
    for p, t in rtd.tree_edges():
        pset = bagsets[p]
        shared = 0
        for v in rtd.bags[t]:
            if v in pset:
                linked[v] += 1
                shared += 1
        if shared > adhesion:
            adhesion = shared
    for v in range(n):
        if linked[v] != occurrences[v] - 1:
            raise DecompositionError("connected", f"bags containing vertex {v} are not connected in the tree", v)
    for u, v in g.edges():
        a, b = top[u], top[v]
        deeper, other = (a, v) if depth[a] >= depth[b] else (b, u)
        if other not in bagsets[deeper]:
            raise DecompositionError("edge", f"edge ({u}, {v}) is in no bag", (u, v))
    width = max((len(b) for b in rtd.bags), default=0) - 1
    return DecompositionMetrics(width=max(width, -1), adhesion=adhesion)


def is_valid_td(g: Graph, rtd: RootedTreeDecomposition) -> bool:
    try:
        validate_td(g, rtd)
    except DecompositionError:
        return False
    return True


@dataclass
class Layering:
    layer: list[int]

    @property
    def num_layers(self) -> int:
        return max(self.layer, default=-1) + 1


def validate_layering(g: Graph, ly: Layering) -> None:
    if len(ly.layer) != g.n:
        raise LayeringError(f"layering has {len(ly.layer)} entries for {g.n} vertices")
    for v, i in enumerate(ly.layer):
        if i < 0:
            raise LayeringError(f"vertex {v} has negative layer {i}")
    for u, v in g.edges():
        if abs(ly.layer[u] - ly.layer[v]) > 1:
            raise LayeringError(f"edge ({u}, {v}) spans layers {ly.layer[u]} and {ly.layer[v]}", (u, v))


def layered_width(g: Graph, rtd: RootedTreeDecomposition, ly: Layering) -> int:
    best = 0
    layer = ly.layer
    for bag in rtd.bags:
        counts: dict[int, int] = {}
        for v in bag:
            c = counts.get(layer[v], 0) + 1
            counts[layer[v]] = c
            if c > best:
                best = c
    return best


# ---------------------------------------------------------------- decomposers

EXACT_LIMIT = 12


def root_at_min_vertex(rtd: RootedTreeDecomposition) -> RootedTreeDecomposition:
    """Root at the node holding the smallest vertex id (ties: smallest node id)."""
    best = None
    for t, bag in enumerate(rtd.bags):
        if bag and (best is None or (bag[0], t) < best):
            best = (bag[0], t)
    target = 0 if best is None else best[1]
    return rtd if target == rtd.root else rtd.rerooted(target)


def decomposition_from_order(g: Graph, order: Sequence[int]) -> RootedTreeDecomposition:
    """Tree-decomposition induced by eliminating vertices in `order`."""
    n = g.n
    if n == 0:
        return RootedTreeDecomposition([-1], 0, [[]])
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    nbrs = [set(a) for a in g.adj]
    bags: list[list[int]] = []
    parent = [-1] * n
    for i, v in enumerate(order):
        later = nbrs[v]
        bags.append(sorted(later | {v}))
        if later:
            parent[i] = min(pos[u] for u in later)
        for u in later:
            nbrs[u].discard(v)
            nbrs[u].update(later - {u})
        nbrs[v] = set()
    roots = [i for i in range(n) if parent[i] == -1]
    for r in roots[1:]:
        parent[r] = roots[0]
    return root_at_min_vertex(RootedTreeDecomposition(parent, roots[0], bags))


def _exact_order(g: Graph) -> list[int]:
    """Optimal elimination order by dynamic programming over vertex subsets."""
    n = g.n
    adjmask = [0] * n
    for u, v in g.edges():
        adjmask[u] |= 1 << v
        adjmask[v] |= 1 << u

    def q_size(s: int, v: int) -> int:
        # vertices outside s + v reachable from v through s
        seen = 1 << v
        frontier = 1 << v
        out = 0
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                u = low.bit_length() - 1
                f ^= low
                nxt |= adjmask[u]
            nxt &= ~seen
            seen |= nxt
            out |= nxt & ~s
            frontier = nxt & s
        return bin(out).count("1")

    full = (1 << n) - 1
    tw = {0: -1}
    choice = {}
    for s in sorted(range(1, full + 1), key=lambda x: bin(x).count("1")):
        best = None
        rest = s
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            prev = s ^ low
            val = max(tw[prev], q_size(prev, v))
            if best is None or val < best:
                best = val
                choice[s] = v
        tw[s] = best
    order = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()
    return order


def _min_fill_order(g: Graph) -> list[int]:
    n = g.n
    nbrs = [set(a) for a in g.adj]

    def fill(v: int) -> int:
        nb = list(nbrs[v])
        missing = 0
        for i, a in enumerate(nb):
            na = nbrs[a]
            for b in nb[i + 1:]:
                if b not in na:
                    missing += 1
        return missing

    stamp = [0] * n
    heap = [(fill(v), len(nbrs[v]), v, 0) for v in range(n)]
    heapq.heapify(heap)
    done = [False] * n
    order = []
    while heap:
        f, d, v, st = heapq.heappop(heap)
        if done[v] or st != stamp[v]:
            continue
        done[v] = True
        order.append(v)
        later = nbrs[v]
        touched = set(later)
        for u in later:
            nbrs[u].discard(v)
            before = len(nbrs[u])
            nbrs[u].update(later - {u})
            if len(nbrs[u]) != before:
                touched.update(nbrs[u])
        nbrs[v] = set()
        for u in touched:
            if not done[u]:
                stamp[u] += 1
                heapq.heappush(heap, (fill(u), len(nbrs[u]), u, stamp[u]))
    return order


def heuristic_td(g: Graph, budget: int | None = None) -> RootedTreeDecomposition:
    """Tree-decomposition of g: optimal below EXACT_LIMIT vertices, min-fill otherwise.

    `budget` caps the number of decomposition nodes (one per vertex).
    """
    if budget is not None and g.n > budget:
        raise BudgetExceeded(f"graph has {g.n} vertices, budget is {budget} nodes")
    order = _exact_order(g) if 0 < g.n < EXACT_LIMIT else _min_fill_order(g)
    return decomposition_from_order(g, order)


def exact_treewidth(g: Graph) -> int:
    if g.n == 0:
        return -1
    return validate_td(g, decomposition_from_order(g, _exact_order(g))).width


# ---------------------------------------------------------------- constructions


@dataclass
class Construction:
    """Rooted decomposition annotated with (eta, theta) and base-class colorers.

    colorer_F colors members of the bag class, colorer_Fprime members of the
    class of bags extended by cut-attached vertices.
    """

    rtd: RootedTreeDecomposition
    eta: int
    theta: int
    colorer_F: Any = None
    colorer_Fprime: Any = None
    meta: dict = field(default_factory=dict)


def validate_construction(g: Graph, con: Construction) -> DecompositionMetrics:
    metrics = validate_td(g, con.rtd)
    rtd = con.rtd
    if not 0 <= con.eta <= con.theta:
        raise ConstructionError(f"need 0 <= eta <= theta, got eta={con.eta}, theta={con.theta}")
    if metrics.adhesion > con.theta:
        raise ConstructionError(f"adhesion {metrics.adhesion} exceeds theta={con.theta}")
    root_bag = rtd.bags[rtd.root]
    if len(root_bag) > con.theta:
        raise ConstructionError(f"root bag has {len(root_bag)} > theta={con.theta} vertices")
    if con.eta > 0 and not root_bag:
        raise ConstructionError("root bag must be nonempty when eta > 0")
    ch = rtd.children()
    for p, t in rtd.tree_edges():
        common = set(rtd.bags[p]).intersection(rtd.bags[t])
        if len(common) > con.eta:
            if ch[t]:
                raise ConstructionError(
                    f"tree edge ({p}, {t}) has adhesion {len(common)} > eta={con.eta} but {t} is not a leaf")
            if len(rtd.bags[t]) - len(common) > 1:
                raise ConstructionError(
                    f"leaf {t} adds {len(rtd.bags[t]) - len(common)} > 1 vertices across a large cut")
    return metrics


def make_tw_construction(g: Graph, rtd: RootedTreeDecomposition, w: int) -> Construction:
    """(w+1, w+1)-construction from a width-w decomposition via a singleton root bag."""
    from .centered import TrivialColorer, VertexCoverColorer

    metrics = validate_td(g, rtd)
    if metrics.width > w:
        raise WidthExceeded(f"decomposition has width {metrics.width} > w={w}")
    if g.n == 0:
        raise ConstructionError("the empty graph has no nonempty bag to root at")
    start = rtd.root
    if not rtd.bags[start]:
        ch = rtd.children()
        queue = deque([rtd.root])
        while queue:
            t = queue.popleft()
            if rtd.bags[t]:
                start = t
                break
            queue.extend(ch[t])
    base = rtd.rerooted(start) if start != rtd.root else rtd
    new = base.num_nodes
    parent = list(base.parent) + [-1]
    parent[start] = new
    bags = [list(b) for b in base.bags] + [[base.bags[start][0]]]
    con = Construction(
        RootedTreeDecomposition(parent, new, bags),
        eta=w + 1,
        theta=w + 1,
        colorer_F=TrivialColorer(w + 1),
        colorer_Fprime=VertexCoverColorer(w + 1),
    )
    return con
