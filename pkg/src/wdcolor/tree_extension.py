"""Extending a precoloring over a rooted construction, and the tree-width colorer.

The recursion has two axes. Along the tree it runs as an explicit work stack
of "pieces": a piece is the subgraph spanned by one subtree of the
decomposition plus the cut set joining it to its parent, and it is never
copied; membership is read off the preorder interval of the subtree. Along
eta it recurses into a small gadget graph built around the part of the tree
that touches the saturated ball, with eta lowered by one (depth <= theta).
"""
from __future__ import annotations

import gc
import os
import sys
from bisect import insort
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .bounds import bound_tree_extension, tree_extension_table
from .coloring import Coloring, ColoringError, certify, check_precoloring
from .graph import Graph, bounded_bfs, component_labels, induced_subgraph
from .witness import (
    Construction,
    ConstructionError,
    DecompositionError,
    RootedTreeDecomposition,
    WidthExceeded,
    heuristic_td,
    make_tw_construction,
    validate_construction,
)

DEBUG = os.environ.get("WDCOLOR_DEBUG", "") not in ("", "0")


class CertificationError(RuntimeError):
    """An internal level produced a coloring over its bound (a bug, not bad input)."""


@dataclass
class Frontier:
    """One cut edge below the explored core: the child node, its cut set and the cut partition."""

    node: int
    cut: list[int]
    parts: list[list[int]]


@dataclass
class GadgetGraph:
    """Core vertices (global ids) followed by one gadget per (frontier, part)."""

    graph: Graph
    core: list[int]
    gadgets: list[tuple[int, int]]


@dataclass
class _Ctx:
    ell: int
    m: int
    fprime: object
    table: list[int]
    debug: bool
    trace: list | None = None
    stats: dict = field(default_factory=lambda: {"tasks": 0, "levels": 0})


# ---------------------------------------------------------------- cut partition


def _cut_search(adj, cut: Sequence[int], cap: int, top_tin, lo: int, hi: int):
    """BFS from the cut inside the piece {v : lo <= top_tin[v] < hi} plus the cut."""
    dist = {v: 0 for v in cut}
    label = {v: v for v in cut}
    order = list(cut)
    queue = deque(cut)
    while queue:
        u = queue.popleft()
        du = dist[u]
        if du >= cap:
            continue
        lu = label[u]
        for w in adj[u]:
            if w not in dist and lo <= top_tin[w] < hi:
                dist[w] = du + 1
                label[w] = lu
                order.append(w)
                queue.append(w)
    return dist, label, order


def _cut_parts(adj, cut: Sequence[int], reach: int, dist, label, order):
    """Group cut vertices joined by chains of paths of length <= reach."""
    parent = {v: v for v in cut}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in order:
        dx = dist[x] + 1
        lx = label[x]
        for y in adj[x]:
            dy = dist.get(y)
            if dy is not None and y > x and dx + dy <= reach and label[y] != lx:
                a, b = find(lx), find(label[y])
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in sorted(cut):
        groups.setdefault(find(v), []).append(v)
    parts = sorted(groups.values())
    part_of = {}
    for i, p in enumerate(parts):
        for v in p:
            part_of[v] = i
    return parts, part_of, find


def boundary_partition(g_piece: Graph, cut: Sequence[int], ell: int, theta: int | None = None) -> list[list[int]]:
    """Partition of `cut`: two vertices share a part iff a chain of paths of
    length <= 7 ell inside g_piece joins them.

    When |cut| <= theta the theta-step chains reach every chain, so the full
    transitive closure is returned.
    """
    cut = sorted(set(cut))
    if theta is not None and len(cut) > theta:
        raise ValueError(f"cut of size {len(cut)} exceeds theta={theta}")
    reach = 7 * ell
    dist, label, order = _cut_search(g_piece.adj, cut, reach // 2, [0] * g_piece.n, 0, 1)
    parts, _, _ = _cut_parts(g_piece.adj, cut, reach, dist, label, order)
    return parts


# ---------------------------------------------------------------- recursion


def _solve(ctx: _Ctx, g: Graph, parent: list[int], root: int, bags: list[list[int]], eta: int, col: list[int]):
    """Extend col (0 = uncolored) to all of g; the precolored set lies near the root bag."""
    ctx.stats["levels"] += 1
    if g.n and not all(col):
        if eta == 0:
            _color_stars(ctx, g, parent, root, bags, col)
        else:
            if not bags[root]:
                raise ConstructionError("root bag is empty at eta > 0")
            labels, count = component_labels(g)
            if count == 1:
                _run_connected(ctx, g, parent, root, bags, eta, col)
            else:
                _split_components(ctx, g, parent, root, bags, eta, col, labels, count)
    if ctx.debug and g.n:
        rep = certify(g, Coloring(ctx.ell, ctx.m, col), ctx.table[eta])
        if not rep.passed:
            raise CertificationError(f"level eta={eta} exceeded {ctx.table[eta]}: {rep.worst}")
    return col


def _preorder(parent: list[int], root: int):
    children: list[list[int]] = [[] for _ in parent]
    for t, p in enumerate(parent):
        if p >= 0:
            children[p].append(t)
    order = []
    stack = [root]
    while stack:
        t = stack.pop()
        order.append(t)
        stack.extend(reversed(children[t]))
    return order, children


def _restrict(g, parent, bags, order, verts, nodes, new_root: bool):
    """Materialize G[verts] with the decomposition restricted to `nodes` (in preorder)."""
    sub, verts, idx = induced_subgraph(g, verts)
    nid = {t: i for i, t in enumerate(nodes)}
    sparent = [nid.get(parent[t], -1) for t in nodes]
    sbags = [[idx[v] for v in bags[t] if v in idx] for t in nodes]
    sroot = 0
    if new_root:
        sbags.append([sbags[0][0]])
        sparent.append(-1)
        sparent[0] = len(sbags) - 1
        sroot = len(sbags) - 1
    return sub, verts, sparent, sroot, sbags


def _split_components(ctx, g, parent, root, bags, eta, col, labels, count):
    order, _ = _preorder(parent, root)
    members: list[list[int]] = [[] for _ in range(count)]
    for v in range(g.n):
        members[labels[v]].append(v)
    nodes: list[list[int]] = [[] for _ in range(count)]
    for t in order:
        for lab in {labels[v] for v in bags[t]}:
            nodes[lab].append(t)
    at_root = {labels[v] for v in bags[root]}
    group = sorted(v for lab in at_root for v in members[lab])
    stray = [v for v in range(g.n) if col[v] and labels[v] not in at_root]
    if stray:
        raise ColoringError(f"precolored vertices {stray[:5]} are not near the root bag")
    if len(group) == g.n:
        _run_connected(ctx, g, parent, root, bags, eta, col)
        return
    pos = {t: i for i, t in enumerate(order)}
    group_nodes = sorted({t for lab in at_root for t in nodes[lab]}, key=pos.__getitem__)
    sub, verts, sp, sr, sb = _restrict(g, parent, bags, order, group, group_nodes, False)
    scol = [col[v] for v in verts]
    _run_connected(ctx, sub, sp, sr, sb, eta, scol)
    for v, x in zip(verts, scol):
        col[v] = x
    for lab in range(count):
        if lab in at_root:
            continue
        sub, verts, sp, sr, sb = _restrict(g, parent, bags, order, members[lab], nodes[lab], True)
        scol = _solve(ctx, sub, sp, sr, sb, eta, [0] * sub.n)
        for v, x in zip(verts, scol):
            col[v] = x


def _color_stars(ctx, g, parent, root, bags, col):
    """eta = 0: cutting empty adhesions leaves stars, each colored by the cover colorer."""
    order, _ = _preorder(parent, root)
    part = [0] * len(bags)
    count = 1
    for t in order[1:]:
        p = parent[t]
        pb = set(bags[p])
        if any(v in pb for v in bags[t]):
            part[t] = part[p]
        else:
            part[t] = count
            count += 1
    vpart = [-1] * g.n
    for t in order:
        for v in bags[t]:
            if vpart[v] < 0:
                vpart[v] = part[t]
            elif vpart[v] != part[t]:
                raise ConstructionError(f"vertex {v} crosses an empty adhesion")
    groups: list[list[int]] = [[] for _ in range(count)]
    for v in range(g.n):
        if not col[v]:
            groups[vpart[v]].append(v)
    for verts in groups:
        if not verts:
            continue
        sub, verts, _ = induced_subgraph(g, verts)
        sc = ctx.fprime(sub, ctx.ell, ctx.m, {})
        for v, x in zip(verts, sc.color):
            col[v] = x


def _run_connected(ctx, g, parent, root, bags, eta, col):
    n = g.n
    adj = g.adj
    ell, m = ctx.ell, ctx.m
    k = len(bags)
    order, children = _preorder(parent, root)
    tin = [0] * k
    for i, t in enumerate(order):
        tin[t] = i
    size = [1] * k
    for t in reversed(order):
        if parent[t] >= 0:
            size[parent[t]] += size[t]
    top_tin = [-1] * n
    for t in order:
        it = tin[t]
        for v in bags[t]:
            if top_tin[v] < 0:
                top_tin[v] = it
    if min(top_tin, default=0) < 0:
        raise DecompositionError("cover", "a vertex is in no bag")
    cnt = [0] * (k + 1)
    for v in range(n):
        cnt[top_tin[v] + 1] += 1
    intern = [0] * (k + 1)
    for t in range(k):
        if children[t]:
            intern[tin[t] + 1] += 1
    for i in range(k):
        cnt[i + 1] += cnt[i]
        intern[i + 1] += intern[i]

    seen = [0] * n
    dist = [0] * n
    cap = 3 * ell
    reach = 7 * ell
    stamp = 0
    # task: (root bag, child nodes, lo, hi, saturated list or None)
    tasks = [(list(bags[root]), children[root], 0, k, None)]
    while tasks:
        R, kids, lo, hi, zlist = tasks.pop()
        ctx.stats["tasks"] += 1
        stamp += 1
        initial = zlist is None
        if initial:
            zlist = list(R)
            for v in R:
                seen[v] = stamp
                dist[v] = 0
            queue = deque(R)
            while queue:
                u = queue.popleft()
                du = dist[u]
                if du >= cap:
                    continue
                for w in adj[u]:
                    if seen[w] != stamp and lo <= top_tin[w] < hi:
                        seen[w] = stamp
                        dist[w] = du + 1
                        queue.append(w)
                        zlist.append(w)
            far = [v for v in range(n) if col[v] and seen[v] != stamp]
            if far:
                raise ColoringError(f"precolored vertices {far[:5]} lie farther than {cap} from the root bag")
            piece = n
            inner = intern[hi] - intern[lo]
        else:
            for v in zlist:
                seen[v] = stamp
            piece = len(R) + cnt[hi] - cnt[lo]
            inner = 1 + intern[hi] - intern[lo]
        for v in zlist:
            if not col[v]:
                col[v] = m
        if len(zlist) == piece:
            continue
        measure = inner + 2 * piece - len(zlist)

        # explored core: nodes whose bag meets the saturated set
        core_nodes: list[tuple[int, int]] = []
        cuts: list[tuple[int, int]] = []
        queue = deque((t, 0) for t in kids)
        while queue:
            t, hp = queue.popleft()
            bag = bags[t]
            if any(seen[v] == stamp for v in bag):
                core_nodes.append((t, hp))
                hid = len(core_nodes)
                queue.extend((c, hid) for c in children[t])
            else:
                cuts.append((t, hp))

        hverts = set()
        for t, _ in core_nodes:
            for v in bags[t]:
                if seen[v] != stamp:
                    hverts.add(v)
        fronts = []
        for t, hp in cuts:
            pset = set(R if hp == 0 else bags[core_nodes[hp - 1][0]])
            cut = [v for v in bags[t] if v in pset]
            lo2, hi2 = tin[t], tin[t] + size[t]
            if not cut:
                if cnt[hi2] != cnt[lo2]:
                    raise ConstructionError(f"empty cut above node {t} separates vertices from the root")
                continue
            d, lab, reached = _cut_search(adj, cut, reach // 2, top_tin, lo2, hi2)
            parts, part_of, find = _cut_parts(adj, cut, reach, d, lab, reached)
            fronts.append((t, hp, cut, parts, part_of, find, d, lab, reached))

        hlist = sorted(hverts)
        hidx = {v: i for i, v in enumerate(hlist)}
        hadj = [[hidx[y] for y in adj[x] if y in hidx] for x in hlist]
        hparent = [-1] + [hp for _, hp in core_nodes]
        hbags: list[list[int]] = [[]] + [[hidx[v] for v in bags[t] if v in hidx] for t, _ in core_nodes]
        gadget_base = []
        gadgets = []
        for j, (t, hp, cut, parts, *_rest) in enumerate(fronts):
            gadget_base.append(len(hadj))
            for i, Y in enumerate(parts):
                gid = len(hadj)
                hadj.append([hidx[y] for y in Y])
                for y in Y:
                    hadj[hidx[y]].append(gid)
                gadgets.append((j, i))
                hparent.append(hp)
                hbags.append([hidx[v] for v in cut] + [gid])
        H = Graph(len(hadj), hadj)
        if ctx.trace is not None:
            ctx.trace.append((
                GadgetGraph(H, hlist, gadgets),
                [Frontier(f[0], f[2], f[3]) for f in fronts],
                sorted(zlist),
            ))
        hroot = 0
        if eta - 1 >= 1 and H.n:
            depth = [0] * len(hbags)
            for i in range(1, len(hbags)):
                depth[i] = depth[hparent[i]] + 1
            t0 = min((depth[i], i) for i in range(len(hbags)) if hbags[i])[1]
            v0 = hbags[t0][0]
            i = t0
            while i >= 0:
                if v0 not in hbags[i]:
                    insort(hbags[i], v0)
                i = hparent[i]
            hbags.append([v0])
            hparent.append(-1)
            hroot = len(hbags) - 1
            hparent[0] = hroot
        if H.n:
            hcol = _solve(ctx, H, hparent, hroot, hbags, eta - 1, [0] * H.n)
            for i, v in enumerate(hlist):
                col[v] = hcol[i]
        else:
            hcol = []

        for j, (t, hp, cut, parts, part_of, find, d, lab, reached) in enumerate(fronts):
            base = gadget_base[j]
            sub_z = []
            for x in reached:
                dx = d[x]
                if dx > cap:
                    break
                sub_z.append(x)
                if dx == 0:
                    continue
                if dx <= ell:
                    col[x] = hcol[base + part_of[find(lab[x])]]
                elif dx <= 2 * ell:
                    col[x] = 1
                else:
                    col[x] = 2
            lo2, hi2 = tin[t], tin[t] + size[t]
            sub_piece = len(cut) + cnt[hi2] - cnt[lo2]
            if len(sub_z) == sub_piece:
                continue
            if len(cut) > eta:
                if children[t] or sub_piece > len(cut) + 1:
                    raise ConstructionError(f"node {t} hangs off a cut larger than eta but is not a small leaf")
                for v in bags[t]:
                    if not col[v]:
                        col[v] = 1
                continue
            sub_measure = 1 + intern[hi2] - intern[lo2] + 2 * sub_piece - len(sub_z)
            assert sub_measure < measure, "recursion measure failed to decrease"
            tasks.append((cut, [t], lo2, hi2, sub_z))


# ---------------------------------------------------------------- entry points


def construction_bound(con: Construction, ell: int) -> int:
    N = con.colorer_Fprime.bound(ell)
    return bound_tree_extension(con.eta, con.theta, ell, N, N)


def color_construction(
    g: Graph,
    con: Construction,
    ell: int,
    m: int = 2,
    precoloring: Mapping[int, int] | None = None,
    debug: bool | None = None,
    check: bool = True,
    trace: list | None = None,
) -> tuple[Coloring, int]:
    """Extend `precoloring` (vertices within 3 ell of the root bag) to an m-coloring of G^ell.

    Returns the coloring and the bound it satisfies by construction.
    """
    if m < 2:
        raise ColoringError("at least two colors are needed")
    if ell < 1:
        raise ColoringError("ell must be >= 1")
    pre = dict(precoloring or {})
    check_precoloring(g.n, m, pre)
    if check:
        validate_construction(g, con)
    rtd = con.rtd
    if pre:
        near = bounded_bfs(g, rtd.bags[rtd.root], 3 * ell)
        far = sorted(v for v in pre if v not in near)
        if far:
            raise ColoringError(f"precolored vertices {far[:5]} lie farther than {3 * ell} from the root bag")
    N = con.colorer_Fprime.bound(ell)
    table = tree_extension_table(con.eta, con.theta, ell, N, N)
    # eta-recursion nests a few frames per level and eta can reach a few hundred
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 200 + 12 * con.eta))
    ctx = _Ctx(ell, m, con.colorer_Fprime, table, DEBUG if debug is None else debug, trace)
    col = [0] * g.n
    for v, x in pre.items():
        col[v] = x
    # the recursion allocates many short-lived lists but no cycles; generational
    # scans over a large graph only cost time here
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        _solve(ctx, g, list(rtd.parent), rtd.root, [list(b) for b in rtd.bags], con.eta, col)
    finally:
        if was_enabled:
            gc.enable()
    for v, x in pre.items():
        assert col[v] == x, "precoloring was overwritten"
    return Coloring(ell, m, col), table[-1]


def color_bounded_treewidth(
    g: Graph,
    ell: int,
    w: int,
    rtd: RootedTreeDecomposition | None = None,
    debug: bool | None = None,
) -> tuple[Coloring, int]:
    """2-coloring of G^ell whose monochromatic components have bounded weak diameter."""
    if g.n == 0:
        return Coloring(ell, 2, []), 0
    if rtd is None:
        rtd = heuristic_td(g)
    con = make_tw_construction(g, rtd, w)
    return color_construction(g, con, ell, 2, debug=debug, check=False)
