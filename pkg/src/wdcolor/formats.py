"""Text and JSON formats at the file boundary.

.gr and .td follow the PACE conventions: 1-indexed ids, "c" comment lines.
Internally everything is 0-indexed. A written .td records its root as a
"c root <node>" comment; .td files without one are rooted at the bag that
holds the smallest vertex.
"""
from __future__ import annotations

import json
from typing import IO, Iterable, Iterator

from .coloring import Coloring, ColoringError
from .graph import Graph, build_graph
from .witness import Construction, Layering, RootedTreeDecomposition, root_at_min_vertex


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


def _lines(text: str | Iterable[str]) -> Iterator[tuple[int, list[str], str]]:
    src = text.splitlines() if isinstance(text, str) else text
    for no, raw in enumerate(src, 1):
        raw = raw.strip()
        if raw:
            yield no, raw.split(), raw


def _ints(tokens: list[str], line: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(tokens)!r}", line) from None


# ---------------------------------------------------------------- .gr


def parse_gr(text: str | Iterable[str]) -> Graph:
    n = m = None
    edges = []
    for no, tok, _ in _lines(text):
        if tok[0] == "c":
            continue
        if tok[0] == "p":
            if n is not None:
                raise FormatError("second header line", no)
            if len(tok) != 4 or tok[1] != "tw":
                raise FormatError("header must be 'p tw <n> <m>'", no)
            n, m = _ints(tok[2:], no)
            if n < 0 or m < 0:
                raise FormatError("negative counts in header", no)
            continue
        if n is None:
            raise FormatError("edge line before the 'p tw' header", no)
        if len(tok) != 2:
            raise FormatError("edge line must have exactly two ids", no)
        u, v = _ints(tok, no)
        for x in (u, v):
            if not 1 <= x <= n:
                raise FormatError(f"vertex id {x} outside 1..{n}", no)
        if u == v:
            raise FormatError(f"self-loop at vertex {u}", no)
        edges.append((u - 1, v - 1))
    if n is None:
        raise FormatError("missing 'p tw' header")
    if len(edges) != m:
        raise FormatError(f"header declares {m} edges, found {len(edges)}")
    return build_graph(n, edges)


def write_gr(g: Graph, out: IO[str] | None = None) -> str:
    lines = [f"p tw {g.n} {g.m}"] + [f"{u + 1} {v + 1}" for u, v in g.edges()]
    text = "\n".join(lines) + "\n"
    if out is not None:
        out.write(text)
    return text


# ---------------------------------------------------------------- .td


def parse_td(text: str | Iterable[str], n: int | None = None) -> RootedTreeDecomposition:
    """Parse a .td; `n` (if given) must match the declared vertex count."""
    header = None
    bags: dict[int, list[int]] = {}
    edges = []
    root = None
    for no, tok, _ in _lines(text):
        if tok[0] == "c":
            if len(tok) == 3 and tok[1] == "root":
                root = _ints(tok[2:], no)[0] - 1
            continue
        if tok[0] == "s":
            if header is not None:
                raise FormatError("second header line", no)
            if len(tok) != 5 or tok[1] != "td":
                raise FormatError("header must be 's td <bags> <maxbagsize> <n>'", no)
            header = _ints(tok[2:], no)
            if n is not None and header[2] != n:
                raise FormatError(f"decomposition is for {header[2]} vertices, graph has {n}", no)
            continue
        if header is None:
            raise FormatError("line before the 's td' header", no)
        nb, maxb, nv = header
        if tok[0] == "b":
            vals = _ints(tok[1:], no)
            if not vals:
                raise FormatError("bag line without an index", no)
            i, members = vals[0], vals[1:]
            if not 1 <= i <= nb:
                raise FormatError(f"bag index {i} outside 1..{nb}", no)
            if i in bags:
                raise FormatError(f"bag {i} listed twice", no)
            for v in members:
                if not 1 <= v <= nv:
                    raise FormatError(f"vertex id {v} outside 1..{nv}", no)
            if len(members) > maxb:
                raise FormatError(f"bag {i} has {len(members)} > declared max {maxb} vertices", no)
            bags[i] = sorted({v - 1 for v in members})
            continue
        if len(tok) != 2:
            raise FormatError("tree edge line must have exactly two bag indices", no)
        a, b = _ints(tok, no)
        for x in (a, b):
            if not 1 <= x <= nb:
                raise FormatError(f"bag index {x} outside 1..{nb}", no)
        edges.append((a - 1, b - 1))
    if header is None:
        raise FormatError("missing 's td' header")
    nb = header[0]
    if len(bags) != nb:
        raise FormatError(f"header declares {nb} bags, found {len(bags)}")
    if nb == 0:
        return RootedTreeDecomposition([-1], 0, [[]])
    if len(edges) != nb - 1:
        raise FormatError(f"a tree on {nb} bags needs {nb - 1} edges, found {len(edges)}")
    nbrs: list[list[int]] = [[] for _ in range(nb)]
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    parent = [-2] * nb
    parent[0] = -1
    stack = [0]
    while stack:
        t = stack.pop()
        for s in nbrs[t]:
            if parent[s] == -2:
                parent[s] = t
                stack.append(s)
    if -2 in parent:
        raise FormatError("tree edges do not connect all bags")
    rtd = RootedTreeDecomposition(parent, 0, [bags[i + 1] for i in range(nb)])
    if root is not None:
        if not 0 <= root < nb:
            raise FormatError(f"declared root {root + 1} outside 1..{nb}")
        return rtd.rerooted(root) if root != 0 else rtd
    return root_at_min_vertex(rtd)


def write_td(rtd: RootedTreeDecomposition, n: int, out: IO[str] | None = None) -> str:
    maxb = max((len(b) for b in rtd.bags), default=0)
    lines = [f"s td {rtd.num_nodes} {maxb} {n}", f"c root {rtd.root + 1}"]
    for i, bag in enumerate(rtd.bags):
        lines.append(" ".join(["b", str(i + 1), *(str(v + 1) for v in sorted(bag))]))
    lines += [f"{p + 1} {t + 1}" for p, t in rtd.tree_edges()]
    text = "\n".join(lines) + "\n"
    if out is not None:
        out.write(text)
    return text


# ---------------------------------------------------------------- JSON documents


def _load(doc: str | dict) -> dict:
    if isinstance(doc, dict):
        return doc
    try:
        data = json.loads(doc)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e.msg}", e.lineno) from None
    if not isinstance(data, dict):
        raise FormatError("expected a JSON object")
    return data


def layering_to_json(ly: Layering) -> dict:
    return {"layers": list(ly.layer)}


def layering_from_json(doc: str | dict) -> Layering:
    data = _load(doc)
    layers = data.get("layers")
    if not isinstance(layers, list) or not all(isinstance(x, int) and x >= 0 for x in layers):
        raise FormatError("'layers' must be a list of nonnegative integers")
    return Layering(list(layers))


def coloring_to_json(c: Coloring) -> dict:
    return {"ell": c.ell, "m": c.m, "colors": list(c.color)}


def coloring_from_json(doc: str | dict) -> Coloring:
    data = _load(doc)
    try:
        ell, m, colors = data["ell"], data["m"], data["colors"]
    except KeyError as e:
        raise FormatError(f"coloring JSON lacks key {e.args[0]!r}") from None
    if not isinstance(colors, list) or not all(isinstance(x, int) for x in colors):
        raise FormatError("'colors' must be a list of integers")
    try:
        return Coloring(int(ell), int(m), list(colors))
    except ColoringError as e:
        raise FormatError(str(e)) from None


def construction_to_json(con: Construction) -> dict:
    def name(c):
        return None if c is None else getattr(c, "name", type(c).__name__)

    def param(c):
        for attr in ("max_vertices", "cover_size"):
            if hasattr(c, attr):
                return getattr(c, attr)
        return None

    return {
        "eta": con.eta,
        "theta": con.theta,
        "root": con.rtd.root,
        "colorer_F": {"name": name(con.colorer_F), "param": param(con.colorer_F)},
        "colorer_Fprime": {"name": name(con.colorer_Fprime), "param": param(con.colorer_Fprime)},
    }


def construction_from_json(doc: str | dict, rtd: RootedTreeDecomposition) -> Construction:
    """Rebuild a Construction around `rtd`; colorers come from the centered registry."""
    from .centered import COLORERS

    data = _load(doc)
    try:
        eta, theta = int(data["eta"]), int(data["theta"])
    except (KeyError, TypeError, ValueError):
        raise FormatError("construction JSON needs integer 'eta' and 'theta'") from None
    root = data.get("root", rtd.root)
    if not isinstance(root, int) or not 0 <= root < rtd.num_nodes:
        raise FormatError(f"root {root!r} is not a node of the decomposition")
    if root != rtd.root:
        rtd = rtd.rerooted(root)

    def colorer(key, default_param):
        spec = data.get(key)
        if spec is None:
            return None
        if isinstance(spec, str):
            spec = {"name": spec}
        cls = COLORERS.get(spec.get("name"))
        if cls is None:
            raise FormatError(f"unknown colorer {spec.get('name')!r} for {key}; known: {', '.join(COLORERS)}")
        p = spec.get("param")
        return cls(default_param if p is None else int(p))

    return Construction(rtd, eta, theta, colorer("colorer_F", theta), colorer("colorer_Fprime", theta))
