"""Graphs, uniform hypergraphs, canonical forms, and the .uhg/.g file formats.

Vertices are always 0-based integers.  `Graph` and `UniformHypergraph` are
immutable; every constructor normalizes edges to sorted tuples and validates
them, so downstream code never sees a malformed instance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, permutations

from .errors import FormatError, ParameterDomainError

GRAPH_FAMILIES = (
    "path",
    "cycle",
    "star",
    "star_plus",
    "delta1",
    "delta2",
    "cycle_two_paths",
    "cycle_two_paths_two_roots",
    "attach_two_paths",
)


def _normalize_edge(edge, n: int, r: int | None = None) -> tuple[int, ...]:
    e = tuple(sorted(int(v) for v in edge))
    if len(set(e)) != len(e):
        raise ParameterDomainError(f"edge {edge!r} repeats a vertex")
    if r is not None and len(e) != r:
        raise ParameterDomainError(f"edge {edge!r} has size {len(e)}, expected {r}")
    if e and (e[0] < 0 or e[-1] >= n):
        raise ParameterDomainError(f"edge {edge!r} out of range for n={n}")
    return e


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: vertex count plus sorted, deduplicated 2-edges."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ParameterDomainError("vertex count must be nonnegative")
        norm = tuple(sorted(_normalize_edge(e, self.n, 2) for e in self.edges))
        if len(set(norm)) != len(norm):
            raise ParameterDomainError("duplicate edges in graph")
        object.__setattr__(self, "edges", norm)

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)


@dataclass(frozen=True)
class UniformHypergraph:
    """r-uniform hypergraph with sorted tuple edges, pairwise distinct.

    Rank 1 is permitted so that links of 2-graphs stay representable.
    """

    r: int
    n: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.r < 1:
            raise ParameterDomainError("rank must be at least 1")
        if self.n < 0:
            raise ParameterDomainError("vertex count must be nonnegative")
        norm = tuple(sorted(_normalize_edge(e, self.n, self.r) for e in self.edges))
        if len(set(norm)) != len(norm):
            raise ParameterDomainError("duplicate hyperedges")
        object.__setattr__(self, "edges", norm)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def incident(self, v: int) -> tuple[tuple[int, ...], ...]:
        return tuple(e for e in self.edges if v in e)

    def is_connected(self) -> bool:
        """True when every pair of vertices is joined through shared-vertex walks.

        A hypergraph with an isolated vertex counts as disconnected; the empty
        hypergraph on 0 or 1 vertices counts as connected.
        """
        if self.n <= 1:
            return True
        seen = {0}
        frontier = [0]
        edges_at = [[] for _ in range(self.n)]
        for e in self.edges:
            for v in e:
                edges_at[v].append(e)
        while frontier:
            v = frontier.pop()
            for e in edges_at[v]:
                for u in e:
                    if u not in seen:
                        seen.add(u)
                        frontier.append(u)
        return len(seen) == self.n

    def strip_isolated(self) -> tuple["UniformHypergraph", tuple[int, ...]]:
        """Drop vertices in no edge; returns (stripped, old labels by new index)."""
        used = sorted({v for e in self.edges for v in e})
        remap = {old: new for new, old in enumerate(used)}
        edges = tuple(tuple(remap[v] for v in e) for e in self.edges)
        return UniformHypergraph(self.r, len(used), edges), tuple(used)


def as_hypergraph(G: Graph) -> UniformHypergraph:
    """View a graph as a 2-uniform hypergraph."""
    return UniformHypergraph(2, G.n, G.edges)


def graph_from_hypergraph(H: UniformHypergraph) -> Graph:
    if H.r != 2:
        raise ParameterDomainError("only rank-2 hypergraphs convert to graphs")
    return Graph(H.n, H.edges)


# ---------------------------------------------------------------------------
# named constructions


def _path_edges(vertices: list[int]) -> list[tuple[int, int]]:
    return [(vertices[i], vertices[i + 1]) for i in range(len(vertices) - 1)]


def construct_graph(family: str, params: list[int], base: Graph | None = None) -> Graph:
    """Build a named graph family member.

    Vertex 0 is the distinguished root where one exists (star center, vertex
    carrying pendant paths, gluing vertex of the two glued cycles).

    families and params:
      path [k]                      -- path on k vertices
      cycle [k]                     -- cycle on k >= 3 vertices
      star [k]                      -- star on k >= 2 vertices, center 0
      star_plus [k]                 -- star on k >= 3 vertices plus one edge
                                       between two leaves
      delta1 [k]                    -- k >= 6: triangle carrying two pendant
                                       paths of lengths floor((k-4)/2) and
                                       ceil((k-4)/2) at vertex 0; k-1 vertices
      delta2 [k]                    -- k >= 6: triangle and a (k-3)-cycle glued
                                       at vertex 0; k-1 vertices
      cycle_two_paths [l, h, j]     -- l-cycle with pendant paths of lengths
                                       h and j at vertex 0
      cycle_two_paths_two_roots [l, v, h, j]
                                    -- l-cycle with a pendant path of length h
                                       at vertex 0 and one of length j at v
      attach_two_paths [u, a, b]    -- `base` graph with pendant paths of
                                       lengths a and b attached at vertex u
    """
    if family not in GRAPH_FAMILIES:
        raise ParameterDomainError(f"unknown family {family!r}")
    p = list(params)

    if family == "attach_two_paths":
        if base is None:
            raise ParameterDomainError("attach_two_paths requires a base graph")
        if len(p) != 3:
            raise ParameterDomainError("attach_two_paths expects [root, a, b]")
        return attach_two_paths(base, p[0], p[1], p[2])
    if base is not None:
        raise ParameterDomainError(f"family {family!r} does not take a base graph")

    if family == "path":
        (k,) = _require_params(p, 1, family)
        if k < 1:
            raise ParameterDomainError("path needs k >= 1")
        return Graph(k, tuple(_path_edges(list(range(k)))))

    if family == "cycle":
        (k,) = _require_params(p, 1, family)
        if k < 3:
            raise ParameterDomainError("cycle needs k >= 3")
        edges = _path_edges(list(range(k))) + [(0, k - 1)]
        return Graph(k, tuple(edges))

    if family == "star":
        (k,) = _require_params(p, 1, family)
        if k < 2:
            raise ParameterDomainError("star needs k >= 2")
        return Graph(k, tuple((0, i) for i in range(1, k)))

    if family == "star_plus":
        (k,) = _require_params(p, 1, family)
        if k < 3:
            raise ParameterDomainError("star_plus needs k >= 3")
        edges = [(0, i) for i in range(1, k)] + [(1, 2)]
        return Graph(k, tuple(edges))

    if family == "delta1":
        (k,) = _require_params(p, 1, family)
        if k < 6:
            raise ParameterDomainError("delta1 needs k >= 6")
        a = (k - 4) // 2
        b = (k - 4) - a
        g = construct_graph("cycle", [3])
        return attach_two_paths(g, 0, a, b)

    if family == "delta2":
        (k,) = _require_params(p, 1, family)
        if k < 6:
            raise ParameterDomainError("delta2 needs k >= 6")
        edges = [(0, 1), (0, 2), (1, 2)]
        ring = [0] + list(range(3, k - 1))
        edges += _path_edges(ring) + [(0, ring[-1])]
        return Graph(k - 1, tuple(edges))

    if family == "cycle_two_paths":
        l, h, j = _require_params(p, 3, family)
        g = construct_graph("cycle", [l])
        return attach_two_paths(g, 0, h, j)

    # cycle_two_paths_two_roots
    l, v, h, j = _require_params(p, 4, family)
    if not 0 <= v < l:
        raise ParameterDomainError("second root must lie on the cycle")
    g = construct_graph("cycle", [l])
    g = _attach_path(g, 0, h)
    return _attach_path(g, v, j)


def _require_params(p: list[int], count: int, family: str) -> list[int]:
    if len(p) != count:
        raise ParameterDomainError(f"family {family!r} expects {count} parameter(s), got {len(p)}")
    return p


def _attach_path(G: Graph, root: int, length: int) -> Graph:
    if length < 0:
        raise ParameterDomainError("pendant path length must be nonnegative")
    if not 0 <= root < G.n:
        raise ParameterDomainError(f"root {root} out of range")
    if length == 0:
        return G
    chain = [root] + list(range(G.n, G.n + length))
    return Graph(G.n + length, G.edges + tuple(_path_edges(chain)))


def attach_two_paths(G: Graph, root: int, a: int, b: int) -> Graph:
    """Attach two pendant paths of lengths a and b (edge counts) at `root`."""
    return _attach_path(_attach_path(G, root, a), root, b)


# ---------------------------------------------------------------------------
# hypergraph operations


def suspension(H: UniformHypergraph | Graph, t: int = 1) -> UniformHypergraph:
    """Enlarge every edge by the same t fresh vertices (labels n .. n+t-1)."""
    if isinstance(H, Graph):
        H = as_hypergraph(H)
    if t < 1:
        raise ParameterDomainError("suspension needs t >= 1")
    if H.m == 0:
        raise ParameterDomainError("suspension of an edgeless hypergraph is ambiguous")
    fresh = tuple(range(H.n, H.n + t))
    edges = tuple(e + fresh for e in H.edges)
    return UniformHypergraph(H.r + t, H.n + t, edges)


def expansion(G: Graph, r: int) -> UniformHypergraph:
    """Give every graph edge its own r-2 fresh vertices (the r-expansion).

    Fresh vertices are numbered consecutively from G.n in input edge order, so
    the i-th graph edge picks up vertices G.n + i*(r-2) .. G.n + (i+1)*(r-2) - 1.
    """
    if r < 2:
        raise ParameterDomainError("expansion needs r >= 2")
    edges = []
    nxt = G.n
    for e in G.edges:
        edges.append(tuple(e) + tuple(range(nxt, nxt + r - 2)))
        nxt += r - 2
    return UniformHypergraph(r, nxt, tuple(edges))


def link(H: UniformHypergraph, v: int) -> tuple[UniformHypergraph, tuple[int, ...]]:
    """Link of a vertex: the (r-1)-graph {e - {v} : v in e}, v removed.

    Returns (link hypergraph, old labels indexed by new label).  The vertex
    set is V(H) - {v} relabeled order-preservingly, so the mapping also serves
    to undo the relabeling.  A vertex in no edge yields an empty link.
    """
    if not 0 <= v < H.n:
        raise ParameterDomainError(f"vertex {v} out of range")
    if H.r < 2:
        raise ParameterDomainError("link needs rank >= 2")
    keep = [u for u in range(H.n) if u != v]
    remap = {old: new for new, old in enumerate(keep)}
    edges = tuple(tuple(remap[u] for u in e if u != v) for e in H.edges if v in e)
    return UniformHypergraph(H.r - 1, H.n - 1, edges), tuple(keep)


# ---------------------------------------------------------------------------
# canonical forms


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Isomorphism-invariant key: rank, stripped vertex count, minimal edge encoding."""

    r: int
    n: int
    edges: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def text(self) -> str:
        body = ";".join(",".join(str(v) for v in e) for e in self.edges)
        return f"{self.r}:{self.n}:{body}"


def _canonical_edges(r: int, n: int, edges: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    """Colex-minimal edge encoding over vertex relabelings.

    Labels are handed out in increasing order, so the edges whose vertices are
    all labeled form a prefix of the final colex-sorted encoding.  Comparing
    that prefix against the incumbent prunes exactly (prefix pruning would be
    unsound under plain lexicographic edge order: an edge finished later can
    still sort ahead of one finished earlier).
    """
    if n == 0:
        return ()
    edges_at: list[list[int]] = [[] for _ in range(n)]
    for i, e in enumerate(edges):
        for v in e:
            edges_at[v].append(i)
    # incumbent from the identity labeling; stored as reversed tuples so that
    # plain comparison is colex comparison
    best = sorted(e[::-1] for e in edges)
    remaining = [len(e) for e in edges]
    label = [-1] * n

    def descend(d: int, prefix: list[tuple[int, ...]]) -> None:
        nonlocal best
        if d == n:
            if prefix < best:
                best = list(prefix)
            return
        for v in range(n):
            if label[v] >= 0:
                continue
            label[v] = d
            finished = []
            for i in edges_at[v]:
                remaining[i] -= 1
                if remaining[i] == 0:
                    finished.append(tuple(sorted((label[u] for u in edges[i]), reverse=True)))
            cand = prefix + sorted(finished) if finished else prefix
            if cand <= best[: len(cand)]:
                descend(d + 1, cand)
            for i in edges_at[v]:
                remaining[i] += 1
            label[v] = -1

    descend(0, [])
    return tuple(e[::-1] for e in best)


def canonical_form(H: UniformHypergraph | Graph) -> CanonicalForm:
    """Canonical key after stripping isolated vertices.

    Two inputs get equal keys exactly when they are isomorphic as hypergraphs
    on their non-isolated vertices.  Exact for the sizes this package targets
    (n <= 12 after stripping).
    """
    if isinstance(H, Graph):
        H = as_hypergraph(H)
    stripped, _ = H.strip_isolated()
    enc = _canonical_edges(stripped.r, stripped.n, stripped.edges)
    return CanonicalForm(stripped.r, stripped.n, enc)


def brute_force_canonical_edges(H: UniformHypergraph) -> tuple[tuple[int, ...], ...]:
    """Reference encoding: colex minimum over all vertex permutations (small n)."""
    stripped, _ = H.strip_isolated()
    n = stripped.n
    best = None
    for perm in permutations(range(n)):
        enc = sorted(tuple(sorted((perm[v] for v in e), reverse=True)) for e in stripped.edges)
        if best is None or enc < best:
            best = enc
    return tuple(e[::-1] for e in best) if best is not None else ()


def is_isomorphic(a: UniformHypergraph | Graph, b: UniformHypergraph | Graph) -> bool:
    """Isomorphism after stripping isolated vertices, via canonical keys."""
    return canonical_form(a) == canonical_form(b)


# ---------------------------------------------------------------------------
# graph statistics


@dataclass(frozen=True)
class GraphStats:
    """Connectivity, metric, and clique statistics of a graph.

    `diameter` and `girth` are None when undefined (disconnected graph,
    acyclic graph).
    """

    connected: bool
    diameter: int | None
    girth: int | None
    max_degree: int
    clique_number: int


def _bfs_dist(adj: list[list[int]], s: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[s] = 0
    frontier = [s]
    while frontier:
        nxt = []
        for v in frontier:
            for u in adj[v]:
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    nxt.append(u)
        frontier = nxt
    return dist


def _girth(G: Graph) -> int | None:
    # Min over BFS roots of the shortest closed walk witnessed by a non-tree
    # edge; every such walk contains a cycle of at most its length, and the
    # true girth is hit from any vertex on a shortest cycle.
    adj = G.adjacency()
    best = math.inf
    for s in range(G.n):
        dist = [-1] * G.n
        parent = [-1] * G.n
        dist[s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for v in frontier:
                for u in adj[v]:
                    if dist[u] < 0:
                        dist[u] = dist[v] + 1
                        parent[u] = v
                        nxt.append(u)
                    elif u != parent[v]:
                        best = min(best, dist[u] + dist[v] + 1)
            frontier = nxt
    return None if best is math.inf else int(best)


def _clique_number(G: Graph) -> int:
    if G.n == 0:
        return 0
    if G.m == 0:
        return 1
    masks = [0] * G.n
    for a, b in G.edges:
        masks[a] |= 1 << b
        masks[b] |= 1 << a
    best = 1

    def expand(size: int, cand: int) -> None:
        nonlocal best
        if cand == 0:
            best = max(best, size)
            return
        while cand:
            if size + bin(cand).count("1") <= best:
                return
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            expand(size + 1, cand & masks[v])

    expand(0, (1 << G.n) - 1)
    return best


def graph_stats(G: Graph) -> GraphStats:
    """Compute GraphStats by BFS sweeps and a branch-and-bound clique search."""
    adj = G.adjacency()
    connected = True
    diameter: int | None = 0 if G.n > 0 else None
    if G.n > 0:
        ecc = []
        for s in range(G.n):
            dist = _bfs_dist(adj, s)
            if min(dist) < 0:
                connected = False
                break
            ecc.append(max(dist))
        diameter = max(ecc) if connected else None
    max_degree = max((G.degree(v) for v in range(G.n)), default=0)
    return GraphStats(
        connected=connected,
        diameter=diameter,
        girth=_girth(G),
        max_degree=max_degree,
        clique_number=_clique_number(G),
    )


# ---------------------------------------------------------------------------
# file formats


def format_uhg(H: UniformHypergraph) -> str:
    """Serialize: first line `r n m`, then one sorted edge per line, edges in
    ascending tuple order."""
    lines = [f"{H.r} {H.n} {H.m}"]
    lines += [" ".join(str(v) for v in e) for e in H.edges]
    return "\n".join(lines) + "\n"


def parse_uhg(text: str) -> UniformHypergraph:
    """Strict parser for the format emitted by format_uhg (bit-exact round trip)."""
    lines = text.split("\n")
    if not lines or lines[-1] != "":
        raise FormatError("missing trailing newline")
    lines = lines[:-1]
    if any(l == "" for l in lines):
        raise FormatError("blank line in .uhg payload")
    if not lines:
        raise FormatError("empty .uhg payload")
    head = lines[0].split(" ")
    if len(head) != 3:
        raise FormatError("header must be 'r n m'")
    try:
        r, n, m = (int(x) for x in head)
    except ValueError as exc:
        raise FormatError("non-integer header field") from exc
    if f"{r} {n} {m}" != lines[0]:
        raise FormatError("non-canonical header")
    if len(lines) - 1 != m:
        raise FormatError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for raw in lines[1:]:
        parts = raw.split(" ")
        if len(parts) != r or any(p == "" or p.strip() != p for p in parts):
            raise FormatError(f"bad edge line {raw!r}")
        try:
            e = tuple(int(p) for p in parts)
        except ValueError as exc:
            raise FormatError(f"non-integer vertex in {raw!r}") from exc
        if any(str(v) != p for v, p in zip(e, parts)):
            raise FormatError(f"non-canonical integer in {raw!r}")
        if list(e) != sorted(set(e)):
            raise FormatError(f"edge line {raw!r} not strictly ascending")
        edges.append(e)
    if edges != sorted(edges):
        raise FormatError("edge lines not in ascending order")
    try:
        return UniformHypergraph(r, n, tuple(edges))
    except ParameterDomainError as exc:
        raise FormatError(str(exc)) from exc


def format_graph(G: Graph) -> str:
    """Serialize a graph: `n m` then one sorted pair per line, ascending."""
    lines = [f"{G.n} {G.m}"]
    lines += [f"{a} {b}" for a, b in G.edges]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Strict parser for the format emitted by format_graph."""
    lines = text.split("\n")
    if not lines or lines[-1] != "":
        raise FormatError("missing trailing newline")
    lines = lines[:-1]
    if any(l == "" for l in lines):
        raise FormatError("blank line in graph payload")
    if not lines:
        raise FormatError("empty graph payload")
    head = lines[0].split(" ")
    if len(head) != 2:
        raise FormatError("header must be 'n m'")
    try:
        n, m = (int(x) for x in head)
    except ValueError as exc:
        raise FormatError("non-integer header field") from exc
    if f"{n} {m}" != lines[0]:
        raise FormatError("non-canonical header")
    if len(lines) - 1 != m:
        raise FormatError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for raw in lines[1:]:
        parts = raw.split(" ")
        if len(parts) != 2:
            raise FormatError(f"bad edge line {raw!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise FormatError(f"non-integer vertex in {raw!r}") from exc
        if (str(a), str(b)) != (parts[0], parts[1]) or not a < b:
            raise FormatError(f"edge line {raw!r} not canonical")
        edges.append((a, b))
    if edges != sorted(edges):
        raise FormatError("edge lines not in ascending order")
    try:
        return Graph(n, tuple(edges))
    except ParameterDomainError as exc:
        raise FormatError(str(exc)) from exc
