"""Berge hypergraphs of a base graph: membership test and bounded enumeration.

An r-uniform hypergraph H is a Berge copy of a graph G when some bijection
between E(G) and E(H) maps every graph edge into (a superset of) its image.
Every copy contains V(G) literally, so enumerating over a fixed vertex pool
V(G) plus `extra` fresh vertices is exhaustive up to isomorphism for copies
with at most n(G) + extra vertices.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from .errors import ParameterDomainError, ResourceGuardError
from .hgraph import (
    CanonicalForm,
    Graph,
    UniformHypergraph,
    canonical_form,
    format_graph,
    format_uhg,
    parse_graph,
    parse_uhg,
)


@dataclass(frozen=True)
class BergeEmbedding:
    """Witness that H contains a Berge copy of G.

    `assignment[i]` is the hyperedge image of graph edge i; `vertex_map[v]`
    is the H-vertex realizing G-vertex v (identity when omitted).  Each graph
    edge, pushed through the vertex map, is contained in its image.
    """

    assignment: tuple[tuple[int, ...], ...]
    vertex_map: tuple[int, ...] | None = None

    def mapped_edge(self, graph_edge: tuple[int, int]) -> tuple[int, ...]:
        if self.vertex_map is None:
            return graph_edge
        return tuple(sorted(self.vertex_map[v] for v in graph_edge))


@dataclass(frozen=True)
class CatalogEntry:
    hypergraph: UniformHypergraph
    key: CanonicalForm
    witness: BergeEmbedding


@dataclass(frozen=True)
class BergeCatalog:
    """Deduplicated Berge copies of `base`, sorted by canonical key."""

    base: Graph
    r: int
    extra: int
    entries: tuple[CatalogEntry, ...]
    diagnostic: str | None = None

    @property
    def count(self) -> int:
        return len(self.entries)

    def keys(self) -> tuple[CanonicalForm, ...]:
        return tuple(e.key for e in self.entries)

    def save(self, directory: str) -> None:
        os.makedirs(directory, exist_ok=True)
        for i, entry in enumerate(self.entries):
            with open(os.path.join(directory, f"{i:05d}.uhg"), "w") as fh:
                fh.write(format_uhg(entry.hypergraph))
        index = {
            "base": format_graph(self.base),
            "r": self.r,
            "extra": self.extra,
            "count": self.count,
            "keys": [k.text for k in self.keys()],
        }
        with open(os.path.join(directory, "index.json"), "w") as fh:
            json.dump(index, fh, indent=2, sort_keys=True)
            fh.write("\n")


def load_catalog_hypergraphs(directory: str) -> tuple[Graph, list[UniformHypergraph]]:
    """Read back a saved catalog's base graph and entry hypergraphs."""
    with open(os.path.join(directory, "index.json")) as fh:
        index = json.load(fh)
    base = parse_graph(index["base"])
    out = []
    for i in range(index["count"]):
        with open(os.path.join(directory, f"{i:05d}.uhg")) as fh:
            out.append(parse_uhg(fh.read()))
    return base, out


def vertex_bound(G: Graph, r: int) -> int:
    """Vertex budget at which some extremal Berge copy always exists: n(G)+r-2."""
    if r < 2:
        raise ParameterDomainError("rank must be >= 2")
    return G.n + r - 2


RAW_SPACE_LIMIT = 100_000_000

# enumeration results are immutable and repeat across the verify scenarios;
# keyed by exact base serialization, not isomorphism class
_CATALOG_MEMO: dict[tuple[str, int, int], BergeCatalog] = {}


def _raw_space(G: Graph, r: int, extra: int) -> float:
    per_edge = math.comb(G.n + extra - 2, r - 2)
    return float(per_edge) ** G.m if G.m else 0.0


def _enlargements(G: Graph, r: int, pool: int) -> list[list[tuple[int, ...]]]:
    out = []
    for e in G.edges:
        rest = [v for v in range(pool) if v not in e]
        out.append([tuple(c) for c in combinations(rest, r - 2)])
    return out


def _expand_assignments(args) -> dict[CanonicalForm, tuple[tuple[int, ...], UniformHypergraph, BergeEmbedding]]:
    """Complete all assignments under one first-edge choice; dedup locally.

    Ranks (tuples of per-edge choice indices) make merging deterministic: the
    lexicographically first assignment reaching a canonical class supplies its
    stored witness, no matter how work was partitioned.
    """
    G, r, pool, first_choice = args
    per_edge = _enlargements(G, r, pool)
    m = G.m
    found: dict[CanonicalForm, tuple[tuple[int, ...], UniformHypergraph, BergeEmbedding]] = {}

    def record(choices: tuple[int, ...], edges: tuple[tuple[int, ...], ...]) -> None:
        raw = UniformHypergraph(r, pool, edges)
        stripped, _ = raw.strip_isolated()
        key = canonical_form(stripped)
        prev = found.get(key)
        if prev is None or choices < prev[0]:
            witness = BergeEmbedding(assignment=edges)
            found[key] = (choices, stripped, witness)

    def descend(idx: int, choices: list[int], edges: list[tuple[int, ...]], seen: set) -> None:
        if idx == m:
            record(tuple(choices), tuple(edges))
            return
        base_edge = G.edges[idx]
        for c, extra_verts in enumerate(per_edge[idx]):
            he = tuple(sorted(base_edge + extra_verts))
            if he in seen:
                continue
            seen.add(he)
            choices.append(c)
            edges.append(he)
            descend(idx + 1, choices, edges, seen)
            edges.pop()
            choices.pop()
            seen.discard(he)

    if m == 0:
        return found
    he0 = tuple(sorted(G.edges[0] + per_edge[0][first_choice]))
    descend(1, [first_choice], [he0], {he0})
    return found


def enumerate_berge(
    G: Graph,
    r: int,
    extra: int,
    jobs: int = 1,
    force: bool = False,
) -> BergeCatalog:
    """Enumerate Berge copies of G over the pool V(G) + `extra` fresh vertices.

    Complete up to isomorphism for copies on at most n(G)+extra vertices.
    Graph edges are processed in input order and enlargements in lexicographic
    order, so catalog contents and order are deterministic and independent of
    `jobs`.  Raw assignment spaces above RAW_SPACE_LIMIT are refused unless
    `force` is set.
    """
    if r < 3:
        raise ParameterDomainError("enumeration needs rank >= 3")
    if not 0 <= extra <= r - 2:
        raise ParameterDomainError("extra must satisfy 0 <= extra <= r-2")
    if G.m == 0:
        raise ParameterDomainError("base graph needs at least one edge")
    pool = G.n + extra
    if pool < r:
        return BergeCatalog(
            base=G,
            r=r,
            extra=extra,
            entries=(),
            diagnostic=f"pool of {pool} vertices cannot host rank-{r} edges",
        )
    raw = _raw_space(G, r, extra)
    if raw > RAW_SPACE_LIMIT and not force:
        raise ResourceGuardError(
            f"raw assignment space {raw:.3g} exceeds {RAW_SPACE_LIMIT:g}; pass force=True to override"
        )

    memo_key = (format_graph(G), r, extra)
    cached = _CATALOG_MEMO.get(memo_key)
    if cached is not None:
        return cached

    per_first = len(_enlargements(G, r, pool)[0])
    tasks = [(G, r, pool, c) for c in range(per_first)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            partials = list(ex.map(_expand_assignments, tasks))
    else:
        partials = [_expand_assignments(t) for t in tasks]

    merged: dict[CanonicalForm, tuple[tuple[int, ...], UniformHypergraph, BergeEmbedding]] = {}
    for part in partials:
        for key, val in part.items():
            prev = merged.get(key)
            if prev is None or val[0] < prev[0]:
                merged[key] = val
    entries = tuple(
        CatalogEntry(hypergraph=merged[key][1], key=key, witness=merged[key][2])
        for key in sorted(merged)
    )
    catalog = BergeCatalog(base=G, r=r, extra=extra, entries=entries)
    _CATALOG_MEMO[memo_key] = catalog
    return catalog


# ---------------------------------------------------------------------------
# membership


def is_berge(H: UniformHypergraph, G: Graph) -> tuple[bool, BergeEmbedding | None]:
    """Decide whether H is a Berge copy of G; returns a witness when it is.

    Needs both a vertex realization (injective, degree-compatible) and a
    perfect matching between graph edges and hyperedges; the search assigns
    G-vertices in BFS order with pruning, then matches edges at the leaves.
    """
    if H.m != G.m:
        return False, None
    if G.n > H.n:
        return False, None
    if G.m == 0:
        return True, BergeEmbedding(assignment=(), vertex_map=tuple(range(G.n)))

    gadj = G.adjacency()
    hdeg = [H.degree(v) for v in range(H.n)]
    gdeg = [G.degree(v) for v in range(G.n)]

    order: list[int] = []
    seen = [False] * G.n
    for root in range(G.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in gadj[v]:
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)

    edge_sets = [frozenset(e) for e in H.edges]
    vmap = [-1] * G.n
    used = [False] * H.n

    def edges_matchable() -> bool:
        # Hall-style check via augmenting paths on currently fully-assigned
        # graph edges; cheap because m is small.
        requirements = []
        for a, b in G.edges:
            if vmap[a] >= 0 and vmap[b] >= 0:
                need = {vmap[a], vmap[b]}
                requirements.append([i for i, es in enumerate(edge_sets) if need <= es])
        match_of: dict[int, int] = {}

        def augment(req_idx: int, taken: set) -> bool:
            for he in requirements[req_idx]:
                if he in taken:
                    continue
                taken.add(he)
                if he not in match_of or augment(match_of[he], taken):
                    match_of[he] = req_idx
                    return True
            return False

        for i in range(len(requirements)):
            if not augment(i, set()):
                return False
        return True

    final_match: list[int] = []

    def full_matching() -> bool:
        requirements = []
        for a, b in G.edges:
            need = {vmap[a], vmap[b]}
            requirements.append([i for i, es in enumerate(edge_sets) if need <= es])
        match_of: dict[int, int] = {}

        def augment(req_idx: int, taken: set) -> bool:
            for he in requirements[req_idx]:
                if he in taken:
                    continue
                taken.add(he)
                if he not in match_of or augment(match_of[he], taken):
                    match_of[he] = req_idx
                    return True
            return False

        for i in range(len(requirements)):
            if not augment(i, set()):
                return False
        final_match.clear()
        final_match.extend([-1] * G.m)
        for he, req in match_of.items():
            final_match[req] = he
        return True

    def place(idx: int) -> bool:
        if idx == len(order):
            return full_matching()
        v = order[idx]
        for w in range(H.n):
            if used[w] or hdeg[w] < gdeg[v]:
                continue
            vmap[v] = w
            used[w] = True
            if edges_matchable() and place(idx + 1):
                return True
            used[w] = False
            vmap[v] = -1
        return False

    if not place(0):
        return False, None
    assignment = tuple(H.edges[final_match[i]] for i in range(G.m))
    return True, BergeEmbedding(assignment=assignment, vertex_map=tuple(vmap))
