"""Edge rewrites that compare p-spectral radii before and after.

Three rewrites, each paired with a verification suite in `verify`:

* move_edges: redirect chosen hyperedges away from a light vertex v onto a
  heavy vertex u.  Never decreases the radius when the witness satisfies
  x_u >= x_v; strictly increases it for p > r-1 on connected inputs.
* merge_vertex: delete u and re-home its link onto v.  Same direction.
* path_exchange: on a graph carrying two pendant paths at one root, move one
  vertex from the longer path to the shorter.  Strictly increases the radius
  for p > 1, which is why balanced pendant paths win.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    MergeSharedEdgeError,
    MergeSharedLinkError,
    MultipleEdgeError,
    ParameterDomainError,
    StructureError,
)
from .hgraph import Graph, UniformHypergraph


@dataclass(frozen=True)
class EdgeMoveSpec:
    """Which hyperedges to redirect, and from/to which vertices.

    `edges` are indices into the hypergraph's sorted edge tuple; every listed
    edge must contain `from_vertex` and avoid `to_vertex`.
    """

    edges: tuple[int, ...]
    from_vertex: int
    to_vertex: int


def move_edges(H: UniformHypergraph, spec: EdgeMoveSpec) -> UniformHypergraph:
    """Replace e by (e - {from}) + {to} for each listed edge.

    Raises MultipleEdgeError when a rewritten edge collides with a kept edge
    or another rewritten edge.
    """
    u, v = spec.to_vertex, spec.from_vertex
    if u == v:
        raise ParameterDomainError("source and target vertex coincide")
    for w in (u, v):
        if not 0 <= w < H.n:
            raise ParameterDomainError(f"vertex {w} out of range")
    idxs = sorted(set(spec.edges))
    if list(idxs) != sorted(spec.edges):
        raise ParameterDomainError("edge indices repeat")
    if not idxs:
        raise ParameterDomainError("no edges selected")
    if idxs[0] < 0 or idxs[-1] >= H.m:
        raise ParameterDomainError("edge index out of range")
    moved = []
    kept = []
    for i, e in enumerate(H.edges):
        if i in set(idxs):
            if v not in e:
                raise ParameterDomainError(f"edge {i} does not contain vertex {v}")
            if u in e:
                raise ParameterDomainError(f"edge {i} already contains vertex {u}")
            moved.append(tuple(sorted([w for w in e if w != v] + [u])))
        else:
            kept.append(e)
    pool = set(kept)
    for e in moved:
        if e in pool:
            raise MultipleEdgeError(f"rewritten edge {e} duplicates another edge")
        pool.add(e)
    return UniformHypergraph(H.r, H.n, tuple(kept) + tuple(tuple(sorted(e)) for e in moved))


def merge_vertex(H: UniformHypergraph, u: int, v: int) -> UniformHypergraph:
    """Delete u and re-home every edge through u onto v.

    Preconditions: no edge contains both u and v (MergeSharedEdgeError), and
    their links are disjoint (MergeSharedLinkError).  Under those the result
    keeps all edge multiplicities at one and one fewer vertex.
    """
    if u == v:
        raise ParameterDomainError("cannot merge a vertex with itself")
    for w in (u, v):
        if not 0 <= w < H.n:
            raise ParameterDomainError(f"vertex {w} out of range")
    link_u = []
    link_v = []
    rest = []
    for e in H.edges:
        if u in e and v in e:
            raise MergeSharedEdgeError(f"edge {e} contains both {u} and {v}")
        if u in e:
            link_u.append(tuple(w for w in e if w != u))
        elif v in e:
            link_v.append(tuple(w for w in e if w != v))
            rest.append(e)
        else:
            rest.append(e)
    if set(link_u) & set(link_v):
        raise MergeSharedLinkError(f"vertices {u} and {v} share a link edge")
    new_edges = rest + [tuple(sorted(f + (v,))) for f in link_u]
    remap = {old: (old if old < u else old - 1) for old in range(H.n) if old != u}
    edges = tuple(tuple(sorted(remap[w] for w in e)) for e in new_edges)
    return UniformHypergraph(H.r, H.n - 1, edges)


def _walk_pendant_path(G: Graph, root: int, tail: int) -> list[int]:
    """Vertices from tail back to root along a pendant path (degree-2 interior)."""
    adj = G.adjacency()
    if tail == root:
        return [root]
    if G.degree(tail) != 1:
        raise StructureError(f"tail {tail} does not have degree 1")
    walk = [tail]
    prev = -1
    cur = tail
    for _ in range(G.n):
        nbrs = [w for w in adj[cur] if w != prev]
        if cur != tail and cur != root and G.degree(cur) != 2:
            raise StructureError(f"vertex {cur} breaks the pendant path")
        if cur == root:
            return walk
        if len(nbrs) != 1:
            raise StructureError(f"vertex {cur} breaks the pendant path")
        prev, cur = cur, nbrs[0]
        walk.append(cur)
    raise StructureError("pendant path does not reach the root")


def path_exchange(G: Graph, root: int, tail_long: int, tail_short: int) -> Graph:
    """Move one vertex from the longer pendant path at `root` to the shorter.

    The two tails may be given in either order; a tail equal to `root` denotes
    an empty path.  When the lengths already differ by at most one the input
    is returned unchanged.
    """
    if not 0 <= root < G.n:
        raise ParameterDomainError(f"root {root} out of range")
    walk_a = _walk_pendant_path(G, root, tail_long)
    walk_b = _walk_pendant_path(G, root, tail_short)
    if tail_long != root and tail_short != root and tail_long == tail_short:
        raise StructureError("the two pendant paths must be distinct")
    if set(walk_a) & set(walk_b) != {root}:
        raise StructureError("pendant paths overlap outside the root")
    len_a = len(walk_a) - 1
    len_b = len(walk_b) - 1
    if abs(len_a - len_b) <= 1:
        return G
    if len_a < len_b:
        walk_a, walk_b = walk_b, walk_a
    # walk[0] is the tail; walk[1] its neighbor on the path.
    t = walk_a[0]
    s = walk_a[1]
    t_short = walk_b[0]
    edges = [e for e in G.edges if e != tuple(sorted((s, t)))]
    edges.append(tuple(sorted((t_short, t))))
    return Graph(G.n, tuple(edges))
