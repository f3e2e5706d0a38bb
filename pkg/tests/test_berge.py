"""Enumeration and recognition.

Catalog sizes are confirmed by an oracle written here from scratch: direct
product enumeration of per-edge enlargements, then isomorphism dedup by
degree-class-restricted permutation minima.  Only after that do the counts
appear as frozen constants.
"""

import itertools

import pytest

from pspectral import (
    Graph,
    ParameterDomainError,
    ResourceGuardError,
    UniformHypergraph,
    as_hypergraph,
    construct_graph,
    expansion,
    suspension,
)
from pspectral.berge import enumerate_berge, is_berge, load_catalog_hypergraphs, vertex_bound


def _iso_key(edges):
    """Canonical key via permutations that respect degree classes.

    Isomorphisms preserve degrees, so restricting to block bijections (blocks
    ordered by degree value) still reaches the true minimum encoding.
    """
    verts = sorted({v for e in edges for v in e})
    remap = {v: i for i, v in enumerate(verts)}
    edges = [tuple(sorted(remap[v] for v in e)) for e in edges]
    n = len(verts)
    deg = [0] * n
    for e in edges:
        for v in e:
            deg[v] += 1
    blocks = {}
    for v in range(n):
        blocks.setdefault(deg[v], []).append(v)
    ordered = [blocks[d] for d in sorted(blocks)]
    starts = []
    at = 0
    for b in ordered:
        starts.append(at)
        at += len(b)
    best = None
    for perms in itertools.product(*(itertools.permutations(b) for b in ordered)):
        pos = {}
        for block_perm, start in zip(perms, starts):
            for off, v in enumerate(block_perm):
                pos[v] = start + off
        enc = tuple(sorted(tuple(sorted(pos[v] for v in e)) for e in edges))
        if best is None or enc < best:
            best = enc
    return (tuple(sorted(deg)), best)


def oracle_berge_classes(G: Graph, r: int, extra: int) -> int:
    pool = G.n + extra
    per_edge = []
    for e in G.edges:
        rest = [v for v in range(pool) if v not in e]
        per_edge.append([tuple(sorted(e + s)) for s in itertools.combinations(rest, r - 2)])
    seen = set()
    classes = set()
    for combo in itertools.product(*per_edge):
        if len(set(combo)) != len(combo):
            continue
        labeled = tuple(sorted(combo))
        if labeled in seen:
            continue
        seen.add(labeled)
        classes.add(_iso_key(labeled))
    return len(classes)


# ---------------------------------------------------------------------------
# counts, oracle-confirmed


def test_k2_single_edge_catalog():
    G = construct_graph("path", [2])
    cat = enumerate_berge(G, 3, 1)
    assert oracle_berge_classes(G, 3, 1) == 1
    assert cat.count == 1
    assert cat.entries[0].hypergraph.edges == ((0, 1, 2),)


def test_p3_catalog_count():
    G = construct_graph("path", [3])
    assert oracle_berge_classes(G, 3, 1) == 1
    assert enumerate_berge(G, 3, 1).count == 1


def test_p4_catalog_count():
    G = construct_graph("path", [4])
    n = oracle_berge_classes(G, 3, 1)
    assert enumerate_berge(G, 3, 1).count == n
    assert n == 4


def test_p6_catalog_count():
    G = construct_graph("path", [6])
    assert oracle_berge_classes(G, 3, 1) == 124
    assert enumerate_berge(G, 3, 1).count == 124


def test_c6_catalog_count():
    G = construct_graph("cycle", [6])
    assert oracle_berge_classes(G, 3, 1) == 319
    assert enumerate_berge(G, 3, 1).count == 319


def test_s6_catalog_count():
    G = construct_graph("star", [6])
    assert oracle_berge_classes(G, 3, 1) == 14
    assert enumerate_berge(G, 3, 1).count == 14


# ---------------------------------------------------------------------------
# catalog structure


def test_entries_are_berge_and_distinct():
    G = construct_graph("path", [5])
    cat = enumerate_berge(G, 3, 1)
    keys = set()
    for entry in cat.entries:
        ok, emb = is_berge(entry.hypergraph, G)
        assert ok
        keys.add(entry.key.text)
        # stored witness is itself a valid embedding
        mapped = sorted(entry.witness.assignment)
        assert mapped == sorted(entry.hypergraph.edges)
        for ge, he in zip(G.edges, entry.witness.assignment):
            assert set(ge) <= set(he)
    assert len(keys) == cat.count


def test_zero_extra_is_subset_of_one_extra():
    G = construct_graph("path", [6])
    small = {e.key.text for e in enumerate_berge(G, 3, 0).entries}
    big = {e.key.text for e in enumerate_berge(G, 3, 1).entries}
    assert small and small <= big


def test_min_vertex_entries_exist():
    # copies using no fresh vertices exist for paths and cycles at k=6
    for fam in ("path", "cycle"):
        G = construct_graph(fam, [6])
        cat = enumerate_berge(G, 3, 1)
        assert any(e.hypergraph.n == 6 for e in cat.entries)


def test_jobs_do_not_change_catalog():
    from pspectral.berge import _CATALOG_MEMO

    G = construct_graph("cycle", [5])
    _CATALOG_MEMO.clear()
    seq = enumerate_berge(G, 3, 1)
    _CATALOG_MEMO.clear()
    par = enumerate_berge(G, 3, 1, jobs=2)
    _CATALOG_MEMO.clear()
    assert [e.key.text for e in seq.entries] == [e.key.text for e in par.entries]
    assert [e.hypergraph.edges for e in seq.entries] == [e.hypergraph.edges for e in par.entries]


def test_save_and_load_round_trip(tmp_path):
    G = construct_graph("path", [4])
    cat = enumerate_berge(G, 3, 1)
    cat.save(str(tmp_path / "cat"))
    base, hs = load_catalog_hypergraphs(str(tmp_path / "cat"))
    assert base.edges == G.edges
    assert [h.edges for h in hs] == [e.hypergraph.edges for e in cat.entries]


# ---------------------------------------------------------------------------
# guards and domain errors


def test_raw_space_guard_refuses_stars():
    with pytest.raises(ResourceGuardError):
        enumerate_berge(construct_graph("star", [12]), 3, 1)


def test_pool_too_small_gives_diagnostic():
    cat = enumerate_berge(construct_graph("path", [2]), 4, 1)
    assert cat.count == 0
    assert cat.diagnostic is not None


def test_domain_errors():
    G = construct_graph("path", [3])
    with pytest.raises(ParameterDomainError):
        enumerate_berge(G, 2, 0)
    with pytest.raises(ParameterDomainError):
        enumerate_berge(G, 3, 5)
    with pytest.raises(ParameterDomainError):
        enumerate_berge(Graph(3, ()), 3, 1)


def test_vertex_bound_examples():
    assert vertex_bound(construct_graph("path", [6]), 3) == 7
    assert vertex_bound(construct_graph("cycle", [6]), 3) == 7
    assert vertex_bound(construct_graph("star", [11]), 3) == 12
    with pytest.raises(ParameterDomainError):
        vertex_bound(construct_graph("path", [3]), 1)


# ---------------------------------------------------------------------------
# recognition


def test_is_berge_positive_cases():
    P4 = construct_graph("path", [4])
    ok, emb = is_berge(expansion(P4, 3), P4)
    assert ok and emb is not None
    C4 = construct_graph("cycle", [4])
    ok, _ = is_berge(suspension(C4), C4)
    assert ok
    C3 = construct_graph("cycle", [3])
    ok, _ = is_berge(UniformHypergraph(3, 4, ((0, 1, 2), (0, 1, 3), (0, 2, 3))), C3)
    assert ok
    # witness: cycle on {0,1,3} with pairs 01, 03, 13 in the three edges
    ok, _ = is_berge(UniformHypergraph(3, 5, ((0, 1, 2), (0, 3, 4), (1, 3, 4))), C3)
    assert ok


def test_is_berge_negative_cases():
    P3 = construct_graph("path", [3])
    assert is_berge(UniformHypergraph(3, 3, ((0, 1, 2),)), P3) == (False, None)
    disjoint = UniformHypergraph(3, 6, ((0, 1, 2), (3, 4, 5)))
    ok, _ = is_berge(disjoint, P3)
    assert not ok


def test_is_berge_embedding_is_valid_when_found():
    G = construct_graph("cycle", [5])
    cat = enumerate_berge(G, 3, 0)
    for entry in cat.entries[:10]:
        ok, emb = is_berge(entry.hypergraph, G)
        assert ok
        assert sorted(emb.assignment) == sorted(entry.hypergraph.edges)
