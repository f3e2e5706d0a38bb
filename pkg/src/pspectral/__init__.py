"""Tools for p-spectral extremal problems on uniform hypergraphs.

The package estimates p-spectral radii, enumerates Berge copies of small
graphs up to isomorphism, applies radius-monotone rewiring transforms, and
runs self-auditing verification scenarios over the resulting catalogs.
"""

from .errors import (
    FormatError,
    MergePreconditionError,
    MergeSharedEdgeError,
    MergeSharedLinkError,
    MultipleEdgeError,
    NonConvergenceError,
    ParameterDomainError,
    PSpectralError,
    ResourceGuardError,
    StructureError,
)
from .hgraph import (
    CanonicalForm,
    Graph,
    GraphStats,
    UniformHypergraph,
    as_hypergraph,
    attach_two_paths,
    brute_force_canonical_edges,
    canonical_form,
    construct_graph,
    expansion,
    format_graph,
    format_uhg,
    graph_from_hypergraph,
    graph_stats,
    is_isomorphic,
    link,
    parse_graph,
    parse_uhg,
    suspension,
)
from .spectral import (
    ScanPoint,
    SolverOptions,
    SpectralEstimate,
    WeightVector,
    eigen_residual,
    gradient,
    lambda_p_monotone_scan,
    motzkin_straus_lambda1,
    oracle_spectral_radius,
    p_spectral_radius,
    polynomial_form,
    star_lambda,
    star_plus_lambda_p2,
    suspension_factor,
)
from .berge import (
    BergeCatalog,
    BergeEmbedding,
    CatalogEntry,
    enumerate_berge,
    is_berge,
    load_catalog_hypergraphs,
    vertex_bound,
)
from .transforms import EdgeMoveSpec, merge_vertex, move_edges, path_exchange
from .verify import (
    VerificationReport,
    verify_cycle_theorem,
    verify_expansion_minimum,
    verify_merge_lemma,
    verify_move_edge_lemma,
    verify_p_monotonicity,
    verify_path_exchange,
    verify_path_theorem,
    verify_star_crossover,
    verify_star_theorem,
    verify_suspension_lemma,
)

__version__ = "0.1.0"

__all__ = [
    "BergeCatalog",
    "BergeEmbedding",
    "CanonicalForm",
    "CatalogEntry",
    "EdgeMoveSpec",
    "FormatError",
    "Graph",
    "GraphStats",
    "MergePreconditionError",
    "MergeSharedEdgeError",
    "MergeSharedLinkError",
    "MultipleEdgeError",
    "NonConvergenceError",
    "ParameterDomainError",
    "PSpectralError",
    "ResourceGuardError",
    "ScanPoint",
    "SolverOptions",
    "SpectralEstimate",
    "StructureError",
    "UniformHypergraph",
    "VerificationReport",
    "WeightVector",
    "as_hypergraph",
    "attach_two_paths",
    "brute_force_canonical_edges",
    "canonical_form",
    "construct_graph",
    "eigen_residual",
    "enumerate_berge",
    "expansion",
    "format_graph",
    "format_uhg",
    "gradient",
    "graph_from_hypergraph",
    "graph_stats",
    "is_berge",
    "is_isomorphic",
    "lambda_p_monotone_scan",
    "link",
    "load_catalog_hypergraphs",
    "merge_vertex",
    "motzkin_straus_lambda1",
    "move_edges",
    "oracle_spectral_radius",
    "p_spectral_radius",
    "parse_graph",
    "parse_uhg",
    "path_exchange",
    "polynomial_form",
    "star_lambda",
    "star_plus_lambda_p2",
    "suspension",
    "suspension_factor",
    "verify_cycle_theorem",
    "verify_expansion_minimum",
    "verify_merge_lemma",
    "verify_move_edge_lemma",
    "verify_p_monotonicity",
    "verify_path_exchange",
    "verify_path_theorem",
    "verify_star_crossover",
    "verify_star_theorem",
    "verify_suspension_lemma",
]
