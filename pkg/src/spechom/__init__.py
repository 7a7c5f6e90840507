"""Spectral and homological resilience measures of graphs, with exact
k-component edge connectivity as ground truth."""

from .bounds import (
    PROOF,
    STATEMENT,
    BoundReport,
    TightnessConfig,
    random_graph_prediction,
    theorem34_bound,
    tightness_report,
)
from .connectivity import (
    COMPONENT_COUNT,
    SIZE_BOUNDED,
    Budget,
    CutResult,
    classical_edge_connectivity,
    lambda_s,
    lambda_s_oracle,
)
from .errors import ParseError, ResourceError, SpechomError, ValidationError
from .graph import Graph, GraphSpec, connected_components, gen_graph, load_edge_list, parse_graph_spec, volume
from .spectral import (
    Spectrum,
    algebraic_connectivity,
    cheeger_lower_bound,
    eigenvalues_symmetric,
    graph_laplacian,
)
from .topology import (
    BettiProfile,
    SimplicialComplex,
    betti_numbers,
    boundary_matrix,
    clique_complex,
    hodge_laplacian,
    lambda2_k,
    load_facet_list,
    matrix_rank_exact,
)

__version__ = "0.1.0"
