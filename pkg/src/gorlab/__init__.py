"""Orthogonal representations of graphs in general position."""

from .construct import (
    ConstructionTrace,
    ParameterBundle,
    Representation,
    RetryOutcome,
    construct_gor_plus,
    construct_lss_randomized,
    construct_with_retries,
    sample_parameters,
)
from .graph import (
    ConnectivityCertificate,
    Graph,
    is_k_connected,
    parse_graph,
    path_within_prefix,
    preceding_non_neighbors,
    serialize_graph,
    vertex_connectivity,
)
from .verify import VerificationReport, certify_no_gor, verify_gor, verify_gp_subset, verify_or

__version__ = "0.1.0"
