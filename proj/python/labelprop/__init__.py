"""Parallel label-propagation community detection.

Thin Python facade over the compiled extension: CSR graph loaders and
writers, the propagation engine, modularity scoring, and synthetic benchmark
generators. See the individual functions' docstrings for details.
"""

from ._core import (
    BoundsError,
    ConfigError,
    Error,
    FormatError,
    Graph,
    IoError,
    LpaResult,
    ParseError,
    PartitionStats,
    QualityError,
    ValidationError,
    __version__,
    barbell,
    clique_ring,
    from_edges,
    load_csr_binary,
    load_edge_list,
    load_matrix_market,
    lpa,
    modularity,
    modularity_oracle,
    partition_stats,
    planted_partition,
    save_csr_binary,
    sequential_reference_lpa,
    validate,
    write_edge_list,
    write_matrix_market,
)

__all__ = [
    "BoundsError",
    "ConfigError",
    "Error",
    "FormatError",
    "Graph",
    "IoError",
    "LpaResult",
    "ParseError",
    "PartitionStats",
    "QualityError",
    "ValidationError",
    "__version__",
    "barbell",
    "clique_ring",
    "from_edges",
    "load_csr_binary",
    "load_edge_list",
    "load_matrix_market",
    "lpa",
    "modularity",
    "modularity_oracle",
    "partition_stats",
    "planted_partition",
    "save_csr_binary",
    "sequential_reference_lpa",
    "validate",
    "write_edge_list",
    "write_matrix_market",
]
