"""Modularity-based community detection on hypergraphs."""
from .bench import ari, relative_error, run_scenario, summarize
from .hypercore import (Hypergraph, HypergraphFormatError, Partition, WeightedGraph,
                        clique_reduction, degree, internal_edge_count, load_hypergraph,
                        load_partition, save_hypergraph, save_partition, volume,
                        weighted_clique_reduction)
from .modularity import (AonParams, UndefinedModularityError, aon_affinity, aon_constant,
                         estimate_aon_params, q_aon, q_strict, q_symmetric, q_wclique, q_wsc)
from .optimizers import aon_hmll, cnm_like, irmm, louvain, lsr
from .partvec import majority_counts, partition_vector_volume, split_counts, split_profile

__version__ = "0.1.0"
