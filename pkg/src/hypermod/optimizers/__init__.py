"""Hypergraph modularity maximisation algorithms."""
from .aon import AonOptions, aon_hmll
from .base import OptimizerResult
from .cnm import CnmOptions, cnm_like
from .irmm import IrmmOptions, irmm, majority_share
from .louvain import graph_modularity, louvain
from .lsr import LsrOptions, lsr

__all__ = [
    "AonOptions", "CnmOptions", "IrmmOptions", "LsrOptions", "OptimizerResult",
    "aon_hmll", "cnm_like", "graph_modularity", "irmm", "louvain", "lsr",
    "majority_share",
]
