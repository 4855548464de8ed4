"""Modularity of random graphs: samplers, partitions, bounds and experiments."""

from .bounds import bound_table, pa_lower_l1, pa_lower_l2, u1, u2, u3, u4
from .cluster import (AverageDegreePartition, ForestPartition, LocalSearchRefiner,
                      MajorityColoring, StripPartition, TreeDecomposition)
from .generators import (PAParams, RegularParams, SPAParams, SpaGraph, gen_pa, gen_pairing,
                         gen_spa, random_regular_graph, undirect)
from .graph import Graph, GraphError, Partition, read_edgelist, read_partition
from .modularity import (ModularityBreakdown, exact_modularity, isoperimetric_number, modularity,
                         second_eigenvalue)

__version__ = "0.1.0"

__all__ = [
    "AverageDegreePartition", "ForestPartition", "Graph", "GraphError", "LocalSearchRefiner",
    "MajorityColoring", "ModularityBreakdown", "PAParams", "Partition", "RegularParams",
    "SPAParams", "SpaGraph", "StripPartition", "TreeDecomposition", "bound_table",
    "exact_modularity", "gen_pa", "gen_pairing", "gen_spa", "isoperimetric_number",
    "modularity", "pa_lower_l1", "pa_lower_l2", "random_regular_graph", "read_edgelist",
    "read_partition", "second_eigenvalue", "u1", "u2", "u3", "u4", "undirect",
]
