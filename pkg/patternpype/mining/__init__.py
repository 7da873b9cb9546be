"""
This package provides the closed-itemset search core: closure, ppc children
generation and the recursive/stack depth-first traversals.
"""

from .closure import children, closure, closure_of_cover, validate_node
from .node import ROOT_CORE, SearchNode, WireNode, node_from_wire, root_node
from .search import (
    SearchStatistics,
    count_closed_sequential,
    depth_first_loop,
    depth_first_recursive,
    enumerate_closed,
    search_closed,
)

__all__ = [
    "SearchNode",
    "WireNode",
    "ROOT_CORE",
    "root_node",
    "node_from_wire",
    "closure",
    "closure_of_cover",
    "children",
    "validate_node",
    "SearchStatistics",
    "depth_first_loop",
    "depth_first_recursive",
    "search_closed",
    "count_closed_sequential",
    "enumerate_closed",
]
