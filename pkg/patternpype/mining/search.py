"""
Sequential depth-first search over the closed-itemset tree.

Two equivalent traversals are provided: the recursive form and the explicit
stack form that the parallel runtime distributes. Children are pushed in
reverse so the stack pops them in the recursive visiting order.
"""

from collections.abc import Callable, Iterable, Sequence
from typing import TypeVar

from pydantic import BaseModel

from patternpype.dataset.models import TransactionDatabase
from patternpype.mining.closure import children
from patternpype.mining.node import SearchNode, root_node

T = TypeVar("T")

SupportThreshold = int | Callable[[], int]


class SearchStatistics(BaseModel):
    """
    Shape of a completed stack traversal.

    Attributes:
        visited (int): Nodes popped and visited
        max_stack_size (int): Peak number of live stack entries
        max_depth (int): Deepest level reached (roots are depth 0)
        max_branching (int): Largest number of children of a single node
    """

    visited: int = 0
    max_stack_size: int = 0
    max_depth: int = 0
    max_branching: int = 0


def depth_first_recursive(
    root: T, expand: Callable[[T], Sequence[T]], visit: Callable[[T], None]
) -> None:
    visit(root)
    for child in expand(root):
        depth_first_recursive(child, expand, visit)


def depth_first_loop(
    roots: Iterable[T],
    expand: Callable[[T], Sequence[T]],
    visit: Callable[[T], None],
) -> SearchStatistics:
    """Stack-based DFS visiting nodes in the same order as the recursive form."""
    stats = SearchStatistics()
    stack: list[tuple[T, int]] = [(root, 0) for root in reversed(list(roots))]
    stats.max_stack_size = len(stack)
    while stack:
        node, depth = stack.pop()
        visit(node)
        stats.visited += 1
        stats.max_depth = max(stats.max_depth, depth)
        kids = expand(node)
        stats.max_branching = max(stats.max_branching, len(kids))
        stack.extend((child, depth + 1) for child in reversed(kids))
        stats.max_stack_size = max(stats.max_stack_size, len(stack))
    return stats


def _threshold(min_support: SupportThreshold) -> int:
    return min_support() if callable(min_support) else min_support


def search_closed(
    db: TransactionDatabase,
    min_support: SupportThreshold,
    visitor: Callable[[SearchNode], object] | None = None,
) -> SearchStatistics:
    """
    DFS over closed itemsets with support >= the (possibly moving) threshold.

    The threshold is re-read before every node, so a caller that raises it from
    inside the visitor prunes the rest of the search. The empty root itemset is
    never passed to the visitor.
    """

    def visit(node: SearchNode) -> None:
        if node.itemset and node.support >= _threshold(min_support) and visitor:
            visitor(node)

    def expand(node: SearchNode) -> list[SearchNode]:
        threshold = _threshold(min_support)
        if node.support < threshold:
            return []
        return children(db, node, threshold)

    root = root_node(db)
    roots = [root] if root.support >= _threshold(min_support) else []
    return depth_first_loop(roots, expand, visit)


def count_closed_sequential(
    db: TransactionDatabase,
    min_support: int,
    visitor: Callable[[SearchNode], object] | None = None,
) -> int:
    """Number of non-empty closed itemsets with support >= ``min_support``."""
    if min_support < 1:
        raise ValueError(f"min_support must be >= 1, got {min_support}")
    count = 0

    def visit(node: SearchNode) -> None:
        nonlocal count
        count += 1
        if visitor is not None:
            visitor(node)

    search_closed(db, min_support, visit)
    return count


def enumerate_closed(db: TransactionDatabase, min_support: int) -> list[SearchNode]:
    found: list[SearchNode] = []
    count_closed_sequential(db, min_support, found.append)
    return found
