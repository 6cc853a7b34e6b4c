import heapq
import logging
from dataclasses import dataclass
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple

from magipipe.geometry import Box
from magipipe.geometry import Tolerance
from magipipe.ordering.relative_order import PanelOrderer
from magipipe.ordering.relative_order import RelativeOrder
from magipipe.ordering.relative_order import reading_key
from magipipe.page.page_graph import PageGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PanelDag:
    """Panel precedence graph, an edge ``(i, j)`` means panel i is read before panel j.

    Built from pairwise comparisons, every pair of panels has exactly one edge.
    """

    n: int
    edges: Tuple[Tuple[int, int], ...]
    panels: Tuple[Box, ...]
    warnings: Tuple[str, ...] = ()


@dataclass(frozen=True)
class TopologicalOrder:
    order: Tuple[int, ...]
    cycle_warnings: Tuple[str, ...]
    dropped_edges: Tuple[Tuple[int, int], ...]


def build_dag(page: PageGraph, tol: Tolerance, orderer: Optional[PanelOrderer] = None) -> PanelDag:
    """Compare every pair of panels once, in index order.

    Args:
        page (PageGraph): the page
        tol (Tolerance): tolerance of the page
        orderer (PanelOrderer, Optional): comparison cache to reuse. Defaults to None.

    Returns:
        PanelDag: one edge per unordered pair
    """
    orderer = orderer or PanelOrderer(page.panels, tol)
    n = len(page.panels)
    edges: List[Tuple[int, int]] = []
    for i in range(n):
        for j in range(i + 1, n):
            if orderer.relative_order(i, j) is RelativeOrder.BEFORE:
                edges.append((i, j))
            else:
                edges.append((j, i))
    return PanelDag(n=n, edges=tuple(edges), panels=tuple(page.panels), warnings=tuple(orderer.warnings))


def topological_order(dag: PanelDag) -> TopologicalOrder:
    """Kahn's algorithm, ties between available panels broken by the fallback reading key.

    On a cycle, the remaining panel with the smallest reading key is emitted and its unsatisfied
    incoming edges are dropped.
    """
    successors: Dict[int, List[int]] = {k: [] for k in range(dag.n)}
    predecessors: Dict[int, List[int]] = {k: [] for k in range(dag.n)}
    for i, j in dag.edges:
        successors[i].append(j)
        predecessors[j].append(i)

    in_degree = {k: len(predecessors[k]) for k in range(dag.n)}
    keys = {k: reading_key(dag.panels[k], k) for k in range(dag.n)}
    heap = [(keys[k], k) for k in range(dag.n) if in_degree[k] == 0]
    heapq.heapify(heap)

    emitted = set()
    order: List[int] = []
    cycle_warnings: List[str] = []
    dropped: List[Tuple[int, int]] = []

    while len(order) < dag.n:
        if not heap:
            forced = min((k for k in range(dag.n) if k not in emitted), key=lambda k: keys[k])
            for p in predecessors[forced]:
                if p not in emitted:
                    dropped.append((p, forced))
            message = f"Cycle in the panel order, panel {forced} emitted before its predecessors"
            logger.warning(message)
            cycle_warnings.append(message)
            in_degree[forced] = 0
            heapq.heappush(heap, (keys[forced], forced))

        _, k = heapq.heappop(heap)
        emitted.add(k)
        order.append(k)
        for s in successors[k]:
            if s in emitted:
                continue
            in_degree[s] -= 1
            if in_degree[s] == 0:
                heapq.heappush(heap, (keys[s], s))

    return TopologicalOrder(order=tuple(order), cycle_warnings=tuple(cycle_warnings), dropped_edges=tuple(dropped))
