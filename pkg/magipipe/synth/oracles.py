from typing import Dict
from typing import Sequence

from magipipe.ordering.panel_dag import PanelDag
from magipipe.ordering.reading_order import ReadingOrder


def oracle_check_order(order: Sequence[int], dag: PanelDag) -> bool:
    """Whether ``order`` is a permutation of the panels that satisfies every edge of the DAG."""
    if sorted(order) != list(range(dag.n)):
        return False
    position: Dict[int, int] = {panel: k for k, panel in enumerate(order)}
    return all(position[i] < position[j] for i, j in dag.edges)


def has_containment_events(order: ReadingOrder) -> bool:
    """Whether two panels of the page contain one another, so that no erosion could order them."""
    return len(order.contained_pairs) > 0
