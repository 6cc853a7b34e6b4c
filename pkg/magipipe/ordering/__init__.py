from magipipe.ordering.panel_dag import PanelDag
from magipipe.ordering.panel_dag import TopologicalOrder
from magipipe.ordering.panel_dag import build_dag
from magipipe.ordering.panel_dag import topological_order
from magipipe.ordering.reading_order import ReadingOrder
from magipipe.ordering.reading_order import order_texts_in_panel
from magipipe.ordering.reading_order import reading_order
from magipipe.ordering.relative_order import PanelOrderer
from magipipe.ordering.relative_order import RelativeOrder
from magipipe.ordering.relative_order import disambiguate_diagonal
from magipipe.ordering.relative_order import relative_order

__all__ = [
    "RelativeOrder",
    "PanelOrderer",
    "PanelDag",
    "TopologicalOrder",
    "ReadingOrder",
    "relative_order",
    "disambiguate_diagonal",
    "build_dag",
    "topological_order",
    "order_texts_in_panel",
    "reading_order",
]
