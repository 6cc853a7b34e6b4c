from magipipe.page.annotation import PageAnnotation
from magipipe.page.annotation import dump_page_annotation
from magipipe.page.annotation import load_page_annotation
from magipipe.page.assignment import PanelAssignment
from magipipe.page.assignment import assign_box_to_panel
from magipipe.page.assignment import assign_boxes_to_panels
from magipipe.page.page_graph import PageGraph
from magipipe.page.page_graph import TextBlock
from magipipe.page.page_graph import dump_page_graph
from magipipe.page.page_graph import load_page_graph

__all__ = [
    "PageGraph",
    "TextBlock",
    "PageAnnotation",
    "PanelAssignment",
    "load_page_graph",
    "dump_page_graph",
    "load_page_annotation",
    "dump_page_annotation",
    "assign_box_to_panel",
    "assign_boxes_to_panels",
]
