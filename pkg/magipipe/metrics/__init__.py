from magipipe.metrics.clustering import clustering_metrics
from magipipe.metrics.detection import Detection
from magipipe.metrics.detection import average_precision
from magipipe.metrics.detection import average_precision_pooled
from magipipe.metrics.evaluation import EvalReport
from magipipe.metrics.evaluation import EvaluationConfig
from magipipe.metrics.evaluation import PageReport
from magipipe.metrics.evaluation import evaluate_dataset
from magipipe.metrics.evaluation import format_report_table
from magipipe.metrics.evaluation import sweep_tau
from magipipe.metrics.matching import GroundTruthMatch
from magipipe.metrics.matching import hungarian_match_boxes
from magipipe.metrics.retrieval import RetrievalMetrics
from magipipe.metrics.retrieval import retrieval_metrics
from magipipe.metrics.speakers import recall_at_num_texts

__all__ = [
    "Detection",
    "average_precision",
    "average_precision_pooled",
    "hungarian_match_boxes",
    "GroundTruthMatch",
    "clustering_metrics",
    "RetrievalMetrics",
    "retrieval_metrics",
    "recall_at_num_texts",
    "EvaluationConfig",
    "EvalReport",
    "PageReport",
    "evaluate_dataset",
    "sweep_tau",
    "format_report_table",
]
