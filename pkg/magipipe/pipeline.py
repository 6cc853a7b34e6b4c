"""From a page graph to its transcript."""
from dataclasses import dataclass
from typing import Tuple

from magipipe.association.clustering import ClusterSet
from magipipe.association.clustering import cluster_characters
from magipipe.association.speakers import SpeakerAssignment
from magipipe.association.speakers import assign_speakers
from magipipe.association.speakers import filter_low_confidence
from magipipe.association.speakers import nearest_character_baseline
from magipipe.config import RunConfig
from magipipe.ordering.reading_order import ReadingOrder
from magipipe.ordering.reading_order import reading_order
from magipipe.page.assignment import PanelAssignment
from magipipe.page.assignment import assign_boxes_to_panels
from magipipe.page.page_graph import PageGraph
from magipipe.schemas import SpeakerSource
from magipipe.transcript import Transcript
from magipipe.transcript import generate_transcript


@dataclass(frozen=True)
class PageResult:
    page: PageGraph
    assignment: PanelAssignment
    order: ReadingOrder
    clusters: ClusterSet
    speakers: SpeakerAssignment
    filtered_speakers: SpeakerAssignment
    transcript: Transcript

    @property
    def warnings(self) -> Tuple[str, ...]:
        return self.page.warnings + self.order.warnings + self.speakers.warnings

    def sidecar(self) -> dict:
        """Intermediate results of the page, written next to its transcript."""
        return {
            "page_id": self.page.page_id,
            "panel_order": list(self.order.panel_order),
            "text_order": list(self.order.text_order),
            "text_panel": list(self.assignment.text_panel),
            "char_panel": list(self.assignment.char_panel),
            "cluster_labels": list(self.clusters.labels),
            "tau": self.clusters.threshold_used,
            "speakers": [
                None if s is None else {"character": s.character, "confidence": s.confidence}
                for s in self.speakers.speakers
            ],
            "filtered_speakers": [None if s is None else s.character for s in self.filtered_speakers.speakers],
            "warnings": list(self.warnings),
        }


def transcribe_page(page: PageGraph, config: RunConfig) -> PageResult:
    """Run every stage of the pipeline on one page.

    Args:
        page (PageGraph): the page
        config (RunConfig): the run configuration

    Returns:
        PageResult: the transcript and the intermediate results
    """
    tol = config.tolerance_for(page.width, page.height)
    assignment = assign_boxes_to_panels(page, tol)
    order = reading_order(page, assignment, tol)
    clusters = cluster_characters(page, config.tau)
    if config.speaker_baseline is SpeakerSource.NEAREST:
        speakers = nearest_character_baseline(page)
    else:
        speakers = assign_speakers(page)
    filtered = filter_low_confidence(speakers, config.confidence_cutoff)
    transcript = generate_transcript(page, order, clusters, filtered, assignment=assignment)
    return PageResult(
        page=page,
        assignment=assignment,
        order=order,
        clusters=clusters,
        speakers=speakers,
        filtered_speakers=filtered,
        transcript=transcript,
    )
