import re
from dataclasses import dataclass
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple

from magipipe.association.clustering import ClusterSet
from magipipe.association.speakers import SpeakerAssignment
from magipipe.ordering.reading_order import ReadingOrder
from magipipe.page.assignment import PanelAssignment
from magipipe.page.page_graph import PageGraph

UNKNOWN_SPEAKER = "⟨?⟩"

_ESCAPED = re.compile(r"\\(.)", re.DOTALL)


@dataclass(frozen=True)
class TranscriptLine:
    speaker_label: str
    text_content: str
    text_index: int
    confidence: Optional[float] = None
    panel: Optional[int] = None


@dataclass(frozen=True)
class Transcript:
    page_id: str
    lines: Tuple[TranscriptLine, ...]


def name_clusters(clusters: ClusterSet, order: ReadingOrder, speakers: SpeakerAssignment) -> Dict[int, str]:
    """Name the identity clusters ``1``, ``2``, ... in the order their first line is spoken.

    Clusters that never speak are named afterwards, in the order of their first character.
    """
    names: Dict[int, str] = {}
    for t in order.text_order:
        speaker = speakers[t]
        if speaker is not None:
            cluster = clusters.labels[speaker.character]
            if cluster not in names:
                names[cluster] = str(len(names) + 1)
    for cluster in clusters.labels:
        if cluster not in names:
            names[cluster] = str(len(names) + 1)
    return names


def generate_transcript(
    page: PageGraph,
    order: ReadingOrder,
    clusters: ClusterSet,
    speakers: SpeakerAssignment,
    assignment: Optional[PanelAssignment] = None,
) -> Transcript:
    """One line per text, in reading order, labelled with the name of the speaker's cluster.

    Texts without a speaker are labelled ``⟨?⟩``, texts without content read ``<text t>``.

    Args:
        page (PageGraph): the page
        order (ReadingOrder): reading order of the page
        clusters (ClusterSet): character identity clusters
        speakers (SpeakerAssignment): speaker of every text, usually after the confidence filter
        assignment (PanelAssignment, Optional): panel of every text, used for panel markers.
            Defaults to None.

    Returns:
        Transcript: the transcript
    """
    names = name_clusters(clusters, order, speakers)
    lines = []
    for t in order.text_order:
        speaker = speakers[t]
        content = page.texts[t].content
        lines.append(
            TranscriptLine(
                speaker_label=UNKNOWN_SPEAKER if speaker is None else names[clusters.labels[speaker.character]],
                text_content=f"<text {t}>" if content is None else content,
                text_index=t,
                confidence=None if speaker is None else speaker.confidence,
                panel=None if assignment is None else assignment.text_panel[t],
            )
        )
    return Transcript(page_id=page.page_id, lines=tuple(lines))


def _escape(content: str) -> str:
    return content.replace("\\", "\\\\").replace("\n", "\\n")


def _unescape(content: str) -> str:
    return _ESCAPED.sub(lambda m: "\n" if m.group(1) == "n" else m.group(1), content)


def render(transcript: Transcript, panel_markers: bool = False) -> str:
    """Render the transcript as ``<label>: <content>`` lines.

    Line feeds and backslashes of the contents are escaped so that every text stays on one line.
    With ``panel_markers``, a ``# panel <k>`` comment starts the lines of every panel.
    """
    out: List[str] = []
    current = object()
    for line in transcript.lines:
        if panel_markers and line.panel != current:
            current = line.panel
            out.append("# unassigned\n" if line.panel is None else f"# panel {line.panel}\n")
        out.append(f"{line.speaker_label}: {_escape(line.text_content)}\n")
    return "".join(out)


def parse_transcript(text: str) -> List[Tuple[str, str]]:
    """Read back the ``(label, content)`` pairs of a rendered transcript, skipping panel markers."""
    pairs = []
    for raw in text.split("\n"):
        if not raw or raw.startswith("# "):
            continue
        label, _, content = raw.partition(": ")
        pairs.append((label, _unescape(content)))
    return pairs
