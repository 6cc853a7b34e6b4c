import logging
import math
from dataclasses import dataclass
from typing import Optional
from typing import Tuple

import numpy as np

from magipipe.page.page_graph import PageGraph

logger = logging.getLogger(__name__)

DEFAULT_CONFIDENCE_CUTOFF = 0.4


@dataclass(frozen=True)
class Speaker:
    character: int
    confidence: float


@dataclass(frozen=True)
class SpeakerAssignment:
    """Speaker of every text, None when unknown."""

    speakers: Tuple[Optional[Speaker], ...]
    warnings: Tuple[str, ...] = ()

    def __len__(self):
        return len(self.speakers)

    def __getitem__(self, t: int) -> Optional[Speaker]:
        return self.speakers[t]


def assign_speakers(page: PageGraph) -> SpeakerAssignment:
    """Highest scored character of every text, ties go to the lower index.

    A text without characters or whose scores are all zero gets no speaker; the latter is also
    reported as a warning.
    """
    scores = np.asarray(page.text_char_scores)
    speakers = []
    warnings = []
    for t in range(page.n_texts):
        if page.n_characters == 0:
            speakers.append(None)
            continue
        row = scores[t]
        c = int(np.argmax(row))
        if row[c] <= 0:
            message = f"{page.page_id}: every speaker score of text {t} is zero, no speaker assigned"
            logger.warning(message)
            warnings.append(message)
            speakers.append(None)
            continue
        speakers.append(Speaker(character=c, confidence=float(row[c])))
    return SpeakerAssignment(speakers=tuple(speakers), warnings=tuple(warnings))


def filter_low_confidence(
    assignment: SpeakerAssignment, cutoff: float = DEFAULT_CONFIDENCE_CUTOFF
) -> SpeakerAssignment:
    """Drop the speakers whose confidence is strictly below ``cutoff``.

    Raises:
        ValueError: cutoff outside [0, 1]
    """
    if not 0 <= cutoff <= 1:
        raise ValueError(f"The confidence cutoff must be in [0, 1], got {cutoff}")
    return SpeakerAssignment(
        speakers=tuple(s if s is not None and s.confidence >= cutoff else None for s in assignment.speakers),
        warnings=assignment.warnings,
    )


def nearest_character_baseline(page: PageGraph) -> SpeakerAssignment:
    """Speaker of every text chosen as the character whose box center is the closest, with confidence 1."""
    speakers = []
    for text in page.texts:
        if page.n_characters == 0:
            speakers.append(None)
            continue
        tx, ty = text.box.center
        distances = [math.hypot(c.center[0] - tx, c.center[1] - ty) for c in page.characters]
        speakers.append(Speaker(character=int(np.argmin(distances)), confidence=1.0))
    return SpeakerAssignment(speakers=tuple(speakers))
