from typing import Optional
from typing import Sequence
from typing import Tuple

from magipipe.association.speakers import SpeakerAssignment
from magipipe.metrics.matching import GroundTruthMatch


def recall_at_num_texts(
    pred: SpeakerAssignment, gt_edges: Sequence[Tuple[int, int]], gt_match: GroundTruthMatch
) -> Optional[float]:
    """Fraction of ground-truth speaker edges recovered, one predicted speaker per text.

    An edge ``(t, c)`` is recovered when ground-truth text ``t`` is matched to a predicted text
    whose speaker is the predicted character matched to ground-truth character ``c``.

    Returns:
        typing.Optional[float]: the recall, None without ground-truth edges
    """
    if len(gt_edges) == 0:
        return None
    correct = 0
    for t, c in gt_edges:
        pred_text = gt_match.texts[t]
        pred_char = gt_match.characters[c]
        if pred_text is None or pred_char is None:
            continue
        speaker = pred[pred_text]
        if speaker is not None and speaker.character == pred_char:
            correct += 1
    return correct / len(gt_edges)
