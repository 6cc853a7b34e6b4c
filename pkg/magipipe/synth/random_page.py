import logging
from typing import List
from typing import Tuple

import numpy as np

from magipipe.geometry import Box
from magipipe.page.annotation import PageAnnotation
from magipipe.page.page_graph import PageGraph
from magipipe.page.page_graph import TextBlock
from magipipe.synth.guillotine import DEFAULT_MAX_DEPTH
from magipipe.synth.guillotine import DEFAULT_PAGE_DIMS
from magipipe.synth.guillotine import generate_guillotine

logger = logging.getLogger(__name__)

EMBEDDING_DIM = 8
MAX_IDENTITIES = 3
# the upper part of a panel holds the texts, the lower part the characters
TEXT_AREA = (0.05, 0.35)
CHARACTER_AREA = (0.45, 0.95)


def _boxes_in_strip(
    rng: np.random.Generator, panel: Box, count: int, area: Tuple[float, float]
) -> List[Box]:
    """``count`` boxes side by side in a horizontal strip of the panel, one per slot."""
    top = panel.y1 + area[0] * panel.height
    bottom = panel.y1 + area[1] * panel.height
    slot = panel.width / max(count, 1)
    boxes = []
    for k in range(count):
        w = slot * rng.uniform(0.4, 0.8)
        h = (bottom - top) * rng.uniform(0.5, 0.9)
        x1 = panel.x1 + k * slot + rng.uniform(0, slot - w)
        y1 = top + rng.uniform(0, bottom - top - h)
        boxes.append(Box(x1, y1, min(x1 + w, panel.x2), min(y1 + h, bottom)))
    return boxes


def _noisy(rng: np.random.Generator, values: np.ndarray, noise: float) -> np.ndarray:
    if noise == 0 or values.size == 0:
        return values
    return np.clip(values + noise * rng.normal(size=values.shape), 0.0, 1.0)


def generate_random_page(
    seed: int,
    noise: float = 0.0,
    page_dims: Tuple[float, float] = DEFAULT_PAGE_DIMS,
    max_depth: int = DEFAULT_MAX_DEPTH,
    characters_per_panel: Tuple[int, int] = (0, 2),
    texts_per_panel: Tuple[int, int] = (0, 2),
) -> Tuple[PageGraph, PageAnnotation]:
    """Draw a page graph and its ground truth.

    With ``noise`` 0 every score agrees with the ground truth: same identity characters score 1,
    others 0, and a text scores 1 with its speaker only. Noise adds clipped gaussian perturbations
    to the scores and to the identity prototypes used as embeddings.

    Args:
        seed (int): random seed, the same seed always gives the same page
        noise (float): standard deviation of the score noise. Defaults to 0.
        page_dims (typing.Tuple[float, float]): page width and height. Defaults to (1000, 1400).
        max_depth (int): depth of the panel layout. Defaults to 3.
        characters_per_panel (typing.Tuple[int, int]): inclusive range of characters per panel. Defaults to (0, 2).
        texts_per_panel (typing.Tuple[int, int]): inclusive range of texts per panel. Defaults to (0, 2).

    Raises:
        ValueError: negative noise

    Returns:
        typing.Tuple[PageGraph, PageAnnotation]: the page graph and its annotation
    """
    if noise < 0:
        raise ValueError(f"noise must be non negative, got {noise}")
    layout = generate_guillotine(seed, max_depth=max_depth, page_dims=page_dims)
    rng = np.random.default_rng([seed, 1])

    texts: List[Box] = []
    characters: List[Box] = []
    text_panel: List[int] = []
    char_panel: List[int] = []
    for k, panel in enumerate(layout.panels):
        n_texts = int(rng.integers(texts_per_panel[0], texts_per_panel[1] + 1))
        n_chars = int(rng.integers(characters_per_panel[0], characters_per_panel[1] + 1))
        texts.extend(_boxes_in_strip(rng, panel, n_texts, TEXT_AREA))
        characters.extend(_boxes_in_strip(rng, panel, n_chars, CHARACTER_AREA))
        text_panel.extend([k] * n_texts)
        char_panel.extend([k] * n_chars)

    n_chars = len(characters)
    n_identities = int(rng.integers(1, MAX_IDENTITIES + 1)) if n_chars else 0
    identity = rng.integers(0, max(n_identities, 1), size=n_chars)

    speaker_edges = []
    if n_chars:
        for t, panel in enumerate(text_panel):
            candidates = [c for c in range(n_chars) if char_panel[c] == panel] or list(range(n_chars))
            speaker_edges.append((t, int(rng.choice(candidates))))

    char_char = (identity[:, None] == identity[None, :]).astype(float)
    char_char = _noisy(rng, char_char, noise)
    char_char = np.triu(char_char, 1) + np.triu(char_char, 1).T
    np.fill_diagonal(char_char, 1.0)

    text_char = np.zeros((len(texts), n_chars))
    for t, c in speaker_edges:
        text_char[t, c] = 1.0
    text_char = _noisy(rng, text_char, noise)

    prototypes = rng.normal(size=(max(n_identities, 1), EMBEDDING_DIM))
    embeddings = prototypes[identity] + noise * rng.normal(size=(n_chars, EMBEDDING_DIM))
    if n_chars == 0:
        embeddings = np.zeros((0, 0))

    page_id = f"synth-{seed:06d}"
    page = PageGraph(
        page_id=page_id,
        width=layout.width,
        height=layout.height,
        panels=layout.panels,
        texts=tuple(TextBlock(box=b, content=f"TEXT {t}") for t, b in enumerate(texts)),
        characters=tuple(characters),
        char_char_scores=char_char,
        text_char_scores=text_char,
        char_embeddings=embeddings,
    )
    annotation = PageAnnotation(
        page_id=page_id,
        gt_panels=layout.panels,
        gt_texts=tuple(texts),
        gt_characters=tuple(characters),
        gt_char_identity=tuple(int(i) for i in identity),
        gt_speaker_edges=tuple(speaker_edges),
    )
    logger.debug(f"Generated {page_id}: {len(layout.panels)} panels, {len(texts)} texts, {n_chars} characters")
    return page, annotation
