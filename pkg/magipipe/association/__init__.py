from magipipe.association.clustering import ClusterSet
from magipipe.association.clustering import cluster_characters
from magipipe.association.clustering import cluster_similarity
from magipipe.association.mining import MinedPairs
from magipipe.association.mining import cosine_similarity
from magipipe.association.mining import mine_character_pairs
from magipipe.association.mining import mine_text_pairs
from magipipe.association.speakers import Speaker
from magipipe.association.speakers import SpeakerAssignment
from magipipe.association.speakers import assign_speakers
from magipipe.association.speakers import filter_low_confidence
from magipipe.association.speakers import nearest_character_baseline

__all__ = [
    "ClusterSet",
    "cluster_characters",
    "cluster_similarity",
    "Speaker",
    "SpeakerAssignment",
    "assign_speakers",
    "filter_low_confidence",
    "nearest_character_baseline",
    "MinedPairs",
    "cosine_similarity",
    "mine_character_pairs",
    "mine_text_pairs",
]
