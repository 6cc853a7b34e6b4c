from magipipe.synth.guillotine import CutTree
from magipipe.synth.guillotine import GuillotineLayout
from magipipe.synth.guillotine import generate_guillotine
from magipipe.synth.guillotine import perturb_overlap
from magipipe.synth.oracles import has_containment_events
from magipipe.synth.oracles import oracle_check_order
from magipipe.synth.random_page import generate_random_page

__all__ = [
    "CutTree",
    "GuillotineLayout",
    "generate_guillotine",
    "perturb_overlap",
    "generate_random_page",
    "oracle_check_order",
    "has_containment_events",
]
