from clb.blocks.descent import Descent, descend_to_unitary
from clb.blocks.stages import classify, stage1_eigensplit, stage2_homogeneous, stage3_simple
from clb.blocks.types import Decomposition, SimpleBlock

__all__ = [
    "Decomposition",
    "Descent",
    "SimpleBlock",
    "classify",
    "descend_to_unitary",
    "stage1_eigensplit",
    "stage2_homogeneous",
    "stage3_simple",
]
