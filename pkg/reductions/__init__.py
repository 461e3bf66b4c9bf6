from .base import Reduction
from .trl import TRLReduction, trl_difference_vectors, trl_reduce, trl_restore
from .mcl import (
    MCLReduction,
    flatten,
    mcl_difference_batch,
    mcl_difference_vectors,
    mcl_embed,
    mcl_reduce,
    mcl_restore,
)
from .lcl import LCLReduction, lcl_label, lcl_reduce, lcl_restore
from .sample import REDUCTIONS, get_reduction, reduce_sample
from .checks import check_loss_equality, reduced_loss
