from .errors import (
    DimensionMismatchError,
    EmptySampleError,
    GenerationError,
    LabelRangeError,
    ReductionError,
    SolverError,
)
from .scoring import bag_score, class_scores, multiclass_predict, top1_predict
from .losses import (
    binary_loss,
    hinge,
    hypothesis_loss,
    lcl_loss,
    lcl_loss_matrix,
    lcl_losses_batch,
    loss_matrix,
    mcl_loss,
    mcl_loss_matrix,
    mcl_losses_batch,
    mil_loss_matrix,
    mil_score_matrix,
    pack_bags,
    trl_loss,
    trl_loss_matrix,
    zero_one_binary,
)
from .risks import empirical_risk_lcl, empirical_risk_mcl, empirical_risk_mil, empirical_risk_trl
