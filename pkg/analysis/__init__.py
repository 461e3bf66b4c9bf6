from .rademacher import (
    RademacherEstimate,
    draw_sigmas,
    hypothesis_points,
    per_draw_suprema,
    rademacher_exact,
    rademacher_from_losses,
    rademacher_mc_details,
    rademacher_mc_estimate,
)
from .bounds import (
    assemble_bound,
    bound_params_for_sample,
    deviation_term,
    generalization_bound,
    lcl_risk_scale,
    mil_complexity_bound,
)
