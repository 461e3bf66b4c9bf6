from .utils import sample_ball
from .generators import (
    GENERATORS,
    draw_lcl,
    draw_mcl,
    draw_mil,
    draw_trl,
    gen_lcl,
    gen_mcl,
    gen_mil,
    gen_trl,
    generate,
    planted_linear,
    planted_multiclass,
)
