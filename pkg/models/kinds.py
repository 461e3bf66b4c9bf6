from enum import Enum


class ProblemKind(str, Enum):
    MIL = "mil"
    TRL = "trl"
    MCL = "mcl"
    LCL = "lcl"


class LossKind(str, Enum):
    ZERO_ONE = "zero-one"
    HINGE = "hinge"
