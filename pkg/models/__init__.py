from .kinds import LossKind, ProblemKind
from .instance import Bag, Instance
from .examples import LCLExample, MCLExample, MILExample, TRLExample
from .weights import LinearWeights, MulticlassWeights
from .sample import ReducedSample
from .solver import SolverConfig, SolverResult
from .generation import GenConfig, GeneratedSample
from .bounds import BoundParams, BoundReport, ComplexityBound, DeviationMode
from .report import VerificationReport
from .grid import HypothesisGrid
from .experiment import BoundOverrides, ExperimentSpec, OutputPaths

__all__ = [
    "LossKind", "ProblemKind",
    "Bag", "Instance",
    "LCLExample", "MCLExample", "MILExample", "TRLExample",
    "LinearWeights", "MulticlassWeights",
    "ReducedSample",
    "SolverConfig", "SolverResult",
    "GenConfig", "GeneratedSample",
    "BoundParams", "BoundReport", "ComplexityBound", "DeviationMode",
    "VerificationReport",
    "HypothesisGrid",
    "BoundOverrides", "ExperimentSpec", "OutputPaths",
]
