import logging
from typing import Sequence

from core.errors import DimensionMismatchError, ReductionError
from models import MILExample, ProblemKind, ReducedSample
from .base import Reduction
from .lcl import LCLReduction
from .mcl import MCLReduction
from .trl import TRLReduction

logger = logging.getLogger(__name__)

REDUCTIONS: dict[ProblemKind, Reduction] = {
    ProblemKind.TRL: TRLReduction(),
    ProblemKind.MCL: MCLReduction(),
    ProblemKind.LCL: LCLReduction(),
}


def get_reduction(kind: ProblemKind) -> Reduction:
    try:
        return REDUCTIONS[ProblemKind(kind)]
    except KeyError:
        raise ReductionError(f"no reduction registered for kind {kind!r}")


def reduce_sample(sample: Sequence, kind: ProblemKind) -> ReducedSample:
    """S' = (α(x_1, y_1), ..., α(x_n, y_n)) с сохранением порядка; пропуски считаются"""
    kind = ProblemKind(kind)
    if kind == ProblemKind.MIL:
        return _identity_sample(sample)
    reduction = get_reduction(kind)

    if not sample:
        return ReducedSample(kind=kind)

    dims = {ex.dim for ex in sample if reduction.accepts(ex)}
    foreign = [i for i, ex in enumerate(sample) if not reduction.accepts(ex)]
    if foreign:
        raise ReductionError(f"sample mixes kinds: record {foreign[0]} is not a {kind.value} example")
    if len(dims) != 1:
        raise DimensionMismatchError(f"sample mixes dimensions: {sorted(dims)}")
    classes = {ex.k for ex in sample} if kind != ProblemKind.TRL else set()
    if len(classes) > 1:
        raise DimensionMismatchError(f"sample mixes class counts: {sorted(classes)}")

    examples: list[MILExample] = []
    indices: list[int] = []
    skipped = 0
    for i, ex in enumerate(sample):
        reduced = reduction.apply(ex)
        if reduced is None:
            skipped += 1
            continue
        examples.append(reduced)
        indices.append(i)

    if skipped:
        logger.info(f"Skipped {skipped} degenerate {kind.value} examples during reduction")

    return ReducedSample(
        examples=tuple(examples),
        kind=kind,
        source_dim=dims.pop(),
        k=classes.pop() if classes else None,
        skipped_count=skipped,
        source_indices=tuple(indices),
    )


def _identity_sample(sample: Sequence[MILExample]) -> ReducedSample:
    dims = {ex.dim for ex in sample}
    if len(dims) > 1:
        raise DimensionMismatchError(f"sample mixes dimensions: {sorted(dims)}")
    return ReducedSample(
        examples=tuple(sample),
        kind=ProblemKind.MIL,
        source_dim=dims.pop() if dims else None,
        source_indices=tuple(range(len(sample))),
    )
