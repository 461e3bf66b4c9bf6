class ReductionError(ValueError):
    """Базовая ошибка библиотеки"""


class DimensionMismatchError(ReductionError):
    pass


class EmptySampleError(ReductionError):
    pass


class LabelRangeError(ReductionError):
    pass


class SolverError(ReductionError):
    pass


class GenerationError(ReductionError):
    pass
