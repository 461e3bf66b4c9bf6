import abc
from typing import Any, ClassVar, Optional

from models import MILExample, ProblemKind


class Reduction(abc.ABC):
    """Пара (α, β): α переводит пример в размеченный мешок, β - гипотезу MIL в исходную.

    apply() возвращает None для вырожденных примеров, которые ничего не ограничивают.
    """

    kind: ClassVar[ProblemKind]

    def accepts(self, example: Any) -> bool:
        return getattr(example, "kind", None) == self.kind

    @abc.abstractmethod
    def apply(self, example: Any) -> Optional[MILExample]:
        ...

    @abc.abstractmethod
    def invert(self, weights, **params) -> Any:
        ...

    @abc.abstractmethod
    def lift(self, hypothesis) -> Any:
        """Обратное к invert: гипотеза исходной задачи -> веса MIL"""
        ...
