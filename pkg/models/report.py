from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


def _holds(lhs: float, rhs: float, tolerance: float, relation: str) -> bool:
    if relation == "le":
        return lhs <= rhs + tolerance
    return abs(lhs - rhs) <= tolerance


class VerificationReport(BaseModel):
    """Результат проверки: eq - |lhs - rhs| ≤ tolerance, le - lhs ≤ rhs + tolerance"""
    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    lhs: float
    rhs: float
    tolerance: float = Field(0.0, ge=0)
    relation: Literal["eq", "le"] = "eq"
    witness: Optional[dict[str, Any]] = None
    note: str = ""

    @model_validator(mode="after")
    def check_verdict(self) -> "VerificationReport":
        if self.passed != _holds(self.lhs, self.rhs, self.tolerance, self.relation):
            raise ValueError(f"verdict of {self.name} is inconsistent with lhs/rhs/tolerance")
        return self

    @classmethod
    def compare(
        cls,
        name: str,
        lhs: float,
        rhs: float,
        tolerance: float = 0.0,
        relation: Literal["eq", "le"] = "eq",
        witness: Optional[dict[str, Any]] = None,
        note: str = "",
    ) -> "VerificationReport":
        passed = _holds(lhs, rhs, tolerance, relation)
        return cls(
            name=name,
            passed=passed,
            lhs=lhs,
            rhs=rhs,
            tolerance=tolerance,
            relation=relation,
            witness=None if passed else witness,
            note=note,
        )
