"""Result record shared by the calculator and the inequality registry."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class InequalityResult:
    """Outcome of checking one inequality instance.

    For multi-part entries, lhs/rhs/gap describe the part with the least
    relative slack and `satisfied` requires every part to hold; per-part
    numbers are echoed in the witness.  gap = rhs - lhs.
    """

    ineq_id: str
    lhs: float
    rhs: float
    gap: float
    satisfied: bool
    witness: dict = field(default_factory=dict)
