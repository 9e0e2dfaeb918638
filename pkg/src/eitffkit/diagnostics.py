from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any, Optional


@dataclass(frozen=True)
class Check:
    """One measured axiom check; exact checks carry tolerance 0."""

    axiom: str
    location: Any
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance

    def to_json(self) -> dict:
        d = asdict(self)
        if isinstance(d["location"], tuple):
            d["location"] = list(d["location"])
        return d


def record(log: Optional[list], axiom: str, location, deviation: float, tolerance: float) -> None:
    if log is not None:
        log.append(Check(axiom, location, float(deviation), float(tolerance)))
