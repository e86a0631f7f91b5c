import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple


@dataclass(frozen=True)
class StretchWitness:
    failed: Tuple[int, ...]
    x: int
    y: int
    ratio: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "failed": list(self.failed),
            "x": self.x,
            "y": self.y,
            "ratio": None if math.isinf(self.ratio) else self.ratio,
            "disconnected": math.isinf(self.ratio),
        }


@dataclass(frozen=True)
class Violation:
    check: str
    detail: str
    witness: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"check": self.check, "detail": self.detail, "witness": self.witness}


@dataclass
class VerificationReport:
    """Измеренные растяжение, хоп-диаметр, степени и лёгкость с контрпримерами"""

    mode: str = ""
    failure_sets: int = 0
    max_stretch: float = 1.0
    witness: Optional[StretchWitness] = None
    hop_stretch: Optional[float] = None
    hop_diameter: Optional[float] = None
    max_degree: int = 0
    degree_by_tag: Dict[str, int] = field(default_factory=dict)
    lightness: Optional[float] = None
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        def finite(value):
            return None if value is None or math.isinf(value) else value

        return {
            "ok": self.ok,
            "mode": self.mode,
            "failureSets": self.failure_sets,
            "maxStretch": finite(self.max_stretch),
            "witness": self.witness.to_dict() if self.witness else None,
            "hopStretch": self.hop_stretch,
            "hopDiameter": finite(self.hop_diameter),
            "maxDegree": self.max_degree,
            "degreeByTag": dict(self.degree_by_tag),
            "lightness": self.lightness,
            "violations": [v.to_dict() for v in self.violations],
        }
