from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core.rings import CycElem, rat_to_str

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


def jsonable(obj):
    """Recursively turn exact numbers into decimal strings (bools stay bools)."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return rat_to_str(obj)
    if isinstance(obj, CycElem):
        return [str(c) for c in obj.coeffs]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return jsonable(obj.to_dict())
    if hasattr(obj, "__int__") and not isinstance(obj, float):
        return str(int(obj))
    return obj


@dataclass
class Report:
    check: str
    params: dict = field(default_factory=dict)
    verdict: str = PASS
    witness: dict | None = None
    elapsed: float = 0.0

    def __post_init__(self):
        if self.verdict not in (PASS, FAIL, SKIPPED):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if self.verdict == FAIL and not self.witness:
            raise ValueError(f"failing check {self.check!r} must carry a witness")

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self, with_timing: bool = True) -> dict:
        out = {
            "check": self.check,
            "params": jsonable(self.params),
            "verdict": self.verdict,
        }
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        if with_timing:
            out["elapsed_s"] = round(self.elapsed, 3)
        return out
