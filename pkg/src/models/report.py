from dataclasses import dataclass, field
from typing import Any, Dict, Optional


@dataclass
class CheckReport:
    """
    Outcome of one structural check.

    Attributes:
        name (str): check name, e.g. "special_biserial".
        passed (bool): overall verdict.
        details (dict): JSON-ready statistics of the run.
        witness (dict, optional): first counterexample found when the check fails.
    """

    name: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)
    witness: Optional[Dict[str, Any]] = None

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "details": self.details, "witness": self.witness}
