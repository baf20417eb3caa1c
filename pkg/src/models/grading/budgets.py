import os
import time
from dataclasses import dataclass, field
from typing import Optional

from src.models.exceptions import BudgetError

BUDGET_SECONDS_ENV = "KNOTALG_BUDGET_SECONDS"


def _seconds_from_env() -> Optional[float]:
    raw = os.environ.get(BUDGET_SECONDS_ENV)
    if raw is None or raw.strip() == "":
        return None
    try:
        return float(raw)
    except ValueError:
        raise BudgetError(f"{BUDGET_SECONDS_ENV} must be a number of seconds, got '{raw}'") from None


@dataclass(frozen=True)
class SearchBudgets:
    """
    Limits of the word-problem searches.

    Attributes:
        max_degree (int): largest symmetric group degree N tried by the representation search.
        max_conjugator (int): longest conjugator L allowed in a relator product.
        max_relators (int): most relator conjugates B in a relator product.
        max_states (int): words visited by one relator search.
        seconds (float, optional): wall-clock cap per decision, read from KNOTALG_BUDGET_SECONDS when not given.
    """

    max_degree: int = 6
    max_conjugator: int = 12
    max_relators: int = 8
    max_states: int = 200000
    seconds: Optional[float] = field(default_factory=_seconds_from_env)

    def __post_init__(self):
        for name in ("max_degree", "max_conjugator", "max_relators", "max_states"):
            value = getattr(self, name)
            if not isinstance(value, int) or value <= 0:
                raise BudgetError(f"budget {name} must be a positive integer, got {value!r}")
        if self.seconds is not None and self.seconds <= 0:
            raise BudgetError(f"budget seconds must be positive, got {self.seconds}")

    def deadline(self) -> Optional[float]:
        return None if self.seconds is None else time.monotonic() + self.seconds

    def to_json(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "max_conjugator": self.max_conjugator,
            "max_relators": self.max_relators,
            "max_states": self.max_states,
            "seconds": self.seconds,
        }


def expired(deadline: Optional[float]) -> bool:
    return deadline is not None and time.monotonic() > deadline
