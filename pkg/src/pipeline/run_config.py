import dataclasses
import logging
from dataclasses import dataclass
from typing import Any, Mapping, Optional

from src.models.exceptions import ConfigError
from src.models.grading.budgets import SearchBudgets

logger = logging.getLogger(__name__)

INPUT_KEYS = ("pd", "gauss", "file", "builtin")
FORMATS = ("json", "text", "dot")
VARIANTS = ("lambda", "monomial")


@dataclass(frozen=True)
class RunConfig:
    """
    Everything one run needs, shared by the CLI and the service.

    Attributes:
        source_kind (str): one of pd, gauss, file, builtin.
        source (str): inline code, path or builtin name.
        field (str): "rational", "fp:<p>" or "ratfunc".
        q (str, optional): value of q for the alpha-length tau outside ratfunc.
        tau (str): "alpha-length", "const:<v>" or "file:<path>".
        variant (str): lambda or monomial.
        budgets (SearchBudgets): grading search limits.
        output_format (str): json, text or dot.
        output (str, optional): write the report here instead of stdout.
        strict (bool): inconclusive grading is an error.
        progress (bool): show tqdm progress bars.
    """

    source_kind: str
    source: str
    field: str = "ratfunc"
    q: Optional[str] = None
    tau: str = "alpha-length"
    variant: str = "lambda"
    budgets: SearchBudgets = dataclasses.field(default_factory=SearchBudgets)
    output_format: str = "json"
    output: Optional[str] = None
    strict: bool = False
    progress: bool = False

    def __post_init__(self):
        if self.source_kind not in INPUT_KEYS:
            raise ConfigError(f"unknown input kind '{self.source_kind}', expected one of {', '.join(INPUT_KEYS)}")
        if self.output_format not in FORMATS:
            raise ConfigError(f"unknown format '{self.output_format}', expected one of {', '.join(FORMATS)}")
        if self.variant not in VARIANTS:
            raise ConfigError(f"unknown variant '{self.variant}', expected lambda or monomial")

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Any]) -> "RunConfig":
        """
        Build from argparse vars or a JSON request body. Exactly one of pd, gauss, file, builtin must be set.
        Budget keys: rep_degree_max (N), conjugator_max (L), search_depth (B), max_states, budget_seconds.
        """
        given = [key for key in INPUT_KEYS if mapping.get(key) not in (None, "")]
        if len(given) != 1:
            raise ConfigError(
                f"exactly one input of --pd, --gauss, --file, --builtin is required, got {len(given)}"
                + (f" ({', '.join(given)})" if given else "")
            )
        budget_values = {
            "max_degree": mapping.get("rep_degree_max"),
            "max_conjugator": mapping.get("conjugator_max"),
            "max_relators": mapping.get("search_depth"),
            "max_states": mapping.get("max_states"),
            "seconds": mapping.get("budget_seconds"),
        }
        budgets = SearchBudgets(**{key: _number(key, value) for key, value in budget_values.items() if value is not None})
        return cls(
            source_kind=given[0],
            source=str(mapping[given[0]]),
            field=mapping.get("field") or "ratfunc",
            q=None if mapping.get("q") in (None, "") else str(mapping["q"]),
            tau=mapping.get("tau") or "alpha-length",
            variant=mapping.get("variant") or "lambda",
            budgets=budgets,
            output_format=mapping.get("format") or "json",
            output=mapping.get("output"),
            strict=_flag("strict", mapping.get("strict")),
            progress=_flag("progress", mapping.get("progress")),
        )

    def to_json(self) -> dict:
        return {
            "input": {self.source_kind: self.source},
            "field": self.field,
            "q": self.q,
            "tau": self.tau,
            "variant": self.variant,
            "budgets": self.budgets.to_json(),
        }


def _number(key: str, value):
    if key == "seconds":
        try:
            return float(value)
        except (TypeError, ValueError):
            raise ConfigError(f"budget_seconds must be a number, got {value!r}") from None
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"budget {key} must be an integer, got {value!r}") from None


def _flag(key: str, value) -> bool:
    if value is None:
        return False
    if not isinstance(value, bool):
        raise ConfigError(f"{key} must be true or false, got {value!r}")
    return value
