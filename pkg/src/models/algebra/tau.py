import json
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Dict, Mapping, Tuple

from src.models.exceptions import AlgebraError, ConfigError
from src.models.quiver.quiver import SignedQuiver
from src.models.scalars.scalars import FieldContext, FieldKind, Scalar

logger = logging.getLogger(__name__)


class TauMode(str, Enum):
    ALPHA_LENGTH = "alpha-length"
    CONSTANT = "const"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class TauAssignment:
    """
    Nonzero scalar per vertex, used in the exchange relations.

    Attributes:
        values (tuple): tau(e) by vertex index.
        mode (TauMode): how the values were produced.
        context (FieldContext): field all values live in.
    """

    values: Tuple[Scalar, ...]
    mode: TauMode
    context: FieldContext

    def __post_init__(self):
        for vertex, value in enumerate(self.values):
            if value.context != self.context:
                raise AlgebraError(f"tau({vertex}) lives in {value.context.label()}, expected {self.context.label()}")
            if value.is_zero:
                raise AlgebraError(f"tau({vertex}) is zero, tau values must be nonzero")

    def __call__(self, vertex: int) -> Scalar:
        return self.values[vertex]

    def __len__(self) -> int:
        return len(self.values)

    @classmethod
    def alpha_length_power(cls, quiver: SignedQuiver, context: FieldContext, q: Scalar = None) -> "TauAssignment":
        """
        tau(e) = q^{l(e)} with l(e) the length of alpha_e. Without an explicit q the indeterminate of the
        ratfunc context is used.
        """
        if q is None:
            q = context.indeterminate()
        if q.is_zero:
            raise AlgebraError("q must be nonzero")
        if q.is_root_of_unity():
            logger.warning("q = %s is a root of unity in %s; tau is not generic", q, context.label())
        values = tuple(q ** quiver.alpha(vertex).length for vertex in quiver.vertices)
        return cls(values, TauMode.ALPHA_LENGTH, context)

    @classmethod
    def constant(cls, quiver: SignedQuiver, value: Scalar) -> "TauAssignment":
        return cls(tuple(value for _ in quiver.vertices), TauMode.CONSTANT, value.context)

    @classmethod
    def explicit(cls, quiver: SignedQuiver, context: FieldContext, values: Mapping[int, Scalar]) -> "TauAssignment":
        missing = [vertex for vertex in quiver.vertices if vertex not in values]
        if missing:
            raise AlgebraError(f"tau is missing for vertices {missing}")
        return cls(tuple(values[vertex] for vertex in quiver.vertices), TauMode.EXPLICIT, context)

    @classmethod
    def from_file(cls, quiver: SignedQuiver, context: FieldContext, path: str) -> "TauAssignment":
        """
        Read a JSON object mapping vertex index to scalar text, e.g. {"0": "q^2", "1": "3/2"}.
        """
        try:
            raw = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read tau file {path}: {e}") from None
        if not isinstance(raw, dict):
            raise ConfigError(f"tau file {path} must contain a JSON object")
        values: Dict[int, Scalar] = {}
        for key, text in raw.items():
            try:
                vertex = int(key)
            except ValueError:
                raise ConfigError(f"tau file key '{key}' is not a vertex index") from None
            values[vertex] = context.parse(str(text))
        return cls.explicit(quiver, context, values)

    @classmethod
    def from_spec(cls, quiver: SignedQuiver, context: FieldContext, spec: str, q: Scalar = None) -> "TauAssignment":
        """
        Build from the CLI form: "alpha-length", "const:<v>" or "file:<path>".
        """
        if spec == TauMode.ALPHA_LENGTH.value:
            if q is None and context.kind is not FieldKind.RATFUNC:
                raise ConfigError(f"tau mode alpha-length over {context.label()} needs an explicit --q")
            return cls.alpha_length_power(quiver, context, q)
        if spec.startswith("const:"):
            return cls.constant(quiver, context.parse(spec[len("const:"):]))
        if spec.startswith("file:"):
            return cls.from_file(quiver, context, spec[len("file:"):])
        raise ConfigError(f"unknown tau mode '{spec}', expected alpha-length, const:<v> or file:<path>")

    def to_json(self) -> dict:
        return {"mode": self.mode.value, "values": {str(vertex): str(v) for vertex, v in enumerate(self.values)}}
