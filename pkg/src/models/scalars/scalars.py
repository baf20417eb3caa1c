"""
Exact scalars for coefficients and tau values.

Three ground fields are supported, all backed by sympy domains:
the rationals (QQ), prime fields GF(p) and rational functions QQ(q) in one indeterminate.
A Scalar keeps its FieldContext next to the sympy domain element so that mixing contexts is caught early.
"""

import logging
import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Any, Optional, Union

import sympy
from sympy import GF, QQ, Symbol, isprime

from src.models.exceptions import ScalarError, ScalarZeroDivisionError

logger = logging.getLogger(__name__)

Q_SYMBOL = Symbol("q")

_RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class FieldKind(str, Enum):
    RATIONALS = "rational"
    PRIME = "fp"
    RATFUNC = "ratfunc"


@dataclass(frozen=True)
class FieldContext:
    """
    Immutable description of the ground field.

    Args:
        kind (FieldKind): rationals, prime field or rational functions in q.
        p (int, optional): prime modulus, only for FieldKind.PRIME.
    """

    kind: FieldKind
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind is FieldKind.PRIME:
            if self.p is None or not isprime(self.p):
                raise ScalarError(f"prime field modulus must be prime, got {self.p}")
        elif self.p is not None:
            raise ScalarError(f"modulus {self.p} given for a {self.kind.value} context")

    @classmethod
    def rationals(cls) -> "FieldContext":
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime_field(cls, p: int) -> "FieldContext":
        return cls(FieldKind.PRIME, int(p))

    @classmethod
    def rational_functions(cls) -> "FieldContext":
        return cls(FieldKind.RATFUNC)

    @classmethod
    def from_string(cls, text: str) -> "FieldContext":
        """
        Parse the CLI field choice: "rational", "fp:<p>" or "ratfunc".
        """
        choice = text.strip().lower()
        if choice in ("rational", "rationals", "qq"):
            return cls.rationals()
        if choice in ("ratfunc", "rational-functions"):
            return cls.rational_functions()
        if choice.startswith("fp:"):
            try:
                modulus = int(choice[3:])
            except ValueError:
                raise ScalarError(f"malformed prime field '{text}', expected fp:<p>") from None
            return cls.prime_field(modulus)
        raise ScalarError(f"unknown field '{text}', expected rational, fp:<p> or ratfunc")

    @cached_property
    def domain(self):
        """The sympy domain backing this context."""
        if self.kind is FieldKind.RATIONALS:
            return QQ
        if self.kind is FieldKind.PRIME:
            return GF(self.p)
        return QQ.frac_field(Q_SYMBOL)

    def label(self) -> str:
        if self.kind is FieldKind.PRIME:
            return f"fp:{self.p}"
        return self.kind.value

    # constructors of Scalars in this context

    def zero(self) -> "Scalar":
        return Scalar(self, self.domain.zero)

    def one(self) -> "Scalar":
        return Scalar(self, self.domain.one)

    def from_integer(self, n: int) -> "Scalar":
        return Scalar(self, self.domain.convert(int(n)))

    def from_fraction(self, numerator: int, denominator: int = 1) -> "Scalar":
        if denominator == 0:
            raise ScalarZeroDivisionError(f"zero denominator in {numerator}/{denominator}")
        return self.from_integer(numerator) / self.from_integer(denominator)

    def indeterminate(self) -> "Scalar":
        """Return the generator q of the rational function field."""
        if self.kind is not FieldKind.RATFUNC:
            raise ScalarError(f"indeterminate q only exists in the ratfunc context, not in {self.label()}")
        return Scalar(self, self.domain.from_sympy(Q_SYMBOL))

    def parse(self, text: str) -> "Scalar":
        """
        Parse scalar text: integers and "a/b" in every context, polynomial or rational expressions in q for
        rational functions.

        Args:
            text (str): scalar text, e.g. "3/2", "-1" or "(q^2 + 1)/q".

        Returns:
            Scalar: parsed value.
        """
        match = _RATIONAL_PATTERN.match(text)
        if match:
            denominator = int(match.group(2)) if match.group(2) is not None else 1
            return self.from_fraction(int(match.group(1)), denominator)
        if self.kind is not FieldKind.RATFUNC:
            raise ScalarError(f"cannot parse '{text}' as a {self.label()} scalar")
        try:
            expression = sympy.sympify(text, locals={"q": Q_SYMBOL})
        except (sympy.SympifyError, SyntaxError, TypeError) as e:
            raise ScalarError(f"cannot parse '{text}' as a rational function in q: {e}") from None
        if not expression.free_symbols <= {Q_SYMBOL}:
            raise ScalarError(f"'{text}' uses symbols other than q")
        try:
            return Scalar(self, self.domain.from_sympy(expression))
        except (sympy.CoercionFailed, ZeroDivisionError) as e:
            raise ScalarError(f"'{text}' is not a rational function in q: {e}") from None


@dataclass(frozen=True, eq=False)
class Scalar:
    """
    A field element together with its context.

    Arithmetic with plain ints is allowed, the int is converted into the context first.
    Equality and hashing use the canonical key, see `canonical_key`.
    """

    context: FieldContext
    value: Any

    # arithmetic

    def _coerce(self, other: Union["Scalar", int]) -> "Scalar":
        if isinstance(other, Scalar):
            if other.context != self.context:
                raise ScalarError(f"context mismatch: {self.context.label()} vs {other.context.label()}")
            return other
        if isinstance(other, int):
            return self.context.from_integer(other)
        raise TypeError(f"cannot combine Scalar with {type(other).__name__}")

    def __add__(self, other):
        return Scalar(self.context, self.value + self._coerce(other).value)

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.context, self.value - self._coerce(other).value)

    def __rsub__(self, other):
        return Scalar(self.context, self._coerce(other).value - self.value)

    def __mul__(self, other):
        return Scalar(self.context, self.value * self._coerce(other).value)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.context, -self.value)

    def inv(self) -> "Scalar":
        if self.is_zero:
            raise ScalarZeroDivisionError(f"inverse of zero in {self.context.label()}")
        return Scalar(self.context, self.context.domain.one / self.value)

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        base = self.inv() if n < 0 else self
        return Scalar(self.context, base.value ** abs(n))

    # comparison

    @property
    def is_zero(self) -> bool:
        return not self.value

    @property
    def is_one(self) -> bool:
        return self == self.context.one()

    def __bool__(self) -> bool:
        return not self.is_zero

    def canonical_key(self) -> tuple:
        """
        Unique representation of the value:
        (numerator, denominator) with positive denominator for rationals, residue in [0, p) for prime fields,
        and the term tuples of numerator and monic denominator for rational functions.
        """
        kind = self.context.kind
        if kind is FieldKind.RATIONALS:
            return (int(self.value.numerator), int(self.value.denominator))
        if kind is FieldKind.PRIME:
            return (int(self.value) % self.context.p,)
        numerator, denominator = _monic_parts(self.value)
        return (_terms_key(numerator), _terms_key(denominator))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.context.from_integer(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.context == other.context and self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash((self.context, self.canonical_key()))

    def is_root_of_unity(self) -> bool:
        """
        True when some positive power equals one: +-1 over the rationals and in QQ(q), every nonzero residue mod p.
        """
        if self.is_zero:
            return False
        if self.context.kind is FieldKind.PRIME:
            return True
        return self == 1 or self == -1

    # rendering

    def render(self) -> str:
        kind = self.context.kind
        if kind is FieldKind.RATIONALS:
            numerator, denominator = self.canonical_key()
            return _render_fraction(numerator, denominator)
        if kind is FieldKind.PRIME:
            return f"{self.canonical_key()[0]} mod {self.context.p}"
        numerator, denominator = _monic_parts(self.value)
        numerator_text = _render_polynomial(numerator)
        if _is_one_polynomial(denominator):
            return numerator_text
        return f"({numerator_text})/({_render_polynomial(denominator)})"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Scalar({self.render()!r}, {self.context.label()})"


def _render_fraction(numerator: int, denominator: int) -> str:
    return str(numerator) if denominator == 1 else f"{numerator}/{denominator}"


def _monic_parts(value) -> tuple:
    """Split a fraction field element into numerator and denominator with monic denominator."""
    numerator, denominator = value.numer, value.denom
    lead = denominator.LC
    return numerator.quo_ground(lead), denominator.quo_ground(lead)


def _terms_key(polynomial) -> tuple:
    return tuple((monom[0], int(coeff.numerator), int(coeff.denominator)) for monom, coeff in polynomial.terms())


def _is_one_polynomial(polynomial) -> bool:
    terms = polynomial.terms()
    return len(terms) == 1 and terms[0][0][0] == 0 and terms[0][1] == 1


def _render_polynomial(polynomial) -> str:
    """Render a univariate polynomial in q with descending degrees, e.g. "q^2 - 3/2*q + 1"."""
    if not polynomial:
        return "0"
    pieces = []
    for (degree,), coeff in polynomial.terms():
        numerator, denominator = int(coeff.numerator), int(coeff.denominator)
        negative = numerator < 0
        magnitude = _render_fraction(abs(numerator), denominator)
        if degree == 0:
            body = magnitude
        else:
            power = "q" if degree == 1 else f"q^{degree}"
            body = power if magnitude == "1" else f"{magnitude}*{power}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)
