"""
The algebra of a knot diagram and its monomial variant.

Basis (lambda variant): trivial paths e, follow paths of length 1..n_D-1 and the positive fundamental cycles
gamma_e^+. The monomial variant additionally keeps the negative fundamental cycles as follow paths of length n_D.
Products of basis paths are zero or a nonzero scalar times a basis path, so structure constants are computed
per pair on demand and cached.

Multiplication is written right to left: multiply(x, y) runs y first, then x.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from src.models.algebra.relations import (
    RelationSet,
    exchange_relations,
    long_path_relations,
    type_one_relations,
    written,
)
from src.models.algebra.tau import TauAssignment
from src.models.diagram.diagram import Sign
from src.models.exceptions import AlgebraError, DiagramError
from src.models.quiver.quiver import SignedQuiver
from src.models.report import CheckReport
from src.models.scalars.scalars import FieldContext, Scalar

logger = logging.getLogger(__name__)


class Variant(str, Enum):
    LAMBDA = "lambda"
    MONOMIAL = "monomial"


class BasisKind(str, Enum):
    TRIVIAL = "trivial"
    FOLLOW = "follow"
    CYCLE_PLUS = "cycle+"


@dataclass(frozen=True)
class BasisPath:
    """
    Canonical basis element.

    Trivial paths have length 0 and no first arrow; CyclePlus(e) is the follow path of length n_D starting at the
    +-source arrow of e.
    """

    kind: BasisKind
    source: int
    target: int
    first: Optional[int] = None
    length: int = 0

    @property
    def vertex(self) -> int:
        return self.source

    def describe(self) -> str:
        if self.kind is BasisKind.TRIVIAL:
            return f"e{self.source}"
        if self.kind is BasisKind.CYCLE_PLUS:
            return f"gamma+({self.source})"
        return f"follow({self.first},{self.length})"


class AlgebraElement:
    """
    Finite combination of basis paths with nonzero coefficients, keyed by basis index.
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "DiagramAlgebra", terms: Mapping[int, Scalar]):
        self.algebra = algebra
        self.terms = MappingProxyType({index: terms[index] for index in sorted(terms) if not terms[index].is_zero})

    def _same_algebra(self, other: "AlgebraElement") -> None:
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same_algebra(other)
        merged = dict(self.terms)
        for index, coeff in other.terms.items():
            merged[index] = merged[index] + coeff if index in merged else coeff
        return AlgebraElement(self.algebra, merged)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {index: -coeff for index, coeff in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, factor: Union[Scalar, int]) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {index: coeff * factor for index, coeff in self.terms.items()})

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self.algebra.multiply(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return other.algebra is self.algebra and dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, path: Union[int, BasisPath]) -> Scalar:
        index = path if isinstance(path, int) else self.algebra.index_of(path)
        return self.terms.get(index, self.algebra.field.zero())

    def to_json(self) -> list:
        return [
            {"path": self.algebra.basis[index].describe(), "index": index, "coefficient": str(coeff)}
            for index, coeff in self.terms.items()
        ]

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(f"({coeff})*{self.algebra.basis[index].describe()}" for index, coeff in self.terms.items())


class DiagramAlgebra:
    """
    Lambda_{D,tau} = kQ_D / I_tau (variant lambda) or Xi_D = kQ_D / J_D (variant monomial).

    Args:
        quiver (SignedQuiver): quiver of the diagram.
        tau (TauAssignment): nonzero scalar per vertex, only used by the lambda variant.
        field (FieldContext): ground field, must match tau.
        variant (Variant): lambda or monomial.
    """

    def __init__(
        self, quiver: SignedQuiver, tau: TauAssignment, field: FieldContext, variant: Variant = Variant.LAMBDA
    ):
        if tau.context != field:
            raise AlgebraError(f"tau lives in {tau.context.label()} but the algebra is over {field.label()}")
        if len(tau) != len(quiver.vertices):
            raise AlgebraError(f"tau has {len(tau)} values for {len(quiver.vertices)} vertices")
        self.quiver = quiver
        self.tau = tau
        self.field = field
        self.variant = Variant(variant)
        self.n_D = quiver.n_D
        self._one = field.one()

        self.basis: Tuple[BasisPath, ...] = self.__enumerate_basis()
        self._index: Dict[BasisPath, int] = {path: index for index, path in enumerate(self.basis)}
        self._follow_index: Dict[Tuple[int, int], int] = {
            (path.first, path.length): index for index, path in enumerate(self.basis) if path.first is not None
        }
        self._trivial_index: Dict[int, int] = {
            path.source: index for index, path in enumerate(self.basis) if path.kind is BasisKind.TRIVIAL
        }
        self._cycle_index: Dict[int, int] = {
            path.source: index for index, path in enumerate(self.basis) if path.kind is BasisKind.CYCLE_PLUS
        }
        self.product = lru_cache(maxsize=None)(self._product)
        logger.debug("built %s algebra of dimension %d", self.variant.value, self.dimension)

    def __enumerate_basis(self) -> Tuple[BasisPath, ...]:
        quiver = self.quiver
        trivial = [BasisPath(BasisKind.TRIVIAL, vertex, vertex) for vertex in quiver.vertices]
        follow = []
        for arrow in quiver.arrows:
            max_length = self.n_D - 1
            if self.variant is Variant.MONOMIAL and arrow.source_sign is Sign.NEGATIVE:
                max_length = self.n_D
            for length in range(1, max_length + 1):
                path = quiver.follow_path(arrow.id, length)
                follow.append(BasisPath(BasisKind.FOLLOW, path.source, path.target, arrow.id, length))
        cycles = []
        for vertex in quiver.vertices:
            first = quiver.outgoing(vertex, Sign.POSITIVE).id
            cycles.append(BasisPath(BasisKind.CYCLE_PLUS, vertex, vertex, first, self.n_D))
        return tuple(trivial + follow + cycles)

    # basis access

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def c(self) -> int:
        return len(self.quiver.vertices)

    def index_of(self, path: BasisPath) -> int:
        try:
            return self._index[path]
        except KeyError:
            raise AlgebraError(f"{path.describe()} is not a basis path of this algebra") from None

    def trivial_index(self, vertex: int) -> int:
        return self._trivial_index[vertex]

    def follow_index(self, first: int, length: int) -> int:
        return self._follow_index[(first, length)]

    def cycle_index(self, vertex: int) -> int:
        return self._cycle_index[vertex]

    def path_arrows(self, index: int) -> List[int]:
        """Arrows of a basis path in traversal order (first arrow first)."""
        path = self.basis[index]
        if path.first is None:
            return []
        return self.quiver.path_arrows(self.quiver.follow_path(path.first, path.length))

    def element(self, terms: Mapping[int, Scalar]) -> AlgebraElement:
        return AlgebraElement(self, terms)

    def basis_element(self, path: Union[int, BasisPath], coefficient: Optional[Scalar] = None) -> AlgebraElement:
        index = path if isinstance(path, int) else self.index_of(path)
        return AlgebraElement(self, {index: coefficient if coefficient is not None else self._one})

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    def one(self) -> AlgebraElement:
        return AlgebraElement(self, {self._trivial_index[vertex]: self._one for vertex in self.quiver.vertices})

    # reduction and products

    def reduce_traversal(self, first: int, length: int) -> Optional[Tuple[int, Scalar]]:
        """
        Normal form of the follow path (first, length): None when zero, else (basis index, coefficient).
        """
        if length < self.n_D:
            return self._follow_index[(first, length)], self._one
        if length > self.n_D:
            return None
        start = self.quiver.arrow(first)
        vertex = start.source
        cycle = self._cycle_index[vertex]
        if start.source_sign is Sign.POSITIVE:
            return cycle, self._one
        if self.variant is Variant.MONOMIAL:
            return self._follow_index[(first, length)], self._one
        return cycle, self.tau(vertex)

    def reduce_path(self, raw: Sequence[int]) -> AlgebraElement:
        """
        Reduce an arrow sequence written right to left ([b, a] means a first).

        Raises:
            AlgebraError: empty or non-composable sequence, unknown arrow.
        """
        if not raw:
            raise AlgebraError("empty arrow sequence, use a trivial path instead")
        traversal = list(reversed(list(raw)))
        try:
            arrows = [self.quiver.arrow(arrow_id) for arrow_id in traversal]
        except DiagramError as e:
            raise AlgebraError(str(e)) from None
        for before, after in zip(arrows, arrows[1:]):
            if before.target != after.source:
                raise AlgebraError(
                    f"arrows {before.id} and {after.id} are not composable: "
                    f"{before.id} ends at {before.target}, {after.id} starts at {after.source}"
                )
        for before, after in zip(arrows, arrows[1:]):
            if before.target_sign is not after.source_sign:
                return self.zero()
        reduced = self.reduce_traversal(traversal[0], len(traversal))
        if reduced is None:
            return self.zero()
        return AlgebraElement(self, {reduced[0]: reduced[1]})

    def _product(self, i: int, j: int) -> Optional[Tuple[int, Scalar]]:
        """basis[i] * basis[j] (basis[j] first)."""
        left, right = self.basis[i], self.basis[j]
        if right.target != left.source:
            return None
        if right.kind is BasisKind.TRIVIAL:
            return i, self._one
        if left.kind is BasisKind.TRIVIAL:
            return j, self._one
        last = self.quiver.walk(right.first, right.length - 1)
        if self.quiver.successor(last) != left.first:
            return None
        return self.reduce_traversal(right.first, right.length + left.length)

    def multiply(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        """Bilinear product, y first then x."""
        if x.algebra is not self or y.algebra is not self:
            raise AlgebraError("multiply called with elements of another algebra")
        result: Dict[int, Scalar] = {}
        for i, a in x.terms.items():
            for j, b in y.terms.items():
                product = self.product(i, j)
                if product is None:
                    continue
                k, coeff = product
                value = a * b * coeff
                result[k] = result[k] + value if k in result else value
        return AlgebraElement(self, result)

    # statistics

    def radical_indices(self) -> List[int]:
        return [index for index, path in enumerate(self.basis) if path.length > 0]

    def arrow_indices(self) -> List[int]:
        return [self._follow_index[(arrow.id, 1)] for arrow in self.quiver.arrows]

    def radical_powers(self) -> List[List[int]]:
        """
        Basis indices spanning rad^1, rad^2, ... down to the first empty power. Every product of basis paths is
        zero or a nonzero multiple of a basis path, so each power is spanned by basis paths.
        """
        radical = self.radical_indices()
        powers = [radical]
        current = set(radical)
        while current:
            following = set()
            for i in radical:
                for j in current:
                    product = self.product(i, j)
                    if product is not None:
                        following.add(product[0])
            current = following
            powers.append(sorted(current))
        return powers

    def radical_series(self) -> List[int]:
        return [self.dimension] + [len(power) for power in self.radical_powers()]

    def loewy_length(self) -> int:
        return len(self.radical_series()) - 1

    def socle_indices(self) -> List[int]:
        """Basis paths annihilated on the left by every arrow."""
        arrows = self.arrow_indices()
        return [
            index
            for index in range(self.dimension)
            if all(self.product(arrow, index) is None for arrow in arrows)
        ]

    def socle_dimension(self) -> int:
        return len(self.socle_indices())

    def semisimple_quotient_dimension(self) -> int:
        return self.dimension - len(self.radical_indices())

    def cartan_matrix(self) -> np.ndarray:
        """Entry (i, j) counts basis paths from vertex j to vertex i."""
        matrix = np.zeros((self.c, self.c), dtype=int)
        for path in self.basis:
            matrix[path.target, path.source] += 1
        return matrix

    def relations(self) -> RelationSet:
        if self.variant is Variant.LAMBDA:
            return RelationSet(type_one_relations(self.quiver), exchange_relations(self.quiver), ())
        return RelationSet(type_one_relations(self.quiver), (), long_path_relations(self.quiver))

    def verify_admissible(self) -> CheckReport:
        """
        F^m contained in I (every follow path of length n_D + 1 vanishes) and I contained in F^2 (every generator has
        length at least 2).
        """
        relations = self.relations()
        short = [list(path) for path in relations.type_one if len(path) < 2]
        short += [list(r.minus_cycle) for r in relations.type_two if len(r.minus_cycle) < 2 or len(r.plus_cycle) < 2]
        short += [list(path) for path in relations.type_two_prime if len(path) < 2]

        surviving = []
        for arrow in self.quiver.arrows:
            path = written(self.quiver.path_arrows(self.quiver.follow_path(arrow.id, self.n_D + 1)))
            if not self.reduce_path(path).is_zero:
                surviving.append(list(path))

        witness = None
        if short:
            witness = {"short_generator": short[0]}
        elif surviving:
            witness = {"nonzero_long_path": surviving[0]}
        return CheckReport(
            name="admissible",
            passed=not short and not surviving,
            details={
                "type_one": len(relations.type_one),
                "type_two": len(relations.type_two),
                "type_two_prime": len(relations.type_two_prime),
                "long_paths_checked": len(self.quiver.arrows),
                "nilpotency_index": self.n_D + 1,
            },
            witness=witness,
        )

    # export

    def basis_table(self) -> pd.DataFrame:
        rows = []
        for index, path in enumerate(self.basis):
            rows.append(
                {
                    "index": index,
                    "kind": path.kind.value,
                    "source": path.source,
                    "target": path.target,
                    "first": path.first,
                    "length": path.length,
                    "path": path.describe(),
                    "arrows": " ".join(map(str, self.path_arrows(index))),
                }
            )
        return pd.DataFrame(rows, columns=["index", "kind", "source", "target", "first", "length", "path", "arrows"])

    def to_json(self) -> dict:
        return {
            "variant": self.variant.value,
            "field": self.field.label(),
            "dimension": self.dimension,
            "basis": [
                {
                    "index": index,
                    "kind": path.kind.value,
                    "source": path.source,
                    "target": path.target,
                    "length": path.length,
                    "path": path.describe(),
                    "arrows": self.path_arrows(index),
                }
                for index, path in enumerate(self.basis)
            ],
            "cartan_matrix": self.cartan_matrix().tolist(),
            "radical_series": self.radical_series(),
            "loewy_length": self.loewy_length(),
            "socle_dimension": self.socle_dimension(),
            "semisimple_quotient_dimension": self.semisimple_quotient_dimension(),
            "tau": self.tau.to_json(),
        }


def build_algebra(
    q: SignedQuiver, tau: TauAssignment, f: FieldContext, variant: Union[Variant, str] = Variant.LAMBDA
) -> DiagramAlgebra:
    return DiagramAlgebra(q, tau, f, Variant(variant))


def reduce_path(A: DiagramAlgebra, raw: Sequence[int]) -> AlgebraElement:
    return A.reduce_path(raw)


def multiply(A: DiagramAlgebra, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return A.multiply(x, y)


def dimension(A: DiagramAlgebra) -> int:
    return A.dimension


def cartan_matrix(A: DiagramAlgebra) -> np.ndarray:
    return A.cartan_matrix()


def radical_series(A: DiagramAlgebra) -> List[int]:
    return A.radical_series()


def socle_dimension(A: DiagramAlgebra) -> int:
    return A.socle_dimension()


def semisimple_quotient_dimension(A: DiagramAlgebra) -> int:
    return A.semisimple_quotient_dimension()


def loewy_length(A: DiagramAlgebra) -> int:
    return A.loewy_length()


def verify_admissible(A: DiagramAlgebra) -> CheckReport:
    return A.verify_admissible()
