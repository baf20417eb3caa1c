"""
Frobenius form of the lambda algebra and its verification.

Every basis path d has a partner d' with d'd a fundamental cycle: vertices pair with their positive cycle and a
follow path (x, l) pairs with the follow path of length n_D - l that completes it. The form is
beta(d', d) = 1 when d is a vertex or starts with a positive-source arrow, tau(e) otherwise, and zero off the
pairing, which is the coefficient of gamma_e^+ in d'd.
"""

import logging
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple

import pandas as pd
from tqdm import tqdm

from src.interfaces.verifierAbstract import Verifier
from src.models.algebra.algebra import AlgebraElement, BasisKind, DiagramAlgebra, Variant
from src.models.diagram.diagram import Sign
from src.models.exceptions import AlgebraError
from src.models.report import CheckReport
from src.models.scalars.scalars import Scalar

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FrobeniusData:
    """
    Attributes:
        algebra (DiagramAlgebra): the algebra the form lives on.
        partner (tuple): basis index of d' for every basis index d.
        weight (tuple): beta(d', d) for every basis index d.
    """

    algebra: DiagramAlgebra
    partner: Tuple[int, ...]
    weight: Tuple[Scalar, ...]

    def beta(self, left: int, right: int) -> Scalar:
        """beta on basis paths."""
        if self.partner[right] == left:
            return self.weight[right]
        return self.algebra.field.zero()

    def form(self, x: AlgebraElement, y: AlgebraElement) -> Scalar:
        total = self.algebra.field.zero()
        for j, b in y.terms.items():
            i = self.partner[j]
            if i in x.terms:
                total = total + x.terms[i] * b * self.weight[j]
        return total

    def trace(self, x: AlgebraElement) -> Scalar:
        """t(x) = beta(x, 1)."""
        return self.form(x, self.algebra.one())

    def perturbed(self, index: Optional[int] = None, factor: int = 2) -> "FrobeniusData":
        """
        Copy with one Gram coefficient multiplied by `factor`, defaulting to the weight of the first trivial path.
        """
        if index is None:
            index = self.algebra.trivial_index(self.algebra.quiver.vertices[0])
        scaled = self.weight[index] * factor
        if scaled == self.weight[index] or scaled.is_zero:
            raise AlgebraError(f"factor {factor} does not perturb the form over {self.algebra.field.label()}")
        weights = list(self.weight)
        weights[index] = scaled
        return replace(self, weight=tuple(weights))

    def to_json(self) -> List[dict]:
        basis = self.algebra.basis
        return [
            {
                "index": index,
                "path": basis[index].describe(),
                "partner": basis[partner].describe(),
                "weight": str(self.weight[index]),
            }
            for index, partner in enumerate(self.partner)
        ]


def frobenius_form(A: DiagramAlgebra) -> FrobeniusData:
    """
    Build the pairing and the Gram weights.

    Raises:
        AlgebraError: the algebra is the monomial variant.
    """
    if A.variant is not Variant.LAMBDA:
        raise AlgebraError("the Frobenius form is built for the lambda variant only")
    quiver = A.quiver
    one = A.field.one()
    partner: List[int] = []
    weight: List[Scalar] = []
    for path in A.basis:
        if path.kind is BasisKind.TRIVIAL:
            partner.append(A.cycle_index(path.source))
            weight.append(one)
            continue
        if path.kind is BasisKind.CYCLE_PLUS:
            partner.append(A.trivial_index(path.source))
            weight.append(one)
            continue
        resume = quiver.walk(path.first, path.length)
        partner.append(A.follow_index(resume, A.n_D - path.length))
        if quiver.arrow(path.first).source_sign is Sign.POSITIVE:
            weight.append(one)
        else:
            weight.append(A.tau(path.source))
    return FrobeniusData(A, tuple(partner), tuple(weight))


def gram_table(F: FrobeniusData) -> pd.DataFrame:
    return pd.DataFrame(F.to_json(), columns=["index", "path", "partner", "weight"])


def trace(F: FrobeniusData, x: AlgebraElement) -> Scalar:
    return F.trace(x)


def perturbed(F: FrobeniusData, index: Optional[int] = None, factor: int = 2) -> FrobeniusData:
    return F.perturbed(index, factor)


def _check_pairing(F: FrobeniusData) -> Optional[dict]:
    """Bijectivity, nonzero weights and d'd landing on the positive cycle at the start of d."""
    A = F.algebra
    if sorted(F.partner) != list(range(A.dimension)):
        seen: Dict[int, int] = {}
        for index, partner in enumerate(F.partner):
            if partner in seen:
                return {"not_bijective": [A.basis[seen[partner]].describe(), A.basis[index].describe()]}
            seen[partner] = index
    for index, partner in enumerate(F.partner):
        if F.weight[index].is_zero:
            return {"zero_weight": A.basis[index].describe()}
        product = A.product(partner, index)
        path = A.basis[index]
        expected_target = A.basis[product[0]] if product is not None else None
        if (
            expected_target is None
            or expected_target.kind is not BasisKind.CYCLE_PLUS
            or expected_target.source != path.source
        ):
            return {"partner_not_completing": [A.basis[partner].describe(), path.describe()]}
    return None


def check_frobenius(A: DiagramAlgebra, F: Optional[FrobeniusData] = None, progress: bool = False) -> CheckReport:
    """
    Verify beta(xy, z) = beta(x, yz) on every basis triple and the generalized permutation shape of the Gram matrix.

    Each side is nonzero for at most a handful of z, so the check walks the products of every pair (x, y) and
    compares the z where either side can be nonzero; the remaining triples are zero on both sides.

    Args:
        A (DiagramAlgebra): lambda algebra.
        F (FrobeniusData): form to check, built from A when omitted.
        progress (bool): show a tqdm bar over x.

    Returns:
        CheckReport: triples_checked is dim^3, witness is the first failing triple.
    """
    if F is None:
        F = frobenius_form(A)
    dim = A.dimension
    pairing_witness = _check_pairing(F)
    if pairing_witness is not None:
        return CheckReport(name="frobenius", passed=False, details={"dimension": dim}, witness=pairing_witness)

    partner_of = {partner: index for index, partner in enumerate(F.partner)}
    zero = A.field.zero()
    # right_hits[y][m]: the z with y z = coeff * basis[m]
    right_hits: List[Dict[int, List[Tuple[int, Scalar]]]] = []
    for y in range(dim):
        hits: Dict[int, List[Tuple[int, Scalar]]] = {}
        for z in range(dim):
            product = A.product(y, z)
            if product is not None:
                hits.setdefault(product[0], []).append((z, product[1]))
        right_hits.append(hits)

    for x in tqdm(range(dim), desc="frobenius", disable=not progress):
        needed = partner_of[x]
        for y in range(dim):
            left: Dict[int, Scalar] = {}
            product = A.product(x, y)
            if product is not None:
                k, coeff = product
                z = partner_of[k]
                left[z] = coeff * F.weight[z]
            right: Dict[int, Scalar] = {}
            for z, coeff in right_hits[y].get(needed, []):
                right[z] = coeff * F.weight[needed]
            for z in set(left) | set(right):
                lhs, rhs = left.get(z, zero), right.get(z, zero)
                if lhs != rhs:
                    logger.info("frobenius associativity fails at (%d, %d, %d)", x, y, z)
                    return CheckReport(
                        name="frobenius",
                        passed=False,
                        details={"dimension": dim},
                        witness={
                            "x": A.basis[x].describe(),
                            "y": A.basis[y].describe(),
                            "z": A.basis[z].describe(),
                            "beta(xy,z)": str(lhs),
                            "beta(x,yz)": str(rhs),
                        },
                    )
    return CheckReport(
        name="frobenius",
        passed=True,
        details={
            "dimension": dim,
            "triples_checked": dim ** 3,
            "gram_nonzero_per_row": 1,
            "pairing": F.to_json(),
        },
    )


def nakayama_permutation(A: DiagramAlgebra, F: Optional[FrobeniusData] = None) -> Dict[int, int]:
    """Vertex e to the source of the socle path paired with e."""
    if F is None:
        F = frobenius_form(A)
    return {vertex: A.basis[F.partner[A.trivial_index(vertex)]].source for vertex in A.quiver.vertices}


class FrobeniusVerifier(Verifier):
    def __init__(self, progress: bool = False):
        self.progress = progress

    @property
    def name(self) -> str:
        return "frobenius"

    def verify(self, algebra: DiagramAlgebra) -> CheckReport:
        report = check_frobenius(algebra, progress=self.progress)
        if report.passed:
            permutation = nakayama_permutation(algebra)
            report.details["nakayama_permutation"] = {str(k): v for k, v in permutation.items()}
        return report
