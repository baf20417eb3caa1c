import logging
from typing import List, Optional, Tuple

from tqdm import tqdm

from src.interfaces.verifierAbstract import Verifier
from src.models.algebra.algebra import BasisKind, DiagramAlgebra
from src.models.algebra.oracle import compare_with_oracle
from src.models.report import CheckReport
from src.models.scalars.scalars import Scalar

logger = logging.getLogger(__name__)


def check_unit(A: DiagramAlgebra) -> CheckReport:
    """The sum of the trivial paths is a two-sided identity on every basis path."""
    one = A.one()
    for index in range(A.dimension):
        element = A.basis_element(index)
        for side, product in (("left", one * element), ("right", element * one)):
            if product != element:
                return CheckReport(
                    name="unit",
                    passed=False,
                    details={"dimension": A.dimension},
                    witness={"path": A.basis[index].describe(), "side": side, "product": product.to_json()},
                )
    return CheckReport(name="unit", passed=True, details={"dimension": A.dimension, "paths_checked": A.dimension})


def check_associativity(A: DiagramAlgebra, progress: bool = False) -> CheckReport:
    """
    (xy)z = x(yz) on every basis triple. The pair table is materialized first, each triple is then two lookups.
    """
    dim = A.dimension
    table: List[List[Optional[Tuple[int, Scalar]]]] = [[A.product(i, j) for j in range(dim)] for i in range(dim)]
    for x in tqdm(range(dim), desc="associativity", disable=not progress):
        row_x = table[x]
        for y in range(dim):
            xy = row_x[y]
            row_y = table[y]
            for z in range(dim):
                if xy is None:
                    lhs = None
                else:
                    outer = table[xy[0]][z]
                    lhs = None if outer is None else (outer[0], xy[1] * outer[1])
                yz = row_y[z]
                if yz is None:
                    rhs = None
                else:
                    outer = row_x[yz[0]]
                    rhs = None if outer is None else (outer[0], yz[1] * outer[1])
                if lhs != rhs:
                    return CheckReport(
                        name="associativity",
                        passed=False,
                        details={"dimension": dim},
                        witness={
                            "x": A.basis[x].describe(),
                            "y": A.basis[y].describe(),
                            "z": A.basis[z].describe(),
                        },
                    )
    return CheckReport(name="associativity", passed=True, details={"dimension": dim, "triples_checked": dim ** 3})


def check_basic(A: DiagramAlgebra) -> CheckReport:
    """
    The trivial paths form a complete set of orthogonal primitive idempotents with pairwise non-isomorphic
    projectives, so the algebra is basic.

    Primitivity: e A e has exactly one length-zero basis path, so its radical has codimension 1 and e A e is local.
    Non-isomorphism: the top of A / rad A is c copies of k, one per vertex.
    """
    witness = None
    vertices = A.quiver.vertices
    for e in vertices:
        for f in vertices:
            product = A.product(A.trivial_index(e), A.trivial_index(f))
            expected = (A.trivial_index(e), A.field.one()) if e == f else None
            if product != expected and witness is None:
                witness = {"idempotents": [e, f]}

    local = {}
    for e in vertices:
        corner = [path for path in A.basis if path.source == e and path.target == e]
        local[e] = sum(1 for path in corner if path.kind is BasisKind.TRIVIAL)
        if local[e] != 1 and witness is None:
            witness = {"not_local": e}

    top = A.semisimple_quotient_dimension()
    if top != len(vertices) and witness is None:
        witness = {"semisimple_quotient_dimension": top}

    # rad^{n_D} is spanned by the full turns, rad^{n_D + 1} = 0
    powers = A.radical_powers()
    turns = sorted(index for index, path in enumerate(A.basis) if path.length == A.n_D)
    if (len(powers) != A.n_D + 1 or powers[A.n_D - 1] != turns) and witness is None:
        witness = {"radical_powers": [len(power) for power in powers]}
    return CheckReport(
        name="basic",
        passed=witness is None,
        details={
            "c": len(vertices),
            "semisimple_quotient_dimension": top,
            "top_radical_power_dimension": len(turns),
        },
        witness=witness,
    )


class AdmissibilityVerifier(Verifier):
    @property
    def name(self) -> str:
        return "admissible"

    def verify(self, algebra: DiagramAlgebra) -> CheckReport:
        return algebra.verify_admissible()


class BasicVerifier(Verifier):
    @property
    def name(self) -> str:
        return "basic"

    def verify(self, algebra: DiagramAlgebra) -> CheckReport:
        return check_basic(algebra)


class UnitVerifier(Verifier):
    @property
    def name(self) -> str:
        return "unit"

    def verify(self, algebra: DiagramAlgebra) -> CheckReport:
        return check_unit(algebra)


class AssociativityVerifier(Verifier):
    def __init__(self, progress: bool = False):
        self.progress = progress

    @property
    def name(self) -> str:
        return "associativity"

    def verify(self, algebra: DiagramAlgebra) -> CheckReport:
        return check_associativity(algebra, self.progress)


class OracleVerifier(Verifier):
    @property
    def name(self) -> str:
        return "oracle"

    def verify(self, algebra: DiagramAlgebra) -> CheckReport:
        return compare_with_oracle(algebra)
