import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from src.models.algebra.algebra import DiagramAlgebra
from src.models.algebra.relations import written
from src.models.diagram.diagram import Diagram
from src.models.grading.words import GroupWord, commutator
from src.models.quiver.quiver import SignedQuiver

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DegreeAssignment:
    """
    Degree of every arrow: the generator of its arc when both end crossings have the same sign, else identity.
    """

    degrees: Tuple[Tuple[int, GroupWord], ...]

    def __getitem__(self, arrow_id: int) -> GroupWord:
        return dict(self.degrees)[arrow_id]

    def as_dict(self) -> Dict[int, GroupWord]:
        return dict(self.degrees)

    def graded_arrows(self) -> List[int]:
        return [arrow_id for arrow_id, degree in self.degrees if not degree.is_identity]

    def to_json(self) -> dict:
        return {str(arrow_id): degree.render() for arrow_id, degree in self.degrees}


def arrow_degrees(q: SignedQuiver, d: Diagram) -> DegreeAssignment:
    degrees = []
    for arrow in q.arrows:
        if d.crossing(arrow.source).sign is d.crossing(arrow.target).sign:
            degrees.append((arrow.id, GroupWord.generator(arrow.arc)))
        else:
            degrees.append((arrow.id, GroupWord.identity()))
    return DegreeAssignment(tuple(degrees))


def path_degree(assignment: DegreeAssignment, path: Sequence[int]) -> GroupWord:
    """
    Degree of a path written right to left ([b, a] is a then b); the product is taken in the written order so
    that deg(p q) = deg(p) deg(q).
    """
    degrees = assignment.as_dict()
    return GroupWord.product(degrees[arrow_id] for arrow_id in path)


def walk_degree(assignment: DegreeAssignment, walk: Sequence[Tuple[int, int]]) -> GroupWord:
    """
    Degree of a walk given in traversal order as (arrow, +1 | -1) steps; a step against an arrow contributes the
    inverse degree.
    """
    degrees = assignment.as_dict()
    factors = []
    for arrow_id, direction in reversed(list(walk)):
        degree = degrees[arrow_id]
        factors.append(degree if direction == 1 else degree.inverse())
    return GroupWord.product(factors)


def homogeneity_words(A: DiagramAlgebra, assignment: DegreeAssignment) -> Dict[int, GroupWord]:
    """w_e = [deg alpha_e, deg beta_e] for every vertex; the exchange relation at e is homogeneous iff w_e = 1."""
    quiver = A.quiver
    words = {}
    for vertex in quiver.vertices:
        a = path_degree(assignment, written(quiver.path_arrows(quiver.alpha(vertex))))
        b = path_degree(assignment, written(quiver.path_arrows(quiver.beta(vertex))))
        words[vertex] = commutator(a, b)
    return words


def basis_degrees(A: DiagramAlgebra, assignment: DegreeAssignment) -> Dict[int, GroupWord]:
    return {index: path_degree(assignment, written(A.path_arrows(index))) for index in range(A.dimension)}
