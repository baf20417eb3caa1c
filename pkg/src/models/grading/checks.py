import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

from sympy.combinatorics import PermutationGroup

from src.models.algebra.algebra import DiagramAlgebra
from src.models.grading.budgets import SearchBudgets, expired
from src.models.grading.certificates import Certificate, Representation, Verdict
from src.models.grading.decider import decide_trivial, verify_certificate
from src.models.grading.degrees import DegreeAssignment, homogeneity_words, walk_degree
from src.models.grading.representations import RepresentationSearch
from src.models.grading.wirtinger import WirtingerPresentation
from src.models.grading.words import GroupWord
from src.models.quiver.quiver import SignedQuiver

logger = logging.getLogger(__name__)


class HomogeneityVerdict(str, Enum):
    HOMOGENEOUS = "homogeneous"
    NOT_HOMOGENEOUS = "not-homogeneous"
    INCONCLUSIVE = "inconclusive"


class ConnectedVerdict(str, Enum):
    CONNECTED = "connected"
    NOT_CONNECTED = "not-connected"
    INCONCLUSIVE = "inconclusive"


@dataclass
class HomogeneityReport:
    verdict: HomogeneityVerdict
    words: Dict[int, GroupWord]
    certificates: Dict[int, Certificate]
    verified: Dict[int, bool]
    type_one_homogeneous: bool = True

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "type_one_homogeneous": self.type_one_homogeneous,
            "vertices": [
                {
                    "vertex": vertex,
                    "word": self.words[vertex].render(),
                    "certificate": self.certificates[vertex].to_json(),
                    "verified": self.verified[vertex],
                }
                for vertex in sorted(self.words)
            ],
        }


@dataclass
class ConnectedReport:
    verdict: ConnectedVerdict
    walk_degrees: List[GroupWord]
    reached_generators: List[int]
    witness: Optional[Representation] = None
    details: Dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "walk_degrees": [word.render() for word in self.walk_degrees],
            "exponent_sums": [word.exponent_sum() for word in self.walk_degrees],
            "reached_generators": [f"x{generator + 1}" for generator in self.reached_generators],
            "witness": None if self.witness is None else {**self.witness.to_json(), **self.details},
        }


def check_homogeneity(
    A: DiagramAlgebra,
    assignment: DegreeAssignment,
    p: WirtingerPresentation,
    budgets: SearchBudgets,
    representations: Optional[RepresentationSearch] = None,
) -> HomogeneityReport:
    """
    Type-I relations are monomials, so only the exchange relation of each vertex needs its commutator w_e decided.
    """
    if representations is None:
        representations = RepresentationSearch(budgets)
    words = homogeneity_words(A, assignment)
    certificates: Dict[int, Certificate] = {}
    verified: Dict[int, bool] = {}
    for vertex, word in words.items():
        certificate = decide_trivial(word, p, budgets, representations)
        certificates[vertex] = certificate
        verified[vertex] = certificate.verdict is not Verdict.INCONCLUSIVE and verify_certificate(certificate, word, p)
        logger.info("vertex %d: w = %s -> %s", vertex, word, certificate.verdict.value)

    if any(certificate.is_nontrivial for certificate in certificates.values()):
        verdict = HomogeneityVerdict.NOT_HOMOGENEOUS
    elif all(certificate.is_trivial for certificate in certificates.values()):
        verdict = HomogeneityVerdict.HOMOGENEOUS
    else:
        verdict = HomogeneityVerdict.INCONCLUSIVE
    return HomogeneityReport(verdict, words, certificates, verified)


def check_connected(
    q: SignedQuiver,
    assignment: DegreeAssignment,
    p: WirtingerPresentation,
    budgets: SearchBudgets,
    representations: Optional[RepresentationSearch] = None,
    base: int = 0,
) -> ConnectedReport:
    """
    Degrees of the spanning-tree closed walks at `base` generate the degrees realized by closed walks.

    NO: some representation maps the walk degrees onto a proper subgroup of the image of the generators.
    YES: every arc generator is itself the degree of a generating walk, up to inversion.
    """
    if representations is None:
        representations = RepresentationSearch(budgets)
    walks = q.closed_walk_generators(base)
    degrees = [walk_degree(assignment, walk) for walk in walks]
    reached = sorted({word.letters[0][0] for word in degrees if len(word) == 1})

    deadline = budgets.deadline()
    for representation in representations.representations(p, deadline):
        image_order = representation.image_group().order()
        walk_images = [representation.evaluate(word) for word in degrees]
        walk_order = _order(walk_images)
        if walk_order < image_order:
            logger.info("closed walk degrees generate a subgroup of order %d inside %d", walk_order, image_order)
            return ConnectedReport(
                ConnectedVerdict.NOT_CONNECTED,
                degrees,
                reached,
                witness=representation,
                details={"walk_group_order": walk_order, "image_group_order": image_order},
            )

    if set(reached) == set(p.generators):
        return ConnectedReport(ConnectedVerdict.CONNECTED, degrees, reached)
    if expired(deadline):
        logger.warning("time budget exhausted while checking connectedness")
    return ConnectedReport(ConnectedVerdict.INCONCLUSIVE, degrees, reached)


def _order(images) -> int:
    generators = [image for image in images if not image.is_Identity]
    if not generators:
        return 1
    return PermutationGroup(generators).order()
