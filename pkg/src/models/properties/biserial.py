import logging
from typing import List, Set

from src.interfaces.verifierAbstract import Verifier
from src.models.algebra.relations import RelationSet, WrittenPath
from src.models.quiver.quiver import SignedQuiver
from src.models.report import CheckReport

logger = logging.getLogger(__name__)


def check_special_biserial(q: SignedQuiver, rho: RelationSet) -> CheckReport:
    """
    Check the three special biserial conditions literally on the quiver endpoints.

    1. every vertex is the source of at most two arrows and the target of at most two arrows;
    2. if distinct arrows c, d start at the target of an arrow a, then ca or da is in rho;
    3. if distinct arrows a, b end at the source of an arrow c, then ca or cb is in rho.

    Only the monomial members of rho are tested, paths are written right to left (ca = a first).

    Args:
        q (SignedQuiver): the quiver, validation is not required.
        rho (RelationSet): relations of the algebra.

    Returns:
        CheckReport: per-vertex degrees, per-arrow results and the first failing witness.
    """
    monomials: Set[WrittenPath] = set(rho.monomials())
    witness = None

    vertex_rows = []
    for vertex in q.vertices:
        out_degree = sum(1 for arrow in q.arrows if arrow.source == vertex)
        in_degree = sum(1 for arrow in q.arrows if arrow.target == vertex)
        ok = out_degree <= 2 and in_degree <= 2
        vertex_rows.append({"vertex": vertex, "out": out_degree, "in": in_degree, "ok": ok})
        if not ok and witness is None:
            witness = {"condition": 1, "vertex": vertex, "out": out_degree, "in": in_degree}

    arrow_rows = []
    for arrow in q.arrows:
        continuations = [other.id for other in q.arrows if other.source == arrow.target]
        predecessors = [other.id for other in q.arrows if other.target == arrow.source]
        forward = _pairs_covered(continuations, lambda c: (c, arrow.id), monomials)
        backward = _pairs_covered(predecessors, lambda a: (arrow.id, a), monomials)
        arrow_rows.append({"arrow": arrow.id, "condition_2": forward is None, "condition_3": backward is None})
        if forward is not None and witness is None:
            witness = {"condition": 2, "arrow": arrow.id, "continuations": list(forward)}
        if backward is not None and witness is None:
            witness = {"condition": 3, "arrow": arrow.id, "predecessors": list(backward)}

    passed = witness is None
    if not passed:
        logger.info("special biserial check failed: %s", witness)
    return CheckReport(
        name="special_biserial",
        passed=passed,
        details={"vertices": vertex_rows, "arrows": arrow_rows, "monomial_relations": len(monomials)},
        witness=witness,
    )


def _pairs_covered(candidates: List[int], path_of, monomials: Set[WrittenPath]):
    """Return the first pair of distinct candidates whose paths are both outside rho, or None."""
    for position, first in enumerate(candidates):
        for second in candidates[position + 1:]:
            if path_of(first) not in monomials and path_of(second) not in monomials:
                return first, second
    return None


class SpecialBiserialVerifier(Verifier):
    @property
    def name(self) -> str:
        return "special_biserial"

    def verify(self, algebra) -> CheckReport:
        return check_special_biserial(algebra.quiver, algebra.relations())
