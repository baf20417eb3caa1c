"""
Wirtinger presentation of the knot group.

One generator per arc, one relator per crossing. With o the over arc, i the incoming and u the outgoing under arc,
a positive crossing gives u o i^-1 o^-1 and a negative one u o^-1 i^-1 o.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import networkx as nx

from src.models.diagram.diagram import Diagram, Sign
from src.models.grading.words import GroupWord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CrossingRelation:
    """u = o i o^-1 (positive) or u = o^-1 i o (negative), as arc indices."""

    crossing: int
    sign: Sign
    over: int
    incoming: int
    outgoing: int

    def relator(self) -> GroupWord:
        o, i, u = self.over, self.incoming, self.outgoing
        if self.sign is Sign.POSITIVE:
            return GroupWord(((u, 1), (o, 1), (i, -1), (o, -1)))
        return GroupWord(((u, 1), (o, -1), (i, -1), (o, 1)))


@dataclass(frozen=True)
class WirtingerPresentation:
    generators: Tuple[int, ...]
    relations: Tuple[CrossingRelation, ...]

    @property
    def relators(self) -> Tuple[GroupWord, ...]:
        return tuple(relation.relator() for relation in self.relations)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def names(self) -> List[str]:
        return [f"x{generator + 1}" for generator in self.generators]

    def to_json(self) -> dict:
        return {
            "generators": self.names(),
            "relators": [
                {"crossing": relation.crossing, "sign": relation.sign.value, "word": relation.relator().render()}
                for relation in self.relations
            ],
        }


def wirtinger(d: Diagram) -> WirtingerPresentation:
    relations = []
    for crossing in d.crossings:
        relations.append(
            CrossingRelation(
                crossing=crossing.index,
                sign=crossing.sign,
                over=d.segment(crossing.over_in).arc,
                incoming=d.segment(crossing.under_in).arc,
                outgoing=d.segment(crossing.under_out).arc,
            )
        )
    presentation = WirtingerPresentation(tuple(arc.index for arc in d.arcs), tuple(relations))
    logger.debug("wirtinger presentation with %d generators", presentation.rank)
    return presentation


def abelianization_rank(p: WirtingerPresentation) -> int:
    """Every relator identifies u with i after abelianizing, so the rank is the number of classes of arcs."""
    graph = nx.Graph()
    graph.add_nodes_from(p.generators)
    graph.add_edges_from((relation.incoming, relation.outgoing) for relation in p.relations)
    return nx.number_connected_components(graph)
