"""
Generators of the ideal of relations.

Paths are written like compositions, right to left: the written sequence [y, x] means x first, then y.
"""

from dataclasses import dataclass
from typing import List, Tuple

from src.models.diagram.diagram import Sign
from src.models.quiver.quiver import SignedQuiver

WrittenPath = Tuple[int, ...]


@dataclass(frozen=True)
class ExchangeRelation:
    """alpha_e beta_e - tau(e) beta_e alpha_e, i.e. gamma_e^- - tau(e) gamma_e^+."""

    vertex: int
    minus_cycle: WrittenPath
    plus_cycle: WrittenPath


@dataclass(frozen=True)
class RelationSet:
    """
    Attributes:
        type_one (tuple): the 2c sign-mismatch paths of length 2.
        type_two (tuple): one exchange relation per vertex (lambda variant, empty otherwise).
        type_two_prime (tuple): follow paths of length n_D + 1 (monomial variant, empty otherwise).
    """

    type_one: Tuple[WrittenPath, ...]
    type_two: Tuple[ExchangeRelation, ...]
    type_two_prime: Tuple[WrittenPath, ...]

    def monomials(self) -> List[WrittenPath]:
        return list(self.type_one) + list(self.type_two_prime)

    def to_json(self) -> dict:
        return {
            "type_one": [list(path) for path in self.type_one],
            "type_two": [
                {"vertex": r.vertex, "alpha_beta": list(r.minus_cycle), "beta_alpha": list(r.plus_cycle)}
                for r in self.type_two
            ],
            "type_two_prime": [list(path) for path in self.type_two_prime],
        }


def written(traversal) -> WrittenPath:
    return tuple(reversed(list(traversal)))


def type_one_relations(quiver: SignedQuiver) -> Tuple[WrittenPath, ...]:
    """Every incoming arrow followed by the outgoing arrow of the other sign."""
    relations = []
    for vertex in quiver.vertices:
        for incoming in quiver.arrows:
            if incoming.target != vertex:
                continue
            for outgoing in quiver.arrows:
                if outgoing.source == vertex and outgoing.source_sign is not incoming.target_sign:
                    relations.append((outgoing.id, incoming.id))
    return tuple(relations)


def exchange_relations(quiver: SignedQuiver) -> Tuple[ExchangeRelation, ...]:
    relations = []
    for vertex in quiver.vertices:
        minus = quiver.fundamental_cycle(vertex, Sign.NEGATIVE)
        plus = quiver.fundamental_cycle(vertex, Sign.POSITIVE)
        relations.append(
            ExchangeRelation(
                vertex=vertex,
                minus_cycle=written(quiver.path_arrows(minus)),
                plus_cycle=written(quiver.path_arrows(plus)),
            )
        )
    return tuple(relations)


def long_path_relations(quiver: SignedQuiver) -> Tuple[WrittenPath, ...]:
    return tuple(
        written(quiver.path_arrows(quiver.follow_path(arrow.id, quiver.n_D + 1))) for arrow in quiver.arrows
    )
