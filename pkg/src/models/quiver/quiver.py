"""
Signed quiver of a knot diagram.

Vertices are crossings and every segment gives an arrow from the crossing it leaves to the crossing it reaches.
The source sign is + when the segment leaves as over-strand and - when it leaves under; the target sign
likewise for the arrival. Following the knot means continuing with the arrow whose source sign equals the
incoming target sign, so a path is determined by its first arrow and its length.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import categorical_multiedge_match

from src.models.diagram.diagram import Diagram, Role, Sign
from src.models.exceptions import DiagramError

logger = logging.getLogger(__name__)

# a walk step is (arrow id, +1 for the arrow itself, -1 for its formal reversal)
WalkStep = Tuple[int, int]


@dataclass(frozen=True)
class SignedArrow:
    id: int
    source: int
    source_sign: Sign
    target: int
    target_sign: Sign
    arc: int

    @property
    def signs(self) -> str:
        return self.source_sign.value + self.target_sign.value


@dataclass(frozen=True)
class FollowPath:
    """
    Path obtained by following the knot from `first` for `length` arrows.

    Only the first arrow and the length are stored; the remaining arrows are forced.
    """

    first: int
    length: int
    source: int
    target: int
    source_sign: Sign
    target_sign: Sign

    @property
    def is_cycle(self) -> bool:
        return self.source == self.target


class SignedQuiver:
    """
    Quiver Q_D with signed arrow ends.

    Args:
        vertices (Sequence[int]): vertex ids (crossing indices).
        arrows (Iterable[SignedArrow]): arrows, ids are segment labels.
        validate (bool): enforce the knot quiver invariants. Synthetic quivers used as negative controls pass False.
    """

    def __init__(self, vertices: Sequence[int], arrows: Iterable[SignedArrow], validate: bool = True):
        self.vertices = tuple(vertices)
        self.arrows = tuple(sorted(arrows, key=lambda arrow: arrow.id))
        self.n_D = len(self.arrows)
        self._by_id: Dict[int, SignedArrow] = {arrow.id: arrow for arrow in self.arrows}
        self._successor = self.__compute_successors()
        if validate:
            self.validate()

    def __compute_successors(self) -> Dict[int, Optional[int]]:
        starts: Dict[Tuple[int, Sign], List[int]] = {}
        for arrow in self.arrows:
            starts.setdefault((arrow.source, arrow.source_sign), []).append(arrow.id)
        successor = {}
        for arrow in self.arrows:
            candidates = starts.get((arrow.target, arrow.target_sign), [])
            successor[arrow.id] = candidates[0] if len(candidates) == 1 else None
        return successor

    def validate(self) -> None:
        """
        Check the degree invariant at every vertex and that following the knot is one cycle through all arrows.

        Raises:
            DiagramError: an invariant fails.
        """
        for vertex in self.vertices:
            out_signs = sorted(arrow.source_sign.value for arrow in self.arrows if arrow.source == vertex)
            in_signs = sorted(arrow.target_sign.value for arrow in self.arrows if arrow.target == vertex)
            if out_signs != ["+", "-"] or in_signs != ["+", "-"]:
                raise DiagramError(
                    f"vertex {vertex} has outgoing signs {out_signs} and incoming signs {in_signs}, "
                    "expected one of each"
                )
        if not self.arrows:
            raise DiagramError("quiver without arrows")
        first = self.arrows[0].id
        current, steps = first, 0
        while True:
            current = self._successor[current]
            steps += 1
            if current is None or current == first or steps > self.n_D:
                break
        if current != first or steps != self.n_D:
            raise DiagramError(f"following the knot gives a cycle of length {steps}, expected {self.n_D}")

    # structure

    def arrow(self, arrow_id: int) -> SignedArrow:
        try:
            return self._by_id[arrow_id]
        except KeyError:
            raise DiagramError(f"unknown arrow {arrow_id}") from None

    def successor(self, arrow_id: int) -> int:
        follow = self._successor[arrow_id]
        if follow is None:
            raise DiagramError(f"arrow {arrow_id} has no unique continuation")
        return follow

    def outgoing(self, vertex: int, sign: Sign) -> SignedArrow:
        for arrow in self.arrows:
            if arrow.source == vertex and arrow.source_sign is sign:
                return arrow
        raise DiagramError(f"vertex {vertex} has no outgoing arrow with source sign {sign.value}")

    def incoming(self, vertex: int, sign: Sign) -> SignedArrow:
        for arrow in self.arrows:
            if arrow.target == vertex and arrow.target_sign is sign:
                return arrow
        raise DiagramError(f"vertex {vertex} has no incoming arrow with target sign {sign.value}")

    def follow_path(self, first: int, length: int) -> FollowPath:
        if length < 1:
            raise DiagramError(f"follow paths have positive length, got {length}")
        start = self.arrow(first)
        last = self.arrow(self.walk(first, length - 1))
        return FollowPath(
            first=first,
            length=length,
            source=start.source,
            target=last.target,
            source_sign=start.source_sign,
            target_sign=last.target_sign,
        )

    def walk(self, arrow_id: int, steps: int) -> int:
        """Arrow reached after `steps` successor steps."""
        for _ in range(steps % self.n_D):
            arrow_id = self.successor(arrow_id)
        return arrow_id

    def path_arrows(self, path: FollowPath) -> List[int]:
        arrows = [path.first]
        for _ in range(path.length - 1):
            arrows.append(self.successor(arrows[-1]))
        return arrows

    # fundamental cycles

    def alpha(self, vertex: int) -> FollowPath:
        """Follow from the over exit of `vertex` until the knot comes back under it."""
        return self.__follow_until(vertex, Sign.POSITIVE, Sign.NEGATIVE)

    def beta(self, vertex: int) -> FollowPath:
        """Follow from the under exit of `vertex` until the knot comes back over it."""
        return self.__follow_until(vertex, Sign.NEGATIVE, Sign.POSITIVE)

    def __follow_until(self, vertex: int, start_sign: Sign, end_sign: Sign) -> FollowPath:
        current = self.outgoing(vertex, start_sign).id
        first = current
        for length in range(1, self.n_D + 1):
            arrow = self.arrow(current)
            if arrow.target == vertex and arrow.target_sign is end_sign:
                return self.follow_path(first, length)
            current = self.successor(current)
        raise DiagramError(f"no return to vertex {vertex} within {self.n_D} arrows")

    def fundamental_cycle(self, vertex: int, sign: Sign) -> FollowPath:
        """gamma^+ (sign +) or gamma^- (sign -): the full turn starting at the exit of that sign."""
        return self.follow_path(self.outgoing(vertex, sign).id, self.n_D)

    # graph views

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.vertices)
        for arrow in self.arrows:
            graph.add_edge(arrow.source, arrow.target, key=arrow.id, signs=arrow.signs, arc=arrow.arc)
        return graph

    def is_isomorphic(self, other: "SignedQuiver") -> bool:
        """Isomorphism of signed quivers: vertex bijection preserving arrows and their sign pairs."""
        return nx.is_isomorphic(
            self.to_networkx(), other.to_networkx(), edge_match=categorical_multiedge_match("signs", None)
        )

    def spanning_tree_walks(self, base: int = 0) -> Dict[int, List[WalkStep]]:
        """
        Walk from `base` to every vertex inside a spanning tree of the underlying undirected multigraph.
        """
        undirected = nx.MultiGraph()
        undirected.add_nodes_from(self.vertices)
        for arrow in self.arrows:
            undirected.add_edge(arrow.source, arrow.target, key=arrow.id)
        tree = nx.MultiGraph()
        tree.add_nodes_from(self.vertices)
        tree.add_edges_from(nx.minimum_spanning_edges(undirected, algorithm="kruskal", keys=True, data=False))

        walks: Dict[int, List[WalkStep]] = {}
        for vertex, route in nx.single_source_shortest_path(tree, base).items():
            steps = []
            for u, v in zip(route, route[1:]):
                key = min(tree[u][v])
                steps.append((key, 1 if self.arrow(key).source == u else -1))
            walks[vertex] = steps
        return walks

    def tree_arrows(self, base: int = 0) -> set:
        return {arrow_id for walk in self.spanning_tree_walks(base).values() for arrow_id, _ in walk}

    def closed_walk_generators(self, base: int = 0) -> List[List[WalkStep]]:
        """
        Fundamental cycles of a spanning tree: for every arrow outside the tree, go to its source in the tree,
        take the arrow and come back through the tree.
        """
        walks = self.spanning_tree_walks(base)
        in_tree = self.tree_arrows(base)
        closed = []
        for arrow in self.arrows:
            if arrow.id in in_tree:
                continue
            closed.append(walks[arrow.source] + [(arrow.id, 1)] + reverse_walk(walks[arrow.target]))
        return closed

    def to_dot(self) -> str:
        lines = ["digraph Q_D {", "  node [shape=circle];"]
        for vertex in self.vertices:
            lines.append(f'  {vertex} [label="{vertex}"];')
        for arrow in self.arrows:
            lines.append(f'  {arrow.source} -> {arrow.target} [label="{arrow.id} {arrow.signs}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "n_D": self.n_D,
            "arrows": [
                {
                    "id": arrow.id,
                    "source": arrow.source,
                    "source_sign": arrow.source_sign.value,
                    "target": arrow.target,
                    "target_sign": arrow.target_sign.value,
                    "arc": arrow.arc,
                    "successor": self._successor[arrow.id],
                }
                for arrow in self.arrows
            ],
        }


def reverse_walk(walk: Sequence[WalkStep]) -> List[WalkStep]:
    return [(arrow_id, -direction) for arrow_id, direction in reversed(walk)]


def _role_sign(role: Role) -> Sign:
    return Sign.POSITIVE if role is Role.OVER else Sign.NEGATIVE


def build_quiver(d: Diagram) -> SignedQuiver:
    arrows = [
        SignedArrow(
            id=segment.label,
            source=segment.tail,
            source_sign=_role_sign(segment.tail_role),
            target=segment.head,
            target_sign=_role_sign(segment.head_role),
            arc=segment.arc,
        )
        for segment in d.segments
    ]
    quiver = SignedQuiver(range(d.c), arrows)
    logger.debug("built quiver with %d vertices and %d arrows", d.c, quiver.n_D)
    return quiver


def alpha(q: SignedQuiver, e: int) -> FollowPath:
    return q.alpha(e)


def beta(q: SignedQuiver, e: int) -> FollowPath:
    return q.beta(e)


def fundamental_cycle(q: SignedQuiver, e: int, sign: Sign) -> FollowPath:
    return q.fundamental_cycle(e, sign)


def to_dot(q: SignedQuiver) -> str:
    return q.to_dot()
