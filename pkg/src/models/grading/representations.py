"""
Backtracking enumeration of permutation representations of a Wirtinger presentation.

All Wirtinger generators are conjugate, so their images share one cycle type. The image of the first generator is
fixed to the canonical permutation of that type, the others range over its conjugacy class, and every crossing
relation propagates: knowing o and i fixes u, knowing o and u fixes i.
"""

import logging
from itertools import permutations
from typing import Dict, Iterator, List, Optional, Tuple

from sympy.combinatorics import Permutation
from sympy.utilities.iterables import partitions
from tqdm import tqdm

from src.interfaces.deciderAbstract import WordDecider
from src.models.diagram.diagram import Sign
from src.models.grading.budgets import SearchBudgets, expired
from src.models.grading.certificates import Certificate, Representation, Verdict
from src.models.grading.wirtinger import CrossingRelation, WirtingerPresentation
from src.models.grading.words import GroupWord

logger = logging.getLogger(__name__)

CycleType = Tuple[Tuple[int, int], ...]


def cycle_types(n: int) -> List[CycleType]:
    """Non-identity cycle types of S_n as sorted (length, count) pairs."""
    types = []
    for partition in partitions(n):
        if set(partition) == {1}:
            continue
        types.append(tuple(sorted(partition.items())))
    return types


def canonical_permutation(n: int, cycle_type: CycleType) -> Permutation:
    cycles, start = [], 0
    for length, count in sorted(cycle_type, reverse=True):
        for _ in range(count):
            if length > 1:
                cycles.append(list(range(start, start + length)))
            start += length
    return Permutation(cycles, size=n)


_classes: Dict[Tuple[int, CycleType], List[Permutation]] = {}


def conjugacy_class(n: int, cycle_type: CycleType) -> List[Permutation]:
    key = (n, cycle_type)
    if key not in _classes:
        wanted = dict(cycle_type)
        _classes[key] = [
            p for p in (Permutation(list(images)) for images in permutations(range(n))) if p.cycle_structure == wanted
        ]
    return _classes[key]


def _outgoing_from(relation: CrossingRelation, over: Permutation, incoming: Permutation) -> Permutation:
    if relation.sign is Sign.POSITIVE:
        return over * incoming * ~over
    return ~over * incoming * over


def _incoming_from(relation: CrossingRelation, over: Permutation, outgoing: Permutation) -> Permutation:
    if relation.sign is Sign.POSITIVE:
        return ~over * outgoing * over
    return over * outgoing * ~over


def _propagate(relations, assignment: List[Optional[Permutation]]) -> bool:
    changed = True
    while changed:
        changed = False
        for relation in relations:
            over = assignment[relation.over]
            if over is None:
                continue
            incoming, outgoing = assignment[relation.incoming], assignment[relation.outgoing]
            if incoming is not None:
                expected = _outgoing_from(relation, over, incoming)
                if outgoing is None:
                    assignment[relation.outgoing] = expected
                    changed = True
                elif outgoing != expected:
                    return False
            elif outgoing is not None:
                assignment[relation.incoming] = _incoming_from(relation, over, outgoing)
                changed = True
    return True


def _branch_generator(relations, assignment: List[Optional[Permutation]]) -> int:
    """Unassigned generator that would let the most relations propagate, then the most constrained one."""
    best, best_score = None, (-1, -1)
    for generator, value in enumerate(assignment):
        if value is not None:
            continue
        known = [value is not None for value in assignment]
        known[generator] = True
        firing, touching = 0, 0
        for relation in relations:
            members = (relation.over, relation.incoming, relation.outgoing)
            if generator not in members:
                continue
            touching += sum(1 for member in members if member != generator and assignment[member] is not None)
            if known[relation.over] and (known[relation.incoming] != known[relation.outgoing]):
                firing += 1
        if (firing, touching) > best_score:
            best, best_score = generator, (firing, touching)
    return best


def enumerate_representations(
    p: WirtingerPresentation, max_degree: int, deadline: Optional[float] = None, progress: bool = False
) -> Iterator[Representation]:
    """
    Every representation in degrees 2..max_degree up to conjugation of the first generator's image, with
    non-identity generator images. Each yielded representation satisfies all relators.
    """
    relators = p.relators
    index_of = {generator: position for position, generator in enumerate(p.generators)}
    relations = [
        CrossingRelation(r.crossing, r.sign, index_of[r.over], index_of[r.incoming], index_of[r.outgoing])
        for r in p.relations
    ]
    work = [(n, cycle_type) for n in range(2, max_degree + 1) for cycle_type in cycle_types(n)]
    for n, cycle_type in tqdm(work, desc="representations", disable=not progress):
        members = conjugacy_class(n, cycle_type)
        start: List[Optional[Permutation]] = [None] * p.rank
        start[0] = canonical_permutation(n, cycle_type)
        if not _propagate(relations, start):
            continue
        stack = [start]
        while stack:
            if expired(deadline):
                logger.warning("representation search stopped by the time budget at degree %d", n)
                return
            assignment = stack.pop()
            if all(value is not None for value in assignment):
                representation = Representation(n, tuple(assignment))
                if representation.satisfies(relators):
                    yield representation
                continue
            generator = _branch_generator(relations, assignment)
            for candidate in reversed(members):
                extended = list(assignment)
                extended[generator] = candidate
                if _propagate(relations, extended):
                    stack.append(extended)


class RepresentationSearch(WordDecider):
    """
    NO-search: a word is nontrivial as soon as one representation sends it to a non-identity permutation.
    Complete enumerations are cached per presentation so several words can share them.
    """

    def __init__(self, budgets: SearchBudgets, progress: bool = False):
        self.budgets = budgets
        self.progress = progress
        self._cache: Dict[WirtingerPresentation, List[Representation]] = {}

    def representations(self, p: WirtingerPresentation, deadline: Optional[float] = None) -> Iterator[Representation]:
        if p in self._cache:
            yield from self._cache[p]
            return
        found = []
        for representation in enumerate_representations(p, self.budgets.max_degree, deadline, self.progress):
            found.append(representation)
            yield representation
        if not expired(deadline):
            self._cache[p] = found
            logger.debug("cached %d representations up to degree %d", len(found), self.budgets.max_degree)

    def decide(self, word: GroupWord, presentation: WirtingerPresentation, deadline: Optional[float] = None):
        checked = 0
        for representation in self.representations(presentation, deadline):
            checked += 1
            if not representation.evaluate(word).is_Identity:
                return Certificate(Verdict.PROVED_NONTRIVIAL, word, representation=representation)
        reason = f"{checked} representations up to degree {self.budgets.max_degree} send the word to the identity"
        if expired(deadline):
            reason += " (time budget exhausted)"
        return Certificate(Verdict.INCONCLUSIVE, word, reason=reason)
