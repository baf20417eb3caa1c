"""
Semi-decision of triviality for words in a knot group.

The NO side looks for a finite representation sending the word to a non-identity permutation. The YES side writes
the word as U V^-1 and rewrites U and V towards a common word with relator moves: a subword s is replaced by t
whenever s t^-1 is a cyclic conjugate of a relator or its inverse. Each move records the relator conjugate it
peeled off, so meeting in the middle yields the word as an explicit product of conjugated relators.
"""

import logging
from typing import Dict, List, Optional, Tuple

from sympy.combinatorics.free_groups import free_group

from src.interfaces.deciderAbstract import WordDecider
from src.models.exceptions import BudgetError
from src.models.grading.budgets import SearchBudgets, expired
from src.models.grading.certificates import Certificate, RelatorStep, Verdict, relator_product
from src.models.grading.representations import RepresentationSearch
from src.models.grading.wirtinger import WirtingerPresentation
from src.models.grading.words import GroupWord, Letter, free_reduce

logger = logging.getLogger(__name__)

Letters = Tuple[Letter, ...]
SLACKS = (0, 2, 4)


def _inverse(letters: Letters) -> Letters:
    return tuple((generator, -exponent) for generator, exponent in reversed(letters))


class _Rule:
    __slots__ = ("pattern", "replacement", "shift", "relator", "exponent")

    def __init__(self, pattern: Letters, replacement: Letters, shift: Letters, relator: int, exponent: int):
        self.pattern = pattern
        self.replacement = replacement
        # rotated relator = shift * relator^exponent * shift^-1
        self.shift = shift
        self.relator = relator
        self.exponent = exponent


def rewrite_rules(p: WirtingerPresentation) -> List[_Rule]:
    rules: List[_Rule] = []
    seen = set()
    for index, relator in enumerate(p.relators):
        if relator.is_identity:
            continue
        for exponent in (1, -1):
            core = relator.letters if exponent == 1 else relator.inverse().letters
            m = len(core)
            for j in range(m):
                rotated = core[j:] + core[:j]
                shift = _inverse(core[:j])
                for k in range(1, m + 1):
                    pattern = rotated[:k]
                    replacement = free_reduce(_inverse(rotated[k:]))
                    if (pattern, replacement) in seen or free_reduce(pattern) != pattern:
                        continue
                    seen.add((pattern, replacement))
                    rules.append(_Rule(pattern, replacement, shift, index, exponent))
    return rules


class RelatorSearch(WordDecider):
    """
    YES-search bounded by the relator count B, the conjugator length L and a state cap.
    """

    def __init__(self, budgets: SearchBudgets):
        self.budgets = budgets
        self.states = 0

    def _moves(self, word: Letters, rules: List[_Rule], cap: int):
        limit = self.budgets.max_conjugator
        n = len(word)
        for rule in rules:
            size = len(rule.pattern)
            if size > n:
                continue
            for position in range(n - size + 1):
                if word[position:position + size] != rule.pattern:
                    continue
                prefix = word[:position]
                following = free_reduce(prefix + rule.replacement + word[position + size:])
                if len(following) > cap:
                    continue
                conjugator = free_reduce(prefix + rule.shift)
                if len(conjugator) > limit:
                    continue
                yield following, RelatorStep(GroupWord(conjugator), rule.relator, rule.exponent)

    def _meet(self, left: Letters, right: Letters, rules: List[_Rule], cap: int, deadline) -> Optional[List[RelatorStep]]:
        sides: List[Dict[Letters, List[RelatorStep]]] = [{left: []}, {right: []}]
        frontiers: List[List[Letters]] = [[left], [right]]
        if left == right:
            return []
        depth = 0
        while depth < self.budgets.max_relators:
            side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
            if not frontiers[side]:
                side = 1 - side
                if not frontiers[side]:
                    return None
            visited, other = sides[side], sides[1 - side]
            following_frontier = []
            for word in frontiers[side]:
                if expired(deadline):
                    return None
                for following, step in self._moves(word, rules, cap):
                    if following in visited:
                        continue
                    visited[following] = visited[word] + [step]
                    self.states += 1
                    if following in other:
                        found = [sides[0][following], sides[1][following]]
                        return found[0] + [
                            RelatorStep(s.conjugator, s.relator, -s.exponent) for s in reversed(found[1])
                        ]
                    if self.states > self.budgets.max_states:
                        return None
                    following_frontier.append(following)
            frontiers[side] = following_frontier
            depth += 1
        return None

    def decide(self, word: GroupWord, presentation: WirtingerPresentation, deadline: Optional[float] = None):
        if word.is_identity:
            return Certificate(Verdict.PROVED_TRIVIAL, word)
        rules = rewrite_rules(presentation)
        letters = word.letters
        n = len(letters)
        splits = sorted(set(k for k in (n // 2, (n + 1) // 2, n // 2 - 1, n // 2 + 1) if 0 <= k <= n),
                        key=lambda k: (abs(2 * k - n), k))[:3]
        self.states = 0
        for slack in SLACKS:
            for k in splits:
                left, right = letters[:k], _inverse(letters[k:])
                steps = self._meet(left, right, rules, max(len(left), len(right)) + slack, deadline)
                if steps is None:
                    if self.states > self.budgets.max_states or expired(deadline):
                        return Certificate(Verdict.INCONCLUSIVE, word, reason=self._reason())
                    continue
                if relator_product(steps, presentation.relators) != word:
                    logger.error("relator product for %s does not reduce to the word, discarded", word)
                    continue
                return Certificate(Verdict.PROVED_TRIVIAL, word, steps=tuple(steps))
        return Certificate(Verdict.INCONCLUSIVE, word, reason=self._reason())

    def _reason(self) -> str:
        return (
            f"no product of at most {self.budgets.max_relators} relator conjugates with conjugators of length at most "
            f"{self.budgets.max_conjugator} found ({self.states} words visited)"
        )


def decide_trivial(
    w: GroupWord,
    p: WirtingerPresentation,
    budgets: SearchBudgets,
    representations: Optional[RepresentationSearch] = None,
) -> Certificate:
    """
    Bounded search in both directions, representations first.

    Args:
        w (GroupWord): word to decide.
        p (WirtingerPresentation): presentation of the knot group.
        budgets (SearchBudgets): N, L, B, state and time caps.
        representations (RepresentationSearch): shared NO-search, so several words reuse one enumeration.

    Returns:
        Certificate: ProvedTrivial, ProvedNontrivial or Inconclusive.
    """
    if not isinstance(budgets, SearchBudgets):
        raise BudgetError("budgets must be a SearchBudgets instance")
    if w.is_identity:
        return Certificate(Verdict.PROVED_TRIVIAL, w)
    deadline = budgets.deadline()
    if representations is None:
        representations = RepresentationSearch(budgets)
    no = representations.decide(w, p, deadline)
    if no.is_nontrivial:
        return no
    yes = RelatorSearch(budgets).decide(w, p, deadline)
    if yes.is_trivial:
        return yes
    if expired(deadline):
        logger.warning("time budget exhausted while deciding %s", w)
    return Certificate(Verdict.INCONCLUSIVE, w, reason=f"{no.reason}; {yes.reason}")


def verify_certificate(cert: Certificate, w: GroupWord, p: WirtingerPresentation) -> bool:
    """
    Re-check a certificate without trusting the search: relator products are multiplied out in a sympy free
    group, representations are re-evaluated on every relator and on the word.
    """
    if cert.word != w:
        return False
    if cert.verdict is Verdict.PROVED_TRIVIAL:
        _, *generators = free_group(", ".join(p.names()))
        product = generators[0] ** 0
        for step in cert.steps:
            product = product * step.word(p.relators).to_sympy(generators)
        return product == w.to_sympy(generators)
    if cert.verdict is Verdict.PROVED_NONTRIVIAL:
        representation = cert.representation
        return (
            representation is not None
            and representation.satisfies(p.relators)
            and not representation.evaluate(w).is_Identity
        )
    return False
