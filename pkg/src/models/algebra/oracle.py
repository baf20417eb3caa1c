"""
Brute-force quotient used to cross-check the closed-form algebra.

Works on raw arrow words (traversal order) only: enumerate every composable word of length up to n_D + 1,
kill words containing a sign-mismatched pair, and for the lambda variant explore the exchange
gamma_e^- <-> tau(e) gamma_e^+ on every window of length n_D in both directions. A word is zero as soon as some
word reachable by exchanges is killed; otherwise its normal form is the reachable word without gamma^- windows.
"""

import logging
from collections import deque
from typing import Dict, List, Optional, Tuple

from sympy.polys.matrices import DomainMatrix

from src.models.algebra.algebra import DiagramAlgebra, Variant
from src.models.algebra.tau import TauAssignment
from src.models.diagram.diagram import Sign
from src.models.quiver.quiver import SignedQuiver
from src.models.report import CheckReport
from src.models.scalars.scalars import FieldContext, Scalar

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]


class QuotientOracle:
    """
    Args:
        quiver (SignedQuiver): quiver of the diagram.
        tau (TauAssignment): exchange scalars.
        field (FieldContext): ground field.
        variant (Variant): lambda or monomial.
    """

    def __init__(self, quiver: SignedQuiver, tau: TauAssignment, field: FieldContext, variant: Variant):
        self.quiver = quiver
        self.tau = tau
        self.field = field
        self.variant = Variant(variant)
        self.n_D = quiver.n_D
        self.sequences_examined = 0
        self._cache: Dict[Word, Optional[Tuple[Scalar, Word]]] = {}

    # rewriting

    def _killed(self, word: Word) -> bool:
        arrows = [self.quiver.arrow(arrow_id) for arrow_id in word]
        return any(before.target_sign is not after.source_sign for before, after in zip(arrows, arrows[1:]))

    def _cycle_word(self, vertex: int, sign: Sign) -> Word:
        start = self.quiver.outgoing(vertex, sign).id
        word = [start]
        while len(word) < self.n_D:
            word.append(self.quiver.successor(word[-1]))
        return tuple(word)

    def _exchanges(self, word: Word) -> List[Tuple[Word, Scalar]]:
        """Words reachable by one exchange, with the factor relating them: word = factor * result."""
        results = []
        for start in range(len(word) - self.n_D + 1):
            window = word[start:start + self.n_D]
            arrow = self.quiver.arrow(window[0])
            vertex = arrow.source
            plus = self._cycle_word(vertex, Sign.POSITIVE)
            minus = self._cycle_word(vertex, Sign.NEGATIVE)
            if window == minus:
                replaced, factor = plus, self.tau(vertex)
            elif window == plus:
                replaced, factor = minus, self.tau(vertex).inv()
            else:
                continue
            results.append((word[:start] + replaced + word[start + self.n_D:], factor))
        return results

    def rewrite(self, word: Word) -> Optional[Tuple[Scalar, Word]]:
        """
        Normal form of a composable word: None when zero, else (coefficient, normal word).
        """
        if word in self._cache:
            return self._cache[word]
        result = self.__rewrite(word)
        self._cache[word] = result
        return result

    def __rewrite(self, word: Word) -> Optional[Tuple[Scalar, Word]]:
        if self._killed(word):
            return None
        if self.variant is Variant.MONOMIAL:
            return None if len(word) > self.n_D else (self.field.one(), word)

        # word = factor * reachable
        reachable: Dict[Word, Scalar] = {word: self.field.one()}
        queue = deque([word])
        while queue:
            current = queue.popleft()
            for following, factor in self._exchanges(current):
                if following in reachable:
                    continue
                if self._killed(following):
                    return None
                reachable[following] = reachable[current] * factor
                queue.append(following)

        minus_cycles = {self._cycle_word(vertex, Sign.NEGATIVE) for vertex in self.quiver.vertices}
        for candidate in sorted(reachable):
            has_minus = any(
                candidate[start:start + self.n_D] in minus_cycles for start in range(len(candidate) - self.n_D + 1)
            )
            if not has_minus:
                return reachable[candidate], candidate
        return reachable[word], word

    # enumeration

    def composable_words(self, max_length: int):
        """All composable arrow words of length 1..max_length, depth first. Killed words are not extended."""
        stack = [(arrow.id,) for arrow in reversed(self.quiver.arrows)]
        while stack:
            word = stack.pop()
            self.sequences_examined += 1
            yield word
            if len(word) >= max_length or self._killed(word):
                continue
            end = self.quiver.arrow(word[-1]).target
            for arrow in reversed(self.quiver.arrows):
                if arrow.source == end:
                    stack.append(word + (arrow.id,))

    def normal_forms(self) -> Dict[Word, Scalar]:
        """Distinct nonzero normal words of positive length (coefficient of the first word reaching each)."""
        forms: Dict[Word, Scalar] = {}
        for word in self.composable_words(self.n_D + 1):
            reduced = self.rewrite(word)
            if reduced is not None and reduced[1] not in forms:
                forms[reduced[1]] = reduced[0]
        return forms

    def dimension(self) -> int:
        """c trivial paths plus the rank of the span of the nonzero reduced words."""
        forms = self.normal_forms()
        columns = sorted(forms)
        position = {word: index for index, word in enumerate(columns)}
        domain = self.field.domain
        rows = []
        for word, coeff in forms.items():
            row = [domain.zero] * len(columns)
            row[position[word]] = coeff.value
            rows.append(row)
        rank = DomainMatrix(rows, (len(rows), len(columns)), domain).rank() if rows else 0
        return len(self.quiver.vertices) + rank

    def product(self, left: Word, right: Word) -> Optional[Tuple[Scalar, Word]]:
        """left * right with `right` traversed first. Both words are nonempty, trivial paths are handled by the caller."""
        if self.quiver.arrow(right[-1]).target != self.quiver.arrow(left[0]).source:
            return None
        return self.rewrite(right + left)


def oracle_quotient(q: SignedQuiver, tau: TauAssignment, f: FieldContext, variant) -> QuotientOracle:
    return QuotientOracle(q, tau, f, variant)


def compare_with_oracle(algebra: DiagramAlgebra) -> CheckReport:
    """
    Cross-check dimension and every structure constant of positive-length basis paths against the oracle.
    Products involving trivial paths are identities on both sides and are checked through the unit suite.
    """
    oracle = QuotientOracle(algebra.quiver, algebra.tau, algebra.field, algebra.variant)
    oracle_dimension = oracle.dimension()
    if oracle_dimension != algebra.dimension:
        return CheckReport(
            name="oracle",
            passed=False,
            details={"dimension": algebra.dimension, "oracle_dimension": oracle_dimension},
            witness={"dimension_mismatch": [algebra.dimension, oracle_dimension]},
        )

    words = {index: tuple(algebra.path_arrows(index)) for index in algebra.radical_indices()}
    index_of_word = {}
    for index, word in words.items():
        normal = oracle.rewrite(word)
        index_of_word[normal[1]] = (index, normal[0])

    checked = 0
    for i, left in words.items():
        for j, right in words.items():
            checked += 1
            expected = algebra.product(i, j)
            found = oracle.product(left, right)
            if found is not None:
                target, scale = index_of_word[found[1]]
                found = (target, found[0] / scale)
            if expected != found:
                return CheckReport(
                    name="oracle",
                    passed=False,
                    details={"dimension": algebra.dimension, "products_checked": checked},
                    witness={
                        "left": algebra.basis[i].describe(),
                        "right": algebra.basis[j].describe(),
                        "closed_form": None if expected is None else [expected[0], str(expected[1])],
                        "oracle": None if found is None else [found[0], str(found[1])],
                    },
                )
    return CheckReport(
        name="oracle",
        passed=True,
        details={
            "dimension": algebra.dimension,
            "oracle_dimension": oracle_dimension,
            "products_checked": checked,
            "sequences_examined": oracle.sequences_examined,
        },
    )
