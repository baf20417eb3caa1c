from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import List, Optional, Tuple

from sympy.combinatorics import Permutation, PermutationGroup

from src.models.grading.words import GroupWord


class Verdict(str, Enum):
    PROVED_TRIVIAL = "proved-trivial"
    PROVED_NONTRIVIAL = "proved-nontrivial"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Representation:
    """
    Images of the generators in a symmetric group. Words are evaluated letter by letter with sympy's product.
    """

    degree: int
    images: Tuple[Permutation, ...]

    def evaluate(self, word: GroupWord) -> Permutation:
        identity = Permutation(self.degree - 1)
        return reduce(
            lambda acc, letter: acc * (self.images[letter[0]] if letter[1] == 1 else ~self.images[letter[0]]),
            word.letters,
            identity,
        )

    def satisfies(self, relators) -> bool:
        return all(self.evaluate(relator).is_Identity for relator in relators)

    def image_group(self) -> PermutationGroup:
        return PermutationGroup(list(self.images))

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "images": {f"x{index + 1}": image.array_form for index, image in enumerate(self.images)},
        }


@dataclass(frozen=True)
class RelatorStep:
    """conjugator * relator^exponent * conjugator^-1."""

    conjugator: GroupWord
    relator: int
    exponent: int

    def word(self, relators) -> GroupWord:
        core = relators[self.relator] if self.exponent == 1 else relators[self.relator].inverse()
        return GroupWord.product((self.conjugator, core, self.conjugator.inverse()))

    def to_json(self) -> dict:
        return {"conjugator": self.conjugator.render(), "relator": self.relator, "exponent": self.exponent}


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    word: GroupWord
    steps: Tuple[RelatorStep, ...] = ()
    representation: Optional[Representation] = None
    reason: str = ""

    @property
    def is_trivial(self) -> bool:
        return self.verdict is Verdict.PROVED_TRIVIAL

    @property
    def is_nontrivial(self) -> bool:
        return self.verdict is Verdict.PROVED_NONTRIVIAL

    def to_json(self) -> dict:
        payload = {"verdict": self.verdict.value, "word": self.word.render(), "reason": self.reason}
        payload["relator_product"] = [step.to_json() for step in self.steps] if self.is_trivial else None
        if self.representation is not None:
            payload["representation"] = self.representation.to_json()
            payload["image"] = self.representation.evaluate(self.word).array_form
        else:
            payload["representation"] = None
        return payload


def relator_product(steps: List[RelatorStep], relators) -> GroupWord:
    return GroupWord.product(step.word(relators) for step in steps)
