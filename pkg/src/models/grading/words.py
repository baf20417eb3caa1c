from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

Letter = Tuple[int, int]


def free_reduce(letters: Iterable[Letter]) -> Tuple[Letter, ...]:
    stack: List[Letter] = []
    for generator, exponent in letters:
        if stack and stack[-1][0] == generator and stack[-1][1] == -exponent:
            stack.pop()
        else:
            stack.append((generator, exponent))
    return tuple(stack)


@dataclass(frozen=True)
class GroupWord:
    """
    Freely reduced word in the arc generators, a tuple of (generator index, +1 or -1).
    """

    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        for generator, exponent in self.letters:
            if exponent not in (1, -1):
                raise ValueError(f"exponent of generator {generator} must be +1 or -1, got {exponent}")
        object.__setattr__(self, "letters", free_reduce(self.letters))

    @classmethod
    def identity(cls) -> "GroupWord":
        return cls(())

    @classmethod
    def generator(cls, index: int, exponent: int = 1) -> "GroupWord":
        return cls(((index, exponent),))

    @classmethod
    def product(cls, words: Iterable["GroupWord"]) -> "GroupWord":
        letters: List[Letter] = []
        for word in words:
            letters.extend(word.letters)
        return cls(tuple(letters))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((generator, -exponent) for generator, exponent in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def exponent_sum(self) -> int:
        return sum(exponent for _, exponent in self.letters)

    def render(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"x{generator + 1}" if exponent == 1 else f"x{generator + 1}^-1" for generator, exponent in self.letters)

    def to_sympy(self, free_generators: Sequence):
        """Image in a sympy free group, `free_generators` indexed by generator."""
        element = free_generators[0] ** 0
        for generator, exponent in self.letters:
            element = element * free_generators[generator] ** exponent
        return element

    def to_json(self) -> list:
        return [[generator, exponent] for generator, exponent in self.letters]

    def __str__(self) -> str:
        return self.render()


def commutator(a: GroupWord, b: GroupWord) -> GroupWord:
    """a b a^-1 b^-1."""
    return GroupWord.product((a, b, a.inverse(), b.inverse()))
