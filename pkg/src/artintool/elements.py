"""Value types shared by the algebra modules.

Elements are immutable and carry their presentation. Constructors do not
canonicalize; use the factory functions of the coxeter, monoid and deligne
modules, which always return canonical representatives.
"""

from collections.abc import Iterable
from dataclasses import dataclass

from artintool.errors import PresentationMismatchError
from artintool.presentation import ArtinPresentation, Subset, Word

Letter = tuple[str, int]


def check_same(*items: "WElement | MonoidElement | GroupElement") -> ArtinPresentation:
    presentation = items[0].presentation
    for item in items[1:]:
        if item.presentation != presentation:
            raise PresentationMismatchError(
                f"Presentation mismatch: {presentation.name} vs {item.presentation.name}"
            )
    return presentation


@dataclass(frozen=True)
class WElement:
    """Coxeter group element stored as its ShortLex-minimal reduced word."""
    presentation: ArtinPresentation
    word: Word

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def support(self) -> Subset:
        return frozenset(self.word)

    def __str__(self) -> str:
        return self.presentation.format_word(self.word)


@dataclass(frozen=True)
class MonoidElement:
    """Positive element stored as the ShortLex minimum of its braid class."""
    presentation: ArtinPresentation
    word: Word

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def is_identity(self) -> bool:
        return not self.word

    def __str__(self) -> str:
        return self.presentation.format_word(self.word)


def free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    """Cancel adjacent x x^-1 pairs."""
    stack: list[Letter] = []
    for letter in letters:
        if stack and stack[-1][0] == letter[0] and stack[-1][1] == -letter[1]:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


@dataclass(frozen=True)
class GroupElement:
    """Element of the Artin group as a freely reduced signed word."""
    presentation: ArtinPresentation
    letters: tuple[Letter, ...]

    @property
    def is_positive(self) -> bool:
        return all(sign > 0 for _, sign in self.letters)

    @property
    def support(self) -> Subset:
        return frozenset(g for g, _ in self.letters)

    @property
    def syllables(self) -> list[tuple[Word, int]]:
        """Maximal runs of letters with the same sign."""
        runs: list[tuple[Word, int]] = []
        for g, sign in self.letters:
            if runs and runs[-1][1] == sign:
                runs[-1] = (runs[-1][0] + (g,), sign)
            else:
                runs.append(((g,), sign))
        return runs

    def positive_word(self) -> Word:
        return tuple(g for g, _ in self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = [g if sign > 0 else f"{g}^-1" for g, sign in self.letters]
        return ".".join(parts)
