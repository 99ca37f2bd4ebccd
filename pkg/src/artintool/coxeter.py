"""Coxeter groups W_S: word problem, longest elements, section into A_S^+.

Reduction uses Tits' solution: a word is reduced iff no word of its
braid-move class contains a square, and two reduced words represent the same
element iff they are connected by braid moves.
"""

from collections import deque
from collections.abc import Iterable
from functools import lru_cache

from loguru import logger

from artintool.elements import MonoidElement, WElement, check_same
from artintool.errors import InternalCheckError, NotSphericalError
from artintool.presentation import (
    ArtinPresentation,
    Subset,
    Word,
    braid_class,
    is_spherical,
    shortlex_min,
)


@lru_cache(maxsize=65536)
def _multiply_reduced(presentation: ArtinPresentation, reduced: Word, s: str) -> Word:
    """A reduced word for (reduced)·s, given that `reduced` is reduced."""
    # Exchange condition: the length drops iff some reduced word ends with s.
    for candidate in braid_class(presentation, reduced):
        if candidate and candidate[-1] == s:
            return candidate[:-1]
    return reduced + (s,)


@lru_cache(maxsize=65536)
def _canonical_reduced(presentation: ArtinPresentation, reduced: Word) -> Word:
    return shortlex_min(presentation, braid_class(presentation, reduced))


def w_canonical(presentation: ArtinPresentation, word: Iterable[str]) -> WElement:
    """Canonical WElement of the product of a generator word."""
    reduced: Word = ()
    for s in word:
        presentation.index(s)
        reduced = _multiply_reduced(presentation, reduced, s)
    return WElement(presentation, _canonical_reduced(presentation, reduced))


def w_identity(presentation: ArtinPresentation) -> WElement:
    return WElement(presentation, ())


def w_multiply(x: WElement, y: WElement) -> WElement:
    presentation = check_same(x, y)
    return w_canonical(presentation, x.word + y.word)


def w_inverse(x: WElement) -> WElement:
    return w_canonical(x.presentation, reversed(x.word))


def w_length(x: WElement) -> int:
    return x.length


def right_descents(x: WElement) -> Subset:
    return frozenset(w[-1] for w in braid_class(x.presentation, x.word) if w)


def left_descents(x: WElement) -> Subset:
    return frozenset(w[0] for w in braid_class(x.presentation, x.word) if w)


def is_reduced_word(presentation: ArtinPresentation, word: Iterable[str]) -> bool:
    """True iff the word is a reduced expression (no deletion needed)."""
    reduced: Word = ()
    for s in word:
        longer = _multiply_reduced(presentation, reduced, s)
        if len(longer) < len(reduced):
            return False
        reduced = longer
    return True


def in_parabolic_w(x: WElement, subset: Iterable[str]) -> bool:
    """x in W_T; all reduced words of x share the same letters."""
    return x.support <= frozenset(subset)


def longest_element(presentation: ArtinPresentation, subset: Iterable[str]) -> WElement:
    """The element of maximal length of the finite parabolic W_T.

    Raises:
        NotSphericalError: W_T is infinite.
    """
    members = presentation.sort_generators(presentation.subset(subset))
    if not is_spherical(presentation, members):
        raise NotSphericalError(
            f"Subset {presentation.format_subset(members)} of {presentation.name} is not spherical"
        )
    w = w_identity(presentation)
    grown = True
    while grown:
        grown = False
        for s in members:
            candidate = w_canonical(presentation, (s,) + w.word)
            if candidate.length > w.length:
                w = candidate
                grown = True
                break
    if right_descents(w) != frozenset(members) or left_descents(w) != frozenset(members):
        raise InternalCheckError(f"Greedy ascent in {presentation.name} stopped at non-longest {w}")
    return w


def enumerate_w(presentation: ArtinPresentation, subset: Iterable[str] | None = None) -> list[WElement]:
    """All elements of a finite parabolic W_T, sorted by ShortLex."""
    members = presentation.sort_generators(presentation.all if subset is None else presentation.subset(subset))
    if not is_spherical(presentation, members):
        raise NotSphericalError(f"Cannot enumerate infinite W for {presentation.format_subset(members)}")
    start = w_identity(presentation)
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for s in members:
            nxt = w_canonical(presentation, current.word + (s,))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    logger.debug(f"|W{presentation.format_subset(members)}| = {len(seen)} in {presentation.name}")
    return sorted(seen, key=lambda w: (w.length, presentation.word_key(w.word)))


def w_ball(presentation: ArtinPresentation, radius: int) -> list[WElement]:
    """Elements of length <= radius (usable for infinite W)."""
    layer = {w_identity(presentation)}
    seen = set(layer)
    for _ in range(radius):
        layer = {w_canonical(presentation, w.word + (s,)) for w in layer for s in presentation.generators}
        layer -= seen
        seen |= layer
    return sorted(seen, key=lambda w: (w.length, presentation.word_key(w.word)))


def sec_lift(w: WElement) -> MonoidElement:
    """Section W_S -> A_S^+ reading a reduced word positively.

    Reduced words of w form exactly one braid class, so the canonical reduced
    word is already the canonical positive word.
    """
    return MonoidElement(w.presentation, w.word)


def project(u: MonoidElement) -> WElement:
    """Canonical surjection A_S^+ -> W_S."""
    return w_canonical(u.presentation, u.word)
