"""Arithmetic in the positive monoid A_S^+.

Divisibility, gcd and lcm go through word reversing: a signed word x^-1 y is
replaced by the right complements of x and y, pushing negative letters to the
right. Artin presentations are complete for reversing, so reversing u^-1 v
ends in P.N^-1 with u.P = v.N = the lcm whenever a common multiple exists, and
gets stuck on an infinite bond when none exists. The only inconclusive outcome
is hitting the length guard, which is reported explicitly.
"""

from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from loguru import logger

from artintool.coxeter import longest_element, project, sec_lift
from artintool.elements import GroupElement, Letter, MonoidElement, check_same, free_reduce
from artintool.errors import ArtinError, InternalCheckError, NotSphericalError, UnknownGeneratorError
from artintool.presentation import (
    INF,
    ArtinPresentation,
    Subset,
    Word,
    alternating,
    braid_class,
    is_fc,
    is_spherical,
)

DEFAULT_CUTOFF = 24

# Reversing guard used when the answer is known to exist (FC input).
FC_GUARD_FACTOR = 16


class ReversingStatus(str, Enum):
    DONE = "done"
    STUCK = "stuck"  # met s^-1 t with m(s,t) = inf
    LIMIT = "limit"


@dataclass(frozen=True)
class Reversal:
    """Outcome of right reversing: the word became positive . negative^-1.

    `negative` lists the letters N with the result equal to positive . N^-1.
    """
    status: ReversingStatus
    positive: Word = ()
    negative: Word = ()
    blocker: tuple[str, str] | None = None


def _complement(presentation: ArtinPresentation, x: str, y: str) -> Word:
    """The word f with x.f = the lcm of x and y (finite bond assumed)."""
    m = int(presentation.bond(x, y))
    return alternating(y, x, m - 1)


def reverse_right(
    presentation: ArtinPresentation,
    letters: Iterable[Letter],
    max_letters: int,
) -> Reversal:
    """Right-reverse a signed word until no x^-1 y factor remains."""
    word = list(free_reduce(letters))
    max_steps = 4 * max_letters * max_letters + 64
    steps = 0
    while True:
        position = next(
            (i for i in range(len(word) - 1) if word[i][1] < 0 and word[i + 1][1] > 0),
            None,
        )
        if position is None:
            break
        x, y = word[position][0], word[position + 1][0]
        if x == y:
            replacement: list[Letter] = []
        else:
            if presentation.bond(x, y) == INF:
                return Reversal(ReversingStatus.STUCK, blocker=(x, y))
            positive = [(g, 1) for g in _complement(presentation, x, y)]
            negative = [(g, -1) for g in reversed(_complement(presentation, y, x))]
            replacement = positive + negative
        word[position:position + 2] = replacement
        steps += 1
        if len(word) > max_letters or steps > max_steps:
            return Reversal(ReversingStatus.LIMIT)
    split = next((i for i, (_, sign) in enumerate(word) if sign < 0), len(word))
    positive_part = tuple(g for g, _ in word[:split])
    # word[split:] = y1^-1 ... yk^-1 = (yk ... y1)^-1
    negative_part = tuple(g for g, _ in reversed(word[split:]))
    return Reversal(ReversingStatus.DONE, positive_part, negative_part)


def reverse_left(
    presentation: ArtinPresentation,
    letters: Iterable[Letter],
    max_letters: int,
) -> Reversal:
    """Left reversing, read through the order-reversing anti-automorphism.

    On DONE the input equals negative^-1 . positive with the fields below.
    """
    mirrored = reverse_right(presentation, tuple(letters)[::-1], max_letters)
    if mirrored.status is not ReversingStatus.DONE:
        return mirrored
    return Reversal(ReversingStatus.DONE, mirrored.positive[::-1], mirrored.negative[::-1])


def _quotient_letters(u: Word, v: Word) -> list[Letter]:
    return [(g, -1) for g in reversed(u)] + [(g, 1) for g in v]


def _guard(u: Word, v: Word) -> int:
    return 4 * (len(u) + len(v)) + 8


# --- canonical forms ---


@lru_cache(maxsize=65536)
def _divide_word(presentation: ArtinPresentation, u: Word, v: Word) -> Word | None:
    """x with u.x = v in A^+, or None."""
    if len(u) > len(v):
        return None
    result = reverse_right(presentation, _quotient_letters(u, v), _guard(u, v))
    if result.status is ReversingStatus.DONE:
        return result.positive if not result.negative else None
    if result.status is ReversingStatus.STUCK:
        return None
    logger.debug(f"Reversing guard hit for {u} \\ {v} in {presentation.name}, saturating")
    for candidate in braid_class(presentation, v):
        if candidate[:len(u)] == u:
            return candidate[len(u):]
    return None


@lru_cache(maxsize=65536)
def _canonical_word(presentation: ArtinPresentation, word: Word) -> Word:
    # Peel the least generator dividing on the left: this yields the ShortLex minimum.
    rest = word
    result: list[str] = []
    while rest:
        for s in presentation.generators:
            quotient = _divide_word(presentation, (s,), rest)
            if quotient is not None:
                result.append(s)
                rest = quotient
                break
        else:
            raise InternalCheckError(f"No generator divides nonempty word {rest} in {presentation.name}")
    return tuple(result)


def m_canonical(presentation: ArtinPresentation, word: Iterable[str]) -> MonoidElement:
    """Canonical MonoidElement of a positive word.

    Raises:
        UnknownGeneratorError: a letter is not a generator.
    """
    letters = tuple(word)
    for s in letters:
        presentation.index(s)
    return MonoidElement(presentation, _canonical_word(presentation, letters))


def m_parse(presentation: ArtinPresentation, text: str) -> MonoidElement:
    return m_canonical(presentation, presentation.parse_word(text))


def identity(presentation: ArtinPresentation) -> MonoidElement:
    return MonoidElement(presentation, ())


def multiply(*items: MonoidElement) -> MonoidElement:
    presentation = check_same(*items)
    return m_canonical(presentation, tuple(g for u in items for g in u.word))


def power(u: MonoidElement, n: int) -> MonoidElement:
    return m_canonical(u.presentation, u.word * n)


def reverse(u: MonoidElement) -> MonoidElement:
    """Image under the anti-automorphism fixing every generator."""
    return m_canonical(u.presentation, u.word[::-1])


def support(u: MonoidElement) -> Subset:
    return frozenset(u.word)


def bracket(u: MonoidElement, v: MonoidElement, m: int) -> MonoidElement:
    """The alternating product u v u ... with m factors."""
    presentation = check_same(u, v)
    if m < 0:
        raise ArtinError(f"Bracket length must be >= 0, got {m}")
    words = [u.word if i % 2 == 0 else v.word for i in range(m)]
    return m_canonical(presentation, tuple(g for w in words for g in w))


def enumerate_positive(
    presentation: ArtinPresentation,
    max_length: int,
    subset: Iterable[str] | None = None,
) -> list[MonoidElement]:
    """Every element of A_T^+ of length <= max_length, ShortLex sorted."""
    members = presentation.sort_generators(presentation.all if subset is None else presentation.subset(subset))
    layer = {identity(presentation)}
    found = set(layer)
    for _ in range(max_length):
        layer = {m_canonical(presentation, u.word + (s,)) for u in layer for s in members}
        found |= layer
    return sorted(found, key=lambda u: (u.length, presentation.word_key(u.word)))


# --- divisibility ---


def left_divides(u: MonoidElement, v: MonoidElement) -> bool:
    """u ≺ v: some positive x has u.x = v."""
    presentation = check_same(u, v)
    return _divide_word(presentation, u.word, v.word) is not None


def right_divides(u: MonoidElement, v: MonoidElement) -> bool:
    """v = x.u for some positive x."""
    presentation = check_same(u, v)
    return _divide_word(presentation, u.word[::-1], v.word[::-1]) is not None


def left_quotient(u: MonoidElement, v: MonoidElement) -> MonoidElement:
    """The x with u.x = v.

    Raises:
        ArtinError: u does not left-divide v.
    """
    presentation = check_same(u, v)
    quotient = _divide_word(presentation, u.word, v.word)
    if quotient is None:
        raise ArtinError(f"{u} does not left-divide {v}")
    return m_canonical(presentation, quotient)


def right_quotient(v: MonoidElement, u: MonoidElement) -> MonoidElement:
    """The x with x.u = v."""
    return reverse(left_quotient(reverse(u), reverse(v)))


def left_gcd(u: MonoidElement, v: MonoidElement) -> MonoidElement:
    """Greatest common left divisor, grown one generator at a time."""
    presentation = check_same(u, v)
    divisor: list[str] = []
    rest_u, rest_v = u.word, v.word
    grown = True
    while grown:
        grown = False
        for s in presentation.generators:
            qu = _divide_word(presentation, (s,), rest_u)
            if qu is None:
                continue
            qv = _divide_word(presentation, (s,), rest_v)
            if qv is None:
                continue
            divisor.append(s)
            rest_u, rest_v = qu, qv
            grown = True
            break
    return m_canonical(presentation, divisor)


def right_gcd(u: MonoidElement, v: MonoidElement) -> MonoidElement:
    return reverse(left_gcd(reverse(u), reverse(v)))


class LcmOutcome(str, Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class LcmResult:
    """Finite(lcm), Infinite, or Unknown(B) when the search bound B was hit."""
    outcome: LcmOutcome
    element: MonoidElement | None = None
    bound: int | None = None

    @property
    def is_finite(self) -> bool:
        return self.outcome is LcmOutcome.FINITE

    def __str__(self) -> str:
        if self.outcome is LcmOutcome.FINITE:
            return str(self.element)
        if self.outcome is LcmOutcome.INFINITE:
            return "Infinite"
        return f"Unknown({self.bound})"


def left_lcm(u: MonoidElement, v: MonoidElement, cutoff: int = DEFAULT_CUTOFF) -> LcmResult:
    """Least common right multiple for left divisibility.

    Exact when the presentation is FC or the supports span a spherical
    subset. Otherwise reversing is cut at `cutoff` letters and an UNKNOWN
    outcome carries the bound.
    """
    presentation = check_same(u, v)
    spherical = is_spherical(presentation, support(u) | support(v))
    exact = spherical or is_fc(presentation)
    if exact:
        guard = max(cutoff, _guard(u.word, v.word)) * FC_GUARD_FACTOR
    else:
        guard = max(cutoff, len(u.word) + len(v.word))
    result = reverse_right(presentation, _quotient_letters(u.word, v.word), guard)
    if result.status is ReversingStatus.DONE:
        return LcmResult(LcmOutcome.FINITE, m_canonical(presentation, u.word + result.positive))
    if result.status is ReversingStatus.STUCK:
        return LcmResult(LcmOutcome.INFINITE)
    if exact:
        logger.warning(f"lcm of {u} and {v} in {presentation.name} not settled within {guard} letters")
        return LcmResult(LcmOutcome.UNKNOWN, bound=guard)
    return LcmResult(LcmOutcome.UNKNOWN, bound=cutoff)


def right_lcm(u: MonoidElement, v: MonoidElement, cutoff: int = DEFAULT_CUTOFF) -> LcmResult:
    """Least common left multiple for right divisibility."""
    mirrored = left_lcm(reverse(u), reverse(v), cutoff)
    if mirrored.element is None:
        return mirrored
    return LcmResult(LcmOutcome.FINITE, reverse(mirrored.element))


def lcm_of(elements: Iterable[MonoidElement], presentation: ArtinPresentation, cutoff: int = DEFAULT_CUTOFF) -> LcmResult:
    """Left lcm of a family; the empty family has lcm 1."""
    current = LcmResult(LcmOutcome.FINITE, identity(presentation))
    for u in elements:
        if current.element is None:
            return current
        current = left_lcm(current.element, u, cutoff)
    return current


# --- Garside elements, square-free elements and normal forms ---


def delta(presentation: ArtinPresentation, subset: Iterable[str], cross_check: bool = False) -> MonoidElement:
    """Δ_T, the lcm of the generators of a spherical subset T.

    Raises:
        NotSphericalError: T is not spherical.
        InternalCheckError: with cross_check, the lcm disagrees with the
            lift of the longest element of W_T.
    """
    members = presentation.sort_generators(presentation.subset(subset))
    if not is_spherical(presentation, members):
        raise NotSphericalError(f"Subset {presentation.format_subset(members)} of {presentation.name} is not spherical")
    result = lcm_of((m_canonical(presentation, (s,)) for s in members), presentation)
    if result.element is None:
        raise InternalCheckError(f"lcm of spherical subset {presentation.format_subset(members)} not finite: {result}")
    if cross_check:
        lifted = sec_lift(longest_element(presentation, members))
        if lifted != result.element:
            raise InternalCheckError(f"Delta mismatch for {presentation.format_subset(members)}: {result.element} vs {lifted}")
    return result.element


def is_square_free(u: MonoidElement) -> bool:
    """No word of the class of u has a square; equivalently u lies in the image of the section."""
    return project(u).length == u.length


def alpha(u: MonoidElement) -> MonoidElement:
    """Greatest square-free left divisor of u."""
    presentation = u.presentation
    head: Word = ()
    rest = u.word
    grown = True
    while grown:
        grown = False
        for s in presentation.generators:
            quotient = _divide_word(presentation, (s,), rest)
            if quotient is None:
                continue
            if project(MonoidElement(presentation, head + (s,))).length != len(head) + 1:
                continue
            head, rest = head + (s,), quotient
            grown = True
            break
    return m_canonical(presentation, head)


def omega(u: MonoidElement) -> MonoidElement:
    """Greatest square-free right divisor of u."""
    return reverse(alpha(reverse(u)))


@dataclass(frozen=True)
class NormalFormSeq:
    """Square-free factors g_1 ... g_n with g_i = alpha(g_i ... g_n)."""
    presentation: ArtinPresentation
    factors: tuple[MonoidElement, ...] = ()

    def product(self) -> MonoidElement:
        if not self.factors:
            return identity(self.presentation)
        return multiply(*self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        separator = " . " if all(len(g) == 1 for g in self.presentation.generators) else " | "
        return separator.join(str(f) for f in self.factors)


def normal_form(u: MonoidElement) -> NormalFormSeq:
    factors: list[MonoidElement] = []
    rest = u
    while not rest.is_identity:
        head = alpha(rest)
        factors.append(head)
        rest = left_quotient(head, rest)
    return NormalFormSeq(u.presentation, tuple(factors))


def is_x_reduced(u: MonoidElement, subset: Iterable[str], side: str = "left") -> bool:
    """No generator of X divides u on the given side ('left' or 'right')."""
    if side not in ("left", "right"):
        raise ArtinError(f"Side must be 'left' or 'right', got {side!r}")
    divides = left_divides if side == "left" else right_divides
    presentation = u.presentation
    return not any(divides(m_canonical(presentation, (s,)), u) for s in presentation.subset(subset))


# --- signed words and fractions ---


def parse_signed_word(presentation: ArtinPresentation, text: str) -> GroupElement:
    """Parse "a.b^-1.c" or "a b^-1 c"; a token "xy^-1" means (xy)^-1."""
    letters: list[Letter] = []
    for token in text.replace(".", " ").split():
        if token == "1":
            continue
        inverted = token.endswith("^-1")
        body = token[:-3] if inverted else token
        if not body:
            raise UnknownGeneratorError(f"Unknown generator: {token}")
        word = presentation.parse_word(body)
        if inverted:
            letters.extend((g, -1) for g in reversed(word))
        else:
            letters.extend((g, 1) for g in word)
    return GroupElement(presentation, free_reduce(letters))


def to_group(u: MonoidElement) -> GroupElement:
    return GroupElement(u.presentation, tuple((g, 1) for g in u.word))


def group_inverse(g: GroupElement) -> GroupElement:
    return GroupElement(g.presentation, tuple((x, -sign) for x, sign in reversed(g.letters)))


def group_multiply(*items: GroupElement) -> GroupElement:
    presentation = check_same(*items)
    return GroupElement(presentation, free_reduce(letter for g in items for letter in g.letters))


@dataclass(frozen=True)
class FractionForm:
    """g = neg^-1 . pos with left_gcd(neg, pos) = 1."""
    neg: MonoidElement
    pos: MonoidElement

    def __str__(self) -> str:
        return f"({self.neg})^-1.({self.pos})"


def _require_spherical_support(g: GroupElement) -> None:
    if not is_spherical(g.presentation, g.support):
        raise NotSphericalError(
            f"Fractions need a spherical support, got {g.presentation.format_subset(g.support)} in {g.presentation.name}"
        )


def coprime_fraction(g: GroupElement) -> FractionForm:
    """The unique left-coprime (a, b) with g = a^-1 b.

    Requires the support of g to be spherical; the parabolic subgroup it
    generates then has Garside fractions.
    """
    _require_spherical_support(g)
    presentation = g.presentation
    result = reverse_left(presentation, g.letters, FC_GUARD_FACTOR * (4 * len(g.letters) + 8) ** 2)
    if result.status is not ReversingStatus.DONE:
        raise InternalCheckError(f"Left reversing of {g} did not terminate: {result.status.value}")
    a = m_canonical(presentation, result.negative)
    b = m_canonical(presentation, result.positive)
    common = left_gcd(a, b)
    return FractionForm(left_quotient(common, a), left_quotient(common, b))


def right_coprime_fraction(g: GroupElement) -> FractionForm:
    """The unique right-coprime (a, b) with g = b . a^-1."""
    _require_spherical_support(g)
    presentation = g.presentation
    result = reverse_right(presentation, g.letters, FC_GUARD_FACTOR * (4 * len(g.letters) + 8) ** 2)
    if result.status is not ReversingStatus.DONE:
        raise InternalCheckError(f"Right reversing of {g} did not terminate: {result.status.value}")
    a = m_canonical(presentation, result.negative)
    b = m_canonical(presentation, result.positive)
    common = right_gcd(a, b)
    return FractionForm(right_quotient(a, common), right_quotient(b, common))


def is_trivial_spherical(g: GroupElement) -> bool:
    """Word problem for a signed word with spherical support."""
    fraction = coprime_fraction(g)
    return fraction.neg.is_identity and fraction.pos.is_identity


# --- property helpers ---


def cancel(u: MonoidElement, e1: MonoidElement, e2: MonoidElement, v: MonoidElement) -> bool:
    """Whether u.e1.v = u.e2.v implies e1 = e2 on this instance."""
    if multiply(u, e1, v) != multiply(u, e2, v):
        return True
    return e1 == e2


def check_exchange(x: MonoidElement, s: str) -> bool:
    """For square-free x: s.x not square-free implies s ≺ x."""
    generator = m_canonical(x.presentation, (s,))
    if not is_square_free(x) or is_square_free(multiply(generator, x)):
        return True
    return left_divides(generator, x)


def check_chain(t: str, w: MonoidElement, x: MonoidElement, subset: Iterable[str]) -> bool:
    """t in T, w in A_T^+, t not ≺ w and t ≺ w.x imply some s in T has s ≺ x."""
    presentation = check_same(w, x)
    members = presentation.subset(subset)
    generator = m_canonical(presentation, (t,))
    if t not in members or not support(w) <= members or left_divides(generator, w):
        return True
    if not left_divides(generator, multiply(w, x)):
        return True
    return any(left_divides(m_canonical(presentation, (s,)), x) for s in members)


def divisors(u: MonoidElement) -> list[MonoidElement]:
    """All left divisors of u, ShortLex sorted."""
    presentation = u.presentation
    found = {identity(presentation)}
    frontier = [identity(presentation)]
    while frontier:
        nxt = []
        for d in frontier:
            rest = _divide_word(presentation, d.word, u.word)
            assert rest is not None
            for s in presentation.generators:
                if _divide_word(presentation, (s,), rest) is not None:
                    candidate = m_canonical(presentation, d.word + (s,))
                    if candidate not in found:
                        found.add(candidate)
                        nxt.append(candidate)
        frontier = nxt
    return sorted(found, key=lambda d: (d.length, presentation.word_key(d.word)))

