"""Generator maps, lcm-homomorphisms and their preservation checks.

A GeneratorMap sends each source generator s to a nonempty set p(s) of target
generators. When the axioms hold, φ(s) = Δ_{p(s)} defines a monoid (and group)
morphism. WordMorphism covers the general case of arbitrary positive images.
"""

from collections import deque
from collections.abc import Iterable, Mapping
from itertools import combinations, product

from loguru import logger
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from artintool.coxeter import enumerate_w, longest_element, project, sec_lift, w_ball
from artintool.elements import GroupElement, MonoidElement, WElement, free_reduce
from artintool.errors import (
    InternalCheckError,
    PresentationError,
    PresentationMismatchError,
    UnknownGeneratorError,
    UnverifiedMapError,
)
from artintool.models import CheckItem, Report, Status
from artintool.monoid import (
    DEFAULT_CUTOFF,
    FractionForm,
    LcmOutcome,
    LcmResult,
    bracket,
    coprime_fraction,
    delta,
    enumerate_positive,
    is_square_free,
    left_divides,
    left_gcd,
    left_lcm,
    left_quotient,
    m_canonical,
    normal_form,
    right_divides,
    right_gcd,
    right_lcm,
    support,
)
from artintool.presentation import INF, ArtinPresentation, Subset, is_spherical


class GeneratorMap(BaseModel):
    """p: S -> nonempty subsets of S'."""
    model_config = ConfigDict(frozen=True)

    name: str
    source: ArtinPresentation
    target: ArtinPresentation
    assignment: dict[str, frozenset[str]]
    control: bool = False  # Negative control: the axiom check must reject it

    @field_validator("assignment")
    @classmethod
    def _nonempty(cls, value: dict[str, frozenset[str]]) -> dict[str, frozenset[str]]:
        for s, image in value.items():
            if not image:
                raise PresentationError(f"Empty image for generator {s}")
        return value

    @model_validator(mode="after")
    def _covers_source(self) -> "GeneratorMap":
        missing = [s for s in self.source.generators if s not in self.assignment]
        if missing:
            raise PresentationError(f"Map {self.name} gives no image for {', '.join(missing)}")
        for s, image in self.assignment.items():
            self.source.index(s)
            for t in image:
                self.target.index(t)
        return self

    def p(self, s: str) -> Subset:
        try:
            return self.assignment[s]
        except KeyError:
            raise UnknownGeneratorError(f"Unknown generator: {s}") from None

    def p_subset(self, subset: Iterable[str]) -> Subset:
        return frozenset().union(*(self.p(s) for s in subset))

    def preimage_subset(self, subset: Iterable[str]) -> Subset:
        """Z = {s : p(s) ⊆ Y}."""
        target = frozenset(subset)
        return frozenset(s for s in self.source.generators if self.p(s) <= target)

    def describe(self, s: str) -> str:
        return f"{s} -> {self.target.format_subset(self.p(s))}"


class WordMorphism(BaseModel):
    """Monoid morphism given by positive target words for each generator."""
    model_config = ConfigDict(frozen=True)

    name: str
    source: ArtinPresentation
    target: ArtinPresentation
    images: dict[str, tuple[str, ...]]

    @model_validator(mode="after")
    def _covers_source(self) -> "WordMorphism":
        missing = [s for s in self.source.generators if s not in self.images]
        if missing:
            raise PresentationError(f"Morphism {self.name} gives no image for {', '.join(missing)}")
        for s, word in self.images.items():
            self.source.index(s)
            for t in word:
                self.target.index(t)
        return self

    def image(self, s: str) -> MonoidElement:
        return m_canonical(self.target, self.images[s])


def identity_map(presentation: ArtinPresentation) -> GeneratorMap:
    return GeneratorMap(
        name=f"ID_{presentation.name}",
        source=presentation,
        target=presentation,
        assignment={s: frozenset({s}) for s in presentation.generators},
    )


# --- axioms ---


def _factor(u: MonoidElement) -> str:
    return f"({u})" if u.length > 1 else str(u)


def check_generator_map(gmap: GeneratorMap, cutoff: int = DEFAULT_CUTOFF) -> Report:
    """Evaluate L0, L1, L2, L3 and the weaker L3' on a generator map.

    Failures are report items with a witness, never exceptions.
    """
    source, target = gmap.source, gmap.target
    report = Report(title=f"Axioms of {gmap.name}: {source.name} -> {target.name}")
    pairs = list(combinations(source.generators, 2))

    overlap = next(((s, t) for s, t in pairs if gmap.p(s) & gmap.p(t)), None)
    if overlap is None:
        report.add("L0", Status.PASS, "images pairwise disjoint")
    else:
        s, t = overlap
        report.add(
            "L0", Status.FAIL, "images pairwise disjoint",
            witness=f"{gmap.describe(s)}, {gmap.describe(t)} share {target.format_subset(gmap.p(s) & gmap.p(t))}",
        )

    bad_image = next((s for s in source.generators if not is_spherical(target, gmap.p(s))), None)
    if bad_image is None:
        report.add("L1", Status.PASS, "each image spherical")
    else:
        report.add("L1", Status.FAIL, "each image spherical", witness=gmap.describe(bad_image))

    finite_pairs = [(s, t) for s, t in pairs if source.bond(s, t) != INF]
    if bad_image is not None:
        report.add("L2", Status.FAIL, "brackets of deltas equal their lcm", detail="needs L1")
    elif not finite_pairs:
        report.add("L2", Status.VACUOUS, "brackets of deltas equal their lcm")
    else:
        report.items.append(_check_l2(gmap, finite_pairs, cutoff))

    infinite_pairs = source.infinite_pairs()
    if not infinite_pairs:
        report.add("L3", Status.VACUOUS, "infinite bonds map to non-spherical unions")
        report.add("L3'", Status.VACUOUS, "image unions of infinite bonds non-spherical")
        return report

    l3_witness = ""
    for s, t in infinite_pairs:
        for a, b in ((s, t), (t, s)):
            for u in target.sort_generators(gmap.p(a)):
                if is_spherical(target, gmap.p(b) | {u}):
                    l3_witness = l3_witness or f"m({s},{t}) = inf but {target.format_subset(gmap.p(b) | {u})} spherical"
    report.add("L3", Status.of(not l3_witness), "infinite bonds map to non-spherical unions", witness=l3_witness)

    weak = next(((s, t) for s, t in infinite_pairs if is_spherical(target, gmap.p(s) | gmap.p(t))), None)
    weak_witness = "" if weak is None else f"{target.format_subset(gmap.p(weak[0]) | gmap.p(weak[1]))} spherical"
    report.add("L3'", Status.of(weak is None), "image unions of infinite bonds non-spherical", witness=weak_witness)
    return report


def _check_l2(gmap: GeneratorMap, finite_pairs: list[tuple[str, str]], cutoff: int) -> CheckItem:
    target = gmap.target
    witnesses: list[str] = []
    for s, t in finite_pairs:
        m = int(gmap.source.bond(s, t))
        a, b = delta(target, gmap.p(s)), delta(target, gmap.p(t))
        forward, backward = bracket(a, b, m), bracket(b, a, m)
        lcm = left_lcm(a, b, cutoff)
        factors = [a if i % 2 == 0 else b for i in range(m)]
        written = "".join(_factor(f) for f in factors)
        if lcm.outcome is LcmOutcome.UNKNOWN:
            return CheckItem(key="L2", label="brackets of deltas equal their lcm", status=Status.UNDETERMINED,
                             witness=f"lcm({a}, {b}) = {lcm}")
        if forward != backward or lcm.element != forward:
            return CheckItem(
                key="L2", label="brackets of deltas equal their lcm", status=Status.FAIL,
                witness=f"{s},{t}: {written} = {forward}, reversed {backward}, lcm {lcm}",
            )
        if m > 2:
            witnesses.append(f"{written} = {forward}")
    return CheckItem(key="L2", label="brackets of deltas equal their lcm", status=Status.PASS,
                     witness="; ".join(witnesses))


class LcmHom:
    """A generator map together with its eager axiom report.

    `usable` gates every morphism-level operation. With `allow_weak`, L3' may
    stand in for L3; such maps are refused by the Deligne-complex checks.
    """

    def __init__(self, gmap: GeneratorMap, cutoff: int = DEFAULT_CUTOFF, allow_weak: bool = False):
        self.map = gmap
        self.allow_weak = allow_weak
        self.report = check_generator_map(gmap, cutoff)
        self._images: dict[str, MonoidElement] = {}
        if self._passes("L1"):
            self._images = {s: delta(gmap.target, gmap.p(s)) for s in gmap.source.generators}
        logger.debug(f"Built lcm-hom {gmap.name}: usable={self.usable}, complex={self.eligible_for_complex}")

    def _passes(self, key: str) -> bool:
        item = self.report.get(key)
        return item is not None and item.status in (Status.PASS, Status.VACUOUS)

    @property
    def name(self) -> str:
        return self.map.name

    @property
    def source(self) -> ArtinPresentation:
        return self.map.source

    @property
    def target(self) -> ArtinPresentation:
        return self.map.target

    @property
    def usable(self) -> bool:
        core = all(self._passes(k) for k in ("L0", "L1", "L2"))
        return core and (self._passes("L3") or (self.allow_weak and self._passes("L3'")))

    @property
    def eligible_for_complex(self) -> bool:
        return all(self._passes(k) for k in ("L0", "L1", "L2", "L3"))

    def require_usable(self) -> None:
        if self.usable:
            return
        failing = [i for i in self.report.items if not i.status.is_success]
        first = failing[0] if failing else None
        detail = f"{first.key}: {first.witness or first.detail}" if first else "L3 needs allow_weak"
        raise UnverifiedMapError(f"Map {self.name} is not an lcm-homomorphism ({detail})")

    def image(self, s: str) -> MonoidElement:
        self.require_usable()
        return self._images[s]

    def as_word_morphism(self) -> WordMorphism:
        self.require_usable()
        return WordMorphism(
            name=self.name, source=self.source, target=self.target,
            images={s: u.word for s, u in self._images.items()},
        )


Morphism = LcmHom | WordMorphism


def unverified_morphism(phi: LcmHom) -> WordMorphism:
    """φ(s) read off the longest element of W_{p(s)}, whatever the axioms say.

    Negative controls run through this; nothing checks that it is a morphism.
    """
    return WordMorphism(
        name=phi.name, source=phi.source, target=phi.target,
        images={s: longest_element(phi.target, phi.map.p(s)).word for s in phi.source.generators},
    )


# --- applying morphisms ---


def map_positive(phi: Morphism, u: MonoidElement) -> MonoidElement:
    if u.presentation != phi.source:
        raise PresentationMismatchError(f"Presentation mismatch: {u.presentation.name} vs {phi.source.name}")
    return m_canonical(phi.target, tuple(g for s in u.word for g in phi.image(s).word))


def map_group(phi: Morphism, g: GroupElement) -> GroupElement:
    letters: list[tuple[str, int]] = []
    for s, sign in g.letters:
        word = phi.image(s).word
        if sign > 0:
            letters.extend((x, 1) for x in word)
        else:
            letters.extend((x, -1) for x in reversed(word))
    return GroupElement(phi.target, free_reduce(letters))


def map_coxeter(phi: Morphism, w: WElement) -> WElement:
    """Induced map of Coxeter groups: project . φ . section."""
    return project(map_positive(phi, sec_lift(w)))


def map_fraction(phi: Morphism, fraction: FractionForm) -> FractionForm:
    """(φ(a), φ(b)); the result must again be left coprime.

    Raises:
        InternalCheckError: the images have a nontrivial common left divisor.
    """
    a, b = map_positive(phi, fraction.neg), map_positive(phi, fraction.pos)
    common = left_gcd(a, b)
    if not common.is_identity:
        raise InternalCheckError(f"Images of coprime pair ({fraction.neg}, {fraction.pos}) share left divisor {common}")
    return FractionForm(a, b)


def divisor_sets(phi: Morphism, s: str) -> tuple[Subset, Subset]:
    """(p_≺(s), p_≻(s)): target generators dividing φ(s) on the left, resp. right."""
    image = phi.image(s)
    target = phi.target
    left = frozenset(t for t in target.generators if left_divides(m_canonical(target, (t,)), image))
    right = frozenset(t for t in target.generators if right_divides(m_canonical(target, (t,)), image))
    return left, right


def is_symmetric(phi: Morphism) -> bool:
    return all(left == right for left, right in (divisor_sets(phi, s) for s in phi.source.generators))


def _image_lcm(phi: Morphism, s: str, t: str, cutoff: int) -> LcmResult:
    """φ(s ∨ t) with φ(inf) = inf."""
    m = phi.source.bond(s, t)
    if m == INF:
        return LcmResult(LcmOutcome.INFINITE)
    gs, gt = m_canonical(phi.source, (s,)), m_canonical(phi.source, (t,))
    return LcmResult(LcmOutcome.FINITE, map_positive(phi, bracket(gs, gt, int(m))))


def lcm_homomorphism_report(phi: Morphism, cutoff: int = DEFAULT_CUTOFF) -> CheckItem:
    label = "generator images nontrivial and lcm preserving"
    for s in phi.source.generators:
        if phi.image(s).is_identity:
            return CheckItem(key="lcm-hom", label=label, status=Status.FAIL, witness=f"{s} -> 1")
    for s, t in combinations(phi.source.generators, 2):
        lhs = left_lcm(phi.image(s), phi.image(t), cutoff)
        if lhs.outcome is LcmOutcome.UNKNOWN:
            return CheckItem(key="lcm-hom", label=label, status=Status.UNDETERMINED,
                             witness=f"lcm of images of {s},{t}: {lhs}")
        rhs = _image_lcm(phi, s, t, cutoff)
        if lhs != rhs:
            return CheckItem(key="lcm-hom", label=label, status=Status.FAIL,
                             witness=f"φ({s}) ∨ φ({t}) = {lhs} but φ({s} ∨ {t}) = {rhs}")
    return CheckItem(key="lcm-hom", label=label, status=Status.PASS)


def is_lcm_homomorphism(phi: Morphism, cutoff: int = DEFAULT_CUTOFF) -> Status:
    return lcm_homomorphism_report(phi, cutoff).status


# --- preservation checks ---


def _source_ball(phi: Morphism, bound: int) -> list[MonoidElement]:
    return enumerate_positive(phi.source, bound)


def is_qf_injective(phi: Morphism, bound: int) -> CheckItem:
    """Square-free elements of length <= bound map injectively to square-free ones."""
    label = "square-free elements map injectively to square-free elements"
    seen: dict[MonoidElement, MonoidElement] = {}
    checked = 0
    for u in _source_ball(phi, bound):
        if not is_square_free(u):
            continue
        image = map_positive(phi, u)
        checked += 1
        if not is_square_free(image):
            return CheckItem(key="qf", label=label, status=Status.FAIL, witness=f"φ({u}) = {image} has a square")
        if image in seen:
            return CheckItem(key="qf", label=label, status=Status.FAIL,
                             witness=f"φ({seen[image]}) = φ({u}) = {image}")
        seen[image] = u
    return CheckItem(key="qf", label=label, status=Status.PASS, detail=f"{checked} square-free elements")


def verify_coxeter_injectivity(phi: Morphism, radius: int = 6) -> CheckItem:
    """map_coxeter injective on W (finite) or on its length ball."""
    label = "induced Coxeter map injective"
    source = phi.source
    if is_spherical(source, source.all):
        elements, scope = enumerate_w(source), "all of W"
    else:
        elements, scope = w_ball(source, radius), f"length ball {radius}"
    seen: dict[WElement, WElement] = {}
    for w in elements:
        image = map_coxeter(phi, w)
        if image in seen:
            return CheckItem(key="coxeter", label=label, status=Status.FAIL,
                             witness=f"{seen[image]} and {w} both map to {image}")
        seen[image] = w
    return CheckItem(key="coxeter", label=label, status=Status.PASS, detail=f"{len(elements)} elements, {scope}")


def preserves_normal_form(phi: Morphism, u: MonoidElement) -> tuple[bool, str]:
    """Whether φ maps the normal form of u factor by factor onto that of φ(u)."""
    factors = normal_form(u).factors
    mapped = tuple(map_positive(phi, g) for g in factors)
    expected = normal_form(map_positive(phi, u)).factors
    if mapped == expected:
        return True, ""
    shown = ", ".join(str(f) for f in mapped)
    wanted = ", ".join(str(f) for f in expected)
    return False, f"u = {u}: images ({shown}) but normal form of φ(u) is ({wanted})"


def verify_normal_form_preservation(phi: Morphism, elements: Iterable[MonoidElement]) -> CheckItem:
    label = "normal forms preserved"
    count = 0
    for u in elements:
        count += 1
        ok, witness = preserves_normal_form(phi, u)
        if not ok:
            return CheckItem(key="nf", label=label, status=Status.FAIL, witness=witness)
    return CheckItem(key="nf", label=label, status=Status.PASS, detail=f"{count} elements")


def _lattice_failure(phi: Morphism, u: MonoidElement, v: MonoidElement, cutoff: int) -> tuple[Status, str] | None:
    fu, fv = map_positive(phi, u), map_positive(phi, v)
    for side, lcm, gcd in (("left", left_lcm, left_gcd), ("right", right_lcm, right_gcd)):
        source_lcm = lcm(u, v, cutoff)
        image_lcm = lcm(fu, fv, cutoff)
        if LcmOutcome.UNKNOWN in (source_lcm.outcome, image_lcm.outcome):
            return Status.UNDETERMINED, f"{side} lcm of {u}, {v}: {source_lcm} / {image_lcm}"
        mapped = source_lcm if source_lcm.element is None else LcmResult(
            LcmOutcome.FINITE, map_positive(phi, source_lcm.element)
        )
        if mapped != image_lcm:
            return Status.FAIL, f"{side} lcm: φ({u} ∨ {v}) = {mapped} but φ({u}) ∨ φ({v}) = {image_lcm}"
        if map_positive(phi, gcd(u, v)) != gcd(fu, fv):
            return Status.FAIL, f"{side} gcd: φ({u} ∧ {v}) = {map_positive(phi, gcd(u, v))} but {gcd(fu, fv)}"
    return None


def verify_lattice_preservation(
    phi: Morphism,
    pairs: Iterable[tuple[MonoidElement, MonoidElement]],
    cutoff: int = DEFAULT_CUTOFF,
) -> CheckItem:
    """φ commutes with gcd and lcm on both sides (inf maps to inf)."""
    label = "gcd and lcm preserved on both sides"
    count = 0
    for u, v in pairs:
        count += 1
        failure = _lattice_failure(phi, u, v, cutoff)
        if failure is not None:
            status, witness = failure
            return CheckItem(key="lattice", label=label, status=status, witness=witness)
    return CheckItem(key="lattice", label=label, status=Status.PASS, detail=f"{count} pairs")


def verify_divisibility_reflection(phi: Morphism, bound: int) -> CheckItem:
    """u ≺ v iff φ(u) ≺ φ(v), and φ injective, on the length ball."""
    label = "divisibility reflected"
    ball = _source_ball(phi, bound)
    images = {u: map_positive(phi, u) for u in ball}
    seen: dict[MonoidElement, MonoidElement] = {}
    for u in ball:
        if images[u] in seen:
            return CheckItem(key="divisibility", label=label, status=Status.FAIL,
                             witness=f"φ({seen[images[u]]}) = φ({u})")
        seen[images[u]] = u
    for u, v in product(ball, repeat=2):
        if left_divides(u, v) != left_divides(images[u], images[v]):
            return CheckItem(key="divisibility", label=label, status=Status.FAIL,
                             witness=f"{u} ≺ {v} is {left_divides(u, v)} but "
                                     f"{images[u]} ≺ {images[v]} is {left_divides(images[u], images[v])}")
    return CheckItem(key="divisibility", label=label, status=Status.PASS, detail=f"{len(ball) ** 2} pairs")


def verify_coprime_reflection(phi: Morphism, bound: int) -> CheckItem:
    """For square-free U, V: right divisors of φ(s) detect s, and gcd 1 is reflected.

    Only meaningful for symmetric maps; non-symmetric ones report VACUOUS.
    """
    label = "coprimality of square-free elements reflected"
    if not is_symmetric(phi):
        return CheckItem(key="coprime", label=label, status=Status.VACUOUS, detail="map not symmetric")
    source, target = phi.source, phi.target
    square_free = [u for u in _source_ball(phi, bound) if is_square_free(u)]
    images = {u: map_positive(phi, u) for u in square_free}
    for u in square_free:
        for s in source.generators:
            _, right = divisor_sets(phi, s)
            for t in target.sort_generators(right):
                if left_divides(m_canonical(target, (t,)), images[u]) and not left_divides(m_canonical(source, (s,)), u):
                    return CheckItem(key="coprime", label=label, status=Status.FAIL,
                                     witness=f"{t} ≺ φ({u}) with {t} ∈ p≻({s}) but {s} does not divide {u}")
    for u, v in product(square_free, repeat=2):
        source_coprime = left_gcd(u, v).is_identity
        if source_coprime != left_gcd(images[u], images[v]).is_identity:
            return CheckItem(key="coprime", label=label, status=Status.FAIL,
                             witness=f"gcd({u}, {v}) trivial is {source_coprime}, images disagree")
    return CheckItem(key="coprime", label=label, status=Status.PASS, detail=f"{len(square_free)} square-free elements")


def verify_fraction_preservation(phi: Morphism, elements: Iterable[GroupElement]) -> CheckItem:
    """φ maps the coprime fraction of g to the coprime fraction of φ(g)."""
    label = "coprime fractions preserved"
    count = 0
    for g in elements:
        count += 1
        fraction = coprime_fraction(g)
        try:
            mapped = map_fraction(phi, fraction)
        except InternalCheckError as exc:
            return CheckItem(key="fraction", label=label, status=Status.FAIL, witness=str(exc))
        expected = coprime_fraction(map_group(phi, g))
        if mapped != expected:
            return CheckItem(key="fraction", label=label, status=Status.FAIL,
                             witness=f"g = {g}: {mapped} vs {expected}")
    return CheckItem(key="fraction", label=label, status=Status.PASS, detail=f"{count} fractions")


def pullback_factor(
    phi: LcmHom,
    w: MonoidElement,
    subset_r: Iterable[str],
    subset_y: Iterable[str],
) -> tuple[MonoidElement, MonoidElement] | None:
    """Lift a factorization φ(w) = α.β with α in A_{p(R)}^+, β in A_Y^+.

    Returns (u, v) with w = u.v, u in A_R^+ and v in A_Z^+ where
    Z = {s : p(s) ⊆ Y}; None when φ(w) has no such factorization.

    Raises:
        InternalCheckError: φ(w) factors but w does not.
    """
    phi.require_usable()
    source, target = phi.source, phi.target
    r = source.subset(subset_r)
    y = target.subset(subset_y)
    image = map_positive(phi, w)
    alpha = _first_factor(image, phi.map.p_subset(r), y)
    if alpha is None:
        return None
    z = phi.map.preimage_subset(y)
    lifted = _first_factor(w, r, z)
    if lifted is None:
        raise InternalCheckError(f"φ({w}) = {alpha}.β factors through {target.format_subset(y)} but {w} does not")
    return lifted, left_quotient(lifted, w)


def _first_factor(u: MonoidElement, head: Subset, tail: Subset) -> MonoidElement | None:
    """Shortest a ≺ u with a in A_head^+ and a\\u in A_tail^+."""
    presentation = u.presentation
    start = m_canonical(presentation, ())
    seen = {start}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        if support(left_quotient(a, u)) <= tail:
            return a
        for s in presentation.sort_generators(head):
            candidate = m_canonical(presentation, a.word + (s,))
            if candidate not in seen and left_divides(candidate, u):
                seen.add(candidate)
                queue.append(candidate)
    return None


def verify_lemred(phi: LcmHom, s: str, t: str, k: int) -> bool:
    """A non-square-free bracket of φ(s), φ(t) needs m(s,t) finite and k > m(s,t)."""
    value = bracket(phi.image(s), phi.image(t), k)
    if is_square_free(value):
        return True
    m = phi.source.bond(s, t)
    return m != INF and k > m


def verify_lemred_all(phi: LcmHom, max_k: int) -> CheckItem:
    label = "non-square-free brackets only beyond the bond"
    all_square_free = True
    for s, t in combinations(phi.source.generators, 2):
        for k in range(max_k + 1):
            if not verify_lemred(phi, s, t, k):
                return CheckItem(key="lemred", label=label, status=Status.FAIL,
                                 witness=f"bracket(φ({s}), φ({t}), {k}) has a square")
            if not is_square_free(bracket(phi.image(s), phi.image(t), k)):
                all_square_free = False
    detail = "all brackets square-free" if all_square_free else ""
    return CheckItem(key="lemred", label=label, status=Status.PASS, detail=detail)


# --- map files ---


def parse_map(
    text: str,
    presentations: Mapping[str, ArtinPresentation],
) -> GeneratorMap | WordMorphism:
    """Parse map-file content.

        map FOLD from B2 to A3
        s -> s1 s3
        t -> s2

    A `morphism NAME from P to Q` header reads each right-hand side as a
    positive word instead of a generator set. A `control` line marks a
    generator map that the axiom check is expected to reject.
    """
    header: tuple[str, str, ArtinPresentation, ArtinPresentation] | None = None
    entries: dict[str, tuple[str, ...]] = {}
    control = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 6 or parts[0] not in ("map", "morphism") or parts[2] != "from" or parts[4] != "to":
                raise PresentationError(f"line {lineno}: expected '<map|morphism> NAME from P to Q'")
            kind, name, source_name, target_name = parts[0], parts[1], parts[3], parts[5]
            for ref in (source_name, target_name):
                if ref not in presentations:
                    raise PresentationError(f"line {lineno}: Presentation not found: {ref}")
            header = (kind, name, presentations[source_name], presentations[target_name])
            continue
        if line == "control":
            if header[0] != "map":
                raise PresentationError(f"line {lineno}: only generator maps can be controls")
            control = True
            continue
        if "->" not in line:
            raise PresentationError(f"line {lineno}: expected 's -> image'")
        lhs, rhs = (part.strip() for part in line.split("->", 1))
        if lhs in entries:
            raise PresentationError(f"line {lineno}: image of {lhs} given twice")
        entries[lhs] = header[3].parse_word(rhs)
    if header is None:
        raise PresentationError("Missing map header")
    kind, name, source, target = header
    try:
        if kind == "morphism":
            return WordMorphism(name=name, source=source, target=target, images=entries)
        return GeneratorMap(
            name=name, source=source, target=target,
            assignment={s: frozenset(image) for s, image in entries.items()},
            control=control,
        )
    except ValueError as exc:
        if isinstance(exc, PresentationError | UnknownGeneratorError):
            raise
        raise PresentationError(f"Invalid map {name}: {exc}") from exc


def map_to_text(phi: GeneratorMap | WordMorphism) -> str:
    if isinstance(phi, WordMorphism):
        lines = [f"morphism {phi.name} from {phi.source.name} to {phi.target.name}"]
        lines += [f"{s} -> {' '.join(phi.images[s])}" for s in phi.source.generators]
    else:
        lines = [f"map {phi.name} from {phi.source.name} to {phi.target.name}"]
        lines += [f"{s} -> {' '.join(phi.target.sort_generators(phi.p(s)))}" for s in phi.source.generators]
        if phi.control:
            lines.append("control")
    return "\n".join(lines) + "\n"
