"""The Deligne complex of an FC-type presentation, explored combinatorially.

Vertices are cosets xA_X with X spherical, cubes are K(aA_R, aA_T). Positive
representatives are normalized to reduced-X form, which makes equality of two
positive cosets structural. Signed representatives are compared by membership
of x^-1 y in A_X, through the amalgam decomposition
A_S = A_{S-t} *_{A_{S-s,t}} A_{S-s} along an infinite bond.
"""

from collections import defaultdict, deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from itertools import combinations

import networkx as nx
from loguru import logger

from artintool.coxeter import right_descents, w_canonical
from artintool.elements import GroupElement, Letter, MonoidElement, check_same, free_reduce
from artintool.errors import (
    BallTooSmallError,
    InternalCheckError,
    NotFCError,
    NotSphericalError,
    PresentationError,
    UnsupportedMembershipError,
    UnverifiedMapError,
)
from artintool.lcm_hom import GeneratorMap, LcmHom, Morphism, map_group, map_positive, unverified_morphism
from artintool.models import CheckItem, Report, Status
from artintool.monoid import (
    coprime_fraction,
    group_inverse,
    group_multiply,
    left_lcm,
    left_quotient,
    m_canonical,
    parse_signed_word,
    right_divides,
    right_quotient,
    support,
    to_group,
)
from artintool.presentation import (
    INF,
    ArtinPresentation,
    Subset,
    finite_bond_graph,
    is_fc,
    is_spherical,
    spherical_subsets,
)


class Membership(str, Enum):
    TRUE = "true"
    FALSE = "false"
    UNSUPPORTED = "unsupported"


def require_fc(presentation: ArtinPresentation) -> None:
    """Raises NotFCError naming a non-spherical clique of finite bonds."""
    if is_fc(presentation):
        return
    cliques = sorted(
        (presentation.sort_generators(c) for c in nx.find_cliques(finite_bond_graph(presentation))),
        key=lambda c: (len(c), [presentation.index(s) for s in c]),
    )
    bad = next(c for c in cliques if not is_spherical(presentation, c))
    raise NotFCError(
        f"Presentation {presentation.name} is not of FC type: "
        f"{presentation.format_subset(bad)} has only finite bonds but is not spherical"
    )


# --- parabolic membership and the word problem ---


def _positive_letters(word: Iterable[str]) -> tuple[Letter, ...]:
    return tuple((g, 1) for g in word)


def _fraction_letters(neg: MonoidElement, pos: MonoidElement) -> tuple[Letter, ...]:
    return tuple((g, -1) for g in reversed(neg.word)) + _positive_letters(pos.word)


@lru_cache(maxsize=65536)
def _membership(
    presentation: ArtinPresentation,
    letters: tuple[Letter, ...],
    subset: Subset,
) -> tuple[Membership, tuple[Letter, ...]]:
    """Decide g in A_T; on TRUE also return a word for g over T."""
    letters = free_reduce(letters)
    if not letters:
        return Membership.TRUE, ()
    ambient = frozenset(g for g, _ in letters)
    target = subset & ambient
    if ambient <= target:
        return Membership.TRUE, letters
    start, end = 0, len(letters)
    while letters[start][0] in target:
        start += 1
    while letters[end - 1][0] in target:
        end -= 1
    if (start, end) != (0, len(letters)):
        # p.g.q lies in A_T iff g does, for p, q in A_T
        verdict, witness = _membership(presentation, letters[start:end], target)
        if verdict is Membership.TRUE:
            return verdict, free_reduce(letters[:start] + witness + letters[end:])
        return verdict, ()
    if is_spherical(presentation, ambient):
        fraction = coprime_fraction(GroupElement(presentation, letters))
        if support(fraction.neg) | support(fraction.pos) <= target:
            return Membership.TRUE, _fraction_letters(fraction.neg, fraction.pos)
        return Membership.FALSE, ()

    pairs = [
        (s, t) if t not in target else (t, s)
        for s, t in presentation.infinite_pairs(ambient)
        if s not in target or t not in target
    ]
    for keep, drop in pairs:
        # A_T lies in the factor A_{U - drop}.
        try:
            side, piece = _amalgam_reduce(presentation, letters, ambient, keep, drop)
        except UnsupportedMembershipError:
            continue
        if side == "many" or side == drop:
            return Membership.FALSE, ()
        verdict, witness = _membership(presentation, piece, target)
        if verdict is not Membership.UNSUPPORTED:
            return verdict, witness
    return Membership.UNSUPPORTED, ()


def _amalgam_reduce(
    presentation: ArtinPresentation,
    letters: tuple[Letter, ...],
    ambient: Subset,
    s: str,
    t: str,
) -> tuple[str | None, tuple[Letter, ...]]:
    """Reduced form of g in A_{U-t} *_{A_C} A_{U-s}, C = U - {s, t}.

    Sides are named by the generator that only their factor contains (s for
    A_{U-t}, t for A_{U-s}). Returns (None, word over C) for g in A_C, (side,
    word) when g lies in a single factor, and ("many", ()) otherwise.
    """
    common = ambient - {s, t}
    stack: list[tuple[str | None, tuple[Letter, ...]]] = []

    def push(side: str | None, word: tuple[Letter, ...]) -> None:
        while True:
            if stack and (side is None or stack[-1][0] is None or stack[-1][0] == side):
                top_side, top_word = stack.pop()
                side = top_side if top_side is not None else side
                word = free_reduce(top_word + word)
                continue
            if side is not None:
                verdict, witness = _membership(presentation, word, common)
                if verdict is Membership.UNSUPPORTED:
                    raise UnsupportedMembershipError(
                        f"Cannot decide whether {GroupElement(presentation, word)} lies in "
                        f"A{presentation.format_subset(common)}"
                    )
                if verdict is Membership.TRUE:
                    side, word = None, witness
                    continue
            stack.append((side, word))
            return

    current: str | None = None
    syllable: list[Letter] = []
    for letter in letters:
        g = letter[0]
        side = g if g in (s, t) else None
        if side is not None and current is not None and side != current:
            push(current, tuple(syllable))
            syllable = []
        if side is not None:
            current = side
        syllable.append(letter)
    push(current, tuple(syllable))

    pieces = [(side, word) for side, word in stack if side is not None or word]
    if not pieces:
        return None, ()
    if len(pieces) == 1:
        return pieces[0]
    return "many", ()


def in_parabolic(g: GroupElement, subset: Iterable[str]) -> Membership:
    """Whether g lies in A_T; UNSUPPORTED when every splitting keeps T whole."""
    presentation = g.presentation
    require_fc(presentation)
    verdict, _ = _membership(presentation, g.letters, presentation.subset(subset))
    if verdict is Membership.UNSUPPORTED:
        logger.warning(f"Membership of {g} in A{presentation.format_subset(subset)} unsupported")
    return verdict


def is_trivial(g: GroupElement) -> bool:
    """Word problem: membership in A_∅ always has a splitting available."""
    verdict = in_parabolic(g, ())
    if verdict is Membership.UNSUPPORTED:
        raise InternalCheckError(f"Triviality of {g} reported unsupported")
    return verdict is Membership.TRUE


def g_equal(g: GroupElement, h: GroupElement) -> bool:
    check_same(g, h)
    return is_trivial(group_multiply(g, group_inverse(h)))


@lru_cache(maxsize=256)
def _odd_components(presentation: ArtinPresentation) -> dict[str, str]:
    graph = nx.Graph()
    graph.add_nodes_from(presentation.generators)
    graph.add_edges_from((s, t) for s, t, m in presentation.bonds if m != INF and int(m) % 2 == 1)
    return {g: presentation.sort_generators(c)[0] for c in nx.connected_components(graph) for g in c}


def abelian_key(g: GroupElement) -> tuple[tuple[str, int], ...]:
    """Image in the abelianization; equal elements have equal keys."""
    classes = _odd_components(g.presentation)
    counts: dict[str, int] = {}
    for x, sign in g.letters:
        counts[classes[x]] = counts.get(classes[x], 0) + sign
    return tuple(sorted((k, v) for k, v in counts.items() if v))


def enumerate_group(presentation: ArtinPresentation, max_length: int) -> list[GroupElement]:
    """Freely reduced signed words with at most max_length letters."""
    letters = [(g, sign) for g in presentation.generators for sign in (1, -1)]
    layer: list[tuple[Letter, ...]] = [()]
    found = [GroupElement(presentation, ())]
    for _ in range(max_length):
        layer = [
            word + (letter,) for word in layer for letter in letters
            if not word or word[-1] != (letter[0], -letter[1])
        ]
        found.extend(GroupElement(presentation, word) for word in layer)
    return found


def distinct_elements(elements: Iterable[GroupElement]) -> list[GroupElement]:
    """Drop elements equal (in the group) to an earlier one."""
    kept: dict[tuple[tuple[str, int], ...], list[GroupElement]] = {}
    result: list[GroupElement] = []
    for g in elements:
        bucket = kept.setdefault(abelian_key(g), [])
        if any(g_equal(g, h) for h in bucket):
            continue
        bucket.append(g)
        result.append(g)
    return result


# --- vertices and cubes ---


def _reduce_right(u: MonoidElement, subset: Subset) -> MonoidElement:
    """Strip the greatest right divisor lying in A_X^+."""
    presentation = u.presentation
    generators = [m_canonical(presentation, (s,)) for s in presentation.sort_generators(subset)]
    stripped = True
    while stripped:
        stripped = False
        for s in generators:
            if right_divides(s, u):
                u = right_quotient(u, s)
                stripped = True
                break
    return u


@lru_cache(maxsize=65536)
def _w_coset(presentation: ArtinPresentation, word: tuple[str, ...], subset: Subset) -> tuple[str, ...]:
    """Minimal element of wW_X, w the image of the word in W."""
    w = w_canonical(presentation, word)
    while descents := right_descents(w) & subset:
        w = w_canonical(presentation, w.word + (presentation.sort_generators(descents)[0],))
    return w.word


def _coset_invariant(rep: GroupElement, subset: Subset) -> tuple:
    """Invariants of rep.A_X: its image in W/W_X and the abelianization off the classes of X."""
    classes = _odd_components(rep.presentation)
    absorbed = {classes[s] for s in subset}
    residue = tuple((k, n) for k, n in abelian_key(rep) if k not in absorbed)
    return residue, _w_coset(rep.presentation, rep.positive_word(), subset)


@dataclass(frozen=True, eq=False)
class Vertex:
    """The coset rep.A_X.

    Positive reps are stored reduced-X; other reps are freely reduced and end
    in a letter outside X. Equality is equality of cosets.
    """
    rep: GroupElement
    subset: Subset

    @property
    def presentation(self) -> ArtinPresentation:
        return self.rep.presentation

    @property
    def is_positive(self) -> bool:
        return self.rep.is_positive

    @cached_property
    def coset_key(self) -> tuple:
        return self.subset, _coset_invariant(self.rep, self.subset)

    def monoid_rep(self) -> MonoidElement:
        return MonoidElement(self.presentation, self.rep.positive_word())

    def sort_key(self) -> tuple:
        presentation = self.presentation
        word = tuple((presentation.index(g), sign) for g, sign in self.rep.letters)
        return len(word), word, presentation.subset_key(self.subset)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Vertex):
            return NotImplemented
        if self.rep == other.rep and self.subset == other.subset:
            return True
        if self.presentation != other.presentation or self.coset_key != other.coset_key:
            return False
        return vertex_equal(self, other)

    def __hash__(self) -> int:
        return hash(self.coset_key)

    def __str__(self) -> str:
        return f"{self.rep}@{self.presentation.format_subset(self.subset)}"


def make_vertex(
    presentation: ArtinPresentation,
    rep: GroupElement | MonoidElement,
    subset: Iterable[str],
) -> Vertex:
    """Vertex rep.A_X with normalized representative.

    Raises:
        NotSphericalError: X is not spherical.
    """
    members = presentation.subset(subset)
    if not is_spherical(presentation, members):
        raise NotSphericalError(f"Vertex subset {presentation.format_subset(members)} is not spherical")
    if isinstance(rep, GroupElement) and not rep.is_positive:
        letters = free_reduce(rep.letters)
        while letters and letters[-1][0] in members:
            letters = letters[:-1]
        rep = GroupElement(presentation, letters)
        if not rep.is_positive:
            return Vertex(rep, members)
    word = rep.word if isinstance(rep, MonoidElement) else rep.positive_word()
    reduced = _reduce_right(m_canonical(presentation, word), members)
    return Vertex(to_group(reduced), members)


def parse_vertex(presentation: ArtinPresentation, text: str) -> Vertex:
    """Parse `word@{X}`, e.g. `a.c@{a,c}` or `1@{}`."""
    if "@" not in text:
        raise PresentationError(f"Vertex must be written word@{{X}}: {text}")
    word, _, subset_text = text.partition("@")
    subset_text = subset_text.strip()
    if not (subset_text.startswith("{") and subset_text.endswith("}")):
        raise PresentationError(f"Vertex subset must be braced: {text}")
    members = [s for s in subset_text[1:-1].replace(",", " ").split() if s]
    return make_vertex(presentation, parse_signed_word(presentation, word or "1"), members)


def fundamental_domain(presentation: ArtinPresentation) -> list[Vertex]:
    """K_S: the vertices 1A_X, X spherical."""
    identity = GroupElement(presentation, ())
    return [Vertex(identity, subset) for subset in spherical_subsets(presentation)]


def vertex_equal(v: Vertex, w: Vertex) -> bool:
    presentation = check_same(v.rep, w.rep)
    if v.subset != w.subset:
        return False
    if v.is_positive and w.is_positive:
        return v.rep == w.rep
    verdict = in_parabolic(group_multiply(group_inverse(v.rep), w.rep), v.subset)
    if verdict is Membership.UNSUPPORTED:
        raise UnsupportedMembershipError(f"Cannot compare vertices {v} and {w} in {presentation.name}")
    return verdict is Membership.TRUE


def vertex_leq(v: Vertex, w: Vertex) -> bool:
    """xA_X ⊆ yA_Y iff X ⊆ Y and y^-1 x in A_Y."""
    presentation = check_same(v.rep, w.rep)
    if not v.subset <= w.subset:
        return False
    if v.is_positive and w.is_positive:
        return make_vertex(presentation, v.rep, w.subset) == w
    verdict = in_parabolic(group_multiply(group_inverse(w.rep), v.rep), w.subset)
    if verdict is Membership.UNSUPPORTED:
        raise UnsupportedMembershipError(f"Cannot compare vertices {v} and {w} in {presentation.name}")
    return verdict is Membership.TRUE


@dataclass(frozen=True, eq=False)
class Cube:
    """K(aA_R, aA_T): the vertices aA_Y with R ⊆ Y ⊆ T.

    Two cubes are equal when they share R, T and the coset aA_R.
    """
    rep: GroupElement
    base: Subset
    top: Subset

    @property
    def presentation(self) -> ArtinPresentation:
        return self.rep.presentation

    @property
    def dimension(self) -> int:
        return len(self.top - self.base)

    @cached_property
    def corner(self) -> Vertex:
        return Vertex(self.rep, self.base)

    def vertices(self) -> list[Vertex]:
        return list(_cube_vertices(self))

    def bottom(self) -> Vertex:
        return self.corner

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cube):
            return NotImplemented
        return self.base == other.base and self.top == other.top and self.corner == other.corner

    def __hash__(self) -> int:
        return hash((self.corner, self.top))

    def __str__(self) -> str:
        fmt = self.presentation.format_subset
        return f"K({self.rep}@{fmt(self.base)}, {self.rep}@{fmt(self.top)})"


@lru_cache(maxsize=65536)
def _cube_vertices(cube: Cube) -> tuple[Vertex, ...]:
    presentation = cube.presentation
    free = presentation.sort_generators(cube.top - cube.base)
    found = [
        make_vertex(presentation, cube.rep, cube.base | frozenset(extra))
        for size in range(len(free) + 1)
        for extra in combinations(free, size)
    ]
    return tuple(sorted(found, key=Vertex.sort_key))


def make_cube(
    presentation: ArtinPresentation,
    rep: GroupElement | MonoidElement,
    base: Iterable[str],
    top: Iterable[str],
) -> Cube:
    low, high = presentation.subset(base), presentation.subset(top)
    if not low <= high:
        raise NotSphericalError(
            f"Cube base {presentation.format_subset(low)} not inside top {presentation.format_subset(high)}"
        )
    corner = make_vertex(presentation, rep, low)
    if not is_spherical(presentation, high):
        raise NotSphericalError(f"Cube top {presentation.format_subset(high)} is not spherical")
    return Cube(corner.rep, low, high)


def vertex_cube(v: Vertex) -> Cube:
    return Cube(v.rep, v.subset, v.subset)


def cube_contains(cube: Cube, v: Vertex) -> bool:
    if not cube.base <= v.subset <= cube.top:
        return False
    return vertex_equal(make_vertex(cube.presentation, cube.rep, v.subset), v)


def _positive_meet(x: MonoidElement, r1: Subset, y: MonoidElement, r2: Subset) -> MonoidElement | None:
    """Reduced positive cosets xA_{R1}, yA_{R2} meet exactly at lcm(x, y), if anywhere."""
    x, y = _reduce_right(x, r1), _reduce_right(y, r2)
    lcm = left_lcm(x, y)
    if lcm.element is None:
        return None
    if support(left_quotient(x, lcm.element)) <= r1 and support(left_quotient(y, lcm.element)) <= r2:
        return lcm.element
    return None


def _coset_meet(a: GroupElement, r1: Subset, b: GroupElement, r2: Subset) -> GroupElement | None:
    """An element of aA_{R1} ∩ bA_{R2}, or None if the cosets are disjoint.

    The cosets meet only if a^-1 b lies in A_U, U = R1 ∪ R2. Writing it as
    the coprime fraction n^-1 p there and moving by a n^-1 leaves the positive
    cosets nA_{R1} and pA_{R2}.

    Raises:
        UnsupportedMembershipError: the syllable search cannot place a^-1 b.
    """
    if a == b:
        return a
    presentation = check_same(a, b)
    if a.is_positive and b.is_positive:
        meet = _positive_meet(MonoidElement(presentation, a.positive_word()), r1,
                              MonoidElement(presentation, b.positive_word()), r2)
        return None if meet is None else to_group(meet)
    union = r1 | r2
    verdict, witness = _membership(presentation, group_multiply(group_inverse(a), b).letters, union)
    if verdict is Membership.UNSUPPORTED:
        fmt = presentation.format_subset
        raise UnsupportedMembershipError(f"Cannot decide whether {a}A{fmt(r1)} meets {b}A{fmt(r2)}")
    if verdict is Membership.FALSE:
        return None
    fraction = coprime_fraction(GroupElement(presentation, witness))
    meet = _positive_meet(fraction.neg, r1, fraction.pos, r2)
    if meet is None:
        return None
    return group_multiply(a, group_inverse(to_group(fraction.neg)), to_group(meet))


@lru_cache(maxsize=262144)
def cube_span(c1: Cube, c2: Cube) -> Cube | None:
    """The smallest cube containing both, or None if there is none."""
    presentation = check_same(c1.rep, c2.rep)
    union = c1.top | c2.top
    if not is_spherical(presentation, union):
        return None
    common = _coset_meet(c1.rep, c1.base, c2.rep, c2.base)
    if common is None:
        return None
    return make_cube(presentation, common, c1.base & c2.base, union)


def vertex_span(v: Vertex, w: Vertex) -> Cube | None:
    return cube_span(vertex_cube(v), vertex_cube(w))


def cube_leq(c: Cube, k: Cube) -> bool:
    """Whether C is a face of K."""
    return k.base <= c.base and c.top <= k.top and cube_contains(k, c.bottom())


@lru_cache(maxsize=262144)
def _star_vertices(c: Cube, d: Cube) -> frozenset[Vertex]:
    return frozenset(v for v in d.vertices() if cube_span(c, vertex_cube(v)) is not None)


def star_meets(c: Cube, d: Cube, ball: "DeligneBall | None" = None) -> frozenset[Vertex]:
    """Vertices of D lying in the star of C.

    A vertex v is in the star iff some cube contains both C and v, that is
    iff span(C, v) exists, so no enumeration is needed. Given a ball, the
    vertices are also read off the ball's cubes having C as a face.

    Raises:
        BallTooSmallError: the star reaches D through a cube the ball lacks.
    """
    found = _star_vertices(c, d)
    if ball is None:
        return found
    incident = ball.cubes_containing(c)
    listed = frozenset(v for v in d.vertices() if any(cube_contains(k, v) for k in incident))
    missing = sorted(found - listed, key=Vertex.sort_key)
    if missing:
        raise BallTooSmallError(f"The ball lacks the cube spanned by {c} and {missing[0]}")
    if listed != found:
        raise InternalCheckError(f"Star of {c} meets {d} in {len(listed)} ball vertices, expected {len(found)}")
    return found


# --- normal cube paths ---


@dataclass(frozen=True)
class CubePath:
    vertices: tuple[Vertex, ...]
    cubes: tuple[Cube, ...] = ()

    @property
    def start(self) -> Vertex:
        return self.vertices[0]

    @property
    def end(self) -> Vertex:
        return self.vertices[-1]

    def extend(self, v: Vertex, cube: Cube) -> "CubePath":
        return CubePath(self.vertices + (v,), self.cubes + (cube,))

    def __len__(self) -> int:
        return len(self.cubes)

    def __str__(self) -> str:
        return " -> ".join(str(v) for v in self.vertices)


def _star_condition(previous: Cube, following: Cube, pivot: Vertex) -> bool:
    """Et(previous) ∩ following = {pivot}."""
    return star_meets(previous, following) == {pivot}


def normal_path_violation(vertices: Sequence[Vertex]) -> str | None:
    """Reason a vertex sequence is not a normal cube path, or None."""
    cubes: list[Cube] = []
    for i in range(1, len(vertices)):
        v, w = vertices[i - 1], vertices[i]
        if v == w:
            return f"repeated vertex {v} at step {i}"
        cube = vertex_span(v, w)
        if cube is None:
            return f"no cube contains {v} and {w}"
        cubes.append(cube)
    for i in range(1, len(cubes)):
        if not _star_condition(cubes[i - 1], cubes[i], vertices[i]):
            extra = star_meets(cubes[i - 1], cubes[i]) - {vertices[i]}
            shown = ", ".join(sorted(str(v) for v in extra))
            return f"star of {cubes[i - 1]} meets {cubes[i]} beyond {vertices[i]}: {shown}"
    return None


def is_normal_cube_path(path: CubePath | Sequence[Vertex]) -> bool:
    vertices = path.vertices if isinstance(path, CubePath) else tuple(path)
    return normal_path_violation(vertices) is None


def path_from_vertices(vertices: Sequence[Vertex]) -> CubePath:
    cubes = []
    for v, w in zip(vertices, vertices[1:]):
        cube = vertex_span(v, w)
        if cube is None:
            raise InternalCheckError(f"No cube contains {v} and {w}")
        cubes.append(cube)
    return CubePath(tuple(vertices), tuple(cubes))


def _cube_steps(
    presentation: ArtinPresentation,
    x: GroupElement,
    subset: Subset,
    radius: int,
) -> Iterable[tuple[GroupElement, Subset]]:
    """States one cube step from (x, X): xA_Y for spherical X ∪ Y, and xs^±1 A_X for s in X."""
    for other in spherical_subsets(presentation):
        if other != subset and is_spherical(presentation, subset | other):
            yield x, other
    for s in presentation.sort_generators(subset):
        for sign in (1, -1):
            moved = group_multiply(x, GroupElement(presentation, ((s, sign),)))
            if len(moved.letters) <= radius:
                yield moved, subset


@dataclass
class DeligneBall:
    """A finite set of vertices in which normal cube paths are searched.

    `around_identity` walks from 1A_∅ across cubes and keeps every coset
    xA_X reached with x a freely reduced word of at most `radius` letters.
    Membership is coset equality; `find` returns the ball's own copy of a
    vertex. The vertex set is fixed after construction and the caches only
    memoize.
    """
    presentation: ArtinPresentation
    vertices: tuple[Vertex, ...]
    radius: int | None = None
    _members: dict[Vertex, int] = field(init=False, repr=False)
    _upper: dict[Vertex, list[Vertex]] | None = field(init=False, repr=False, default=None)
    _adjacency: dict[Vertex, tuple[tuple[Vertex, Cube], ...]] = field(init=False, repr=False, default_factory=dict)
    _paths: dict[Vertex, dict[Vertex, CubePath]] = field(init=False, repr=False, default_factory=dict)
    _cubes: list[Cube] | None = field(init=False, repr=False, default=None)

    def __post_init__(self) -> None:
        self._members = {}
        for i, v in enumerate(self.vertices):
            self._members.setdefault(v, i)

    @classmethod
    def around_identity(cls, presentation: ArtinPresentation, radius: int) -> "DeligneBall":
        require_fc(presentation)
        origin = (GroupElement(presentation, ()), frozenset())
        seen = {origin}
        queue = deque([origin])
        found: dict[Vertex, Vertex] = {}
        while queue:
            x, subset = queue.popleft()
            v = make_vertex(presentation, x, subset)
            found.setdefault(v, v)
            for state in _cube_steps(presentation, x, subset, radius):
                if state not in seen:
                    seen.add(state)
                    queue.append(state)
        ball = cls(presentation, tuple(sorted(found.values(), key=Vertex.sort_key)), radius)
        logger.debug(f"Ball of radius {radius} in {presentation.name}: {len(ball.vertices)} vertices")
        return ball

    @classmethod
    def from_vertices(cls, presentation: ArtinPresentation, vertices: Iterable[Vertex]) -> "DeligneBall":
        require_fc(presentation)
        unique: dict[Vertex, Vertex] = {}
        for v in vertices:
            unique.setdefault(v, v)
        return cls(presentation, tuple(sorted(unique.values(), key=Vertex.sort_key)))

    def __contains__(self, v: object) -> bool:
        return v in self._members

    def __len__(self) -> int:
        return len(self.vertices)

    def find(self, v: Vertex) -> Vertex:
        try:
            return self.vertices[self._members[v]]
        except KeyError:
            raise BallTooSmallError(f"Vertex {v} is outside the explored ball") from None

    def _upper_index(self) -> dict[Vertex, list[Vertex]]:
        # aA_T -> ball vertices aA_X with X ⊆ T
        if self._upper is None:
            upper: dict[Vertex, list[Vertex]] = defaultdict(list)
            for w in self.vertices:
                for top in spherical_subsets(self.presentation):
                    if w.subset <= top:
                        upper[make_vertex(self.presentation, w.rep, top)].append(w)
            self._upper = dict(upper)
        return self._upper

    def steps(self, v: Vertex) -> tuple[tuple[Vertex, Cube], ...]:
        """Ball vertices sharing a cube with v, each with the span of the two."""
        v = self.find(v)
        if v not in self._adjacency:
            upper = self._upper_index()
            found: list[tuple[Vertex, Cube]] = []
            for top in spherical_subsets(self.presentation):
                if not v.subset <= top:
                    continue
                for w in upper.get(make_vertex(self.presentation, v.rep, top), ()):
                    if w.subset | v.subset != top or w is v:
                        continue
                    cube = vertex_span(v, w)
                    if cube is not None:
                        found.append((w, cube))
            found.sort(key=lambda item: self._members[item[0]])
            self._adjacency[v] = tuple(found)
        return self._adjacency[v]

    def neighbours(self, v: Vertex) -> tuple[Vertex, ...]:
        return tuple(w for w, _ in self.steps(v))

    def cubes(self) -> list[Cube]:
        """Every cube whose vertices all lie in the ball."""
        if self._cubes is None:
            found: list[Cube] = []
            subsets = spherical_subsets(self.presentation)
            for v in self.vertices:
                for top in subsets:
                    if not v.subset <= top:
                        continue
                    cube = Cube(v.rep, v.subset, top)
                    if all(w in self for w in cube.vertices()):
                        found.append(cube)
            self._cubes = found
        return self._cubes

    def cubes_containing(self, c: Cube) -> list[Cube]:
        """Ball cubes having C as a face."""
        return [k for k in self.cubes() if cube_leq(c, k)]

    def normal_paths_from(self, start: Vertex) -> dict[Vertex, CubePath]:
        """The normal cube path from `start` to every ball vertex it reaches inside the ball.

        Raises:
            BallTooSmallError: start is outside the ball.
            InternalCheckError: two normal cube paths reach the same vertex.
        """
        start = self.find(start)
        if start in self._paths:
            return self._paths[start]
        paths = {start: CubePath((start,))}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            path = paths[v]
            for w, cube in self.steps(v):
                if path.cubes and not _star_condition(path.cubes[-1], cube, v):
                    continue
                candidate = path.extend(w, cube)
                if w in paths:
                    if paths[w] != candidate:
                        raise InternalCheckError(f"Two normal cube paths to {w}: {paths[w]} and {candidate}")
                    continue
                paths[w] = candidate
                queue.append(w)
        self._paths[start] = paths
        return paths

    def normal_cube_path(self, start: Vertex, end: Vertex) -> CubePath:
        """Raises BallTooSmallError when the path leaves the ball."""
        end = self.find(end)
        paths = self.normal_paths_from(start)
        if end not in paths:
            raise BallTooSmallError(f"Normal cube path from {start} to {end} leaves the explored ball")
        return paths[end]


# --- the vertex map and its verification ---


def _require_complex_map(phi: LcmHom) -> None:
    if not isinstance(phi, LcmHom):
        raise UnverifiedMapError(f"{phi.name} is not a generator map")
    phi.require_usable()
    if not phi.eligible_for_complex:
        raise UnverifiedMapError(f"Map {phi.name} satisfies L3' only; the Deligne complex needs L3")
    require_fc(phi.source)
    require_fc(phi.target)


def _vertex_image(morphism: Morphism, gmap: GeneratorMap, v: Vertex) -> Vertex:
    image_subset = gmap.p_subset(v.subset)
    if v.is_positive:
        return make_vertex(morphism.target, map_positive(morphism, v.monoid_rep()), image_subset)
    return make_vertex(morphism.target, map_group(morphism, v.rep), image_subset)


def _translate(h: GroupElement, v: Vertex) -> Vertex:
    return make_vertex(v.presentation, group_multiply(h, v.rep), v.subset)


def phi_vertex(phi: LcmHom, v: Vertex) -> Vertex:
    """Φ_p(xA_X) = φ_p(x) A_{p(X)}."""
    _require_complex_map(phi)
    return _vertex_image(phi, phi.map, v)


def verify_proccn(
    phi: LcmHom,
    ball: DeligneBall,
    pairs: Iterable[tuple[Vertex, Vertex]],
) -> CheckItem:
    """Images of normal cube paths are the normal cube paths of the images."""
    _require_complex_map(phi)
    label = "normal cube paths map to normal cube paths"
    computed: list[tuple[CubePath, tuple[Vertex, ...]]] = []
    for x, y in pairs:
        path = ball.normal_cube_path(x, y)
        image = tuple(phi_vertex(phi, v) for v in path.vertices)
        reason = normal_path_violation(image)
        if reason is not None:
            return CheckItem(key="proccn", label=label, status=Status.FAIL,
                             witness=f"image of {path}: {reason}")
        computed.append((path, image))
    if not computed:
        return CheckItem(key="proccn", label=label, status=Status.VACUOUS)

    image_vertices = {phi_vertex(phi, v) for v in ball.vertices}
    for _, image in computed:
        for cube in path_from_vertices(image).cubes:
            image_vertices.update(cube.vertices())
    target_ball = DeligneBall.from_vertices(phi.target, image_vertices)
    for path, image in computed:
        found = target_ball.normal_cube_path(image[0], image[-1])
        if found.vertices != image:
            return CheckItem(key="proccn", label=label, status=Status.FAIL,
                             witness=f"image of {path} differs from {found}")
    return CheckItem(key="proccn", label=label, status=Status.PASS, detail=f"{len(computed)} paths")


def verify_injectivity_ball(
    phi: LcmHom,
    max_length: int,
    ball: DeligneBall | None = None,
    allow_unverified: bool = False,
) -> Report:
    """Bounded evidence for injectivity of φ and of Φ on vertices.

    With `allow_unverified` the generator images are taken from the map as
    they stand, so a map failing the axioms can be shown to break the checks.
    """
    source, target = phi.source, phi.target
    morphism: Morphism
    if allow_unverified:
        require_fc(source)
        require_fc(target)
        morphism = unverified_morphism(phi)
    else:
        _require_complex_map(phi)
        morphism = phi

    def image(v: Vertex) -> Vertex:
        return _vertex_image(morphism, phi.map, v)

    report = Report(title=f"Injectivity of {phi.name} up to length {max_length}")

    elements = distinct_elements(enumerate_group(source, max_length))
    images: dict[tuple[tuple[str, int], ...], list[tuple[GroupElement, GroupElement]]] = {}
    clash = ""
    for g in elements:
        mapped_g = map_group(morphism, g)
        bucket = images.setdefault(abelian_key(mapped_g), [])
        other = next((h for h, hi in bucket if g_equal(hi, mapped_g)), None)
        if other is not None:
            clash = f"φ({other}) = φ({g})"
            break
        bucket.append((g, mapped_g))
    report.add("inj-group", Status.of(not clash), "distinct elements have distinct images",
               detail=f"{len(elements)} elements", witness=clash)

    domain = fundamental_domain(source)
    mapped = [image(v) for v in domain]
    target_domain = set(fundamental_domain(target))
    bad = next((str(v) for v, w in zip(domain, mapped) if w not in target_domain), "")
    if not bad and len(set(mapped)) != len(mapped):
        bad = "two vertices of the fundamental domain share an image"
    report.add("inj-domain", Status.of(not bad), "fundamental domain maps injectively into the target one",
               witness=bad)

    sample = ball.vertices if ball is not None else DeligneBall.around_identity(source, min(max_length, 2)).vertices
    domain_images = dict(zip((v.subset for v in domain), mapped))
    letters = [GroupElement(source, ((s, sign),)) for s in source.generators for sign in (1, -1)]
    stabilizer = ""
    for v in sample:
        mapped_v = image(v)
        # Im Φ is the orbit of Φ(K_S) under Im φ
        expected = _translate(map_group(morphism, v.rep), domain_images[v.subset])
        if expected != mapped_v:
            stabilizer = f"φ({v.rep})·Φ(1@{source.format_subset(v.subset)}) = {expected} but Φ({v}) = {mapped_v}"
            break
        for g in letters:
            moved = image(make_vertex(source, group_multiply(g, v.rep), v.subset))
            translated = _translate(map_group(morphism, g), mapped_v)
            if moved != translated:
                stabilizer = f"φ({g})·Φ({v}) = {translated} but Φ({g}·{v}) = {moved}"
                break
        if stabilizer:
            break
    report.add("stabilizer", Status.of(not stabilizer), "Im φ acts on Im Φ as on the source complex",
               detail=f"{len(sample)} vertices", witness=stabilizer)

    seen: dict[Vertex, Vertex] = {}
    collision = ""
    for v in sample:
        w = image(v)
        if w in seen:
            collision = f"Φ({seen[w]}) = Φ({v}) = {w}"
            break
        seen[w] = v
    report.add("inj-vertices", Status.of(not collision), "vertex map injective on the ball",
               detail=f"{len(sample)} vertices", witness=collision)
    return report


def verify_normal_paths(ball: DeligneBall, starts: Iterable[Vertex] | None = None) -> CheckItem:
    """Every pair of ball vertices has a unique normal cube path inside the ball.

    Raises:
        BallTooSmallError: some path leaves the ball, which then decides nothing.
    """
    label = "normal cube paths exist and are unique"
    sources = list(ball.vertices if starts is None else starts)
    pairs = 0
    for x in sources:
        try:
            paths = ball.normal_paths_from(x)
        except InternalCheckError as exc:
            return CheckItem(key="ncp", label=label, status=Status.FAIL, witness=str(exc))
        missing = next((y for y in ball.vertices if y not in paths), None)
        if missing is not None:
            raise BallTooSmallError(f"Normal cube path from {x} to {missing} leaves the explored ball")
        for path in paths.values():
            if not is_normal_cube_path(path):
                return CheckItem(key="ncp", label=label, status=Status.FAIL, witness=f"{path} not normal")
        pairs += len(paths)
    return CheckItem(key="ncp", label=label, status=Status.PASS, detail=f"{pairs} pairs")


def minimal_ball_cube(cubes: Sequence[Cube], v: Vertex, w: Vertex) -> Cube | None:
    """Brute force: the inclusion-minimal listed cube containing v and w."""
    containing = [c for c in cubes if cube_contains(c, v) and cube_contains(c, w)]
    if not containing:
        return None
    smallest = min(containing, key=lambda c: c.dimension)
    vertices = set(smallest.vertices())
    if any(not vertices <= set(c.vertices()) for c in containing):
        raise InternalCheckError(f"No least ball cube contains {v} and {w}")
    return smallest


def verify_span_oracle(ball: DeligneBall) -> CheckItem:
    """cube_span agrees with the minimal containing cube found by enumeration."""
    label = "cube spans are the minimal containing cubes"
    cubes = ball.cubes()
    at: dict[Vertex, list[Cube]] = defaultdict(list)
    for c in cubes:
        for u in c.vertices():
            at[u].append(c)
    checked = 0
    for v, w in combinations(ball.vertices, 2):
        span = vertex_span(v, w)
        if span is not None and not all(u in ball for u in span.vertices()):
            continue
        try:
            oracle = minimal_ball_cube(at.get(v, []), v, w)
        except InternalCheckError as exc:
            return CheckItem(key="span", label=label, status=Status.FAIL, witness=str(exc))
        checked += 1
        if oracle != span:
            return CheckItem(key="span", label=label, status=Status.FAIL,
                             witness=f"span({v}, {w}) = {span} but enumeration gives {oracle}")
    return CheckItem(key="span", label=label, status=Status.PASS, detail=f"{checked} pairs, {len(cubes)} cubes")
