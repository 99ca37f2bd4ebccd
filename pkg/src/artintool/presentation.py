"""Artin-Tits presentations: parsing, Coxeter graphs, spherical and FC tests.

A presentation is a generator list plus a symmetric Coxeter matrix. Only the
off-diagonal entries different from 2 are stored; undeclared pairs commute.
"""

import math
from collections import deque
from collections.abc import Iterable, Iterator, Mapping
from functools import lru_cache
from itertools import combinations
from typing import Any, Final

import networkx as nx
from loguru import logger
from networkx.algorithms.isomorphism import numerical_edge_match
from pydantic import BaseModel, ConfigDict, PrivateAttr

from artintool.errors import PresentationError, UnknownGeneratorError

INF: Final = math.inf

Bond = int | float
Subset = frozenset[str]
Word = tuple[str, ...]

EMPTY: Final[Subset] = frozenset()


def format_bond(m: Bond) -> str:
    return "inf" if m == INF else str(int(m))


def alternating(s: str, t: str, m: int) -> Word:
    """The alternating word s t s ... with m letters."""
    return tuple(s if i % 2 == 0 else t for i in range(m))


class ArtinPresentation(BaseModel):
    """An Artin-Tits presentation with a declared generator order.

    The declared order defines ShortLex, hence every canonical form.
    """
    model_config = ConfigDict(frozen=True)

    name: str
    generators: tuple[str, ...]
    # (s, t, m) with s before t in declared order and m != 2
    bonds: tuple[tuple[str, str, Bond], ...] = ()

    _index: dict[str, int] = PrivateAttr(default_factory=dict)
    _matrix: dict[tuple[str, str], Bond] = PrivateAttr(default_factory=dict)
    _hash: int = PrivateAttr(default=0)

    def model_post_init(self, __context: Any) -> None:
        self._index = {s: i for i, s in enumerate(self.generators)}
        for s, t, m in self.bonds:
            self._matrix[(s, t)] = m
            self._matrix[(t, s)] = m
        self._hash = hash((self.name, self.generators, self.bonds))

    def __hash__(self) -> int:
        return self._hash

    @classmethod
    def build(
        cls,
        name: str,
        generators: Iterable[str],
        bonds: Mapping[tuple[str, str], Bond] | None = None,
    ) -> "ArtinPresentation":
        """Validate and construct a presentation.

        Raises:
            PresentationError: duplicate generator, bad bond value or
                asymmetric duplicate declarations.
            UnknownGeneratorError: a bond mentions an undeclared generator.
        """
        gens = tuple(generators)
        seen: set[str] = set()
        for g in gens:
            if not g or any(ch.isspace() for ch in g) or g in {".", "1", "@"}:
                raise PresentationError(f"Invalid generator symbol: {g!r}")
            if g in seen:
                raise PresentationError(f"Duplicate generator: {g}")
            seen.add(g)

        index = {g: i for i, g in enumerate(gens)}
        entries: dict[tuple[str, str], Bond] = {}
        for (s, t), m in (bonds or {}).items():
            for g in (s, t):
                if g not in index:
                    raise UnknownGeneratorError(f"Unknown generator: {g}")
            if s == t:
                raise PresentationError(f"Bond on a single generator: {s}")
            if m != INF and (m != int(m) or m < 2):
                raise PresentationError(f"Bond value must be an integer >= 2 or inf: {s} {t} {m}")
            key = (s, t) if index[s] < index[t] else (t, s)
            if key in entries and entries[key] != m:
                raise PresentationError(
                    f"Multiple values given for bond {key[0]} {key[1]}: "
                    f"{format_bond(entries[key])} and {format_bond(m)}"
                )
            entries[key] = m if m == INF else int(m)

        stored = tuple(
            (s, t, m) for (s, t), m in sorted(entries.items(), key=lambda kv: (index[kv[0][0]], index[kv[0][1]]))
            if m != 2
        )
        return cls(name=name, generators=gens, bonds=stored)

    # --- generator bookkeeping ---

    def bond(self, s: str, t: str) -> Bond:
        if s == t:
            return 1
        return self._matrix.get((s, t), 2)

    def index(self, s: str) -> int:
        try:
            return self._index[s]
        except KeyError:
            raise UnknownGeneratorError(f"Unknown generator: {s}") from None

    def word_key(self, word: Word) -> tuple[int, ...]:
        """ShortLex key of a word (compare lengths first, then this)."""
        return tuple(self._index[s] for s in word)

    def sort_generators(self, members: Iterable[str]) -> list[str]:
        return sorted(members, key=self.index)

    def subset(self, members: Iterable[str]) -> Subset:
        result = frozenset(members)
        for s in result:
            self.index(s)
        return result

    def subset_key(self, subset: Subset) -> tuple[int, tuple[int, ...]]:
        return len(subset), tuple(sorted(self._index[s] for s in subset))

    @property
    def all(self) -> Subset:
        return frozenset(self.generators)

    def infinite_pairs(self, within: Iterable[str] | None = None) -> list[tuple[str, str]]:
        """Pairs (s, t) with m = inf, s before t, in lexicographic order."""
        members = self.sort_generators(self.all if within is None else within)
        return [(s, t) for s, t in combinations(members, 2) if self.bond(s, t) == INF]

    def parse_word(self, text: str | Iterable[str]) -> Word:
        """Parse a whitespace- or dot-separated word.

        Tokens that are not generators are read as a concatenation of
        generator names, so "sts" works next to "s t s" and "s.t.s".
        The token "1" denotes the empty word.
        """
        if isinstance(text, str):
            tokens = text.replace(".", " ").split()
        else:
            tokens = list(text)
        word: list[str] = []
        for tok in tokens:
            if tok == "1":
                continue
            if tok in self._index:
                word.append(tok)
            else:
                word.extend(self._split_token(tok))
        return tuple(word)

    def _split_token(self, token: str) -> Word:
        """Split a concatenation of generator names, longest match first."""
        names = sorted(self.generators, key=len, reverse=True)
        parts: list[str] = []
        rest = token
        while rest:
            head = next((g for g in names if rest.startswith(g)), None)
            if head is None:
                raise UnknownGeneratorError(f"Unknown generator: {token}")
            parts.append(head)
            rest = rest[len(head):]
        return tuple(parts)

    def format_word(self, word: Word) -> str:
        if not word:
            return "1"
        if all(len(g) == 1 for g in self.generators):
            return "".join(word)
        return ".".join(word)

    def format_subset(self, subset: Iterable[str]) -> str:
        return "{" + ",".join(self.sort_generators(subset)) + "}"

    def to_text(self) -> str:
        """Serialize back to the presentation file format."""
        lines = [f"presentation {self.name}", "generators " + " ".join(self.generators)]
        lines += [f"bond {s} {t} {format_bond(m)}" for s, t, m in self.bonds]
        return "\n".join(lines) + "\n"


def parse_presentation(text: str, name: str | None = None) -> ArtinPresentation:
    """Parse presentation-file content.

    Format (line oriented, '#' starts a comment):

        presentation TRI
        generators a b c
        bond a b inf
        bond a c 3

    Undeclared bonds default to 2.
    """
    declared_name = name
    generators: list[str] | None = None
    bonds: dict[tuple[str, str], Bond] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "presentation":
            if len(rest) != 1:
                raise PresentationError(f"line {lineno}: expected 'presentation <name>'")
            declared_name = rest[0]
        elif head == "generators":
            if generators is not None:
                raise PresentationError(f"line {lineno}: generators declared twice")
            generators = rest
        elif head == "bond":
            if generators is None:
                raise PresentationError(f"line {lineno}: bond before generators")
            if len(rest) != 3:
                raise PresentationError(f"line {lineno}: expected 'bond <s> <t> <m|inf>'")
            s, t, value = rest
            m = _parse_bond_value(value, lineno)
            pair = (s, t)
            flipped = (t, s)
            for key in (pair, flipped):
                if key in bonds and bonds[key] != m:
                    raise PresentationError(
                        f"line {lineno}: conflicting bond {s} {t}: "
                        f"{format_bond(bonds[key])} and {format_bond(m)}"
                    )
            bonds[pair] = m
        else:
            raise PresentationError(f"line {lineno}: unknown directive '{head}'")

    if generators is None:
        raise PresentationError("Missing 'generators' line")
    presentation = ArtinPresentation.build(declared_name or "P", generators, bonds)
    logger.debug(
        f"Parsed presentation {presentation.name}: "
        f"{len(presentation.generators)} generators, {len(presentation.bonds)} non-commuting bonds"
    )
    return presentation


def _parse_bond_value(value: str, lineno: int) -> Bond:
    if value == "inf":
        return INF
    try:
        m = int(value)
    except ValueError:
        raise PresentationError(f"line {lineno}: bad bond value '{value}'") from None
    if m < 2:
        raise PresentationError(f"line {lineno}: bond value must be >= 2, got {m}")
    return m


# --- Coxeter graphs and the finite-type classification ---


def coxeter_graph(presentation: ArtinPresentation, subset: Iterable[str] | None = None) -> nx.Graph:
    """Labelled Coxeter graph: edges where m != 2, weighted by m."""
    members = presentation.all if subset is None else frozenset(subset)
    graph = nx.Graph()
    graph.add_nodes_from(presentation.sort_generators(members))
    for s, t, m in presentation.bonds:
        if s in members and t in members:
            graph.add_edge(s, t, weight=m)
    return graph


def _chain(n: int, weights: dict[int, int] | None = None) -> nx.Graph:
    graph = nx.path_graph(n)
    nx.set_edge_attributes(graph, 3, "weight")
    for position, m in (weights or {}).items():
        graph.edges[position, position + 1]["weight"] = m
    return graph


def _branched(arms: tuple[int, int, int]) -> nx.Graph:
    """Star with three arms of the given lengths, all labels 3."""
    graph = nx.Graph()
    graph.add_node(0)
    label = 1
    for length in arms:
        previous = 0
        for _ in range(length):
            graph.add_edge(previous, label, weight=3)
            previous = label
            label += 1
    return graph


@lru_cache(maxsize=None)
def _finite_types(n: int) -> tuple[tuple[str, nx.Graph], ...]:
    """Irreducible finite Coxeter graphs on n >= 3 nodes."""
    types: list[tuple[str, nx.Graph]] = [(f"A{n}", _chain(n)), (f"B{n}", _chain(n, {0: 4}))]
    if n >= 4:
        types.append((f"D{n}", _branched((1, 1, n - 3))))
    if n in (6, 7, 8):
        types.append((f"E{n}", _branched((1, 2, n - 4))))
    if n == 4:
        types.append(("F4", _chain(4, {1: 4})))
        types.append(("H4", _chain(4, {0: 5})))
    if n == 3:
        types.append(("H3", _chain(3, {0: 5})))
    return tuple(types)


def classify_component(graph: nx.Graph) -> str | None:
    """Name of the finite type of a connected labelled graph, or None."""
    n = graph.number_of_nodes()
    if n == 1:
        return "A1"
    weights = [w for _, _, w in graph.edges(data="weight")]
    if any(w == INF for w in weights):
        return None
    if n == 2:
        m = int(weights[0])
        return "A2" if m == 3 else f"I2({m})"
    if not nx.is_tree(graph):
        return None
    match = numerical_edge_match("weight", 3)
    for name, template in _finite_types(n):
        if nx.is_isomorphic(graph, template, edge_match=match):
            return name
    return None


def finite_type(presentation: ArtinPresentation, subset: Iterable[str]) -> list[str] | None:
    """Component types of a subset, e.g. ['A2', 'A1'], or None if not spherical."""
    graph = coxeter_graph(presentation, subset)
    names: list[str] = []
    for component in sorted(nx.connected_components(graph), key=lambda c: presentation.subset_key(frozenset(c))):
        name = classify_component(graph.subgraph(component))
        if name is None:
            return None
        names.append(name)
    return names


@lru_cache(maxsize=4096)
def _is_spherical(presentation: ArtinPresentation, subset: Subset) -> bool:
    return finite_type(presentation, subset) is not None


def is_spherical(presentation: ArtinPresentation, subset: Iterable[str]) -> bool:
    """True iff the parabolic Coxeter group W_T is finite."""
    return _is_spherical(presentation, presentation.subset(subset))


def finite_bond_graph(presentation: ArtinPresentation) -> nx.Graph:
    """Graph with an edge for every pair whose bond is finite (including 2)."""
    graph = nx.complete_graph(presentation.generators)
    graph.remove_edges_from(presentation.infinite_pairs())
    return graph


@lru_cache(maxsize=256)
def is_fc(presentation: ArtinPresentation) -> bool:
    """FC type: every subset without an infinite bond is spherical.

    Checking the maximal cliques of the finite-bond graph suffices.
    """
    if not presentation.generators:
        return True
    for clique in nx.find_cliques(finite_bond_graph(presentation)):
        if not is_spherical(presentation, clique):
            logger.debug(f"{presentation.name}: clique {sorted(clique)} is not spherical")
            return False
    return True


@lru_cache(maxsize=256)
def spherical_subsets(presentation: ArtinPresentation) -> tuple[Subset, ...]:
    """All spherical subsets including the empty one, sorted by (size, lex)."""
    found: list[Subset] = []
    for size in range(len(presentation.generators) + 1):
        for combo in combinations(presentation.generators, size):
            subset = frozenset(combo)
            if is_spherical(presentation, subset):
                found.append(subset)
    return tuple(sorted(found, key=presentation.subset_key))


# --- Braid-move saturation ---


def braid_moves(presentation: ArtinPresentation, word: Word) -> Iterator[Word]:
    """Words obtained from `word` by one braid relation [s,t>^m -> [t,s>^m."""
    n = len(word)
    for i in range(n - 1):
        s, t = word[i], word[i + 1]
        if s == t:
            continue
        m = presentation.bond(s, t)
        if m == INF or i + m > n:
            continue
        m = int(m)
        if word[i:i + m] == alternating(s, t, m):
            yield word[:i] + alternating(t, s, m) + word[i + m:]


@lru_cache(maxsize=65536)
def braid_class(presentation: ArtinPresentation, word: Word) -> frozenset[Word]:
    """All words reachable from `word` by braid relations (finite by homogeneity)."""
    seen = {word}
    queue = deque([word])
    while queue:
        current = queue.popleft()
        for neighbour in braid_moves(presentation, current):
            if neighbour not in seen:
                seen.add(neighbour)
                queue.append(neighbour)
    if len(seen) > 5000:
        logger.debug(f"Large braid class in {presentation.name}: {len(seen)} words of length {len(word)}")
    return frozenset(seen)


def shortlex_min(presentation: ArtinPresentation, words: Iterable[Word]) -> Word:
    return min(words, key=lambda w: (len(w), presentation.word_key(w)))
