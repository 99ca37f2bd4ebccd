"""The Salvetti poset W_S x S_f and the order-preservation check for p̃."""

from collections.abc import Iterable
from dataclasses import dataclass
from itertools import product

from artintool.coxeter import enumerate_w, longest_element, w_ball, w_canonical, w_inverse, w_multiply
from artintool.elements import WElement, check_same
from artintool.lcm_hom import LcmHom, map_coxeter, unverified_morphism
from artintool.models import CheckItem, Status
from artintool.presentation import ArtinPresentation, Subset, is_spherical, spherical_subsets


@dataclass(frozen=True)
class SalvettiNode:
    w: WElement
    subset: Subset

    def __str__(self) -> str:
        return f"({self.w}, {self.w.presentation.format_subset(self.subset)})"


def salvetti_leq(n1: SalvettiNode, n2: SalvettiNode) -> bool:
    """w1 W_T1 ⊆ w2 W_T2 and ℓ(w0(T1)) + ℓ(w1^-1 w2) = ℓ(w0(T1) w1^-1 w2)."""
    presentation = check_same(n1.w, n2.w)
    if not n1.subset <= n2.subset:
        return False
    if not w_multiply(w_inverse(n2.w), n1.w).support <= n2.subset:
        return False
    longest = longest_element(presentation, n1.subset)
    step = w_multiply(w_inverse(n1.w), n2.w)
    return longest.length + step.length == w_multiply(longest, step).length


def salvetti_lt(n1: SalvettiNode, n2: SalvettiNode) -> bool:
    return n1 != n2 and salvetti_leq(n1, n2)


def salvetti_nodes(presentation: ArtinPresentation, radius: int = 3) -> list[SalvettiNode]:
    """All nodes when W is finite, otherwise those with ℓ(w) <= radius."""
    if is_spherical(presentation, presentation.all):
        elements = enumerate_w(presentation)
    else:
        elements = w_ball(presentation, radius)
    return [SalvettiNode(w, subset) for w in elements for subset in spherical_subsets(presentation)]


def map_node(phi: LcmHom, node: SalvettiNode) -> SalvettiNode:
    """p̃(w, T) = (φ_W(w), p(T))."""
    return SalvettiNode(map_coxeter(phi, node.w), phi.map.p_subset(node.subset))


def lemphi_violations(
    phi: LcmHom,
    pairs: Iterable[tuple[SalvettiNode, SalvettiNode]],
    allow_unverified: bool = False,
) -> list[str]:
    """Pairs where n1 < n2 and p̃(n1) < p̃(n2) disagree, or distinct nodes collide.

    With allow_unverified the map is applied even when its axioms fail, which
    is how negative controls are run.
    """
    if not allow_unverified:
        phi.require_usable()
    images = unverified_morphism(phi).images if allow_unverified else {}

    def apply(n: SalvettiNode) -> SalvettiNode:
        if not allow_unverified:
            return map_node(phi, n)
        word = tuple(g for s in n.w.word for g in images[s])
        return SalvettiNode(w_canonical(phi.target, word), phi.map.p_subset(n.subset))

    found: list[str] = []
    for n1, n2 in pairs:
        m1, m2 = apply(n1), apply(n2)
        if n1 != n2 and m1 == m2:
            found.append(f"{n1} and {n2} both map to {m1}")
        elif salvetti_lt(n1, n2) != salvetti_lt(m1, m2):
            found.append(f"{n1} < {n2} is {salvetti_lt(n1, n2)} but images give {salvetti_lt(m1, m2)}")
    return found


def verify_lemphi(
    phi: LcmHom,
    pairs: Iterable[tuple[SalvettiNode, SalvettiNode]] | None = None,
    allow_unverified: bool = False,
) -> CheckItem:
    """p̃ preserves the strict order in both directions; default sample is all node pairs."""
    label = "induced poset map strictly preserves the order"
    if pairs is None:
        nodes = salvetti_nodes(phi.source)
        pairs = product(nodes, repeat=2)
    pairs = list(pairs)
    violations = lemphi_violations(phi, pairs, allow_unverified)
    if violations:
        return CheckItem(key="lemphi", label=label, status=Status.FAIL, detail=f"{len(violations)} violations",
                         witness=violations[0])
    return CheckItem(key="lemphi", label=label, status=Status.PASS, detail=f"{len(pairs)} pairs")


def verify_partial_order(nodes: list[SalvettiNode]) -> CheckItem:
    """Reflexivity, antisymmetry and transitivity on the given nodes."""
    label = "Salvetti order is a partial order"
    leq = {(a, b): salvetti_leq(a, b) for a in nodes for b in nodes}
    for a in nodes:
        if not leq[a, a]:
            return CheckItem(key="poset", label=label, status=Status.FAIL, witness=f"{a} not <= itself")
    for a, b in product(nodes, repeat=2):
        if a != b and leq[a, b] and leq[b, a]:
            return CheckItem(key="poset", label=label, status=Status.FAIL, witness=f"{a} <= {b} <= {a}")
    for a, b in product(nodes, repeat=2):
        if not leq[a, b]:
            continue
        for c in nodes:
            if leq[b, c] and not leq[a, c]:
                return CheckItem(key="poset", label=label, status=Status.FAIL,
                                 witness=f"{a} <= {b} <= {c} but not {a} <= {c}")
    return CheckItem(key="poset", label=label, status=Status.PASS, detail=f"{len(nodes)} nodes")
