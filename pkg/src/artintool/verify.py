"""Workspace-wide verification scoreboard.

Every check is driven by what the workspace holds: monoid oracles and Delta
coherence per presentation, the axiom and preservation suite per map, the
Deligne-complex checks per FC presentation and eligible map, and negative
controls for non-FC presentations and maps known to break the axioms.
"""

from collections import defaultdict
from collections.abc import Callable, Iterable
from itertools import product

import networkx as nx
from loguru import logger

from artintool.coxeter import enumerate_w, longest_element, sec_lift
from artintool.deligne import (
    DeligneBall,
    enumerate_group,
    fundamental_domain,
    verify_injectivity_ball,
    verify_normal_paths,
    verify_proccn,
    verify_span_oracle,
)
from artintool.elements import GroupElement, MonoidElement
from artintool.errors import ArtinError, BallTooSmallError, NotFCError, UnverifiedMapError
from artintool.lcm_hom import (
    LcmHom,
    WordMorphism,
    is_qf_injective,
    is_symmetric,
    lcm_homomorphism_report,
    verify_coprime_reflection,
    verify_coxeter_injectivity,
    verify_divisibility_reflection,
    verify_fraction_preservation,
    verify_lattice_preservation,
    verify_lemred_all,
    verify_normal_form_preservation,
)
from artintool.models import CheckItem, Report, Status, ToolOptions
from artintool.monoid import (
    LcmOutcome,
    alpha,
    cancel,
    check_chain,
    check_exchange,
    delta,
    divisors,
    enumerate_positive,
    is_square_free,
    lcm_of,
    left_divides,
    left_quotient,
    m_canonical,
    multiply,
    normal_form,
    right_lcm,
)
from artintool.presentation import (
    ArtinPresentation,
    braid_class,
    finite_bond_graph,
    is_fc,
    is_spherical,
    spherical_subsets,
)
from artintool.salvetti import salvetti_nodes, verify_lemphi, verify_partial_order
from artintool.workspace import Workspace

# Braid-class oracle: longest word length and word budget per length layer
ORACLE_LENGTH = 7
ORACLE_WORDS = 5000
# Cancellation: total length of u.e.v, shorter beyond three generators
CANCEL_TOTAL = 8
ALPHA_LENGTH = 6
FRACTION_SAMPLE = 50
LEMRED_MAX_K = 6
COXETER_RADIUS = 6


def _guarded(key: str, label: str, check: Callable[[], CheckItem]) -> CheckItem:
    """Run one check; library errors become a FAIL item with the message as witness.

    A ball too small to decide the check gives UNDETERMINED instead.
    """
    try:
        item = check()
    except BallTooSmallError as e:
        item = CheckItem(key=key, label=label, status=Status.UNDETERMINED, witness=str(e))
    except ArtinError as e:
        item = CheckItem(key=key, label=label, status=Status.FAIL, witness=f"{type(e).__name__}: {e}")
    return item.model_copy(update={"key": key, "label": item.label or label})


# --- monoid ---


def _oracle_length(presentation: ArtinPresentation) -> int:
    k = len(presentation.generators)
    length, total = 0, 1
    while length < ORACLE_LENGTH and total + k ** (length + 1) <= ORACLE_WORDS:
        length += 1
        total += k ** length
    return length


def check_braid_oracle(presentation: ArtinPresentation) -> CheckItem:
    """Canonical forms split the words of each length exactly into braid classes."""
    max_length = _oracle_length(presentation)
    layer: list[tuple[str, ...]] = [()]
    classes = 0
    for _ in range(max_length):
        layer = [w + (s,) for w in layer for s in presentation.generators]
        grouped: dict[tuple[str, ...], set[tuple[str, ...]]] = defaultdict(set)
        for word in layer:
            grouped[m_canonical(presentation, word).word].add(word)
        for canonical, words in grouped.items():
            reachable = braid_class(presentation, canonical)
            if reachable != words:
                stray = sorted(reachable ^ words)[0]
                return CheckItem(key="", status=Status.FAIL,
                                 witness=f"class of {presentation.format_word(canonical)} disagrees on "
                                         f"{presentation.format_word(stray)}")
        classes += len(grouped)
    return CheckItem(key="", status=Status.PASS, detail=f"{classes} classes up to length {max_length}")


def _cancel_total(presentation: ArtinPresentation) -> int:
    return CANCEL_TOTAL if len(presentation.generators) <= 3 else CANCEL_TOTAL - 2


def check_cancellation(presentation: ArtinPresentation) -> CheckItem:
    """u.e1.v = u.e2.v forces e1 = e2 whenever |u| + |e1| + |e2| + |v| is bounded.

    Equal products need |e1| = |e2|, so for each (u, v) the middles of one
    length are multiplied out and any two landing on the same product are
    handed to `cancel`.
    """
    total = _cancel_total(presentation)
    by_length: dict[int, list[MonoidElement]] = defaultdict(list)
    for x in enumerate_positive(presentation, total - 2):
        by_length[x.length].append(x)
    count = 0
    for k in range(1, total // 2 + 1):
        middles = by_length[k]
        outer = total - 2 * k
        for i in range(outer + 1):
            for j in range(outer - i + 1):
                for u, v in product(by_length[i], by_length[j]):
                    seen: dict[MonoidElement, MonoidElement] = {}
                    for e in middles:
                        other = seen.setdefault(multiply(u, e, v), e)
                        if not cancel(u, other, e, v):
                            return CheckItem(key="", status=Status.FAIL, witness=f"{u}.{other}.{v} = {u}.{e}.{v}")
                    count += len(middles) * (len(middles) - 1)
    return CheckItem(key="", status=Status.PASS, detail=f"{count} tuples up to total length {total}")


def check_exchange_and_chain(presentation: ArtinPresentation, bound: int) -> CheckItem:
    elements = enumerate_positive(presentation, bound)
    for x in elements:
        for s in presentation.generators:
            if not check_exchange(x, s):
                return CheckItem(key="", status=Status.FAIL, witness=f"exchange fails for {s} and {x}")
    short = enumerate_positive(presentation, 2)
    for subset in spherical_subsets(presentation):
        inside = [w for w in short if set(w.word) <= subset]
        for t, w, x in product(presentation.sort_generators(subset), inside, short):
            if not check_chain(t, w, x, subset):
                return CheckItem(key="", status=Status.FAIL,
                                 witness=f"chain fails for t={t}, w={w}, x={x} in {presentation.format_subset(subset)}")
    return CheckItem(key="", status=Status.PASS, detail=f"{len(elements)} elements")


def check_alpha(presentation: ArtinPresentation, bound: int) -> CheckItem:
    """alpha against brute force, alpha(g1 g2) = alpha(g1 alpha(g2)), and normal forms recompose."""
    small = len(presentation.generators) <= 2
    length = ALPHA_LENGTH if small else bound
    elements = enumerate_positive(presentation, length)
    for u in elements:
        square_free = [d for d in divisors(u) if is_square_free(d)]
        best = max(square_free, key=lambda d: d.length)
        if alpha(u) != best or not all(left_divides(d, best) for d in square_free):
            return CheckItem(key="", status=Status.FAIL, witness=f"alpha({u}) = {alpha(u)}, brute force {best}")
        factors = normal_form(u).factors
        if normal_form(u).product() != u:
            return CheckItem(key="", status=Status.FAIL, witness=f"normal form of {u} does not recompose")
        rest = u
        for g in factors:
            if g != alpha(rest):
                return CheckItem(key="", status=Status.FAIL, witness=f"factor {g} of {u} is not alpha({rest})")
            rest = left_quotient(g, rest)
    pairs = [u for u in elements if u.length <= (bound if small else 2)]
    for g1, g2 in product(pairs, repeat=2):
        if alpha(multiply(g1, g2)) != alpha(multiply(g1, alpha(g2))):
            return CheckItem(key="", status=Status.FAIL, witness=f"alpha({g1}.{g2}) != alpha({g1}.alpha({g2}))")
    return CheckItem(key="", status=Status.PASS, detail=f"{len(elements)} elements up to length {length}")


def check_delta(presentation: ArtinPresentation, debug_checks: bool) -> CheckItem:
    """Delta_T is the left lcm, the right lcm and the lift of the longest element."""
    for subset in spherical_subsets(presentation):
        generators = [m_canonical(presentation, (s,)) for s in presentation.sort_generators(subset)]
        value = delta(presentation, subset, cross_check=debug_checks)
        left = lcm_of(generators, presentation)
        right = _right_lcm_of(generators, presentation)
        lifted = sec_lift(longest_element(presentation, subset))
        longest = max((w.length for w in enumerate_w(presentation, subset)), default=0)
        if not (left.element == value == right == lifted) or value.length != longest:
            return CheckItem(key="", status=Status.FAIL,
                             witness=f"{presentation.format_subset(subset)}: delta {value}, left {left}, "
                                     f"right {right}, lift {lifted}, longest length {longest}")
    return CheckItem(key="", status=Status.PASS, detail=f"{len(spherical_subsets(presentation))} spherical subsets")


def _right_lcm_of(generators: list[MonoidElement], presentation: ArtinPresentation) -> MonoidElement | None:
    current: MonoidElement | None = m_canonical(presentation, ())
    for g in generators:
        if current is None:
            return None
        current = right_lcm(current, g).element
    return current


# --- maps ---


def _fraction_sample(source: ArtinPresentation) -> list[GroupElement]:
    spherical = [g for g in enumerate_group(source, 3) if is_spherical(source, g.support)]
    return spherical[:FRACTION_SAMPLE]


def _map_checks(phi: LcmHom | WordMorphism, options: ToolOptions) -> Iterable[tuple[str, str, Callable[[], CheckItem]]]:
    bound = options.bound
    source = phi.source
    if isinstance(phi, WordMorphism):
        yield "lcm-hom", "generator images preserve lcm", lambda: lcm_homomorphism_report(phi, options.cutoff)
        yield "qf", "square-free injectivity", lambda: is_qf_injective(phi, bound)
        yield "nf", "normal forms preserved", lambda: _expected_nf(phi, bound + 1)
        return
    yield "nf", "normal forms preserved", lambda: verify_normal_form_preservation(
        phi, enumerate_positive(source, bound + 1))
    pairs = enumerate_positive(source, max(bound - 1, 1))
    yield "lattice", "gcd and lcm preserved", lambda: verify_lattice_preservation(
        phi, product(pairs, repeat=2), options.cutoff)
    yield "divisibility", "divisibility reflected", lambda: verify_divisibility_reflection(phi, bound)
    yield "coprime", "coprimality reflected", lambda: verify_coprime_reflection(phi, bound)
    yield "qf", "square-free injectivity", lambda: is_qf_injective(phi, bound)
    yield "coxeter", "induced Coxeter map injective", lambda: verify_coxeter_injectivity(phi, COXETER_RADIUS)
    yield "fraction", "coprime fractions preserved", lambda: verify_fraction_preservation(
        phi, _fraction_sample(source))
    yield "lemred", "brackets of images square-free below the bond", lambda: verify_lemred_all(phi, LEMRED_MAX_K)
    if is_spherical(source, source.all):
        yield "poset", "Salvetti order is a partial order", lambda: verify_partial_order(salvetti_nodes(source))
    yield "salvetti", "induced poset map strictly order preserving", lambda: verify_lemphi(
        phi, product(salvetti_nodes(source, options.radius), repeat=2))
    if phi.eligible_for_complex and is_fc(source) and is_fc(phi.target):
        yield "proccn", "normal cube paths map to normal cube paths", lambda: _proccn(phi, options.radius)


def _expected_nf(phi: WordMorphism, length: int) -> CheckItem:
    """Normal-form failures of a non-symmetric morphism are expected."""
    item = verify_normal_form_preservation(phi, enumerate_positive(phi.source, length))
    if item.status is Status.FAIL and not is_symmetric(phi):
        return item.model_copy(update={"status": Status.EXPECTED_FAIL, "detail": "map not symmetric"})
    return item


def _proccn(phi: LcmHom, radius: int) -> CheckItem:
    ball = DeligneBall.around_identity(phi.source, radius)
    origin = fundamental_domain(phi.source)[0]
    return verify_proccn(phi, ball, [(origin, v) for v in ball.vertices])


def _map_report(workspace: Workspace, name: str, options: ToolOptions) -> list[CheckItem]:
    prefix = f"map:{name}"
    phi = workspace.morphism(name)
    if isinstance(phi, LcmHom):
        axioms = [item.model_copy(update={"key": f"{prefix}:{item.key}"}) for item in phi.report.items]
        if phi.map.control:
            return [_control_map(phi, prefix)]
        if not phi.usable:
            weak = workspace.lcm_hom(name, allow_weak=True)
            if not weak.usable:
                return axioms
            phi = weak
        items = axioms
    else:
        items = []
    for key, label, check in _map_checks(phi, options):
        items.append(_guarded(f"{prefix}:{key}", label, check))
    if isinstance(phi, LcmHom) and phi.eligible_for_complex and is_fc(phi.source) and is_fc(phi.target):
        try:
            ball = DeligneBall.around_identity(phi.source, options.radius)
            for item in verify_injectivity_ball(phi, options.bound, ball).items:
                items.append(item.model_copy(update={"key": f"{prefix}:{item.key}"}))
        except BallTooSmallError as e:
            items.append(CheckItem(key=f"{prefix}:injectivity", status=Status.UNDETERMINED, witness=str(e)))
        except ArtinError as e:
            items.append(CheckItem(key=f"{prefix}:injectivity", status=Status.FAIL, witness=str(e)))
    return items


def _control_map(phi: LcmHom, prefix: str) -> CheckItem:
    label = "map breaking the axioms is rejected"
    try:
        phi.require_usable()
    except UnverifiedMapError as e:
        return CheckItem(key=f"{prefix}:rejected", label=label, status=Status.PASS, witness=str(e))
    return CheckItem(key=f"{prefix}:rejected", label=label, status=Status.FAIL, detail="map accepted")


# --- non-FC controls ---


def _minimal_non_spherical_clique(presentation: ArtinPresentation) -> list[str] | None:
    for clique in nx.enumerate_all_cliques(finite_bond_graph(presentation)):
        if not is_spherical(presentation, clique):
            return presentation.sort_generators(clique)
    return None


def check_fc_refusal(presentation: ArtinPresentation, radius: int) -> CheckItem:
    try:
        DeligneBall.around_identity(presentation, radius)
    except NotFCError as e:
        return CheckItem(key="", status=Status.PASS, witness=str(e))
    return CheckItem(key="", status=Status.FAIL, detail="Deligne ball built for a non-FC presentation")


def check_cutoff(presentation: ArtinPresentation, cutoff: int) -> CheckItem:
    """s and Delta of the rest of a minimal non-spherical clique have no common multiple."""
    clique = _minimal_non_spherical_clique(presentation)
    if clique is None:
        return CheckItem(key="", status=Status.VACUOUS)
    head, rest = clique[0], clique[1:]
    u, v = m_canonical(presentation, (head,)), delta(presentation, rest)
    result = lcm_of([u, v], presentation, cutoff)
    if result.outcome is LcmOutcome.UNKNOWN and result.bound == cutoff:
        return CheckItem(key="", status=Status.PASS, witness=f"lcm({u}, {v}) = {result}")
    return CheckItem(key="", status=Status.FAIL, witness=f"lcm({u}, {v}) = {result}")


# --- driver ---


def verify_all(workspace: Workspace, options: ToolOptions | None = None) -> Report:
    """Scoreboard over the whole workspace; items are ordered by key."""
    options = options or workspace.options
    report = Report(title="Verification scoreboard")
    for name in workspace.presentation_names:
        presentation = workspace.presentation(name)
        prefix = f"presentation:{name}"
        if not is_fc(presentation):
            report.items.append(_guarded(f"control:{name}:fc", "non-FC presentation refused by the complex",
                                         lambda: check_fc_refusal(presentation, options.radius)))
            report.items.append(_guarded(f"control:{name}:cutoff", "lcm search beyond the cutoff is Unknown",
                                         lambda: check_cutoff(presentation, options.cutoff)))
            continue
        for key, label, check in _presentation_checks(presentation, options):
            report.items.append(_guarded(f"{prefix}:{key}", label, check))
    for name in workspace.map_names:
        report.items.extend(_map_report(workspace, name, options))

    report.items.sort(key=lambda item: item.key)
    for item in report.items:
        if item.status is Status.FAIL:
            logger.error(f"{item.key} failed: {item.witness or item.detail}")
        else:
            logger.info(f"{item.key}: {item.status.value}")
    return report


def _presentation_checks(
    presentation: ArtinPresentation,
    options: ToolOptions,
) -> list[tuple[str, str, Callable[[], CheckItem]]]:
    balls: list[DeligneBall] = []

    def ball() -> DeligneBall:
        if not balls:
            balls.append(DeligneBall.around_identity(presentation, options.radius))
        return balls[0]

    return [
        ("oracle", "canonical forms match braid classes", lambda: check_braid_oracle(presentation)),
        ("cancel", "cancellativity", lambda: check_cancellation(presentation)),
        ("exchange", "exchange and chain properties", lambda: check_exchange_and_chain(presentation, options.bound)),
        ("alpha", "alpha and normal forms", lambda: check_alpha(presentation, options.bound)),
        ("delta", "Delta is the lcm on both sides and the lifted longest element",
         lambda: check_delta(presentation, options.debug_checks)),
        ("ncp", "normal cube paths exist and are unique", lambda: verify_normal_paths(ball())),
        ("span", "cube spans are minimal containing cubes", lambda: verify_span_oracle(ball())),
    ]
