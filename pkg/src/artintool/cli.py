"""CLI for artintool."""

import functools
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any, TypeVar

import click
from loguru import logger

from artintool.coxeter import longest_element, w_canonical
from artintool.deligne import (
    DeligneBall,
    Vertex,
    parse_vertex,
    require_fc,
    verify_injectivity_ball,
    verify_proccn,
)
from artintool.errors import ArtinError, NotFCError
from artintool.lcm_hom import (
    GeneratorMap,
    check_generator_map,
    is_qf_injective,
    map_group,
    map_positive,
    verify_coxeter_injectivity,
    verify_lattice_preservation,
    verify_lemred_all,
    verify_normal_form_preservation,
)
from artintool.models import OutputFormat, Report, ToolOptions
from artintool.monoid import (
    alpha,
    delta,
    enumerate_positive,
    is_square_free,
    left_divides,
    left_gcd,
    left_lcm,
    m_parse,
    normal_form,
    omega,
    parse_signed_word,
    right_divides,
    right_gcd,
    right_lcm,
)
from artintool.presentation import ArtinPresentation, is_spherical, spherical_subsets
from artintool.renderer import render_dot, render_report, render_value
from artintool.salvetti import salvetti_nodes, verify_lemphi, verify_partial_order
from artintool.verify import LEMRED_MAX_K, verify_all
from artintool.workspace import Workspace

F = TypeVar("F", bound=Callable[..., Any])

OUTPUT_FORMATS = [f.value for f in OutputFormat]
HOM_CHECKS = ["nf", "lattice", "coxeter", "lemred", "qf"]


def setup_logging(verbose: bool = False, quiet: bool = False) -> None:
    """Configure logging; records output keeps stderr to warnings."""
    logger.remove()  # Remove default handler

    level = "DEBUG" if verbose else ("WARNING" if quiet else "INFO")
    format_str = (
        "<green>{time:HH:mm:ss}</green> | "
        "<level>{level: <8}</level> | "
        "<cyan>{name}</cyan>:<cyan>{function}</cyan> - "
        "<level>{message}</level>"
    )

    logger.add(sys.stderr, format=format_str, level=level, colorize=True)


def handle_errors(func: F) -> F:
    """Input errors exit with status 2."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except ArtinError as e:
            raise click.UsageError(str(e)) from e

    return wrapper  # type: ignore[return-value]


def _workspace() -> Workspace:
    workspace = click.get_current_context().find_object(Workspace)
    if workspace is None:
        raise click.UsageError("No workspace loaded")
    return workspace


def _presentation(name: str) -> ArtinPresentation:
    return _workspace().presentation(name)


def _emit_report(report: Report) -> None:
    """Print a report; a failing report exits with status 1."""
    workspace = _workspace()
    click.echo(render_report(report, workspace.options.output_format), nl=False)
    if not report.passed:
        click.get_current_context().exit(1)


def _emit_value(key: str, value: object) -> None:
    click.echo(render_value(key, value, _workspace().options.output_format), nl=False)


def _write_dot(text: str) -> None:
    path = _workspace().options.dot_path
    if path:
        Path(path).expanduser().write_text(text, encoding="utf-8")
        logger.info(f"Wrote DOT graph to {path}")


presentation_option = click.option(
    "-p", "--presentation", "presentation_name",
    required=True,
    help="Name of a presentation in the workspace",
)


@click.group()
@click.option("--cutoff", default=24, type=int, show_default=True, help="Word-length bound for lcm search")
@click.option("--radius", default=2, type=int, show_default=True, help="Radius of explored Deligne-complex balls")
@click.option("--bound", default=4, type=int, show_default=True, help="Length bound for enumerative checks")
@click.option(
    "--format", "output_format",
    default=OutputFormat.HUMAN.value,
    type=click.Choice(OUTPUT_FORMATS, case_sensitive=False),
    help="Report format",
)
@click.option("--dot", "dot_path", default=None, help="Write a DOT graph to this file")
@click.option("--data", "data_dir", default=None, help="Extra directory of .pres and .map files")
@click.option("--debug-checks", is_flag=True, help="Cross-check Delta by two independent routes")
@click.option("-v", "--verbose", is_flag=True, help="Enable verbose logging")
@click.pass_context
def main(
    ctx: click.Context,
    cutoff: int,
    radius: int,
    bound: int,
    output_format: str,
    dot_path: str | None,
    data_dir: str | None,
    debug_checks: bool,
    verbose: bool,
) -> None:
    """artintool - Artin-Tits monoids and groups of FC type.

    Computes normal forms, lcm's and Garside elements, checks maps between
    Artin systems, and explores Deligne complexes. Presentations and maps
    are read from the stock data, $ARTINTOOL_DATA and --data.

    Example:

        artintool monoid nf -p A2 "s t s t"
    """
    options = ToolOptions(
        cutoff=cutoff,
        radius=radius,
        bound=bound,
        output_format=OutputFormat(output_format.lower()),
        dot_path=dot_path,
        debug_checks=debug_checks,
        data_dir=data_dir,
    )
    setup_logging(verbose, quiet=options.output_format is OutputFormat.RECORDS)
    ctx.obj = Workspace.from_options(options)


# --- workspace ---


@main.group(name="workspace")
def workspace_group() -> None:
    """Inspect loaded presentations and maps."""


@workspace_group.command(name="list")
def workspace_list() -> None:
    workspace = _workspace()
    for name in workspace.presentation_names:
        presentation = workspace.presentation(name)
        click.echo(f"presentation {name}: {len(presentation.generators)} generators")
    for name in workspace.map_names:
        phi = workspace.map(name)
        kind = "map" if isinstance(phi, GeneratorMap) else "morphism"
        click.echo(f"{kind} {name}: {phi.source.name} -> {phi.target.name}")
    for warning in workspace.validate():
        click.echo(f"warning: {warning}")


# --- presentation ---


@main.group(name="presentation")
def presentation_group() -> None:
    """Presentations and their types."""


@presentation_group.command(name="show")
@click.argument("name")
@handle_errors
def presentation_show(name: str) -> None:
    click.echo(_presentation(name).to_text(), nl=False)


@presentation_group.command(name="spherical")
@click.argument("name")
@handle_errors
def presentation_spherical(name: str) -> None:
    """List the spherical subsets."""
    presentation = _presentation(name)
    for subset in spherical_subsets(presentation):
        click.echo(presentation.format_subset(subset))


@presentation_group.command(name="fc")
@click.argument("name")
@handle_errors
def presentation_fc(name: str) -> None:
    """Whether the presentation is of FC type; otherwise names a bad clique."""
    try:
        require_fc(_presentation(name))
    except NotFCError as e:
        _emit_value("fc", f"false: {e}")
        return
    _emit_value("fc", "true")


# --- coxeter ---


@main.group(name="coxeter")
def coxeter_group() -> None:
    """The Coxeter group W_S."""


@coxeter_group.command(name="canon")
@presentation_option
@click.argument("word")
@handle_errors
def coxeter_canon(presentation_name: str, word: str) -> None:
    """Canonical reduced word of an element of W."""
    presentation = _presentation(presentation_name)
    _emit_value("canon", w_canonical(presentation, presentation.parse_word(word)))


@coxeter_group.command(name="longest")
@presentation_option
@click.argument("generators", nargs=-1)
@handle_errors
def coxeter_longest(presentation_name: str, generators: tuple[str, ...]) -> None:
    """Longest element of W_T (all generators by default)."""
    presentation = _presentation(presentation_name)
    subset = presentation.subset(generators) if generators else presentation.all
    _emit_value("longest", longest_element(presentation, subset))


# --- monoid ---


@main.group(name="monoid")
def monoid_group() -> None:
    """The positive monoid A_S^+."""


@monoid_group.command(name="nf")
@presentation_option
@click.argument("word")
@handle_errors
def monoid_nf(presentation_name: str, word: str) -> None:
    """Greedy normal form, factors separated by dots."""
    _emit_value("nf", normal_form(m_parse(_presentation(presentation_name), word)))


@monoid_group.command(name="eq")
@presentation_option
@click.argument("u")
@click.argument("v")
@handle_errors
def monoid_eq(presentation_name: str, u: str, v: str) -> None:
    presentation = _presentation(presentation_name)
    _emit_value("eq", str(m_parse(presentation, u) == m_parse(presentation, v)).lower())


@monoid_group.command(name="divides")
@presentation_option
@click.option("--right", is_flag=True, help="Right divisibility")
@click.argument("u")
@click.argument("v")
@handle_errors
def monoid_divides(presentation_name: str, right: bool, u: str, v: str) -> None:
    """Whether U divides V (on the left unless --right)."""
    presentation = _presentation(presentation_name)
    divides = right_divides if right else left_divides
    _emit_value("divides", str(divides(m_parse(presentation, u), m_parse(presentation, v))).lower())


@monoid_group.command(name="gcd")
@presentation_option
@click.option("--right", is_flag=True, help="Greatest common right divisor")
@click.argument("u")
@click.argument("v")
@handle_errors
def monoid_gcd(presentation_name: str, right: bool, u: str, v: str) -> None:
    presentation = _presentation(presentation_name)
    gcd = right_gcd if right else left_gcd
    _emit_value("gcd", gcd(m_parse(presentation, u), m_parse(presentation, v)))


@monoid_group.command(name="lcm")
@presentation_option
@click.option("--right", is_flag=True, help="Least common left multiple")
@click.argument("u")
@click.argument("v")
@handle_errors
def monoid_lcm(presentation_name: str, right: bool, u: str, v: str) -> None:
    """Finite lcm, Infinite, or Unknown(B) when the cutoff is reached."""
    presentation = _presentation(presentation_name)
    lcm = right_lcm if right else left_lcm
    result = lcm(m_parse(presentation, u), m_parse(presentation, v), _workspace().options.cutoff)
    _emit_value("lcm", result)


@monoid_group.command(name="delta")
@presentation_option
@click.argument("generators", nargs=-1)
@handle_errors
def monoid_delta(presentation_name: str, generators: tuple[str, ...]) -> None:
    """Garside element of a spherical subset (all generators by default)."""
    presentation = _presentation(presentation_name)
    subset = presentation.subset(generators) if generators else presentation.all
    _emit_value("delta", delta(presentation, subset, cross_check=_workspace().options.debug_checks))


@monoid_group.command(name="alpha")
@presentation_option
@click.option("--right", is_flag=True, help="Greatest square-free right divisor instead")
@click.argument("word")
@handle_errors
def monoid_alpha(presentation_name: str, right: bool, word: str) -> None:
    """Greatest square-free left divisor."""
    u = m_parse(_presentation(presentation_name), word)
    _emit_value("alpha", omega(u) if right else alpha(u))


@monoid_group.command(name="squarefree")
@presentation_option
@click.argument("word")
@handle_errors
def monoid_squarefree(presentation_name: str, word: str) -> None:
    _emit_value("squarefree", str(is_square_free(m_parse(_presentation(presentation_name), word))).lower())


# --- hom ---


@main.group(name="hom")
def hom_group() -> None:
    """Generator maps and lcm-homomorphisms."""


@hom_group.command(name="check")
@click.argument("map_name")
@handle_errors
def hom_check(map_name: str) -> None:
    """Axioms L0-L3 and L3' of a generator map."""
    phi = _workspace().map(map_name)
    if not isinstance(phi, GeneratorMap):
        raise ArtinError(f"Map {map_name} is a word morphism; axioms apply to generator maps")
    _emit_report(check_generator_map(phi, _workspace().options.cutoff))


@hom_group.command(name="map-word")
@click.option("--weak", is_flag=True, help="Accept maps satisfying L3' in place of L3")
@click.argument("map_name")
@click.argument("word")
@handle_errors
def hom_map_word(weak: bool, map_name: str, word: str) -> None:
    """Image of a positive or signed word."""
    phi = _workspace().morphism(map_name, allow_weak=weak)
    if "^-1" in word:
        _emit_value("image", map_group(phi, parse_signed_word(phi.source, word)))
    else:
        _emit_value("image", map_positive(phi, m_parse(phi.source, word)))


@hom_group.command(name="verify")
@click.argument("check", type=click.Choice(HOM_CHECKS))
@click.argument("map_name")
@handle_errors
def hom_verify(check: str, map_name: str) -> None:
    """Run one preservation check on the length ball of --bound."""
    workspace = _workspace()
    options = workspace.options
    phi = workspace.morphism(map_name)
    source = phi.source
    if check == "nf":
        item = verify_normal_form_preservation(phi, enumerate_positive(source, options.bound))
    elif check == "lattice":
        elements = enumerate_positive(source, max(options.bound - 1, 1))
        item = verify_lattice_preservation(phi, [(u, v) for u in elements for v in elements], options.cutoff)
    elif check == "coxeter":
        item = verify_coxeter_injectivity(phi)
    elif check == "lemred":
        item = verify_lemred_all(workspace.lcm_hom(map_name), LEMRED_MAX_K)
    else:
        item = is_qf_injective(phi, options.bound)
    report = Report(title=f"{check} check of {map_name}")
    report.items.append(item)
    _emit_report(report)


# --- deligne ---


@main.group(name="deligne")
def deligne_group() -> None:
    """The Deligne complex of an FC-type presentation."""


def _ball_around(presentation: ArtinPresentation, radius: int, *vertices: Vertex) -> DeligneBall:
    """The radius ball, widened to reach the given vertices."""
    reach = max((len(v.rep.letters) for v in vertices), default=0)
    return DeligneBall.around_identity(presentation, max(radius, reach))


@deligne_group.command(name="ball")
@presentation_option
@click.option("-r", "--radius", "ball_radius", type=int, default=None, help="Ball radius (default: --radius)")
@handle_errors
def deligne_ball(presentation_name: str, ball_radius: int | None) -> None:
    """List the vertices of a ball around 1."""
    radius = _workspace().options.radius if ball_radius is None else ball_radius
    ball = DeligneBall.around_identity(_presentation(presentation_name), radius)
    for v in ball.vertices:
        click.echo(str(v))
    _write_dot(render_dot(ball))


@deligne_group.command(name="ncp")
@presentation_option
@click.argument("start")
@click.argument("end")
@handle_errors
def deligne_ncp(presentation_name: str, start: str, end: str) -> None:
    """Normal cube path between two vertices written word@{X}."""
    presentation = _presentation(presentation_name)
    x, y = parse_vertex(presentation, start), parse_vertex(presentation, end)
    ball = _ball_around(presentation, _workspace().options.radius, x, y)
    path = ball.normal_cube_path(x, y)
    _emit_value("ncp", path)
    _write_dot(render_dot(ball, path))


@deligne_group.command(name="verify-proccn")
@click.argument("map_name")
@click.argument("start")
@click.argument("end")
@handle_errors
def deligne_verify_proccn(map_name: str, start: str, end: str) -> None:
    """The image of the normal cube path from START to END is normal."""
    workspace = _workspace()
    phi = workspace.lcm_hom(map_name)
    x, y = parse_vertex(phi.source, start), parse_vertex(phi.source, end)
    ball = _ball_around(phi.source, workspace.options.radius, x, y)
    report = Report(title=f"Normal cube paths under {map_name}")
    report.items.append(verify_proccn(phi, ball, [(x, y)]))
    _emit_report(report)


@deligne_group.command(name="verify-inj")
@click.argument("map_name")
@click.option("-L", "--length", "max_length", type=int, default=None, help="Word length bound (default: --bound)")
@click.option("--unverified", is_flag=True, help="Use the generator images even when the axioms fail")
@handle_errors
def deligne_verify_inj(map_name: str, max_length: int | None, unverified: bool) -> None:
    """Bounded evidence that the map and its vertex map are injective."""
    workspace = _workspace()
    phi = workspace.lcm_hom(map_name)
    length = workspace.options.bound if max_length is None else max_length
    ball = DeligneBall.around_identity(phi.source, workspace.options.radius)
    _emit_report(verify_injectivity_ball(phi, length, ball, allow_unverified=unverified))


# --- salvetti ---


@main.group(name="salvetti")
def salvetti_group() -> None:
    """The Salvetti poset W_S x S_f."""


@salvetti_group.command(name="check")
@click.argument("map_name")
@handle_errors
def salvetti_check(map_name: str) -> None:
    """The induced poset map strictly preserves the order."""
    workspace = _workspace()
    phi = workspace.lcm_hom(map_name)
    nodes = salvetti_nodes(phi.source, workspace.options.radius)
    report = Report(title=f"Salvetti poset under {map_name}")
    if is_spherical(phi.source, phi.source.all):
        report.items.append(verify_partial_order(nodes))
    report.items.append(verify_lemphi(phi, [(a, b) for a in nodes for b in nodes]))
    _emit_report(report)


# --- verify ---


@main.command(name="verify")
@handle_errors
def verify_command() -> None:
    """Run the whole verification scoreboard over the workspace."""
    workspace = _workspace()
    _emit_report(verify_all(workspace))


if __name__ == "__main__":
    main()
