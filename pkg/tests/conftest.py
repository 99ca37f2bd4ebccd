"""Shared fixtures: the stock workspace and its presentations and maps."""

import pytest

from artintool.lcm_hom import LcmHom
from artintool.presentation import ArtinPresentation
from artintool.workspace import Workspace


@pytest.fixture(scope="session")
def workspace() -> Workspace:
    """Workspace holding only the stock data."""
    ws = Workspace()
    ws.load_stock()
    return ws


@pytest.fixture
def a2(workspace: Workspace) -> ArtinPresentation:
    return workspace.presentation("A2")


@pytest.fixture
def b2(workspace: Workspace) -> ArtinPresentation:
    return workspace.presentation("B2")


@pytest.fixture
def a3(workspace: Workspace) -> ArtinPresentation:
    return workspace.presentation("A3")


@pytest.fixture
def tri(workspace: Workspace) -> ArtinPresentation:
    return workspace.presentation("TRI")


@pytest.fixture
def quad(workspace: Workspace) -> ArtinPresentation:
    return workspace.presentation("QUAD")


@pytest.fixture
def f2(workspace: Workspace) -> ArtinPresentation:
    return workspace.presentation("F2")


@pytest.fixture
def aff(workspace: Workspace) -> ArtinPresentation:
    return workspace.presentation("AFF")


@pytest.fixture
def fold(workspace: Workspace) -> LcmHom:
    return workspace.lcm_hom("FOLD")


@pytest.fixture
def freemap(workspace: Workspace) -> LcmHom:
    return workspace.lcm_hom("FREEMAP")
