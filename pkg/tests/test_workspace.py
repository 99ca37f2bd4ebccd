"""Tests for Workspace loading and name resolution."""

from pathlib import Path

import pytest
from loguru import logger

from artintool.errors import PresentationError
from artintool.lcm_hom import WordMorphism
from artintool.models import ToolOptions
from artintool.workspace import DATA_ENV, Workspace


@pytest.fixture
def messages():
    """Collect loguru messages for the duration of a test."""
    collected: list[str] = []
    handler_id = logger.add(lambda message: collected.append(str(message)), level="DEBUG")
    yield collected
    logger.remove(handler_id)


@pytest.fixture
def data_dir(tmp_path: Path) -> Path:
    (tmp_path / "I5.pres").write_text("presentation I5\ngenerators u v\nbond u v 5\n")
    (tmp_path / "SWAP.map").write_text("map SWAP from A2 to A2\ns -> t\nt -> s\n")
    (tmp_path / "notes.txt").write_text("not data\n")
    return tmp_path


class TestStock:
    """Tests for the bundled presentations and maps."""

    def test_names(self, workspace: Workspace) -> None:
        """Test the stock listing."""
        assert workspace.presentation_names == ["A2", "A3", "AFF", "B2", "F1", "F2", "F2X", "QUAD", "TRI"]
        assert workspace.map_names == ["BROKEN", "FOLD", "FREEMAP", "ID_A2", "ID_TRI", "XY"]

    def test_not_found(self, workspace: Workspace) -> None:
        """Test lookups of unknown names."""
        with pytest.raises(PresentationError, match="Presentation not found: NOPE"):
            workspace.presentation("NOPE")
        with pytest.raises(PresentationError, match="Map not found: NOPE"):
            workspace.map("NOPE")

    def test_morphism_kinds(self, workspace: Workspace) -> None:
        """Test that generator maps are cached and word morphisms are not lcm-homs."""
        assert workspace.lcm_hom("FOLD") is workspace.lcm_hom("FOLD")
        assert workspace.lcm_hom("FOLD") is not workspace.lcm_hom("FOLD", allow_weak=True)
        assert isinstance(workspace.morphism("XY"), WordMorphism)
        with pytest.raises(PresentationError, match="word morphism"):
            workspace.lcm_hom("XY")

    def test_validate(self, workspace: Workspace) -> None:
        """Test warnings for the non-FC presentation and the overlapping map."""
        warnings = workspace.validate()

        assert "Presentation 'AFF' is not of FC type" in warnings
        assert any(w.startswith("Map 'BROKEN' fails L0") for w in warnings)
        assert not any("FOLD" in w for w in warnings)


class TestLoading:
    """Tests for loading user directories."""

    def test_load_directory(self, data_dir: Path) -> None:
        """Test that presentations load before the maps referring to them."""
        workspace = Workspace()
        workspace.load_stock()
        workspace.load_directory(data_dir)

        assert workspace.presentation("I5").bond("u", "v") == 5
        assert workspace.map("SWAP").target.name == "A2"

    def test_missing_directory(self, tmp_path: Path, messages: list[str]) -> None:
        """Test that a missing directory is logged, not raised."""
        workspace = Workspace()
        workspace.load_directory(tmp_path / "missing")

        assert workspace.is_empty()
        assert any("Data directory not found" in m for m in messages)

    def test_bad_files_skipped(self, tmp_path: Path, messages: list[str]) -> None:
        """Test that unparsable files are logged and skipped."""
        (tmp_path / "BAD.pres").write_text("presentation BAD\nbond s t 3\n")
        (tmp_path / "ORPHAN.map").write_text("map ORPHAN from NOPE to NOPE\n")
        (tmp_path / "OK.pres").write_text("presentation OK\ngenerators x\n")
        workspace = Workspace()
        workspace.load_directory(tmp_path)

        assert workspace.presentation_names == ["OK"]
        assert workspace.map_names == []
        assert any("Failed to load presentation from BAD.pres" in m for m in messages)
        assert any("Failed to load map from ORPHAN.map" in m for m in messages)

    def test_from_options(self, data_dir: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that later sources override earlier names."""
        monkeypatch.delenv(DATA_ENV, raising=False)
        (data_dir / "A2.pres").write_text("presentation A2\ngenerators s t\nbond s t 4\n")
        workspace = Workspace.from_options(ToolOptions(data_dir=str(data_dir)))

        assert workspace.presentation("A2").bond("s", "t") == 4
        assert "TRI" in workspace.presentation_names
        assert "I5" in workspace.presentation_names

    def test_environment_directory(self, data_dir: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test the data directory named by the environment."""
        monkeypatch.setenv(DATA_ENV, str(data_dir))
        workspace = Workspace.from_options(ToolOptions(), include_stock=False)

        assert workspace.presentation_names == ["I5"]
        assert workspace.map_names == []
