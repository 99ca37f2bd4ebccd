"""Workspace - named presentations and maps loaded from files."""

import os
from importlib import resources
from pathlib import Path

from loguru import logger

from artintool.errors import ArtinError, PresentationError
from artintool.lcm_hom import GeneratorMap, LcmHom, WordMorphism, check_generator_map, parse_map
from artintool.models import ToolOptions
from artintool.presentation import ArtinPresentation, is_fc, parse_presentation

DATA_ENV = "ARTINTOOL_DATA"
PRESENTATION_SUFFIX = ".pres"
MAP_SUFFIX = ".map"


class Workspace:
    """
    Holds the named objects a command can refer to.

    Responsibilities:
    - Load stock and user presentation/map files
    - Resolve names, presentations before maps
    - Cache verified lcm-homomorphisms
    """

    def __init__(self, options: ToolOptions | None = None):
        self.options = options or ToolOptions()
        self._presentations: dict[str, ArtinPresentation] = {}
        self._maps: dict[str, GeneratorMap | WordMorphism] = {}
        self._homs: dict[tuple[str, bool], LcmHom] = {}

    @classmethod
    def from_options(cls, options: ToolOptions, include_stock: bool = True) -> "Workspace":
        """Stock data, then $ARTINTOOL_DATA, then --data; later names win."""
        workspace = cls(options)
        if include_stock:
            workspace.load_stock()
        for extra in (os.environ.get(DATA_ENV), options.data_dir):
            if extra:
                workspace.load_directory(Path(extra).expanduser())
        logger.info(
            f"Workspace loaded: {len(workspace._presentations)} presentations, {len(workspace._maps)} maps"
        )
        return workspace

    def load_stock(self) -> None:
        data = resources.files("artintool") / "data"
        entries = sorted((entry.name, entry.read_text(encoding="utf-8")) for entry in data.iterdir())
        self._load_texts(entries)

    def load_directory(self, path: Path) -> None:
        if not path.is_dir():
            logger.error(f"Data directory not found: {path}")
            return
        entries = [
            (file_path.name, file_path.read_text(encoding="utf-8"))
            for file_path in sorted(path.iterdir())
            if file_path.suffix in (PRESENTATION_SUFFIX, MAP_SUFFIX)
        ]
        self._load_texts(entries)

    def _load_texts(self, entries: list[tuple[str, str]]) -> None:
        # Presentations first so that maps can refer to them
        for filename, text in entries:
            if filename.endswith(PRESENTATION_SUFFIX):
                try:
                    self.add_presentation(parse_presentation(text, name=Path(filename).stem))
                except ArtinError as e:
                    logger.error(f"Failed to load presentation from {filename}: {e}")
        for filename, text in entries:
            if filename.endswith(MAP_SUFFIX):
                try:
                    self.add_map(parse_map(text, self._presentations))
                except ArtinError as e:
                    logger.error(f"Failed to load map from {filename}: {e}")

    def add_presentation(self, presentation: ArtinPresentation) -> None:
        if presentation.name in self._presentations:
            logger.debug(f"Presentation replaced: {presentation.name}")
        self._presentations[presentation.name] = presentation
        logger.debug(f"Loaded presentation: {presentation.name}")

    def add_map(self, phi: GeneratorMap | WordMorphism) -> None:
        for ref in (phi.source.name, phi.target.name):
            if ref not in self._presentations:
                raise PresentationError(f"Presentation not found: {ref}")
        self._maps[phi.name] = phi
        self._homs = {key: hom for key, hom in self._homs.items() if key[0] != phi.name}
        logger.debug(f"Loaded map: {phi.name}")

    def presentation(self, name: str) -> ArtinPresentation:
        try:
            return self._presentations[name]
        except KeyError:
            raise PresentationError(f"Presentation not found: {name}") from None

    def map(self, name: str) -> GeneratorMap | WordMorphism:
        try:
            return self._maps[name]
        except KeyError:
            raise PresentationError(f"Map not found: {name}") from None

    def morphism(self, name: str, allow_weak: bool = False) -> LcmHom | WordMorphism:
        """The map as something `map_positive` accepts: an LcmHom or a WordMorphism."""
        phi = self.map(name)
        if isinstance(phi, WordMorphism):
            return phi
        key = (name, allow_weak)
        if key not in self._homs:
            self._homs[key] = LcmHom(phi, cutoff=self.options.cutoff, allow_weak=allow_weak)
        return self._homs[key]

    def lcm_hom(self, name: str, allow_weak: bool = False) -> LcmHom:
        phi = self.morphism(name, allow_weak)
        if not isinstance(phi, LcmHom):
            raise PresentationError(f"Map {name} is a word morphism, not a generator map")
        return phi

    @property
    def presentation_names(self) -> list[str]:
        return sorted(self._presentations)

    @property
    def map_names(self) -> list[str]:
        return sorted(self._maps)

    def is_empty(self) -> bool:
        return not self._presentations and not self._maps

    def validate(self) -> list[str]:
        """Warnings about objects that most commands will refuse."""
        warnings = []
        for name in self.presentation_names:
            if not is_fc(self._presentations[name]):
                warnings.append(f"Presentation '{name}' is not of FC type")
        for name in self.map_names:
            phi = self._maps[name]
            if isinstance(phi, WordMorphism):
                continue
            failing = [item.key for item in check_generator_map(phi, self.options.cutoff).items
                       if not item.status.is_success]
            if failing:
                warnings.append(f"Map '{name}' fails {', '.join(failing)}")
        return warnings
