"""artintool - Artin-Tits monoids and groups of FC type."""

__version__ = "0.1.0"

from artintool.lcm_hom import GeneratorMap, LcmHom, WordMorphism
from artintool.presentation import ArtinPresentation, parse_presentation
from artintool.workspace import Workspace

__all__ = [
    "ArtinPresentation",
    "GeneratorMap",
    "LcmHom",
    "WordMorphism",
    "Workspace",
    "parse_presentation",
]
