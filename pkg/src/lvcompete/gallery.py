"""Canonical examples: one small-integer parameter set per portrait class.

Nine portrait classes exist on the plane, so the gallery has nine entries,
``case1`` through ``case9``, each carrying the expected coarse verdict
pattern ``(origin, axis1, axis2, interior, line)``.  They double as test
fixtures and as ready-made inputs for the command line.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from .model import SystemParams

__all__ = ["GalleryEntry", "PORTRAIT_GALLERY", "gallery_entry", "gallery_labels"]


@dataclass(frozen=True)
class GalleryEntry:
    label: str
    params: SystemParams
    table6_serial: int
    sign_glyphs: str
    expected_pattern: Tuple[str, str, str, str, str]
    description: str


def _entry(label: str, b, a, serial: int, glyphs: str, pattern, description: str) -> GalleryEntry:
    return GalleryEntry(
        label=label,
        params=SystemParams.from_pairs(b, a),
        table6_serial=serial,
        sign_glyphs=glyphs,
        expected_pattern=tuple(pattern),
        description=description,
    )


PORTRAIT_GALLERY: Dict[str, GalleryEntry] = {
    entry.label: entry
    for entry in (
        _entry("case1", (3, 4), ((1, 1), (1, 2)), 1, "++-",
               ("U", "U", "U", "AS", "/"),
               "coexistence: interior sink, both axis equilibria are saddles"),
        _entry("case2", (2, 4), ((1, 1), (1, 2)), 2, "++0",
               ("U", "U", "SS", "/", "/"),
               "species 2 wins through a semi-stable axis equilibrium"),
        _entry("case3", (2, 6), ((1, 1), (1, 2)), 3, "+++",
               ("U", "U", "AS", "/", "/"),
               "species 2 wins; hyperbolic axis sink"),
        _entry("case4", (1, 1), ((1, 2), (1, 4)), 4, "+0-",
               ("U", "SS", "U", "/", "/"),
               "species 1 wins through a semi-stable axis equilibrium"),
        _entry("case5", (6, 2), ((2, 1), (1, 1)), 5, "+--",
               ("U", "AS", "U", "/", "/"),
               "species 1 wins; hyperbolic axis sink"),
        _entry("case6", (1, 1), ((1, 4), (1, 2)), 6, "-0+",
               ("U", "U", "AS", "/", "/"),
               "species 2 wins; the degenerate axis-1 equilibrium repels"),
        _entry("case7", (2, 1), ((1, 2), (1, 1)), 7, "--0",
               ("U", "AS", "U", "/", "/"),
               "species 1 wins; the degenerate axis-2 equilibrium repels"),
        _entry("case8", (1, 3), ((1, 2), (4, 5)), 8, "--+",
               ("U", "AS", "AS", "U", "/"),
               "bistable: both axis equilibria attract, an interior saddle separates them"),
        _entry("case9", (1, 2), ((1, 2), (2, 4)), 9, "000",
               ("U", "NI", "NI", "/", "NI"),
               "fully degenerate: a segment of non-isolated equilibria attracts the quadrant"),
    )
}


def gallery_entry(label: str) -> GalleryEntry:
    try:
        return PORTRAIT_GALLERY[label]
    except KeyError:
        known = ", ".join(PORTRAIT_GALLERY)
        raise KeyError(f"unknown gallery label {label!r}; known labels: {known}") from None


def gallery_labels() -> Tuple[str, ...]:
    return tuple(PORTRAIT_GALLERY)
