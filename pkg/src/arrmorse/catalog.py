"""Named desk-scale arrangements used by the test and acceptance suites."""
from __future__ import annotations

from typing import Dict

from .geometry import Arrangement

_SPECS = {
    "two_points": ([[1], [1]], [1, 2]),
    "boolean2": ([[1, 0], [0, 1]], None),
    "boolean3": ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], None),
    "generic3": ([[1, 0], [0, 1], [1, 1]], [0, 0, 1]),
    "generic4": ([[1, 0], [0, 1], [1, 1], [1, -2]], [0, 0, 1, 3]),
    "generic5": ([[1, 0], [0, 1], [1, 1], [1, -2], [2, 1]], [0, 0, 1, 3, -5]),
    "a2": ([[1, 0], [0, 1], [1, -1]], None),
    "a3": ([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 0, -1], [0, 1, -1]], None),
    "planes4": ([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], [0, 0, 0, 1]),
}

SUITE = tuple(_SPECS)


def arrangement(name: str) -> Arrangement:
    normals, offsets = _SPECS[name]
    return Arrangement.from_normals(normals, offsets)


def suite() -> Dict[str, Arrangement]:
    return {name: arrangement(name) for name in SUITE}
