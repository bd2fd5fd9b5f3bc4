"""Named example filtrations with known answers."""

import math

import numpy as np

from .complex import SimplicialComplex
from .errors import UnknownName
from .filtration import Filtration, cone, vietoris_rips

# Minimal 8-vertex triangulation of the dunce hat: 8 vertices, 24 edges,
# 17 triangles.  Edges 01, 02, 12 lie in three triangles each (the glued
# boundary a.a.a^-1); every other edge lies in exactly two, so no edge is free.
DUNCE_HAT_TRIANGLES = (
    (0, 2, 4), (1, 2, 4), (1, 3, 4), (0, 1, 3), (0, 2, 3), (2, 3, 7),
    (0, 1, 7), (0, 6, 7), (0, 1, 6), (1, 2, 6), (2, 5, 6), (0, 2, 5),
    (0, 4, 5), (3, 4, 5), (3, 5, 7), (5, 6, 7), (1, 2, 7),
)

PENTAGON_THRESHOLDS = (0.5, 1.2, 2.0)


def dunce_hat() -> SimplicialComplex:
    return SimplicialComplex(DUNCE_HAT_TRIANGLES, close=True).freeze()


def pentagon_points() -> np.ndarray:
    angles = 2 * math.pi * np.arange(5) / 5
    return np.column_stack([np.cos(angles), np.sin(angles)])


def _dunce_hat_filtration() -> Filtration:
    hat = dunce_hat()
    graded = [(0 if s == (0,) else 1, s) for s in hat.simplices]
    coned = cone(hat)
    graded += [(2, s) for s in coned.simplices[len(hat):]]
    return Filtration(graded)


def _circle() -> Filtration:
    return Filtration([(0, (0,)), (0, (1,)), (0, (2,)), (1, (0, 1)), (1, (1, 2)), (1, (0, 2))])


_BUILDERS = {
    "point": lambda: Filtration([(0, (0,))]),
    "circle": _circle,
    "dunce-hat": lambda: Filtration.from_complex(dunce_hat()),
    "dunce-hat-filtration": _dunce_hat_filtration,
    # max_dim 4 so that the last stage is the full 4-simplex and hence contractible
    "pentagon-rips": lambda: vietoris_rips(pentagon_points(), 4, PENTAGON_THRESHOLDS),
}

CATALOG_NAMES = tuple(_BUILDERS)


def catalog(name: str) -> Filtration:
    """Build one of the named example filtrations.

    ``point``, ``circle``, ``dunce-hat``, ``dunce-hat-filtration`` (vertex,
    then dunce hat, then its cone) or ``pentagon-rips``.
    """
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownName(f"unknown catalog entry {name!r}; choose from {', '.join(CATALOG_NAMES)}") from None
    return builder()


# Expected results for the `example` command.  Values were produced by the
# exact and greedy routines and are asserted by the test suite.
EXAMPLES = {
    "dunce-hat": {
        "catalog": "dunce-hat-filtration",
        "expected": {"profile": [1, 3, 1], "spike_levels": [1], "betti": [[1, 0, 0, 0]] * 3},
    },
    "pentagon": {
        "catalog": "pentagon-rips",
        "expected": {"greedy": [5, 2, 1]},
    },
    "point": {
        "catalog": "point",
        "expected": {"profile": [1]},
    },
}
