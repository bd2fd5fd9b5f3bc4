"""Filtered simplicial complexes, Vietoris-Rips construction and file I/O."""

import bisect
import io
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .complex import SimplicialComplex, canonical_simplex, facets_of
from .errors import (
    DuplicateVertex,
    EmptyCloud,
    MissingFace,
    NonMonotone,
    NonSymmetricMatrix,
    ParseError,
)


def _sort_key(item):
    grade, simplex = item
    return (grade, len(simplex), simplex)


class Filtration:
    """A simplicial complex together with a monotone grade per simplex.

    Simplices are stored in canonical order: by grade, then dimension, then
    lexicographic vertex tuple.  Every sublevel complex is therefore a
    prefix of the simplex ids.
    """

    def __init__(self, graded: Iterable[tuple]):
        items = []
        for grade, simplex in graded:
            grade = float(grade)
            if not math.isfinite(grade) or grade < 0:
                raise NonMonotone(f"grade {grade} must be finite and non-negative")
            items.append((grade, canonical_simplex(simplex)))
        items.sort(key=_sort_key)
        complex_ = SimplicialComplex()
        grades = []
        for grade, simplex in items:
            if simplex in complex_:
                raise ParseError(f"simplex {list(simplex)} listed twice")
            try:
                sid = complex_.add_simplex(simplex)
            except MissingFace as exc:
                known = {s: g for g, s in items}
                if exc.face in known:
                    raise NonMonotone(
                        f"face {list(exc.face)} (grade {known[exc.face]}) enters after "
                        f"simplex {list(simplex)} (grade {grade})"
                    ) from None
                raise
            grades.append(grade)
        self.complex = complex_.freeze()
        self.grades = grades
        self.levels = sorted(set(grades))

    @classmethod
    def from_complex(cls, complex_: SimplicialComplex, grade=0.0) -> "Filtration":
        """Single-level filtration of an existing complex."""
        return cls((grade, s) for s in complex_.simplices)

    def __len__(self):
        return len(self.grades)

    def __repr__(self):
        return f"Filtration(n={len(self)}, levels={len(self.levels)}, dim={self.dim})"

    def __eq__(self, other):
        if not isinstance(other, Filtration):
            return NotImplemented
        return self.grades == other.grades and self.complex.simplices == other.complex.simplices

    @property
    def dim(self) -> int:
        return self.complex.dim

    @property
    def simplices(self):
        return self.complex.simplices

    def items(self):
        return zip(self.grades, self.complex.simplices)

    def count_upto(self, t: float) -> int:
        """Number of simplices with grade <= t."""
        return bisect.bisect_right(self.grades, t)

    def level_sizes(self) -> list:
        """Number of simplices in each sublevel complex, one per level."""
        return [self.count_upto(t) for t in self.levels]

    def sublevel(self, t: float) -> SimplicialComplex:
        """The subcomplex of all simplices with grade <= t."""
        return self.complex.prefix(self.count_upto(t))

    def level_index(self, t: float) -> int:
        try:
            return self.levels.index(t)
        except ValueError:
            raise KeyError(f"{t} is not a level of this filtration") from None

    def check_monotone(self) -> bool:
        g = self.grades
        return all(g[f] <= g[s] for s in range(len(g)) for f in self.complex.faces[s])


def sublevel(filtration: Filtration, t: float) -> SimplicialComplex:
    return filtration.sublevel(t)


# file format --------------------------------------------------------------


def format_grade(g: float) -> str:
    if float(g).is_integer() and abs(g) < 1e15:
        return str(int(g))
    return repr(float(g))


def serialize_filtration(filtration: Filtration) -> str:
    lines = [
        " ".join([format_grade(g)] + [str(v) for v in s]) for g, s in filtration.items()
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_filtration(text: str, auto_close: bool = False) -> Filtration:
    """Parse ``<grade> <v0> ... <vk>`` lines into a canonical filtration.

    ``#`` starts a comment.  With ``auto_close`` missing faces are added
    with the smallest grade among their listed cofaces; otherwise a
    missing face raises :class:`MissingFace`.
    """
    graded = {}
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) < 2:
            raise ParseError("expected a grade followed by at least one vertex", lineno)
        try:
            grade = float(fields[0])
        except ValueError:
            raise ParseError(f"bad grade {fields[0]!r}", lineno) from None
        if not math.isfinite(grade) or grade < 0:
            raise ParseError(f"grade must be finite and non-negative, got {fields[0]}", lineno)
        try:
            verts = [int(v) for v in fields[1:]]
        except ValueError:
            raise ParseError(f"bad vertex list {fields[1:]}", lineno) from None
        try:
            simplex = canonical_simplex(verts)
        except DuplicateVertex as exc:
            raise ParseError(str(exc), lineno) from None
        if simplex in graded:
            raise ParseError(f"simplex {list(simplex)} listed twice", lineno)
        graded[simplex] = grade

    if auto_close:
        _close_faces(graded)
    else:
        for simplex in graded:
            for face in facets_of(simplex):
                if face not in graded:
                    raise MissingFace(simplex, face)
    return Filtration((g, s) for s, g in graded.items())


def _close_faces(graded):
    """Add every missing face with the minimum grade of its cofaces."""
    listed = set(graded)
    top = max((len(s) for s in graded), default=0)
    for k in range(top, 1, -1):
        for s in [s for s in graded if len(s) == k]:
            for face in facets_of(s):
                if face in listed:
                    continue
                graded[face] = min(graded.get(face, math.inf), graded[s])


# point clouds and Vietoris-Rips --------------------------------------------


@dataclass
class PointCloud:
    """Either coordinates (``points``) or a full distance matrix."""

    points: Optional[np.ndarray] = None
    distances: Optional[np.ndarray] = None

    def distance_matrix(self) -> np.ndarray:
        if self.distances is not None:
            d = np.asarray(self.distances, dtype=float)
            if d.ndim != 2 or d.shape[0] != d.shape[1]:
                raise NonSymmetricMatrix(f"distance matrix must be square, got {d.shape}")
            if d.shape[0] == 0:
                raise EmptyCloud("no points")
            if not np.all(np.isfinite(d)) or np.any(d < 0):
                raise NonSymmetricMatrix("distances must be finite and non-negative")
            if not np.array_equal(d, d.T) or np.any(np.diag(d) != 0):
                raise NonSymmetricMatrix("distance matrix must be symmetric with zero diagonal")
            return d
        pts = np.asarray(self.points, dtype=float)
        if pts.size == 0:
            raise EmptyCloud("no points")
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if len(pts) == 1:
            return np.zeros((1, 1))
        return squareform(pdist(pts))


def read_point_cloud(text: str, distance_matrix: bool = False) -> PointCloud:
    """Read CSV coordinates (one point per row) or a whitespace/CSV distance matrix."""
    rows = []
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([float(x) for x in line.replace(",", " ").split()])
        except ValueError:
            raise ParseError(f"non-numeric entry in {line!r}", lineno) from None
    if not rows:
        raise EmptyCloud("no points")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ParseError("all rows must have the same length")
    arr = np.array(rows, dtype=float)
    if distance_matrix:
        return PointCloud(distances=arr)
    return PointCloud(points=arr)


def vietoris_rips(
    cloud, max_dim: int, thresholds: Optional[Sequence[float]] = None
) -> Filtration:
    """Vietoris-Rips filtration of a point cloud.

    Each simplex of dimension <= ``max_dim`` is graded by its diameter (the
    largest pairwise distance among its vertices).  When ``thresholds`` is
    given the grade is rounded up to the least threshold at or above the
    diameter, and simplices wider than the last threshold are dropped.
    """
    if max_dim < 0:
        raise ValueError("max_dim must be non-negative")
    if not isinstance(cloud, PointCloud):
        cloud = PointCloud(points=np.asarray(cloud, dtype=float))
    dist = cloud.distance_matrix()
    n = dist.shape[0]
    if thresholds is not None:
        thresholds = [float(t) for t in thresholds]
        if not thresholds or any(b < a for a, b in zip(thresholds, thresholds[1:])):
            raise ValueError("thresholds must be a non-empty ascending list")
        limit = thresholds[-1]
    else:
        limit = math.inf

    graded = _rips_cliques(dist, max_dim, limit)
    if thresholds is not None:
        levels = np.asarray(thresholds)
        idx = np.searchsorted(levels, [g for g, _ in graded], side="left")
        graded = [(float(levels[i]), s) for i, (_, s) in zip(idx, graded)]
    return Filtration(graded)


def _rips_cliques(dist, max_dim, limit):
    n = dist.shape[0]
    # Vertices at grade 0 even when thresholds start above 0; rounding happens later.
    graded = [(0.0, (i,)) for i in range(n)]
    if max_dim == 0 or n < 2:
        return graded
    adj = dist <= limit
    np.fill_diagonal(adj, False)
    upper = [np.nonzero(adj[i, i + 1:])[0] + i + 1 for i in range(n)]
    upper_sets = [set(u.tolist()) for u in upper]
    frontier = []
    for i in range(n):
        for j in upper[i].tolist():
            d = float(dist[i, j])
            graded.append((d, (i, j)))
            frontier.append(((i, j), d, upper_sets[i] & upper_sets[j]))
    for _ in range(2, max_dim + 1):
        nxt = []
        for simplex, diam, common in frontier:
            last = simplex[-1]
            for k in sorted(c for c in common if c > last):
                new_diam = max(diam, max(float(dist[v, k]) for v in simplex))
                new = simplex + (k,)
                graded.append((new_diam, new))
                nxt.append((new, new_diam, common & upper_sets[k]))
        frontier = nxt
        if not frontier:
            break
    return graded


def cone(complex_: SimplicialComplex, apex: Optional[int] = None) -> SimplicialComplex:
    """Cone over ``complex_`` with a fresh apex vertex.

    The result holds every input simplex, the apex, and the join of the
    apex with every input simplex: ``2 * len(complex_) + 1`` simplices.
    """
    if apex is None:
        apex = max((v for s in complex_.simplices for v in s), default=-1) + 1
    elif any(apex in s for s in complex_.simplices):
        raise DuplicateVertex(f"apex {apex} already a vertex of the base")
    out = SimplicialComplex(complex_.simplices)
    out.add_simplex((apex,))
    for s in complex_.simplices:
        out.add_simplex(s + (apex,) if apex > s[-1] else (apex,) + s)
    return out.freeze()
