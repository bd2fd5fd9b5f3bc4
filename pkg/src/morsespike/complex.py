"""Finite simplicial complexes with their Hasse diagram.

Simplices are stored as sorted vertex tuples and identified by their
insertion index.  Only codimension-one incidences are stored; every face of
a simplex is inserted before the simplex itself, so ``face_id < coface_id``
holds for every stored incidence.
"""

from itertools import combinations
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse

from .errors import DimensionOutOfRange, DuplicateVertex, InvalidId, MissingFace


def canonical_simplex(vertices: Iterable[int]) -> tuple:
    """Sorted, duplicate-checked vertex tuple."""
    simplex = tuple(sorted(int(v) for v in vertices))
    if not simplex:
        raise DuplicateVertex("a simplex needs at least one vertex")
    if any(v < 0 for v in simplex):
        raise DuplicateVertex(f"vertex ids must be non-negative: {list(simplex)}")
    if any(a == b for a, b in zip(simplex, simplex[1:])):
        raise DuplicateVertex(f"repeated vertex in {list(simplex)}")
    return simplex


def facets_of(simplex: Sequence[int]) -> list:
    """Codimension-one faces of a vertex tuple, in lexicographic order."""
    k = len(simplex)
    if k == 1:
        return []
    return [simplex[:i] + simplex[i + 1:] for i in range(k - 1, -1, -1)]


class SimplicialComplex:
    """A mutable-then-frozen simplicial complex.

    Attributes
    ----------
    simplices : list of tuple
        Vertex tuples indexed by simplex id.
    faces : list of tuple
        Codimension-one face ids of each simplex.
    cofaces : list of list
        Codimension-one coface ids of each simplex, ascending.
    """

    def __init__(self, simplices: Iterable[Iterable[int]] = (), close: bool = False):
        self.simplices = []
        self.faces = []
        self.cofaces = []
        self.dims = []
        self._index = {}
        self._frozen = False
        for s in simplices:
            self.add_simplex(s, close=close)

    # construction -----------------------------------------------------

    def add_simplex(self, vertices: Iterable[int], close: bool = False) -> int:
        """Insert a simplex and return its id.

        With ``close=False`` every codimension-one face must already be
        present, otherwise :class:`MissingFace` is raised.  With
        ``close=True`` missing faces are inserted first, recursively.
        Re-adding an existing simplex returns its id unchanged.
        """
        simplex = canonical_simplex(vertices)
        existing = self._index.get(simplex)
        if existing is not None:
            return existing
        if self._frozen:
            raise ValueError("cannot add simplices to a frozen complex")
        face_ids = []
        for face in facets_of(simplex):
            fid = self._index.get(face)
            if fid is None:
                if not close:
                    raise MissingFace(simplex, face)
                fid = self.add_simplex(face, close=True)
            face_ids.append(fid)
        return self._append(simplex, face_ids)

    def _append(self, simplex, face_ids):
        sid = len(self.simplices)
        self.simplices.append(simplex)
        self.faces.append(tuple(face_ids))
        self.cofaces.append([])
        self.dims.append(len(simplex) - 1)
        self._index[simplex] = sid
        for fid in face_ids:
            self.cofaces[fid].append(sid)
        return sid

    def freeze(self) -> "SimplicialComplex":
        self._frozen = True
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    # queries ----------------------------------------------------------

    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)

    def __contains__(self, vertices):
        try:
            return canonical_simplex(vertices) in self._index
        except DuplicateVertex:
            return False

    def __repr__(self):
        return f"SimplicialComplex(n={len(self)}, f_vector={self.f_vector()})"

    @property
    def dim(self) -> int:
        """Maximum simplex dimension; -1 for the empty complex."""
        return max(self.dims, default=-1)

    @property
    def vertices(self) -> list:
        return [s[0] for s in self.simplices if len(s) == 1]

    def index(self, vertices: Iterable[int]) -> int:
        simplex = canonical_simplex(vertices)
        try:
            return self._index[simplex]
        except KeyError:
            raise InvalidId(f"simplex {list(simplex)} not in complex") from None

    def _check_id(self, sid):
        if not 0 <= sid < len(self.simplices):
            raise InvalidId(f"no simplex with id {sid}")

    def hasse_successors(self, sid: int) -> list:
        """Ids of the codimension-one faces of simplex ``sid``."""
        self._check_id(sid)
        return list(self.faces[sid])

    def hasse_predecessors(self, sid: int) -> list:
        self._check_id(sid)
        return list(self.cofaces[sid])

    def f_vector(self) -> tuple:
        counts = [0] * (self.dim + 1)
        for d in self.dims:
            counts[d] += 1
        return tuple(counts)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d for d in self.dims)

    def ids_of_dim(self, k: int) -> list:
        return [i for i, d in enumerate(self.dims) if d == k]

    def boundary_matrix(self, k: int) -> sparse.csc_array:
        """F2 boundary matrix from k-simplices (columns) to (k-1)-simplices (rows).

        Rows and columns follow ascending simplex id within each dimension.
        """
        if not 1 <= k <= self.dim:
            raise DimensionOutOfRange(f"k={k} outside [1, {self.dim}]")
        rows = self.ids_of_dim(k - 1)
        cols = self.ids_of_dim(k)
        row_pos = {sid: i for i, sid in enumerate(rows)}
        r = [row_pos[f] for c in cols for f in self.faces[c]]
        c = np.repeat(np.arange(len(cols)), k + 1)
        data = np.ones(len(r), dtype=np.uint8)
        return sparse.csc_array((data, (r, c)), shape=(len(rows), len(cols)))

    def prefix(self, n: int) -> "SimplicialComplex":
        """Frozen subcomplex made of the first ``n`` simplices (ids preserved)."""
        n = max(0, min(n, len(self.simplices)))
        sub = SimplicialComplex()
        sub.simplices = self.simplices[:n]
        sub.faces = self.faces[:n]
        sub.dims = self.dims[:n]
        sub.cofaces = [[c for c in cof if c < n] for cof in self.cofaces[:n]]
        sub._index = {s: i for i, s in enumerate(sub.simplices)}
        return sub.freeze()

    def subcomplex(self, ids: Iterable[int]) -> "SimplicialComplex":
        """Frozen complex on the given simplex ids, renumbered in id order.

        The id set must be closed under taking faces.
        """
        keep = sorted(set(ids))
        sub = SimplicialComplex()
        for sid in keep:
            sub.add_simplex(self.simplices[sid])
        return sub.freeze()

    def check_closure(self) -> bool:
        """Exhaustive closure check: every codimension-one subset is stored."""
        for s in self.simplices:
            for face in combinations(s, len(s) - 1):
                if face and face not in self._index:
                    return False
        return True
