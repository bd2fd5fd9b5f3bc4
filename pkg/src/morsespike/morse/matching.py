"""Discrete vector fields as partial matchings on the Hasse diagram."""

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from ..complex import SimplicialComplex
from ..errors import InvalidPair


@dataclass(frozen=True)
class CriticalCounts:
    """Number of critical simplices per dimension."""

    counts: tuple

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, p):
        return self.counts[p] if 0 <= p < len(self.counts) else 0

    def __len__(self):
        return len(self.counts)

    def alternating_sum(self) -> int:
        return sum((-1) ** p * c for p, c in enumerate(self.counts))


class MorseMatching:
    """A set of pairs ``(sigma, tau)`` with ``sigma`` a codimension-one face of ``tau``.

    Parameters
    ----------
    complex_ : SimplicialComplex
    pairs : iterable of (int, int)
        Simplex id pairs, lower-dimensional simplex first.
    """

    def __init__(self, complex_: SimplicialComplex, pairs: Iterable[tuple] = ()):
        self.complex = complex_
        self.partner = [-1] * len(complex_)
        for sigma, tau in pairs:
            self._add(sigma, tau)

    @classmethod
    def from_partner(cls, complex_, partner):
        m = cls(complex_)
        m.partner = list(partner[: len(complex_)])
        return m

    def _add(self, sigma, tau):
        cx = self.complex
        n = len(cx)
        if not (0 <= sigma < n and 0 <= tau < n):
            raise InvalidPair(f"pair ({sigma}, {tau}) refers to a missing simplex")
        if sigma not in cx.faces[tau]:
            raise InvalidPair(f"{cx.simplices[sigma]} is not a codimension-one face of {cx.simplices[tau]}")
        if self.partner[sigma] != -1 or self.partner[tau] != -1:
            raise InvalidPair(f"simplex in pair ({sigma}, {tau}) is already matched")
        self.partner[sigma] = tau
        self.partner[tau] = sigma

    @property
    def pairs(self) -> list:
        return [(s, t) for s, t in enumerate(self.partner) if t > s]

    @property
    def critical(self) -> list:
        return [i for i, p in enumerate(self.partner) if p == -1]

    def __len__(self):
        return len(self.pairs)

    def __repr__(self):
        return f"MorseMatching(pairs={len(self)}, critical={len(self.critical)})"

    def restrict(self, n: int) -> "MorseMatching":
        """The matching induced on the prefix complex of the first ``n`` simplices."""
        sub = self.complex.prefix(n)
        partner = [p if p < n else -1 for p in self.partner[:n]]
        return MorseMatching.from_partner(sub, partner)

    def to_json(self) -> dict:
        return {"pairs": [list(p) for p in self.pairs], "critical": self.critical}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def critical_counts(matching: MorseMatching) -> CriticalCounts:
    cx = matching.complex
    counts = [0] * (cx.dim + 1)
    for i, p in enumerate(matching.partner):
        if p == -1:
            counts[cx.dims[i]] += 1
    return CriticalCounts(tuple(counts))


def validate(matching: MorseMatching, complex_: SimplicialComplex = None) -> None:
    """Raise :class:`InvalidPair` unless every pair is a symmetric codim-1 incidence."""
    cx = matching.complex if complex_ is None else complex_
    partner = matching.partner
    if len(partner) != len(cx):
        raise InvalidPair("matching and complex sizes differ")
    for s, t in enumerate(partner):
        if t == -1:
            continue
        if not 0 <= t < len(cx) or partner[t] != s:
            raise InvalidPair(f"pairing of {s} is not symmetric")
        lo, hi = (s, t) if cx.dims[s] < cx.dims[t] else (t, s)
        if lo not in cx.faces[hi]:
            raise InvalidPair(f"{cx.simplices[lo]} is not a codimension-one face of {cx.simplices[hi]}")


def is_acyclic(complex_: SimplicialComplex, matching: MorseMatching) -> bool:
    """True iff the Hasse diagram with matched edges reversed has no directed cycle.

    Edges point from each simplex to its codimension-one faces; a matched
    pair contributes the reversed edge face -> coface instead.  Checked with
    Kahn's algorithm on the whole diagram.
    """
    validate(matching, complex_)
    n = len(complex_)
    partner = matching.partner
    indeg = [0] * n
    succ = [[] for _ in range(n)]
    for tau in range(n):
        for sigma in complex_.faces[tau]:
            if partner[sigma] == tau:
                succ[sigma].append(tau)
                indeg[tau] += 1
            else:
                succ[tau].append(sigma)
                indeg[sigma] += 1
    queue = deque(i for i in range(n) if indeg[i] == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == n


def creates_cycle(complex_: SimplicialComplex, partner: list, sigma: int, tau: int) -> bool:
    """Would matching ``sigma`` with ``tau`` close a V-path?

    Searches for a gradient path from ``tau`` back to ``sigma`` that stays in
    the (dim sigma, dim tau) layer: down from a coface to any face other
    than its partner, up from a face to the coface it is matched with.
    """
    faces = complex_.faces
    dims = complex_.dims
    r = dims[sigma]
    stack = [tau]
    seen = {tau}
    while stack:
        x = stack.pop()
        px = partner[x]
        for y in faces[x]:
            if y == px or (x == tau and y == sigma):
                continue
            if y == sigma:
                return True
            up = partner[y]
            if up != -1 and dims[up] > r and up not in seen:
                seen.add(up)
                stack.append(up)
    return False
