"""Exhaustive search for a collapse of a complex onto a single vertex."""

import json
from dataclasses import dataclass, field

from ..complex import SimplicialComplex
from ..errors import BudgetExhausted
from .matching import MorseMatching

DEFAULT_NODE_BUDGET = 10**7


@dataclass
class CollapseCertificate:
    """Outcome of :func:`collapse_search`.

    When ``collapsible`` is true, ``pairs`` is an ordered list of free pairs
    ``(sigma, tau)`` whose removal leaves the single vertex ``remaining``.
    Otherwise the search space was exhausted: a definite refutation.
    """

    collapsible: bool
    pairs: list = field(default_factory=list)
    remaining: int = -1
    states_visited: int = 0

    def matching(self, complex_: SimplicialComplex) -> MorseMatching:
        return MorseMatching(complex_, self.pairs)

    def to_json(self) -> dict:
        return {
            "collapsible": self.collapsible,
            "pairs": [list(p) for p in self.pairs],
            "remaining": self.remaining if self.collapsible else None,
            "states_visited": self.states_visited,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def free_pairs(complex_: SimplicialComplex, alive: int) -> list:
    """Free pairs ``(sigma, tau)`` of the subcomplex given by bitmask ``alive``.

    ``sigma`` is free when ``tau`` is its only present coface and ``tau``
    itself is maximal.  Higher-dimensional pairs come first.
    """
    cofaces = complex_.cofaces
    out = []
    for sigma in _bits(alive):
        up = [c for c in cofaces[sigma] if alive >> c & 1]
        if len(up) == 1:
            tau = up[0]
            if not any(alive >> c & 1 for c in cofaces[tau]):
                out.append((sigma, tau))
    dims = complex_.dims
    out.sort(key=lambda p: (-dims[p[1]], p))
    return out


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def replay(complex_: SimplicialComplex, pairs) -> list:
    """Apply ``pairs`` as elementary collapses; return surviving ids.

    Raises ``ValueError`` if some pair is not free when its turn comes.
    """
    alive = (1 << len(complex_)) - 1
    for sigma, tau in pairs:
        if (sigma, tau) not in free_pairs(complex_, alive):
            raise ValueError(f"({sigma}, {tau}) is not a free pair at its step")
        alive &= ~((1 << sigma) | (1 << tau))
    return list(_bits(alive))


def collapse_search(
    complex_: SimplicialComplex, node_budget: int = DEFAULT_NODE_BUDGET
) -> CollapseCertificate:
    """Decide whether ``complex_`` collapses to a vertex.

    Depth-first search over choices of free pair, memoizing residual
    complexes (as id bitmasks) already known to be dead ends.  Raises
    :class:`BudgetExhausted` when more than ``node_budget`` distinct states
    would be visited.
    """
    n = len(complex_)
    if n == 0:
        return CollapseCertificate(False)
    full = (1 << n) - 1
    n_vertices = sum(1 for d in complex_.dims if d == 0)
    if n_vertices and _components(complex_) > 1:
        return CollapseCertificate(False, states_visited=1)

    dead = set()
    path = []
    # explicit stack of (state, remaining-candidates iterator)
    stack = [(full, iter(free_pairs(complex_, full)))]
    visited = 1
    while stack:
        state, options = stack[-1]
        if state & (state - 1) == 0:
            return CollapseCertificate(True, list(path), state.bit_length() - 1, visited)
        advanced = False
        for sigma, tau in options:
            nxt = state & ~((1 << sigma) | (1 << tau))
            if nxt in dead:
                continue
            visited += 1
            if visited > node_budget:
                raise BudgetExhausted(visited - 1, node_budget)
            path.append((sigma, tau))
            stack.append((nxt, iter(free_pairs(complex_, nxt))))
            advanced = True
            break
        if not advanced:
            dead.add(state)
            stack.pop()
            if path:
                path.pop()
    return CollapseCertificate(False, states_visited=visited)


def _components(complex_):
    parent = list(range(len(complex_)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for sid, faces in enumerate(complex_.faces):
        for f in faces:
            parent[find(f)] = find(sid)
    return len({find(i) for i, d in enumerate(complex_.dims) if d == 0})
