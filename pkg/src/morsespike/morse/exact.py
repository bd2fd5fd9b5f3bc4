"""Exact minimal Morse numbers by branch and bound over acyclic matchings.

Bounds used for pruning, all valid for every acyclic matching:

* weak Morse inequalities, ``c_p >= b_p`` over F2;
* the Euler identity ``sum (-1)^p c_p = chi``, which also fixes the parity
  of the total;
* a matching leaving a single critical simplex is a collapse, so a
  non-collapsible complex has at least two critical simplices;
* if the top-dimensional simplices do not all disappear under repeated
  removal through free faces, at least one of them is critical.
"""

import math
import random
from dataclasses import dataclass

from ..complex import SimplicialComplex
from ..errors import BudgetExhausted, CapExceeded
from ..filtration import Filtration
from ..persistence import betti_at, reduce
from .collapse import DEFAULT_NODE_BUDGET, collapse_search
from .greedy import IncrementalMatcher
from .matching import CriticalCounts, MorseMatching, creates_cycle, critical_counts

DEFAULT_SIMPLEX_CAP = 25
_RANDOM_RESTARTS = 32

INF = math.inf


@dataclass
class MinimalMorse:
    """Result of :func:`exact_min_morse`.

    ``total`` is M(K).  ``per_dim[k]`` is the least number of critical
    k-simplices over all acyclic matchings, minimized independently per
    dimension; ``witness`` is one optimal matching for the total and
    ``witness_counts`` its per-dimension profile.
    """

    total: int
    per_dim: tuple
    witness: MorseMatching
    witness_counts: CriticalCounts
    nodes: int = 0

    def to_json(self) -> dict:
        return {
            "M": self.total,
            "m": list(self.per_dim),
            "witness_counts": list(self.witness_counts.counts),
            "matching": self.witness.to_json(),
        }


def betti_numbers(complex_: SimplicialComplex) -> tuple:
    if len(complex_) == 0:
        return ()
    return betti_at(reduce(Filtration.from_complex(complex_)), 0.0)


def top_core(complex_: SimplicialComplex) -> list:
    """Top-dimensional simplices left after removing those with a free facet.

    Removal is repeated until nothing changes; the result does not depend
    on the order because freeness only grows as simplices disappear.
    """
    d = complex_.dim
    if d < 1:
        return []
    alive = set(complex_.ids_of_dim(d))
    load = {}
    for t in alive:
        for f in complex_.faces[t]:
            load[f] = load.get(f, 0) + 1
    queue = [t for t in alive if any(load[f] == 1 for f in complex_.faces[t])]
    while queue:
        t = queue.pop()
        if t not in alive:
            continue
        alive.discard(t)
        for f in complex_.faces[t]:
            load[f] -= 1
            if load[f] == 1:
                queue.extend(c for c in complex_.cofaces[f] if c in alive)
    return sorted(alive)


def _total_bound(lower, free, chi, min_total):
    """Least sum c_q with c_q >= lower[q], equality on non-free dims,
    alternating sum ``chi`` and total at least ``min_total``."""
    base = sum(lower)
    diff = chi - sum(c if q % 2 == 0 else -c for q, c in enumerate(lower))
    gap = min_total - base
    has_even = any(q % 2 == 0 for q in free)
    has_odd = any(q % 2 == 1 for q in free)
    if has_even and has_odd:
        s = max(abs(diff), gap, 0)
        if (s - diff) % 2:
            s += 1
        return base + s
    if has_even:
        return base + diff if diff >= 0 and diff >= gap else INF
    if has_odd:
        return base - diff if diff <= 0 and -diff >= gap else INF
    return base if diff == 0 and gap <= 0 else INF


def _dim_bound(k, lower, free, chi, min_total, ceiling):
    """Least feasible c_k under the same constraints, or INF above ``ceiling``."""
    if k not in free:
        return lower[k] if _total_bound(lower, free, chi, min_total) < INF else INF
    rest = [q for q in free if q != k]
    trial = list(lower)
    for v in range(lower[k], ceiling + 1):
        trial[k] = v
        if _total_bound(trial, rest, chi, min_total) < INF:
            return v
    return INF


class _Search:
    """Depth-first branch and bound over matchings, highest dimension first.

    Each simplex, when reached and still unmatched, is either matched with
    one of its unmatched facets (acyclicity permitting) or declared critical.
    """

    def __init__(self, complex_, lower, chi, min_total, objective, best, node_budget):
        self.cx = complex_
        self.dims = complex_.dims
        self.top = max(complex_.dim, 0)
        self.order = sorted(range(len(complex_)), key=lambda i: (-self.dims[i], i))
        self.lower = lower
        self.chi = chi
        self.min_total = min_total
        self.objective = objective  # None for total, else a dimension
        self.best = best
        self.best_partner = None
        self.partner = [-1] * len(complex_)
        self.crit = [0] * (self.top + 1)
        self.nodes = 0
        self.node_budget = node_budget

    def value(self):
        return sum(self.crit) if self.objective is None else self.crit[self.objective]

    def bound(self, p):
        lower = [self.crit[q] if q > p else self.lower[q] for q in range(self.top + 1)]
        lower[p] = max(lower[p], self.crit[p])
        free = list(range(p + 1))
        if self.objective is None:
            return _total_bound(lower, free, self.chi, self.min_total)
        return _dim_bound(self.objective, lower, free, self.chi, self.min_total, self.best - 1)

    def run(self, floor):
        self.floor = floor
        self._visit(0)
        return self.best, self.best_partner

    def _visit(self, pos):
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise BudgetExhausted(self.nodes - 1, self.node_budget)
        order = self.order
        partner = self.partner
        while pos < len(order) and partner[order[pos]] != -1:
            pos += 1
        if pos == len(order):
            v = self.value()
            if v < self.best:
                self.best = v
                self.best_partner = list(partner)
            return
        s = order[pos]
        p = self.dims[s]
        if self.bound(p) >= self.best:
            return
        for f in self.cx.faces[s]:
            if partner[f] != -1 or creates_cycle(self.cx, partner, f, s):
                continue
            partner[f] = s
            partner[s] = f
            self._visit(pos + 1)
            partner[f] = partner[s] = -1
            if self.best <= self.floor:
                return
        self.crit[p] += 1
        if self.bound(p) < self.best:
            self._visit(pos + 1)
        self.crit[p] -= 1


def _random_greedy(complex_, rng):
    """Greedy matching along a random face-respecting insertion order."""
    maximal = [i for i, cof in enumerate(complex_.cofaces) if not cof]
    rng.shuffle(maximal)
    rebuilt = SimplicialComplex()
    for i in maximal:
        rebuilt.add_simplex(complex_.simplices[i], close=True)
    matcher = IncrementalMatcher(rebuilt)
    for _ in range(len(rebuilt)):
        matcher.insert_next()
    to_old = [complex_.index(s) for s in rebuilt.simplices]
    partner = [-1] * len(complex_)
    for new_id, p in enumerate(matcher.partner):
        if p != -1:
            partner[to_old[new_id]] = to_old[p]
    return partner


def _greedy_partner(complex_):
    matcher = IncrementalMatcher(complex_)
    for _ in range(len(complex_)):
        matcher.insert_next()
    return matcher.partner


def _count(complex_, partner):
    return critical_counts(MorseMatching.from_partner(complex_, partner))


def exact_min_morse(
    complex_: SimplicialComplex,
    simplex_cap: int = DEFAULT_SIMPLEX_CAP,
    use_collapse_bound: bool = True,
    node_budget=None,
    collapse_budget: int = DEFAULT_NODE_BUDGET,
    seed: int = 0,
    heuristic_start: bool = True,
) -> MinimalMorse:
    """Minimal Morse number M(K) and per-dimension minima m_k(K).

    Raises :class:`CapExceeded` when the complex has more than
    ``simplex_cap`` simplices.  With ``use_collapse_bound`` a collapse
    search decides the case M = 1 directly; without it the answer comes
    from branch and bound alone.  ``heuristic_start=False`` skips the
    greedy upper bounds and starts the search from the empty matching.
    """
    n = len(complex_)
    if n > simplex_cap:
        raise CapExceeded(n, simplex_cap)
    if n == 0:
        empty = MorseMatching(complex_)
        return MinimalMorse(0, (), empty, CriticalCounts(()), 0)
    top = complex_.dim
    chi = complex_.euler_characteristic()
    lower = list(betti_numbers(complex_))
    if top >= 1 and top_core(complex_):
        lower[top] = max(lower[top], 1)
    free = list(range(top + 1))
    min_total = 0
    floor = _total_bound(lower, free, chi, min_total)

    if heuristic_start:
        best_partner = _greedy_partner(complex_)
        best = _count(complex_, best_partner).total
    else:
        best_partner, best = [-1] * n, n
    if use_collapse_bound and floor <= 1:
        cert = collapse_search(complex_, collapse_budget)
        if cert.collapsible:
            best_partner = cert.matching(complex_).partner
            best = 1
        else:
            min_total = 2
            floor = _total_bound(lower, free, chi, min_total)

    rng = random.Random(seed)
    for _ in range(_RANDOM_RESTARTS if heuristic_start else 0):
        if best <= floor:
            break
        cand = _random_greedy(complex_, rng)
        total = _count(complex_, cand).total
        if total < best:
            best, best_partner = total, cand

    nodes = 0
    if best > floor:
        search = _Search(complex_, lower, chi, min_total, None, best, node_budget)
        found, partner = search.run(floor)
        nodes += search.nodes
        if partner is not None:
            best, best_partner = found, partner
    total = best
    witness = MorseMatching.from_partner(complex_, best_partner)
    witness_counts = critical_counts(witness)

    per_dim = []
    for k in range(top + 1):
        upper = witness_counts[k]
        floor_k = _dim_bound(k, lower, free, chi, total, upper)
        if floor_k >= upper:
            per_dim.append(upper)
            continue
        search = _Search(complex_, lower, chi, total, k, upper, node_budget)
        found, _ = search.run(floor_k)
        nodes += search.nodes
        per_dim.append(found)
    return MinimalMorse(total, tuple(per_dim), witness, witness_counts, nodes)
