"""Greedy acyclic matching maintained along a filtration."""

from dataclasses import dataclass

from ..filtration import Filtration
from ..errors import NotIncident
from .matching import CriticalCounts, MorseMatching, creates_cycle


class IncrementalMatcher:
    """Greedy matching state over a complex whose simplices arrive in id order.

    Simplices ``0 .. inserted-1`` are present.  Inserting a simplex tries to
    pair it with one of its unmatched faces.  Faces whose only unmatched
    present coface is the new simplex are tried first, then the remaining
    unmatched faces; ties go to the smaller id.  The first candidate that
    keeps the matching acyclic wins.
    """

    def __init__(self, complex_):
        self.complex = complex_
        self.partner = [-1] * len(complex_)
        self.inserted = 0
        self.counts = [0] * (max(complex_.dim, 0) + 1)
        # number of present, unmatched cofaces of each simplex
        self.open_cofaces = [0] * len(complex_)

    def _pair(self, sigma, tau):
        cx = self.complex
        self.partner[sigma] = tau
        self.partner[tau] = sigma
        self.counts[cx.dims[sigma]] -= 1
        self.counts[cx.dims[tau]] -= 1
        for x in (sigma, tau):
            for f in cx.faces[x]:
                self.open_cofaces[f] -= 1

    def try_add_pair(self, sigma: int, tau: int) -> bool:
        """Match ``sigma`` with ``tau`` unless that closes a V-path."""
        cx = self.complex
        if sigma not in cx.faces[tau]:
            raise NotIncident(f"{cx.simplices[sigma]} is not a facet of {cx.simplices[tau]}")
        partner = self.partner
        if partner[sigma] != -1 or partner[tau] != -1:
            raise NotIncident("both simplices must be unmatched")
        if creates_cycle(cx, partner, sigma, tau):
            return False
        self._pair(sigma, tau)
        return True

    def insert_next(self) -> int:
        """Insert simplex ``self.inserted``; returns its matched face or -1."""
        tau = self.inserted
        cx = self.complex
        partner = self.partner
        self.inserted += 1
        self.counts[cx.dims[tau]] += 1
        faces = cx.faces[tau]
        if not faces:
            return -1
        open_cofaces = self.open_cofaces
        for f in faces:
            open_cofaces[f] += 1
        cofaces = cx.cofaces
        first, rest = [], []
        for sigma in faces:
            if partner[sigma] == -1:
                (first if open_cofaces[sigma] == 1 else rest).append(sigma)
        first.sort()
        rest.sort()
        for sigma in first + rest:
            # a free face (tau its only present coface) cannot lie on a cycle
            if cofaces[sigma][0] == tau or not creates_cycle(cx, partner, sigma, tau):
                self._pair(sigma, tau)
                return sigma
        return -1

    def matching(self) -> MorseMatching:
        n = self.inserted
        return MorseMatching.from_partner(self.complex.prefix(n), self.partner[:n])


@dataclass
class GreedyResult:
    """Per-level greedy critical counts and the final matching."""

    levels: list
    level_sizes: list
    counts: list
    matching: MorseMatching

    @property
    def totals(self) -> list:
        return [c.total for c in self.counts]

    def matching_at(self, level: int) -> MorseMatching:
        """The greedy matching as it stood once ``levels[level]`` was processed."""
        return self.matching.restrict(self.level_sizes[level])


def greedy_incremental(filtration: Filtration) -> GreedyResult:
    """Run the greedy matcher over ``filtration`` and record C(K_t) per level."""
    cx = filtration.complex
    matcher = IncrementalMatcher(cx)
    grades = filtration.grades
    counts = []
    sizes = []
    n = len(cx)
    for t in filtration.levels:
        while matcher.inserted < n and grades[matcher.inserted] <= t:
            matcher.insert_next()
        counts.append(CriticalCounts(tuple(matcher.counts)))
        sizes.append(matcher.inserted)
    return GreedyResult(
        levels=list(filtration.levels),
        level_sizes=sizes,
        counts=counts,
        matching=MorseMatching.from_partner(cx, matcher.partner),
    )
