"""Discrete Morse matchings: acyclicity, greedy matching, collapses and exact minima."""

from .collapse import CollapseCertificate, collapse_search, free_pairs, replay
from .exact import MinimalMorse, exact_min_morse
from .greedy import GreedyResult, IncrementalMatcher, greedy_incremental
from .matching import CriticalCounts, MorseMatching, critical_counts, is_acyclic, validate

__all__ = [
    "CollapseCertificate",
    "CriticalCounts",
    "GreedyResult",
    "IncrementalMatcher",
    "MinimalMorse",
    "MorseMatching",
    "collapse_search",
    "critical_counts",
    "exact_min_morse",
    "free_pairs",
    "greedy_incremental",
    "is_acyclic",
    "replay",
    "validate",
]
