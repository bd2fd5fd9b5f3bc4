"""Morse complexity profile of a filtration and Morse spike detection."""

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Optional

from .errors import MismatchedInputs
from .filtration import Filtration
from .morse.collapse import DEFAULT_NODE_BUDGET
from .morse.exact import DEFAULT_SIMPLEX_CAP, exact_min_morse
from .morse.greedy import GreedyResult, greedy_incremental
from .persistence import PersistencePairing, barcode_json, betti_at, is_iso_window, reduce


@dataclass
class LevelProfile:
    grade: float
    size: int
    betti: tuple
    greedy_counts: tuple
    exact_total: Optional[int] = None
    exact_per_dim: Optional[tuple] = None

    @property
    def greedy_total(self) -> int:
        return sum(self.greedy_counts)

    @property
    def exact(self) -> bool:
        return self.exact_total is not None

    def to_json(self) -> dict:
        return {
            "grade": self.grade,
            "betti": list(self.betti),
            "greedy_c": list(self.greedy_counts),
            "greedy_total": self.greedy_total,
            "exact_m": None if self.exact_per_dim is None else list(self.exact_per_dim),
            "exact_total": self.exact_total,
        }


@dataclass
class MorseProfile:
    levels: list
    greedy: GreedyResult = field(repr=False, default=None)

    @property
    def grades(self) -> list:
        return [lv.grade for lv in self.levels]

    @property
    def greedy_totals(self) -> list:
        return [lv.greedy_total for lv in self.levels]

    @property
    def exact_totals(self) -> list:
        return [lv.exact_total for lv in self.levels]

    @property
    def all_exact(self) -> bool:
        return all(lv.exact for lv in self.levels)


@dataclass(frozen=True)
class Spike:
    level: int
    grade: float
    confidence: str  # "exact" or "heuristic"
    values: tuple  # M (or C) at t-1, t, t+1
    homology_iso: bool = True

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "grade": self.grade,
            "confidence": self.confidence,
            "values": list(self.values),
        }


@dataclass
class SpikeReport:
    spikes: list

    @property
    def levels(self) -> list:
        return [s.level for s in self.spikes]

    def __len__(self):
        return len(self.spikes)


def morse_complexity_profile(
    filtration: Filtration,
    exact_cap: int = DEFAULT_SIMPLEX_CAP,
    node_budget: int = DEFAULT_NODE_BUDGET,
    pairing: Optional[PersistencePairing] = None,
    greedy: Optional[GreedyResult] = None,
) -> MorseProfile:
    """Betti numbers, greedy counts C(K_t) and, for small enough levels, exact M(K_t).

    Exact values are computed for every sublevel complex with at most
    ``exact_cap`` simplices.  ``pairing`` and ``greedy`` may be passed in
    when already computed for the same filtration.
    """
    if pairing is None:
        pairing = reduce(filtration)
    if greedy is None:
        greedy = greedy_incremental(filtration)
    width = max(filtration.dim, 0) + 1
    levels = []
    for i, t in enumerate(filtration.levels):
        size = greedy.level_sizes[i]
        level = LevelProfile(
            grade=t,
            size=size,
            betti=betti_at(pairing, t),
            greedy_counts=greedy.counts[i].counts,
        )
        if size <= exact_cap:
            res = exact_min_morse(
                filtration.complex.prefix(size), simplex_cap=exact_cap, collapse_budget=node_budget
            )
            level.exact_total = res.total
            level.exact_per_dim = tuple(res.per_dim) + (0,) * (width - len(res.per_dim))
        levels.append(level)
    return MorseProfile(levels, greedy)


def detect_spikes(profile: MorseProfile, pairing: PersistencePairing, mode: str = "auto") -> SpikeReport:
    """Levels t with unchanged homology across t-1..t+1 and a strict local maximum.

    In ``auto`` mode exact values are compared where all three levels have
    them (confidence ``exact``) and greedy counts otherwise (confidence
    ``heuristic``).  ``heuristic`` mode always compares greedy counts.
    """
    if mode not in ("auto", "heuristic"):
        raise ValueError(f"unknown mode {mode!r}")
    if tuple(profile.grades) != tuple(pairing.levels):
        raise MismatchedInputs("profile and pairing come from different filtrations")
    levels = profile.levels
    spikes = []
    for t in range(1, len(levels) - 1):
        window = levels[t - 1: t + 2]
        if not is_iso_window(pairing, window[0].grade, window[2].grade):
            continue
        if mode == "auto" and all(lv.exact for lv in window):
            values = tuple(lv.exact_total for lv in window)
            confidence = "exact"
        else:
            values = tuple(lv.greedy_total for lv in window)
            confidence = "heuristic"
        if values[1] > values[0] and values[1] > values[2]:
            spikes.append(Spike(t, levels[t].grade, confidence, values))
    return SpikeReport(spikes)


# output ---------------------------------------------------------------------


def profile_json(profile: MorseProfile, report: SpikeReport, pairing: Optional[PersistencePairing] = None) -> dict:
    out = {
        "levels": [lv.to_json() for lv in profile.levels],
        "spikes": [s.to_json() for s in report.spikes],
    }
    if pairing is not None:
        out["barcode"] = barcode_json(pairing)
    return out


def dumps_profile(profile, report, pairing=None) -> str:
    return json.dumps(profile_json(profile, report, pairing), indent=2) + "\n"


def profile_csv(profile: MorseProfile, report: SpikeReport) -> str:
    width = max((len(lv.betti) for lv in profile.levels), default=0)
    spiked = {s.level: s.confidence for s in report.spikes}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(
        ["level", "grade", "greedy_total", "exact_total", "spike"]
        + [f"betti_{k}" for k in range(width)]
        + [f"c_{k}" for k in range(width)]
        + [f"m_{k}" for k in range(width)]
    )
    for i, lv in enumerate(profile.levels):
        m = lv.exact_per_dim if lv.exact_per_dim is not None else [""] * width
        w.writerow(
            [i, repr(lv.grade), lv.greedy_total, "" if lv.exact_total is None else lv.exact_total, spiked.get(i, "")]
            + list(lv.betti)
            + list(lv.greedy_counts)
            + list(m)
        )
    return buf.getvalue()
