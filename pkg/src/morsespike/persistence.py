"""Persistent homology over F2 by boundary-matrix column reduction."""

import csv
import io
import json
from dataclasses import dataclass, field

from .filtration import Filtration


@dataclass(frozen=True)
class PersistencePairing:
    """Birth/death pairing of the simplices of a filtration.

    ``pairs`` holds ``(birth_id, death_id, dim)`` and ``essentials`` holds
    ``(birth_id, dim)``; every simplex id occurs exactly once across both.
    ``grades`` resolves simplex ids to filtration values.
    """

    pairs: tuple
    essentials: tuple
    grades: tuple = field(repr=False)
    levels: tuple = field(repr=False)
    dim: int = 0

    def intervals(self, include_empty: bool = False):
        """``(dim, birth_grade, death_grade_or_None)`` for every bar.

        Zero-length bars (birth and death at the same grade) are skipped
        unless ``include_empty`` is set.
        """
        g = self.grades
        out = []
        for b, d, k in self.pairs:
            if include_empty or g[d] > g[b]:
                out.append((k, g[b], g[d]))
        out.extend((k, g[b], None) for b, k in self.essentials)
        out.sort(key=lambda bar: (bar[0], bar[1], float("inf") if bar[2] is None else bar[2]))
        return out


def reduce(filtration: Filtration) -> PersistencePairing:
    """Standard column reduction with clearing.

    Columns are F2 vectors encoded as Python ints (bit ``i`` set when
    simplex ``i`` is in the chain), so column addition is a single XOR and
    the pivot is ``bit_length() - 1``.
    """
    cx = filtration.complex
    n = len(cx)
    dims = cx.dims
    pivot_of = {}  # low row -> column
    paired = [False] * n
    pairs = []
    # process high dimensions first so that clearing can skip killed columns
    order = sorted(range(n), key=lambda i: -dims[i])
    reduced = {}
    for j in order:
        if dims[j] == 0 or paired[j]:
            continue
        col = 0
        for f in cx.faces[j]:
            col |= 1 << f
        while col:
            low = col.bit_length() - 1
            other = pivot_of.get(low)
            if other is None:
                break
            col ^= reduced[other]
        if col:
            low = col.bit_length() - 1
            pivot_of[low] = j
            reduced[j] = col
            paired[low] = paired[j] = True
            pairs.append((low, j, dims[low]))
    essentials = [(i, dims[i]) for i in range(n) if not paired[i]]
    pairs.sort(key=lambda p: p[1])
    return PersistencePairing(
        pairs=tuple(pairs),
        essentials=tuple(essentials),
        grades=tuple(filtration.grades),
        levels=tuple(filtration.levels),
        dim=max(filtration.dim, 0),
    )


def betti_at(pairing: PersistencePairing, t: float) -> tuple:
    """Betti numbers b_0..b_dim of the sublevel complex at ``t``."""
    g = pairing.grades
    betti = [0] * (pairing.dim + 1)
    for b, d, k in pairing.pairs:
        if g[b] <= t < g[d]:
            betti[k] += 1
    for b, k in pairing.essentials:
        if g[b] <= t:
            betti[k] += 1
    return tuple(betti)


def persistent_betti(pairing: PersistencePairing, i: float, p: float, k: int) -> int:
    """Rank of H_k(K_i) -> H_k(K_{i+p})."""
    if p < 0:
        raise ValueError("p must be non-negative")
    g = pairing.grades
    end = i + p
    count = sum(1 for b, d, dim in pairing.pairs if dim == k and g[b] <= i and g[d] > end)
    count += sum(1 for b, dim in pairing.essentials if dim == k and g[b] <= i)
    return count


def _change_grades(pairing):
    """Grades at which some bar of positive length starts or ends."""
    g = pairing.grades
    events = set()
    for b, d, _ in pairing.pairs:
        if g[d] > g[b]:
            events.add(g[b])
            events.add(g[d])
    events.update(g[b] for b, _ in pairing.essentials)
    return events


def is_iso_window(pairing: PersistencePairing, a: float, b: float) -> bool:
    """True when every inclusion K_s -> K_t with a <= s <= t <= b is a homology iso.

    Equivalently, no bar of positive length is born or dies in ``(a, b]``.
    """
    if a > b:
        raise ValueError("need a <= b")
    return not any(a < e <= b for e in _change_grades(pairing))


def homology_stable_windows(pairing: PersistencePairing) -> list:
    """Maximal ``(first_level, last_level)`` runs with homology isomorphisms throughout.

    This is only the homological shadow of a torsion-eligible window: it is
    necessary for every inclusion to be a homotopy equivalence, not sufficient.
    """
    levels = pairing.levels
    if not levels:
        return []
    events = _change_grades(pairing)
    windows = []
    start = levels[0]
    for prev, cur in zip(levels, levels[1:]):
        if cur in events:
            windows.append((start, prev))
            start = cur
    windows.append((start, levels[-1]))
    return windows


def barcode_json(pairing: PersistencePairing) -> list:
    return [{"dim": k, "birth": b, "death": d} for k, b, d in pairing.intervals()]


def barcode_csv(pairing: PersistencePairing) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["dim", "birth", "death"])
    for k, b, d in pairing.intervals():
        w.writerow([k, repr(b), "" if d is None else repr(d)])
    return buf.getvalue()


def dumps_barcode(pairing: PersistencePairing) -> str:
    return json.dumps(barcode_json(pairing), indent=2)
