"""Persistent homology and discrete Morse complexity profiles of filtered simplicial complexes."""

from .catalog import CATALOG_NAMES, catalog, dunce_hat
from .complex import SimplicialComplex
from .errors import *  # noqa: F401,F403
from .filtration import (
    Filtration,
    PointCloud,
    cone,
    parse_filtration,
    read_point_cloud,
    serialize_filtration,
    sublevel,
    vietoris_rips,
)
from .morse import (
    CollapseCertificate,
    CriticalCounts,
    MinimalMorse,
    MorseMatching,
    collapse_search,
    critical_counts,
    exact_min_morse,
    greedy_incremental,
    is_acyclic,
)
from .persistence import (
    PersistencePairing,
    betti_at,
    homology_stable_windows,
    is_iso_window,
    persistent_betti,
    reduce,
)
from .profile import MorseProfile, SpikeReport, detect_spikes, morse_complexity_profile

__version__ = "0.1.0"
