"""Command-line interface: ``morsespike <subcommand> ...``.

Exit codes: 0 success, 2 unreadable or malformed input, 3 input that parses
but fails validation, 4 a search cap or budget was hit.
"""

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from typing import Optional

from .catalog import EXAMPLES, catalog as load_catalog
from .errors import (
    BudgetExhausted,
    CapExceeded,
    MorseSpikeError,
    ParseError,
    UnknownName,
    ValidationError,
)
from .filtration import Filtration, parse_filtration, read_point_cloud, serialize_filtration, vietoris_rips
from .morse.collapse import DEFAULT_NODE_BUDGET, collapse_search
from .morse.exact import DEFAULT_SIMPLEX_CAP, exact_min_morse
from .morse.greedy import greedy_incremental
from .persistence import barcode_csv, barcode_json, betti_at, homology_stable_windows, reduce
from .profile import detect_spikes, dumps_profile, morse_complexity_profile, profile_csv

EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_LIMIT = 4


@dataclass
class RunConfig:
    subcommand: str
    input: Optional[str] = None
    catalog: Optional[str] = None
    max_dim: int = 2
    thresholds: Optional[list] = None
    exact_cap: int = DEFAULT_SIMPLEX_CAP
    node_budget: int = DEFAULT_NODE_BUDGET
    output: Optional[str] = None
    format: str = "json"
    auto_close: bool = False
    distance_matrix: bool = False
    level: Optional[float] = None
    heuristic: bool = False
    name: Optional[str] = None
    output_dir: str = "."

    def __post_init__(self):
        if self.exact_cap <= 0 or self.node_budget <= 0:
            raise ValidationError("caps must be positive")
        if self.max_dim < 0:
            raise ValidationError("--max-dim must be non-negative")


class _Exit(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Exit(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None


def _load_filtration(cfg: RunConfig) -> Filtration:
    if (cfg.input is None) == (cfg.catalog is None):
        raise _Exit(EXIT_PARSE, "give exactly one of an input file or --catalog")
    if cfg.catalog is not None:
        try:
            return load_catalog(cfg.catalog)
        except UnknownName as exc:
            raise _Exit(EXIT_PARSE, str(exc)) from None
    filt = parse_filtration(_read_text(cfg.input), auto_close=cfg.auto_close)
    if len(filt) == 0:
        raise ValidationError("filtration is empty")
    return filt


def _target_complex(cfg, filt):
    if cfg.level is None:
        return filt.complex
    return filt.sublevel(cfg.level)


class _Output:
    """Machine output goes to ``--output`` or stdout; the summary to whichever is free."""

    def __init__(self, cfg):
        self.path = cfg.output
        self.summary_stream = sys.stdout if self.path else sys.stderr

    def write(self, text):
        if self.path:
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)

    def say(self, line):
        print(line, file=self.summary_stream)


def _dump(obj):
    return json.dumps(obj, indent=2) + "\n"


def cmd_rips(cfg: RunConfig) -> int:
    if cfg.input is None:
        raise _Exit(EXIT_PARSE, "rips needs a point-cloud file")
    cloud = read_point_cloud(_read_text(cfg.input), distance_matrix=cfg.distance_matrix)
    filt = vietoris_rips(cloud, cfg.max_dim, cfg.thresholds)
    out = _Output(cfg)
    out.write(serialize_filtration(filt))
    out.say(f"N = {len(filt)} simplices, {len(filt.levels)} levels, dim {filt.dim}")
    return 0


def cmd_profile(cfg: RunConfig) -> int:
    filt = _load_filtration(cfg)
    t0 = time.perf_counter()
    pairing = reduce(filt)
    t1 = time.perf_counter()
    greedy = greedy_incremental(filt)
    t2 = time.perf_counter()
    profile = morse_complexity_profile(filt, cfg.exact_cap, cfg.node_budget, pairing=pairing, greedy=greedy)
    report = detect_spikes(profile, pairing, "heuristic" if cfg.heuristic else "auto")
    t3 = time.perf_counter()
    out = _Output(cfg)
    if cfg.format == "csv":
        out.write(profile_csv(profile, report))
    else:
        out.write(dumps_profile(profile, report, pairing))
    out.say(f"N = {len(filt)} simplices, {len(filt.levels)} levels")
    out.say("greedy C: " + " ".join(str(c) for c in profile.greedy_totals))
    if any(lv.exact for lv in profile.levels):
        out.say("exact M:  " + " ".join("-" if m is None else str(m) for m in profile.exact_totals))
    for s in report.spikes:
        out.say(f"spike at level {s.level} (grade {s.grade}), {s.confidence}: {s.values}")
    out.say(
        f"time: persistence {t1 - t0:.4f}s, matching {t2 - t1:.4f}s, "
        f"profile+exact {t3 - t2:.4f}s, total {t3 - t0:.4f}s"
    )
    return 0


def cmd_spikes(cfg: RunConfig) -> int:
    filt = _load_filtration(cfg)
    pairing = reduce(filt)
    profile = morse_complexity_profile(filt, cfg.exact_cap, cfg.node_budget, pairing=pairing)
    report = detect_spikes(profile, pairing, "heuristic" if cfg.heuristic else "auto")
    out = _Output(cfg)
    out.write(_dump({"spikes": [s.to_json() for s in report.spikes]}))
    out.say(f"{len(report)} spike(s)")
    return 0


def cmd_homology(cfg: RunConfig) -> int:
    filt = _load_filtration(cfg)
    pairing = reduce(filt)
    out = _Output(cfg)
    if cfg.format == "csv":
        out.write(barcode_csv(pairing))
    else:
        out.write(
            _dump(
                {
                    "barcode": barcode_json(pairing),
                    "betti": [{"grade": t, "betti": list(betti_at(pairing, t))} for t in filt.levels],
                    "stable_windows": [list(w) for w in homology_stable_windows(pairing)],
                }
            )
        )
    out.say(f"{len(pairing.intervals())} bars")
    return 0


def cmd_collapse(cfg: RunConfig) -> int:
    filt = _load_filtration(cfg)
    cx = _target_complex(cfg, filt)
    out = _Output(cfg)
    try:
        cert = collapse_search(cx, cfg.node_budget)
    except BudgetExhausted as exc:
        out.write(_dump({"collapsible": None, "states_visited": exc.states_visited}))
        out.say(f"inconclusive: {exc}")
        return EXIT_LIMIT
    out.write(cert.dumps() + "\n")
    verdict = "collapsible" if cert.collapsible else "not collapsible (search exhausted)"
    out.say(f"{verdict}; {cert.states_visited} states visited")
    return 0


def cmd_exact_morse(cfg: RunConfig) -> int:
    filt = _load_filtration(cfg)
    cx = _target_complex(cfg, filt)
    out = _Output(cfg)
    try:
        res = exact_min_morse(cx, cfg.exact_cap, collapse_budget=cfg.node_budget)
    except (CapExceeded, BudgetExhausted) as exc:
        out.say(str(exc))
        return EXIT_LIMIT
    out.write(_dump(res.to_json()))
    out.say(f"M = {res.total}, m = {list(res.per_dim)}")
    return 0


def cmd_example(cfg: RunConfig) -> int:
    entry = EXAMPLES.get(cfg.name)
    if entry is None:
        names = ", ".join(EXAMPLES)
        raise _Exit(EXIT_PARSE, f"unknown example {cfg.name!r}; choose from {names}")
    filt = load_catalog(entry["catalog"])
    os.makedirs(cfg.output_dir, exist_ok=True)
    filt_path = os.path.join(cfg.output_dir, f"{cfg.name}.filt")
    exp_path = os.path.join(cfg.output_dir, f"{cfg.name}.expected.json")
    with open(filt_path, "w", encoding="utf-8") as fh:
        fh.write(f"# {cfg.name}: catalog entry {entry['catalog']}\n")
        fh.write(serialize_filtration(filt))
    with open(exp_path, "w", encoding="utf-8") as fh:
        fh.write(_dump(entry["expected"]))
    print(f"wrote {filt_path} and {exp_path}")
    return 0


COMMANDS = {
    "rips": cmd_rips,
    "profile": cmd_profile,
    "spikes": cmd_spikes,
    "homology": cmd_homology,
    "collapse": cmd_collapse,
    "exact-morse": cmd_exact_morse,
    "example": cmd_example,
}


def _thresholds(text):
    if text in (None, "all-distances"):
        return None
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad threshold list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morsespike",
        description="Persistent homology and Morse complexity profiles of filtered simplicial complexes.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("input", nargs="?", help="filtration file ('-' for stdin)")
            p.add_argument("--catalog", help="use a built-in filtration instead of a file")
            p.add_argument("--auto-close", action="store_true", help="add missing faces instead of failing")
        p.add_argument("-o", "--output", help="write machine output here instead of stdout")
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--exact-cap", type=int, default=DEFAULT_SIMPLEX_CAP)
        p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)

    p = sub.add_parser("rips", help="build a Vietoris-Rips filtration from points")
    p.add_argument("input", help="CSV point cloud, or a distance matrix with --distance-matrix")
    p.add_argument("--max-dim", type=int, default=2)
    p.add_argument("--thresholds", type=_thresholds, default=None,
                   help="comma-separated scale values, or 'all-distances' (default)")
    p.add_argument("--distance-matrix", action="store_true")
    common(p, with_input=False)

    for name, help_text in [
        ("profile", "Morse complexity profile, barcode and spikes"),
        ("spikes", "Morse spikes only"),
        ("homology", "barcode and Betti numbers"),
    ]:
        p = sub.add_parser(name, help=help_text)
        common(p)
        if name != "homology":
            p.add_argument("--heuristic", action="store_true", help="compare greedy counts only")

    for name, help_text in [
        ("collapse", "search for a collapse to a vertex"),
        ("exact-morse", "exact minimal Morse number"),
    ]:
        p = sub.add_parser(name, help=help_text)
        common(p)
        p.add_argument("--level", type=float, default=None, help="use the sublevel complex at this grade")

    p = sub.add_parser("example", help="write a catalog filtration and its expected results")
    p.add_argument("name", help="dunce-hat, pentagon or point")
    p.add_argument("--output-dir", default=".")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fields = {k.replace("-", "_"): v for k, v in vars(args).items()}
    try:
        cfg = RunConfig(**{k: v for k, v in fields.items() if k in RunConfig.__dataclass_fields__})
        return COMMANDS[cfg.subcommand](cfg)
    except _Exit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (CapExceeded, BudgetExhausted) as exc:
        print(f"limit reached: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except MorseSpikeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
