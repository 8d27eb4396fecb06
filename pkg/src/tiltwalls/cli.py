"""Command-line surface: deterministic file outputs for every subsystem.

Rationals on the command line are `p/q` or decimal strings, both parsed
exactly (no binary-float round trip).  All JSON output is key-sorted and all
generators are seeded, so identical configurations produce byte-identical
files.  Precondition failures exit with status 2 and a machine-readable
JSON object on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import __version__
from .exceptional import (DimensionVector, LatticeSolveError, MutationError,
                          apply_word, canonical_collection, ext_shift,
                          mu_ordering_warnings)
from .quiver import (KroneckerRep, coprime_check, destabilizer_search, kronecker,
                     moduli_dimension, random_rep, theta_from_point)
from .regions import (RegionWindow, StabilityUnknownError, curves_to_svg,
                      extract_curves, quiver_region_code, rasterize)
from .search import run_search
from .stability import StabilityPoint, wall_poly
from .varieties import (UnsupportedVarietyError, VarietyMismatchError, euler_pairing,
                        frac, get_variety, parse_registry)
from .walls import candidate_walls, instanton_dim, instanton_report

ERROR_CODES = {
    UnsupportedVarietyError: "unknown-variety",
    VarietyMismatchError: "variety-mismatch",
    StabilityUnknownError: "outside-certified-window",
    MutationError: "invalid-mutation",
    LatticeSolveError: "not-a-lattice-class",
    ValueError: "invalid-argument",
    ZeroDivisionError: "invalid-argument",
    OSError: "io-error",
}

WALL_COLORS = ("purple", "blue", "red", "green", "orange", "teal")


def _error_code(exc: Exception) -> str:
    for cls, code in ERROR_CODES.items():
        if isinstance(exc, cls):
            return code
    return "internal-error"


def _parse_window(text: str, grid: str) -> RegionWindow:
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 4:
        raise ValueError("window must be beta_min,beta_max,t_min,t_max")
    nb, _, nt = grid.partition("x")
    return RegionWindow.of(*(frac(part) for part in parts), int(nb), int(nt or nb))


def _parse_points(path: str, s: Fraction) -> List[StabilityPoint]:
    points = []
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line or line.startswith("#") or line.lower().startswith("beta"):
                continue
            beta_text, _, t_text = line.partition(",")
            points.append(StabilityPoint(frac(beta_text.strip()), frac(t_text.strip()), s))
    if not points:
        raise ValueError(f"no stability points found in {path}")
    return points


def _write(path: Optional[str], data: str):
    if path is None or path == "-":
        sys.stdout.write(data)
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(data)


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _resolve_variety(args):
    registry = None
    if args.registry:
        with open(args.registry, "r", encoding="utf-8") as handle:
            registry = parse_registry(handle.read())
    return get_variety(args.variety, registry)


def cmd_region(args) -> int:
    variety = _resolve_variety(args)
    s = frac(args.s)
    window = _parse_window(args.window, args.grid)
    collection = canonical_collection(variety)
    if args.mutations:
        collection = apply_word(collection, args.mutations.split(","))
    shifted = ext_shift(collection)
    raster = rasterize(lambda p: quiver_region_code(shifted, p), window, s)
    _write(args.out_csv, raster.to_csv())
    if args.out_svg:
        effective = shifted.effective_characters()
        polylines = []
        for i in range(4):
            for j in range(i + 1, 4):
                wall = wall_poly(effective[i], effective[j], s)
                if not wall.identically_zero:
                    polylines.extend(extract_curves(wall, window))
        _write(args.out_svg, curves_to_svg(polylines, window, WALL_COLORS))
    return 0


def cmd_walls(args) -> int:
    variety = _resolve_variety(args)
    s = frac(args.s)
    collection = canonical_collection(variety)
    window = _parse_window(args.window, args.grid) if args.window else None
    report = instanton_report(args.charge, collection, s, window)
    if args.candidates:
        window = window or RegionWindow.of("-3/2", "3/2", "1/100", "3/2", 72, 48)
        report["candidate_walls"] = [
            record.to_json()
            for record in candidate_walls(instanton_dim(args.charge), collection, s, window)]
    _write(args.out, _dump_json(report))
    return 0


def cmd_mutate(args) -> int:
    variety = _resolve_variety(args)
    collection = canonical_collection(variety)
    word = [step for step in args.word.split(",") if step] if args.word else []
    collection = apply_word(collection, word)
    if args.ext_shift:
        collection = ext_shift(collection)
    payload = collection.to_json()
    payload["word"] = ",".join(step.strip().upper() for step in word)
    payload["mu_ordering_warnings"] = mu_ordering_warnings(collection)
    payload["spans_lattice"] = collection.spans_lattice()
    _write(args.out, _dump_json(payload))
    return 0


def cmd_search(args) -> int:
    variety = _resolve_variety(args)
    s = frac(args.s)
    points = _parse_points(args.points, s)
    reports = run_search(variety, points, args.depth)
    payload = {
        "variety": variety.name,
        "depth": args.depth,
        "s": str(s),
        "reports": [report.to_json() for report in reports],
        "total_passing": sum(len(report.passing) for report in reports),
    }
    _write(args.out, _dump_json(payload))
    return 0


def cmd_quiver(args) -> int:
    quiver = kronecker(args.kronecker)
    p_text, _, q_text = args.dims.partition(",")
    dims = (int(p_text), int(q_text))
    if args.theta == "auto":
        theta = (Fraction(dims[1]), Fraction(-dims[0]))
    else:
        parts = args.theta.split(",")
        if len(parts) != 2:
            raise ValueError("theta must be 'auto' or two rationals a,b")
        theta = (frac(parts[0]), frac(parts[1]))
    if args.rep:
        with open(args.rep, "r", encoding="utf-8") as handle:
            rep = KroneckerRep.from_json(json.load(handle))
        if rep.dims != dims or rep.n != args.kronecker:
            raise ValueError("representation file does not match --kronecker/--dims")
    else:
        rep = random_rep(args.kronecker, dims[0], dims[1], args.seed)
    witness = destabilizer_search(rep, theta, budget=args.budget, seed=args.seed)
    payload = {
        "quiver": {"vertices": list(quiver.vertices), "arrows": len(quiver.arrows)},
        "dims": list(dims),
        "theta": [str(x) for x in theta],
        "moduli_dimension": moduli_dimension(quiver, dims),
        "theta_coprime": coprime_check(theta, dims),
        "seed": args.seed,
        "budget": args.budget,
        "representation": rep.to_json(),
        "destabilizer": None if witness is None else witness.to_json(),
        "verdict": "destabilized" if witness is not None else
                   "no-witness-found (not a stability proof)",
    }
    _write(args.out, _dump_json(payload))
    return 0


def cmd_report(args) -> int:
    variety = _resolve_variety(args)
    s = frac(args.s)
    collection = canonical_collection(variety)
    walls = instanton_report(args.charge, collection, s)
    dim = instanton_dim(args.charge)
    sample = StabilityPoint.of(args.beta, args.t, s)
    shifted = ext_shift(collection)
    kron_arrows = int(euler_pairing(collection.objects[2].ch, collection.objects[3].ch))
    quiver = kronecker(kron_arrows)
    kron_dims = (args.charge, 2 * args.charge + 2)
    theta4 = theta_from_point(shifted, dim, sample)
    payload = {
        "variety": variety.name,
        "charge": args.charge,
        "s": str(s),
        "sample_point": {"beta": str(sample.beta), "t": str(sample.t)},
        "region_code_at_sample": quiver_region_code(shifted, sample),
        "walls": walls,
        "quiver": {
            "kronecker_arrows": kron_arrows,
            "dims": list(kron_dims),
            "moduli_dimension": moduli_dimension(quiver, kron_dims),
            "theta_at_sample": [str(x) for x in theta4],
        },
    }
    _write(args.out, _dump_json(payload))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tiltwalls",
        description="Exact tilt/Bridgeland stability landscape of rank-1 Fano threefolds")
    parser.add_argument("--version", action="version", version=f"tiltwalls {__version__}")
    parser.add_argument("--registry", help="plain-text variety registry file")
    sub = parser.add_subparsers(dest="command", required=True)

    region = sub.add_parser("region", help="rasterize a quiver region and its wall curves")
    region.add_argument("--variety", required=True)
    region.add_argument("--s", default="1/3")
    region.add_argument("--window", required=True, help="beta_min,beta_max,t_min,t_max")
    region.add_argument("--grid", default="100x100", help="NxM cells")
    region.add_argument("--mutations", default="", help="comma word, e.g. L0,R2")
    region.add_argument("--out-csv", default="-")
    region.add_argument("--out-svg")
    region.set_defaults(func=cmd_region)

    walls = sub.add_parser("walls", help="instanton wall analysis for a charge")
    walls.add_argument("--variety", required=True)
    walls.add_argument("--charge", type=int, required=True)
    walls.add_argument("--s", default="1/3")
    walls.add_argument("--window")
    walls.add_argument("--grid", default="72x48")
    walls.add_argument("--candidates", action="store_true",
                       help="also enumerate filtered subvector walls")
    walls.add_argument("--out", default="-")
    walls.set_defaults(func=cmd_walls)

    mutate = sub.add_parser("mutate", help="apply a mutation word to the canonical collection")
    mutate.add_argument("--variety", required=True)
    mutate.add_argument("--word", default="")
    mutate.add_argument("--ext-shift", action="store_true")
    mutate.add_argument("--out", default="-")
    mutate.set_defaults(func=cmd_mutate)

    search = sub.add_parser("search", help="mutation-orbit heart search over points")
    search.add_argument("--variety", required=True)
    search.add_argument("--points", required=True, help="CSV of beta,t lines")
    search.add_argument("--depth", type=int, default=2)
    search.add_argument("--s", default="1/3")
    search.add_argument("--out", default="-")
    search.set_defaults(func=cmd_search)

    quiver = sub.add_parser("quiver", help="Kronecker stability numerics")
    quiver.add_argument("--kronecker", type=int, required=True)
    quiver.add_argument("--dims", required=True, help="source,target dimensions")
    quiver.add_argument("--theta", default="auto")
    quiver.add_argument("--seed", type=int, default=0)
    quiver.add_argument("--budget", type=int, default=200)
    quiver.add_argument("--rep", help="JSON representation file")
    quiver.add_argument("--out", default="-")
    quiver.set_defaults(func=cmd_quiver)

    report = sub.add_parser("report", help="combined wall/region/quiver summary")
    report.add_argument("--variety", required=True)
    report.add_argument("--charge", type=int, required=True)
    report.add_argument("--s", default="1/3")
    report.add_argument("--beta", default="-1/2")
    report.add_argument("--t", default="1/4")
    report.add_argument("--out", default="-")
    report.set_defaults(func=cmd_report)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, ZeroDivisionError) as exc:
        payload = {"error": _error_code(exc), "message": str(exc)}
        sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
