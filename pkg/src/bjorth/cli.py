"""Command line front end.

Verbs map one-to-one onto library operations; every run prints the tool
version (and seed where one applies) and exits 0 on pass/success, 1 on a
verification failure (reports are still written), 2 on usage or parse
errors.  The BJORTH_OUTDIR environment variable sets the default directory
for relative output paths.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import (
    radon_defect,
    sample_orthograph,
    section_candidates,
    smoothness_probe,
    sum_acute_equivalence_check,
    euclidean_section_search,
)
from .errors import BjorthError
from .orthogonality import MARGIN, classify_angle, is_bj_orthogonal, is_mutually_orthogonal
from .preserver import build_preserver, verify_preserver
from .serialize import fmt_float, write_csv, write_json
from .spaces import (
    NormedSpace,
    format_space,
    load_space_file,
    parse_space,
    unit_vector_at_angle,
)


def load_space(descriptor: str) -> NormedSpace:
    """Parse a compact space string, or read a JSON space file."""
    path = Path(descriptor)
    if descriptor.endswith(".json") or path.is_file():
        return load_space_file(path)
    return parse_space(descriptor)


def _out_path(name: str | None) -> Path | None:
    if name is None:
        return None
    p = Path(name)
    if p.is_absolute():
        return p
    return Path(os.environ.get("BJORTH_OUTDIR", ".")) / p


def _coords(text: str) -> np.ndarray:
    try:
        return np.array([float(t) for t in text.split(",")])
    except ValueError as exc:
        raise BjorthError(f"cannot parse coordinates {text!r}") from exc


def _print_header(seed=None) -> None:
    line = f"bjorth {__version__}"
    if seed is not None:
        line += f" seed={seed}"
    print(line)


def cmd_check(args) -> int:
    space = load_space(args.space)
    _print_header()
    x, y = _coords(args.x), _coords(args.y)
    rel = classify_angle(space, x, y, args.margin)
    print(rel.tag.value)
    rev = classify_angle(space, y, x, args.margin)
    print(f"reverse: {rev.tag.value}")
    mutual = is_mutually_orthogonal(space, x, y, args.margin)
    print(f"mutual: {'yes' if mutual else 'no'}")
    return 0 if is_bj_orthogonal(space, x, y, args.margin) else 1


def cmd_radon(args) -> int:
    space = load_space(args.space)
    _print_header()
    scan = radon_defect(space, grid=args.grid, margin=args.margin)
    print(f"space: {format_space(space)}")
    print(f"defect: {fmt_float(scan.defect)}")
    if scan.witness is not None:
        print(f"witness: theta={fmt_float(scan.witness[0])} theta_star={fmt_float(scan.witness[1])}")
    out = _out_path(args.out)
    if out is not None:
        write_csv(out, ["theta", "theta_star", "forward_residual", "reverse_deficit"], scan.rows)
        print(f"wrote {out}")
    return 0 if scan.defect <= args.margin else 1


def cmd_smooth(args) -> int:
    space = load_space(args.space)
    _print_header(seed=args.seed)
    probe = smoothness_probe(space, samples=args.samples, seed=args.seed)
    print(f"smooth: {'yes' if probe.smooth else 'no'}")
    print(f"worst_gap: {fmt_float(probe.worst_gap)}")
    return 0 if probe.smooth else 1


def cmd_preserver_build(args) -> int:
    plane = load_space(args.target)
    _print_header()
    pmap = build_preserver(plane, grid_size=args.grid)
    table = pmap.eta
    print(f"target: {format_space(plane)}")
    print(f"nodes: {len(table.grid)}")
    print(f"endpoints: {fmt_float(float(table.values[0]))} {fmt_float(float(table.values[-1]))}")
    print(f"max_residual: {fmt_float(float(table.residuals.max()))}")
    out = _out_path(args.out)
    if out is not None:
        table.to_csv(out)
        print(f"wrote {out}")
    return 0


def cmd_preserver_verify(args) -> int:
    plane = load_space(args.target)
    _print_header(seed=args.seed)
    pmap = build_preserver(plane, grid_size=args.grid)
    report = verify_preserver(pmap, args.samples, margin=args.margin, seed=args.seed)
    print(f"target: {format_space(plane)}")
    print(f"pass: {'yes' if report.passed else 'no'}")
    print(f"disagreements: {report.disagreements}")
    print(f"max_norm_error: {fmt_float(report.max_norm_error)}")
    out = _out_path(args.out)
    if out is not None:
        write_json(out, report.to_dict())
        print(f"wrote {out}")
    return 0 if report.passed else 1


def cmd_sections(args) -> int:
    space = load_space(args.space)
    _print_header(seed=args.seed)
    candidates = section_candidates(space, args.candidates, seed=args.seed)
    flagged = euclidean_section_search(
        space, candidates, pair_samples=args.pair_samples, tol=args.tol, seed=args.seed
    )
    ids = [i for i, c in enumerate(candidates) if any(c is f for f in flagged)]
    print(f"space: {format_space(space)}")
    print(f"candidates: {len(candidates)}")
    print(f"flagged: {len(flagged)}")
    out = _out_path(args.out)
    if out is not None:
        write_json(out, {
            "space": format_space(space),
            "candidates": len(candidates),
            "flagged": ids,
            "pair_samples": args.pair_samples,
            "tol": args.tol,
            "seed": args.seed,
            "tool_version": __version__,
        })
        print(f"wrote {out}")
    return 0


def cmd_sum_acute(args) -> int:
    space_x = load_space(args.x_space)
    space_y = load_space(args.y_space)
    _print_header(seed=args.seed)
    report = sum_acute_equivalence_check(
        space_x, space_y, n_samples=args.samples, margin=args.margin, seed=args.seed
    )
    print(f"spaces: {format_space(space_x)} (+) {format_space(space_y)}")
    print(f"disagreements: {report.disagreements}")
    print(f"excluded_fraction: {fmt_float(report.excluded_fraction)}")
    out = _out_path(args.out)
    if out is not None:
        write_json(out, report.to_dict())
        print(f"wrote {out}")
    return 0 if report.passed else 1


def cmd_orthograph(args) -> int:
    space = load_space(args.space)
    _print_header()
    if args.angles is not None:
        directions = [float(t) for t in args.angles.split(",")]
    else:
        directions = args.directions
    graph = sample_orthograph(space, directions, margin=args.margin)
    print(f"vertices: {len(graph.vectors)}")
    print(f"edges: {len(graph.edge_list())}")
    out = _out_path(args.out)
    if out is not None:
        graph.write_edges(out)
        print(f"wrote {out}")
    return 0


def cmd_circle(args) -> int:
    space = load_space(args.space)
    _print_header()
    rows = []
    for t in np.linspace(0.0, 2.0 * math.pi, args.grid, endpoint=False):
        u = unit_vector_at_angle(space, float(t))
        rows.append((float(t), float(u[0]), float(u[1])))
    out = _out_path(args.out)
    write_csv(out, ["theta", "x", "y"], rows)
    print(f"wrote {out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bjorth",
        description="Birkhoff-James orthogonality toolkit for finite-dimensional normed spaces.",
    )
    parser.add_argument("--version", action="version", version=f"bjorth {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", help="classify the angle relation of a vector pair")
    p.add_argument("--space", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--margin", type=float, default=MARGIN)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("radon", help="scan a plane for orthogonality symmetry")
    p.add_argument("--space", required=True)
    p.add_argument("--grid", type=int, default=720)
    p.add_argument("--margin", type=float, default=1e-8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_radon)

    p = sub.add_parser("smooth", help="probe norm smoothness")
    p.add_argument("--space", required=True)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_smooth)

    p = sub.add_parser("preserver-build", help="tabulate the plane preserver pairing")
    p.add_argument("--target", required=True)
    p.add_argument("--grid", type=int, default=1024)
    p.add_argument("--out")
    p.set_defaults(func=cmd_preserver_build)

    p = sub.add_parser("preserver-verify", help="build and certify a plane preserver")
    p.add_argument("--target", required=True)
    p.add_argument("--grid", type=int, default=1024)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--margin", type=float, default=MARGIN)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_preserver_verify)

    p = sub.add_parser("sections", help="search 2-D sections for Euclidean ones")
    p.add_argument("--space", required=True)
    p.add_argument("--candidates", type=int, default=1000)
    p.add_argument("--pair-samples", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sections)

    p = sub.add_parser("sum-acute", help="check the max-sum acute-angle trichotomy")
    p.add_argument("--x-space", required=True)
    p.add_argument("--y-space", required=True)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--margin", type=float, default=MARGIN)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sum_acute)

    p = sub.add_parser("orthograph", help="sample the mutual-orthogonality graph")
    p.add_argument("--space", required=True)
    p.add_argument("--directions", type=int, default=360)
    p.add_argument("--angles", help="explicit comma-separated angles (plane only)")
    p.add_argument("--margin", type=float, default=MARGIN)
    p.add_argument("--out")
    p.set_defaults(func=cmd_orthograph)

    p = sub.add_parser("circle", help="sample the unit circle of a plane to CSV")
    p.add_argument("--space", required=True)
    p.add_argument("--grid", type=int, default=360)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_circle)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (BjorthError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
