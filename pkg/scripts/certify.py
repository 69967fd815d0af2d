#!/usr/bin/env python3
"""Reproduce the full certification sweep and write every artifact.

Runs the symmetry scans, builds and verifies the plane preserver and its
max-sum liftings, plays the max-sum acute trichotomy against the line
oracle, searches sections for Euclidean ones, and samples orthogonality
graphs.  All outputs are deterministic given --seed.

Usage:
    python scripts/certify.py --out out/ [--seed 0] [--fast]
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import bjorth as bj
from bjorth.serialize import write_csv, write_json


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--fast", action="store_true",
                    help="smaller grids and sample counts for a quick pass")
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    grid = 256 if args.fast else 1024
    radon_grid = 180 if args.fast else 720
    samples = 1000 if args.fast else 10000
    candidates = 200 if args.fast else 1000
    t_start = time.perf_counter()
    summary = {"seed": args.seed, "tool_version": bj.__version__, "checks": {}}

    print(f"bjorth {bj.__version__} certification sweep (seed={args.seed})")

    # Symmetry scans across the conjugate family and the asymmetric planes.
    for label, plane in [
        ("dayjames_1.5", bj.DayJames(1.5, 3.0)),
        ("dayjames_2", bj.DayJames(2.0, 2.0)),
        ("dayjames_3", bj.DayJames(3.0, 1.5)),
        ("dayjames_4", bj.DayJames(4.0, 4.0 / 3.0)),
        ("lp_1.5", bj.Lp(2, 1.5)),
        ("lp_3", bj.Lp(2, 3.0)),
        ("lp_4", bj.Lp(2, 4.0)),
    ]:
        scan = bj.radon_defect(plane, grid=radon_grid)
        write_csv(out / f"radon_{label}.csv",
                  ["theta", "theta_star", "forward_residual", "reverse_deficit"],
                  scan.rows)
        summary["checks"][f"radon_{label}"] = scan.defect
        print(f"  radon {label:14s} defect={scan.defect:.3e}")

    # Plane preserver: pairing table, unit circle, verification report.
    dj = bj.DayJames(3.0, 1.5)
    pmap = bj.build_preserver(dj, grid)
    pmap.eta.to_csv(out / "eta_dayjames_3.csv")
    rows = []
    import numpy as np
    for t in np.linspace(0.0, 2 * np.pi, 720, endpoint=False):
        u = bj.unit_vector_at_angle(dj, float(t))
        rows.append((float(t), float(u[0]), float(u[1])))
    write_csv(out / "circle_dayjames_3.csv", ["theta", "x", "y"], rows)

    report = bj.verify_preserver(pmap, samples, seed=args.seed)
    write_json(out / "preserver_dayjames_3.json", report.to_dict())
    summary["checks"]["preserver_dayjames_3"] = report.passed
    print(f"  preserver dayjames:3:1.5  pass={report.passed} "
          f"disagreements={report.disagreements}")

    # Max-sum liftings.
    for n in (1, 2, 8):
        sm = bj.compose_inf_sum([pmap, bj.IdentityMap(bj.LInf(n))])
        rep = bj.verify_preserver(sm, samples, seed=args.seed)
        write_json(out / f"preserver_sum_linf{n}.json", rep.to_dict())
        summary["checks"][f"preserver_sum_linf{n}"] = rep.passed
        print(f"  preserver (+) linf:{n}     pass={rep.passed} "
              f"disagreements={rep.disagreements}")

    # Acute trichotomy on max-sums.
    for label, sx, sy in [
        ("l2_linf1", bj.Lp(2, 2.0), bj.LInf(1)),
        ("dj3_linf2", dj, bj.LInf(2)),
    ]:
        rep = bj.sum_acute_equivalence_check(sx, sy, n_samples=samples, seed=args.seed)
        write_json(out / f"sum_acute_{label}.json", rep.to_dict())
        summary["checks"][f"sum_acute_{label}"] = rep.passed
        print(f"  sum-acute {label:12s} pass={rep.passed} "
              f"excluded={rep.excluded_fraction:.4f}")

    # Euclidean-section search on both sum families.
    for label, space in [
        ("l2_linf1", bj.InfSum((bj.Lp(2, 2.0), bj.LInf(1)))),
        ("dj3_linf1", bj.InfSum((dj, bj.LInf(1)))),
    ]:
        cands = bj.section_candidates(space, candidates, seed=args.seed)
        flagged = bj.euclidean_section_search(space, cands, pair_samples=64, seed=args.seed)
        ids = [i for i, c in enumerate(cands) if any(c is f for f in flagged)]
        write_json(out / f"sections_{label}.json", {
            "space": bj.format_space(space),
            "candidates": len(cands),
            "flagged": ids,
            "seed": args.seed,
            "tool_version": bj.__version__,
        })
        summary["checks"][f"sections_{label}_flagged"] = len(ids)
        print(f"  sections {label:13s} flagged={len(ids)}")

    # Orthograph of the Radon plane: every direction pairs with exactly one.
    graph = bj.sample_orthograph(dj, 180, margin=1e-7)
    graph.write_edges(out / "orthograph_dayjames_3.txt")
    summary["checks"]["orthograph_edges"] = len(graph.edge_list())
    print(f"  orthograph dayjames:3:1.5 edges={len(graph.edge_list())}")

    summary["elapsed_seconds"] = time.perf_counter() - t_start
    write_json(out / "summary.json", summary)
    print(f"done in {summary['elapsed_seconds']:.1f}s; artifacts in {out}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
