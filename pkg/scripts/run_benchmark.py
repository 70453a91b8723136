#!/usr/bin/env python3
"""Reproduce the success-rate comparison between the edge-clearing solver and
the naive baseline on a seeded preset roadmap.

Protocol: one roadmap per preset, 25 seeded scenarios of 40 start/goal pairs;
for each agent count n the first n pairs are solved under a wall-clock limit;
a run counts as solved only after independent plan validation.  Writes the
per-(mode, n) CSV and prints a small text summary.

Example:
    python scripts/run_benchmark.py --preset sparse-like --n 2..40 \
        --jobs 4 --out results/sparse.csv
"""

import argparse
import os
import sys
import time
from pathlib import Path

from mapfla.harness import PRESETS, gen_preset, gen_scenario, run_bench


def parse_range(spec: str) -> list[int]:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(spec)]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--preset", choices=sorted(PRESETS), default="sparse-like")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--scenarios", type=int, default=25)
    parser.add_argument("--pairs", type=int, default=40)
    parser.add_argument("--modes", default="la,naive")
    parser.add_argument("--n", default="2..40")
    parser.add_argument("--time-limit", type=float, default=30.0)
    parser.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    parser.add_argument("--out", default=None)
    args = parser.parse_args()

    roadmap, radius = gen_preset(args.preset, args.seed)
    scenarios = [
        gen_scenario(roadmap, args.pairs, seed=args.seed * 10_000 + i, name=args.preset)
        for i in range(args.scenarios)
    ]
    modes = [m.strip() for m in args.modes.split(",") if m.strip()]
    n_values = parse_range(args.n)
    print(
        f"{args.preset}: |V|={roadmap.n_vertices} |E|={roadmap.n_edges} r={radius}; "
        f"{len(scenarios)} scenarios, n in {n_values[0]}..{n_values[-1]}, "
        f"{len(modes)} mode(s), {args.jobs} job(s)",
        file=sys.stderr,
    )
    started = time.time()
    report = run_bench(
        {args.preset: (roadmap, radius)},
        {args.preset: scenarios},
        modes,
        n_values,
        args.time_limit,
        jobs=args.jobs,
    )
    print(f"finished in {time.time() - started:.0f}s", file=sys.stderr)

    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(report.to_csv(), encoding="utf-8")
        print(f"wrote {out}", file=sys.stderr)
    else:
        print(report.to_csv(), end="")

    print("\nsuccess rate by agent count:", file=sys.stderr)
    header = "  n: " + " ".join(f"{m:>6}" for m in modes)
    print(header, file=sys.stderr)
    for n in n_values:
        cells = [report.cell(args.preset, m, n).success_rate for m in modes]
        print(f"{n:>4} " + " ".join(f"{c:6.2f}" for c in cells), file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
