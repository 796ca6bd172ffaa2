#!/usr/bin/env python3
"""Run the sharpness sweeps for all three targets and write CSVs.

Usage:
    python scripts/run_sweep.py [outdir]
"""

import sys
from pathlib import Path

from orthobound.experiments import SWEEP_TARGETS, sharpness_sweep, sweep_rows_to_csv

EPS = [0.5, 0.3, 0.1, 0.05, 0.01, 0.005, 0.001]


def main() -> int:
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("sweep_results")
    outdir.mkdir(parents=True, exist_ok=True)
    for target in SWEEP_TARGETS:
        rows = sharpness_sweep(target, EPS)
        path = outdir / f"sweep_{target}.csv"
        path.write_text(sweep_rows_to_csv(rows))
        worst = min(r.ratio for r in rows)
        best = max(r.ratio for r in rows)
        print(f"{target}: {len(rows)} rows, ratio range [{worst:.6f}, {best:.9f}] -> {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
