#!/usr/bin/env python3
"""Long-running fuzz campaign over every bound, with shardable seeds.

Usage:
    python scripts/fuzz_campaign.py [count] [seed] [mode]
"""

import json
import sys

from orthobound import FuzzConfig, run_fuzz


def main() -> int:
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 2_000
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0
    mode = sys.argv[3] if len(sys.argv) > 3 else "complex"
    summary = run_fuzz(FuzzConfig(seed=seed, count=count, mode=mode))
    print(json.dumps(
        {
            "count": count,
            "seed": seed,
            "mode": mode,
            "evaluated": summary.evaluated,
            "rejected": summary.rejected,
            "violations": summary.violations,
            "min_slack": {k: summary.min_slack[k] for k in sorted(summary.min_slack)},
        },
        indent=2,
        sort_keys=True,
    ))
    return 0 if summary.ok else 1


if __name__ == "__main__":
    sys.exit(main())
