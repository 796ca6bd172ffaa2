#!/usr/bin/env python3
"""Search for incomparability witnesses between the two pair refinements
and dump them as JSON.

Usage:
    python scripts/find_witnesses.py [seed] [trials] [out.json]
"""

import json
import sys

from orthobound import bound_comparison_search
from orthobound.jsonio import corridor_to_json, family_to_json, vector_to_json


def witness_payload(w) -> dict:
    return {
        "direction": w.direction,
        "trial": w.trial,
        "refined_sqrt": w.refined_sqrt,
        "refined_midpoint": w.refined_midpoint,
        "margin": w.margin,
        "instance": {
            "family": family_to_json(w.family),
            "x": vector_to_json(w.x),
            "y": vector_to_json(w.y),
            **corridor_to_json(w.cx),
            "gamma": corridor_to_json(w.cy)["phi"],
            "Gamma": corridor_to_json(w.cy)["Phi"],
        },
    }


def main() -> int:
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 7
    trials = int(sys.argv[2]) if len(sys.argv) > 2 else 10_000
    out = sys.argv[3] if len(sys.argv) > 3 else "witnesses.json"
    result = bound_comparison_search(seed, trials)
    payload = {
        "seed": seed,
        "trials_used": result.trials_used,
        "sqrt_tighter": witness_payload(result.sqrt_tighter),
        "midpoint_tighter": witness_payload(result.midpoint_tighter),
    }
    with open(out, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
    print(f"witnesses for both directions written to {out} "
          f"(trials used: {result.trials_used})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
