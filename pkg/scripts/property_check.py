#!/usr/bin/env python3
"""
Run the randomized correctness checks.

Draws seeded random knowledge bases and checks that variable elimination
agrees with joint enumeration, that renaming individuals changes nothing but
names, and that an unobserved new individual leaves posteriors alone.

Usage:
    python scripts/property_check.py [--check CHECK] [--trials N] [--seed SEED]

Options:
    --check CHECK   Only run one check (oracle, renaming, irrelevance)
    --trials N      Knowledge bases per check (default SCHEMANET_PROPERTY_TRIALS)
    --seed SEED     Random seed (default SCHEMANET_SEED)
"""

import argparse
import random
import sys
import time
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root / "src"))

from schemanet.config import PROPERTY_TRIALS, SEED
from schemanet.properties import TRIALS, PropertyViolation


def run_check(name: str, trials: int, seed: int) -> bool:
    print("\n" + "=" * 60)
    print(f"{name.upper()} ({trials} knowledge bases, seed {seed})")
    print("=" * 60)

    rng = random.Random(f"{seed}:{name}")
    trial = TRIALS[name]
    worst = 0.0
    started = time.perf_counter()
    for index in range(trials):
        try:
            worst = max(worst, trial(rng))
        except PropertyViolation as e:
            print(f"  FAILED at trial {index}: {e}")
            return False
    print(f"  passed; largest difference {worst:.3g} in {time.perf_counter() - started:.1f}s")
    return True


def main():
    parser = argparse.ArgumentParser(description="Randomized correctness checks")
    parser.add_argument("--check", choices=sorted(TRIALS), help="Only run one check")
    parser.add_argument("--trials", type=int, default=PROPERTY_TRIALS, help="Knowledge bases per check")
    parser.add_argument("--seed", type=int, default=SEED, help="Random seed")
    args = parser.parse_args()

    checks = [args.check] if args.check else list(TRIALS)
    failed = [
        name for name in checks
        if not run_check(name, args.trials, args.seed)
    ]

    print("\n" + "=" * 60)
    print("SUMMARY")
    print("=" * 60)
    for name in checks:
        print(f"  {name}: {'FAILED' if name in failed else 'ok'}")
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
