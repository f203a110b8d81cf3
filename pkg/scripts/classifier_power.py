#!/usr/bin/env python3
"""Power study of the normal-versus-exponential test.

Draws replicate samples from both generators (exponential y = -log(1-u)
and half-normal x = sqrt(-2 log(1-u)), sharing uniforms) and reports how
often the test picks the true parent at each sample size.

Usage:
    python scripts/classifier_power.py --reps 200 --n-grid 400 1000 4000
"""

import argparse

import numpy as np

from gumbeltail import KPolicy, RngSpec, SortedSample, classify, sorted_uniforms
from gumbeltail.select import EXPONENTIAL, NORMAL


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-grid", nargs="+", type=int, default=[400, 1000, 4000, 10000])
    parser.add_argument("--reps", type=int, default=200)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--policy", default="sqrt")
    args = parser.parse_args()

    policy = KPolicy.parse(args.policy)
    print(f"policy {policy.spec()}, reps {args.reps}, seed {args.seed}")
    print(f"{'n':>8} {'exp correct':>12} {'norm correct':>13}")
    for block, n in enumerate(args.n_grid):
        hits_exp = hits_norm = 0
        for r in range(args.reps):
            u = sorted_uniforms(n, RngSpec(seed=args.seed, stream_id=block * args.reps + r))
            y = SortedSample(-np.log(1.0 - u))
            x = SortedSample(np.sqrt(-2.0 * np.log(1.0 - u)))
            if classify(y, policy).chosen == EXPONENTIAL:
                hits_exp += 1
            if classify(x, policy).chosen == NORMAL:
                hits_norm += 1
        print(f"{n:>8} {hits_exp / args.reps:>12.1%} {hits_norm / args.reps:>13.1%}")


if __name__ == "__main__":
    main()
