"""Run the piece-stripping decomposition over random transducers.

Reports how often a map splits into open pieces completely, how many rounds
and pieces that takes, and how often the piecewise-homeomorphism certificate
is issued.

    python scripts/survey_decomposition.py --count 200
"""

import argparse
import collections
import random

from cantortopo.decomposition import kernel_decompose
from cantortopo.samples import random_transducer


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--states", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--budget-depth", type=int, default=6)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    by_status = collections.Counter()
    rounds = collections.Counter()
    pieces = collections.Counter()
    certified = 0
    for _ in range(args.count):
        t = random_transducer(rng, args.states)
        r = kernel_decompose(t, budget_depth=args.budget_depth, depth_cap=8)
        by_status[r.status.value] += 1
        rounds[len(r.trace)] += 1
        pieces[len(r.pieces)] += 1
        certified += r.piecewise_homeomorphism
    print("status:", dict(sorted(by_status.items())))
    print("rounds:", dict(sorted(rounds.items())))
    print("pieces:", dict(sorted(pieces.items())))
    print(f"certified piecewise homeomorphisms: {certified}/{args.count}")


if __name__ == "__main__":
    main()
