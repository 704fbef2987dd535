"""How long are derivative chains for random regular sets?

Prints a histogram of (status, steps) over seeded random RegSets, and the
first example reaching the longest chain.

    python scripts/survey_resolvability.py --count 500 --states 6
"""

import argparse
import collections
import random

from cantortopo.omega import format_formula
from cantortopo.resolvability import check_resolvable
from cantortopo.samples import random_regset


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=300)
    ap.add_argument("--states", type=int, default=6)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    hist = collections.Counter()
    longest = None
    for _ in range(args.count):
        e = random_regset(rng, args.states)
        v = check_resolvable(e)
        hist[v.status.value, v.steps] += 1
        if longest is None or v.steps > longest[0]:
            longest = (v.steps, e, v.status.value)
    for (status, steps), n in sorted(hist.items()):
        print(f"{status:14s} steps={steps:2d} count={n}")
    steps, e, status = longest
    print(f"longest chain: {steps} steps ({status}) trans={e.trans} accept={format_formula(e.accept)}")


if __name__ == "__main__":
    main()
