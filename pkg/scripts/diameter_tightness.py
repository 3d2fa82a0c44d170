"""How often does D(G ◊ H) reach D(G) + 2?

Samples connected base graphs by size and factor size, and prints the share
of products whose diameter meets the bound, with and without empty factors.
"""

import argparse
import collections

from coronalab.corona import generalized_edge_corona
from coronalab.families import gnp_connected, make_rng, random_gnp
from coronalab.graph import metric_summary


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    hits = collections.Counter()
    seen = collections.Counter()
    for n in range(2, 9):
        for lo in (0, 1):
            rng = make_rng(args.seed, n, lo)
            for _ in range(args.samples):
                g = gnp_connected(n, rng.choice((0.3, 0.5, 0.8)), rng)
                factors = [random_gnp(rng.randint(lo, 3), 0.5, rng) for _ in range(g.m)]
                d = metric_summary(generalized_edge_corona(g, factors).graph).diameter
                bound = metric_summary(g).diameter + 2
                assert d <= bound, (g, factors)
                seen[n, lo] += 1
                hits[n, lo] += d == bound

    print("n(G)  factors>=0  factors>=1")
    for n in range(2, 9):
        print(f"{n:>4}  {hits[n, 0] / seen[n, 0]:>10.2%}  {hits[n, 1] / seen[n, 1]:>10.2%}")


if __name__ == "__main__":
    main()
