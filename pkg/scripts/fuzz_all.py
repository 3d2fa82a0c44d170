"""Run a seeded fuzz campaign over the whole catalog and print a per-theorem tally.

    python3 scripts/fuzz_all.py --trials 200 --seed 1 --out report.jsonl
"""

import argparse
import collections

from coronalab.harness import FuzzConfig, run_fuzz_campaign


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--max-base", type=int, default=6)
    ap.add_argument("--max-factor", type=int, default=3)
    ap.add_argument("--max-product", type=int, default=40)
    ap.add_argument("--workers", type=int, default=4)
    ap.add_argument("--out")
    args = ap.parse_args()

    cfg = FuzzConfig(master_seed=args.seed, trials=args.trials, max_base_vertices=args.max_base,
                     max_factor_vertices=args.max_factor, max_product_vertices=args.max_product,
                     workers=args.workers, timing=True)
    report = run_fuzz_campaign(cfg)
    if args.out:
        with open(args.out, "w") as fh:
            fh.writelines(line + "\n" for line in report.lines())

    tally = collections.defaultdict(collections.Counter)
    for r in report.records:
        tally[r["theorem"]][r["verdict"] if r["verdict"] != "inconclusive" else f"inconclusive/{r['reason']}"] += 1
    width = max(map(len, tally))
    for tid, counts in tally.items():
        print(f"{tid:<{width}}  " + "  ".join(f"{k}={v}" for k, v in sorted(counts.items())))
    print("totals:", report.footer)
    return 1 if report.refuted else 0


if __name__ == "__main__":
    raise SystemExit(main())
