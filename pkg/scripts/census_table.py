"""Write a census CSV comparing the counting polynomial with brute force.

Usage: python3 scripts/census_table.py [--bruteforce] [--coordinates] [--out FILE]
"""

import argparse
import sys

from planeaut.stratify import CensusConfig, census_csv, census_row

SMALL = [(1, 2), (2, 2), (2, 3), (3, 2)]
FORMULA_ONLY = [(4, 2), (6, 2), (12, 2), (2, 5), (2, 7)]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bruteforce", action="store_true", help="also run exhaustive search on small cases")
    ap.add_argument("--coordinates", action="store_true", help="count coordinates instead of automorphisms")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", help="output path (default stdout)")
    args = ap.parse_args()
    config = CensusConfig(workers=args.workers)
    rows = [census_row(n, q, bruteforce=args.bruteforce, coordinates=args.coordinates, config=config)
            for n, q in SMALL]
    rows += [census_row(n, q, coordinates=args.coordinates) for n, q in FORMULA_ONLY]
    text = census_csv(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
