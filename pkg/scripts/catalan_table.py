"""Print Catalan numbers, partial sums and d_n, checked against the tree oracle."""

import argparse
import sys

from planeaut.catalan import catalan_csv, catalan_number, count_tree_monomials, d_series


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--T", type=int, default=20)
    ap.add_argument("--oracle-upto", type=int, default=12)
    args = ap.parse_args()
    for n in range(1, min(args.oracle_upto, args.T) + 1):
        if count_tree_monomials(n) != catalan_number(n):
            sys.exit(f"tree count disagrees with c_{n}")
    for eps in (0, 1):
        d_series(args.T, eps)  # raises if a coefficient is not an integer
    sys.stdout.write(catalan_csv(args.T))


if __name__ == "__main__":
    main()
