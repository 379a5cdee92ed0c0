"""Seeded round trip: random normal form -> pair -> normal form, with timing per field."""

import argparse
import random
import time

from planeaut.fields import Field
from planeaut.freeassoc import dicks_check, lift_tame
from planeaut.jvdk import decompose, random_normal_form, recompose


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--fields", default="F2,F5,Q")
    ap.add_argument("--lift", action="store_true", help="also lift to K<x,y> and run the Dicks test")
    args = ap.parse_args()
    for name in args.fields.split(","):
        field = Field.parse(name)
        rng = random.Random(args.seed)
        bad = 0
        start = time.perf_counter()
        for _ in range(args.samples):
            nf = random_normal_form(field, rng, max_degree=8 if args.lift else 12)
            phi = recompose(nf)
            ok = decompose(phi) == nf and phi.degree() == nf.degree()
            if args.lift:
                pair = lift_tame(nf)
                ok = ok and pair.abelianize() == phi and dicks_check(pair) != 0
            bad += not ok
        print(f"{name}: {args.samples} samples, {bad} failures, {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
