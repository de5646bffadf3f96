#!/usr/bin/env python3
"""Search for curves with rich rational torsion structure.

Scans the c = b normal-form family over primes p = 1 (mod 25) for curves
carrying a rational point of order 25 above the marked 5-point, and
optionally a fully rational 5-torsion on top of it.  These are the
instances the operator and cyclicity checks run on.

Usage:
    python scripts/find_torsion_instances.py --primes 101 151 251
    python scripts/find_torsion_instances.py --primes 251 --full-basis
"""

import argparse
import json

from radicant.curve import (
    Point,
    degree5_curve,
    group_order,
    normal_form_discriminant,
    points_of_order,
    rational_point_of_order,
)
from radicant.field import make_field


def scan(primes, full_basis):
    out = []
    for p in primes:
        F = make_field(p)
        for bi in range(1, p):
            b = F.el(bi)
            if normal_form_discriminant(b, b).is_zero():
                continue
            E = degree5_curve(b)
            n = group_order(E)
            if n % 25 != 0:
                continue
            R = rational_point_of_order(E, 25, above=Point(F.zero, F.zero))
            if R is None:
                continue
            if full_basis and len(points_of_order(E, 5)) != 24:
                continue
            out.append(
                {"p": p, "b": bi, "group_order": n, "R": [R.x.to_int(), R.y.to_int()]}
            )
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes", type=int, nargs="+", default=[101, 151])
    ap.add_argument("--full-basis", action="store_true",
                    help="also require fully rational 5-torsion")
    args = ap.parse_args()
    for row in scan(args.primes, args.full_basis):
        print(json.dumps(row, sort_keys=True))


if __name__ == "__main__":
    main()
