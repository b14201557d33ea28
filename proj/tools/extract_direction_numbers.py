#!/usr/bin/env python3
"""Write a Joe-Kuo style direction-number file from scipy's bundled table.

scipy ships the new-joe-kuo-6.21201 direction numbers as an npz archive with
a `poly` array (full primitive-polynomial coefficient integers) and a `vinit`
array (initial direction numbers). Row i covers dimension i+1; row 0 is the
trivial first dimension, which the text format omits. The text row for
dimension d is "d s a m_1 ... m_s" where s is the polynomial degree and a
packs the interior coefficients: poly = 2^s + 2a + 1.
"""

import argparse
import os

import numpy as np
import scipy.stats


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", required=True, help="output text file")
    ap.add_argument(
        "--dimensions",
        type=int,
        default=21201,
        help="highest dimension to emit (default: all 21201)",
    )
    args = ap.parse_args()

    npz = os.path.join(
        os.path.dirname(scipy.stats.__file__), "_sobol_direction_numbers.npz"
    )
    data = np.load(npz)
    poly = data["poly"]
    vinit = data["vinit"]

    last = min(args.dimensions, len(poly))
    with open(args.out, "w") as out:
        out.write("d       s       a       m_i\n")
        for i in range(1, last):
            d = i + 1
            p = int(poly[i])
            s = p.bit_length() - 1
            a = (p - (1 << s) - 1) // 2
            m = " ".join(str(int(x)) for x in vinit[i][:s])
            out.write(f"{d} {s} {a} {m}\n")
    print(f"wrote dimensions 2..{last} to {args.out}")


if __name__ == "__main__":
    main()
