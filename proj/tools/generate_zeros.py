#!/usr/bin/env python3
"""Regenerate the bundled zeta-zero table.

Writes the imaginary parts of the first N nontrivial zeros of zeta, one per
line, using mpmath.zetazero. Resumable: existing lines in the output file are
kept and generation continues from the next index.
"""
import argparse
import os
import sys

import mpmath as mp


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=10000)
    ap.add_argument("--digits", type=int, default=30,
                    help="significant digits written per ordinate")
    ap.add_argument("--output", default="data/zeta_zeros_10000.txt")
    args = ap.parse_args()

    mp.mp.dps = args.digits + 4
    header = [
        "# Imaginary parts of the first %d nontrivial zeros of zeta(s)" % args.count,
        "# generated with mpmath %s zetazero, %d significant digits" % (mp.__version__, args.digits),
    ]
    have = []
    if os.path.exists(args.output):
        with open(args.output) as fh:
            have = [ln for ln in fh.read().splitlines() if ln and not ln.startswith("#")]
    with open(args.output, "w") as fh:
        fh.write("\n".join(header) + "\n")
        for ln in have:
            fh.write(ln + "\n")
        fh.flush()
        for n in range(len(have) + 1, args.count + 1):
            z = mp.zetazero(n)
            fh.write(mp.nstr(z.imag, args.digits, strip_zeros=False) + "\n")
            if n % 100 == 0:
                fh.flush()
                print(n, file=sys.stderr, flush=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
