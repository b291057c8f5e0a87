#!/usr/bin/env python3
"""Locate the smallest degree producing complex eigenvalues for gamma > 7/2.

The tau spectrum is provably real for 1/2 < gamma <= 7/2; beyond that
complex pairs appear once the polynomial order is high enough.  This scans
degrees upward and reports the onset per gamma.

    python scripts/complex_onset.py --gammas 3.6 3.75 4 4.5 5 --n-max 64
"""

import argparse
import sys

from gegtau.pencil import MethodConfig
from gegtau.spectra import spectrum_report


def onset_degree(gamma: float, n_max: int) -> int | None:
    for n in range(8, n_max + 1):
        rep = spectrum_report(MethodConfig("tau", gamma, n, parity_split=True))
        if rep.count("complex_pair") > 0:
            return n
    return None


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gammas", type=float, nargs="+", default=[3.6, 3.75, 4.0, 4.5, 5.0])
    ap.add_argument("--n-max", type=int, default=64)
    args = ap.parse_args()

    print("gamma,onset_n")
    for g in args.gammas:
        n = onset_degree(g, args.n_max)
        print(f"{g:.6g},{'none' if n is None else n}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
