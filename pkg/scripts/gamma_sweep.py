#!/usr/bin/env python3
"""Track the spurious eigenvalue as gamma crosses the Legendre index 1/2.

At fixed resolution the positive eigenvalue of the weighted-residual
discretization escapes to +inf as gamma increases to 1/2 and comes back
from -inf beyond it.  Emits one CSV row per gamma with the extreme finite
eigenvalue and class counts.

    python scripts/gamma_sweep.py --n 24 --lo 0.0 --hi 1.0 --step 0.05
"""

import argparse
import sys

import numpy as np

from gegtau.pencil import MethodConfig
from gegtau.spectra import spectrum_report


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=24)
    ap.add_argument("--lo", type=float, default=0.0)
    ap.add_argument("--hi", type=float, default=1.0)
    ap.add_argument("--step", type=float, default=0.05)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    rows = ["gamma,n,n_spurious,n_infinite,extreme_re"]
    g = args.lo
    while g <= args.hi + 1e-12:
        rep = spectrum_report(MethodConfig("tau", round(g, 10), args.n, parity_split=True))
        finite = rep.finite_eigenvalues()
        extreme = max(finite, key=abs).real if finite else float("nan")
        rows.append(
            f"{g:.6g},{args.n},{rep.count('spurious_positive')},"
            f"{rep.n_infinite},{extreme:.10e}"
        )
        g += args.step
    text = "\n".join(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
