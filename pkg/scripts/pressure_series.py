"""Pressure rate log Z_n / n for the demo potentials, with strata split.

    python3 scripts/pressure_series.py --max-n 400 > pressure.csv
"""

import argparse
import csv
import sys

from gapshift.checks import demo_potential, markov_potential
from gapshift.core import ShiftParams
from gapshift.pressure import partition_series


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=400)
    ap.add_argument("--step", type=int, default=50)
    args = ap.parse_args()

    runs = [("demo", demo_potential(), ShiftParams.make(3, "3/2", 2)),
            ("demo", demo_potential(), ShiftParams.make(3, "1/2", 2)),   # below the threshold
            ("markov", markov_potential(), ShiftParams.make(3, 2, 3))]
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["potential", "tau", "L", "n", "rate", "P", "rate_minus_P", "multi_rate",
                  "tau_ok", "strata_rel_error"])
    for name, f, params in runs:
        for r in partition_series(args.max_n, f, params):
            if r.n % args.step:
                continue
            out.writerow([name, params.tau, params.num_colors, r.n, f"{r.rate:.10f}",
                          f"{r.base_pressure:.10f}", f"{r.rate - r.base_pressure:.10f}",
                          f"{r.multi_rate:.10f}", r.tau_ok, f"{r.strata_rel_error:.2e}"])


if __name__ == "__main__":
    main()
