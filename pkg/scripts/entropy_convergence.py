"""Growth rate log|W_n|/n against log nu and the multi-colour bound.

    python3 scripts/entropy_convergence.py --max-n 800 --step 100 > entropy.csv
"""

import argparse
import csv
import math
import sys

from gapshift.core import ShiftParams
from gapshift.enumeration import count_series, log_int

SETTINGS = [(2, "1/4", 2), (2, 1, 2), (2, 2, 2), (2, 3, 3), (3, "3/2", 2)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=500)
    ap.add_argument("--step", type=int, default=50)
    args = ap.parse_args()

    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["nu", "tau", "L", "n", "rate", "rate_minus_log_nu", "bicolored_rate"])
    for nu, tau, L in SETTINGS:
        params = ShiftParams.make(nu, tau, L)
        series = count_series(args.max_n, params)
        for n in range(args.step, args.max_n + 1, args.step):
            rate = float(log_int(series.total[n]) / n)
            multi = float(log_int(series.multi[n]) / n) if series.multi[n] else float("nan")
            out.writerow([nu, tau, L, n, f"{rate:.10f}", f"{rate - math.log(nu):.10f}",
                          f"{multi:.10f}"])


if __name__ == "__main__":
    main()
