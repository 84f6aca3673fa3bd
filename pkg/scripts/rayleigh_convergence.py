#!/usr/bin/env python3
"""Sweep the discrete-KS distance to the standard Rayleigh law over n.

Evaluates the exact finite-n laws on their lattices (no sampling) and
writes a CSV suitable for plotting the Theta(1/sqrt n) convergence.
"""

import argparse
import csv
import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from collisort.montecarlo import exact_law_ks_vs_rayleigh  # noqa: E402


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-grid", type=int, nargs="+",
                        default=[100, 200, 400, 1000, 2000, 4000, 10000, 40000])
    parser.add_argument("--out", default="rayleigh_convergence.csv")
    args = parser.parse_args()

    rows = []
    for n in args.n_grid:
        ks_pass = exact_law_ks_vs_rayleigh("pass", n)
        ks_coll = exact_law_ks_vs_rayleigh("collision", n)
        rows.append({
            "n": n,
            "ks_pass": ks_pass,
            "ks_collision": ks_coll,
            "ks_pass_times_sqrt_n": ks_pass * math.sqrt(n),
            "ks_collision_times_sqrt_n": ks_coll * math.sqrt(n),
        })
        print(f"n={n:>7}  KS(pass)={ks_pass:.6f}  KS(collision)={ks_coll:.6f}  "
              f"sqrt(n)*KS = {ks_pass * math.sqrt(n):.4f} / {ks_coll * math.sqrt(n):.4f}")

    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
