#!/usr/bin/env python3
"""Print the headline reference tables: exact values next to expansions.

Covers the 7-digit probability trio, the n = 10^4 moment set, and the
cross-estimation picture for a few (n, m) pairs.
"""

import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from collisort import asymptotics, exact  # noqa: E402


def main() -> None:
    print("== first-collision survival vs pass-count CDF ==")
    print(f"{'quantity':<34}{'value':>14}")
    print(f"{'P(collision survival) n=365 m=22':<34}{float(exact.collision_sf(365, 22)):>14.7f}")
    print(f"{'P(pass CDF)           n=365 m=22':<34}{float(exact.pass_cdf(365, 22)):>14.7f}")
    print(f"{'P(collision survival) n=358 m=22':<34}{float(exact.collision_sf(358, 22)):>14.7f}")

    print("\n== scaled pass statistic at n = 10^4 ==")
    n = 10**4
    stats = asymptotics.scaled_pass_stats_approx(n)
    rows = [
        ("mean", float(exact.scaled_pass_moment(n, 1)), stats.mean_approx),
        ("second moment", float(exact.scaled_pass_moment(n, 2)), stats.second_moment_approx),
        ("variance", float(exact.scaled_pass_variance(n)), stats.variance_approx),
    ]
    print(f"{'statistic':<16}{'exact':>20}{'expansion':>20}{'rel err':>12}")
    for name, exact_v, approx_v in rows:
        print(f"{name:<16}{exact_v:>20.14f}{approx_v:>20.14f}"
              f"{abs(approx_v - exact_v) / exact_v:>12.2e}")

    print("\n== cross-estimation: collision estimate of the pass CDF ==")
    print(f"{'n':>6}{'m':>5}{'plain rel err':>15}{'shifted rel err':>17}{'best shift':>12}")
    for n, m in ((365, 22), (1000, 16), (2000, 40), (5000, 40)):
        common = exact.relative_error_common(n, m)
        shifted = exact.relative_error_shifted(n, m)
        brute, asym = exact.optimal_shift(n, m)
        print(f"{n:>6}{m:>5}{common.relative_error:>15.3e}"
              f"{shifted.relative_error:>17.3e}{brute:>8} ({asym:.1f})")

    print("\n== Rayleigh limit of both scaled statistics ==")
    target = math.sqrt(math.pi / 2.0)
    print(f"{'n':>8}{'E[pass stat]':>16}{'E[coll stat]':>16}{'limit':>10}")
    for n in (100, 1000, 10000):
        ex = float(exact.scaled_pass_moment(n, 1))
        ez = float(exact.scaled_collision_moment(n, 1))
        print(f"{n:>8}{ex:>16.6f}{ez:>16.6f}{target:>10.6f}")


if __name__ == "__main__":
    main()
