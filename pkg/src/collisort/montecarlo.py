"""Seeded, reproducible samplers and empirical verification summaries.

Streams are PCG64 generators keyed by (seed, stream_id) through numpy's
SeedSequence spawn keys, so distinct stream ids give independent-quality
substreams and identical ids reproduce draws bit for bit.  Permutation
statistics are sampled through inversion tables (entry i uniform on
{0..n-i}), the same provenance used by the exact laws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import exact
from .distributions import PoissonLaw, poisson_pmf_vector
from .poisson_approx import birthday_family, inversion_family, stein_chen_bound
from .sorters import (
    ResourceBoundError,
    bubble_sort_instrumented,
    permutation_from_inversion_table,
)

DEFAULT_SEED = 0x5EED_B0B5
SORT_DIRECT_LIMIT = 24  # run real instrumented sorts up to this n
_KS_GRID_FACTOR = 7.5  # lattice scan reaches where exp(-x^2/2) < 1e-12

LAW_KINDS = ("pass", "collision")
MATCH_KINDS = ("birthday", "inversion")


@dataclass(frozen=True)
class SeededStream:
    seed: int = DEFAULT_SEED
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True)
class EmpiricalSummary:
    kind: str
    n: int
    m: int | None
    sample_count: int
    mean: float
    variance: float
    se_mean: float
    ks_exact: float | None = None
    ks_rayleigh: float | None = None
    tv_distance: float | None = None
    tv_se: float | None = None
    reference_mu: float | None = None


# ---------------------------------------------------------------------------
# scalar samplers
# ---------------------------------------------------------------------------


def sample_first_collision(n: int, stream: SeededStream) -> int:
    """Persons drawn until the first repeated birthday (always >= 2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = stream.generator()
    seen: set[int] = set()
    count = 0
    while True:
        count += 1
        day = int(rng.integers(0, n))
        if day in seen:
            return count
        seen.add(day)


def sample_inversion_table(n: int, stream: SeededStream) -> tuple[int, ...]:
    """One inversion table: independent entries uniform on {0..n-i}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = stream.generator()
    return tuple(int(rng.integers(0, n - i + 1)) for i in range(1, n + 1))


# ---------------------------------------------------------------------------
# vectorized batch samplers
# ---------------------------------------------------------------------------


def sample_pass_counts(n: int, trials: int, stream: SeededStream) -> np.ndarray:
    """Pass counts of uniform random permutations, via inversion tables.

    The pass count is max(table entry) + 1.  Columns are drawn in index
    order; once every remaining support is no larger than the smallest
    running maximum the tail columns provably cannot change any maximum
    and are skipped.
    """
    if n < 1 or trials < 1:
        raise ValueError("need n >= 1 and trials >= 1")
    rng = stream.generator()
    maxes = np.zeros(trials, dtype=np.int64)
    for i in range(1, n + 1):
        draws = rng.integers(0, n - i + 1, size=trials)
        np.maximum(maxes, draws, out=maxes)
        if n - i - 1 <= maxes.min():
            break
    return maxes + 1


def sample_collision_counts(
    n: int, trials: int, stream: SeededStream, chunk: int | None = None
) -> np.ndarray:
    """First-collision counts for the birthday process on n days."""
    if n < 1 or trials < 1:
        raise ValueError("need n >= 1 and trials >= 1")
    rng = stream.generator()
    block = min(n + 1, int(_KS_GRID_FACTOR * math.sqrt(n)) + 8)
    if chunk is None:  # keep the per-chunk draw matrix near 32 MB
        chunk = max(1024, 8_000_000 // block)
    out = np.empty(trials, dtype=np.int64)
    done = 0
    while done < trials:
        rows = min(chunk, trials - done)
        draws = rng.integers(0, n, size=(rows, block), dtype=np.int32)
        c = _first_repeat_position(draws)
        pending = np.flatnonzero(c < 0)
        history = draws[pending]
        while pending.size:  # pigeonhole resolves every row by width n+1
            extra = rng.integers(0, n, size=(pending.size, block), dtype=np.int32)
            history = np.concatenate([history, extra], axis=1)
            c2 = _first_repeat_position(history)
            solved = c2 >= 0
            c[pending[solved]] = c2[solved]
            pending = pending[~solved]
            history = history[~solved]
        out[done : done + rows] = c + 1
        done += rows
    return out


def _first_repeat_position(draws: np.ndarray) -> np.ndarray:
    """Per row: 0-based index of the first value seen before, or -1."""
    order = np.argsort(draws, axis=1, kind="stable")
    ranked = np.take_along_axis(draws, order, axis=1)
    eq = ranked[:, 1:] == ranked[:, :-1]
    later = np.where(eq, order[:, 1:], np.iinfo(np.int64).max)
    first = later.min(axis=1)
    return np.where(first == np.iinfo(np.int64).max, -1, first)


# ---------------------------------------------------------------------------
# exact lattice CDFs and the discrete KS statistic
# ---------------------------------------------------------------------------


def _pass_exact_cdf(n: int, length: int) -> np.ndarray:
    """F at lattice deficits d = 0..length-1: P{n - P <= d} = 1 - P{P <= n-d-1}."""
    surv = np.zeros(length + 1)
    for m, rho in exact.pass_survival_sequence(n):
        if m > length:
            break
        surv[m] = float(rho)
    cdf = 1.0 - surv[1 : length + 1]
    return cdf


def _collision_exact_cdf(n: int, length: int) -> np.ndarray:
    """F at lattice j = 1..length: P{C - 1 <= j} = 1 - collision_sf(n, j)."""
    surv = np.zeros(length + 1)
    for m, sf in exact.collision_survival_sequence(n):
        if m > length:
            break
        surv[m] = float(sf)
    return 1.0 - surv[1 : length + 1]


def _ks_grid_length(kind: str, n: int) -> int:
    reach = int(_KS_GRID_FACTOR * math.sqrt(n)) + 2
    return min(n, reach) if kind == "pass" else min(n, reach)


def exact_law_ks_vs_rayleigh(kind: str, n: int) -> float:
    """Discrete KS distance between the exact finite-n law of the scaled
    statistic and the standard Rayleigh law, over the lattice jump points.

    No sampling: both CDFs are evaluated exactly on the lattice.
    """
    if kind not in LAW_KINDS:
        raise ValueError(f"kind must be one of {LAW_KINDS}")
    sq = math.sqrt(n)
    length = _ks_grid_length(kind, n)
    if kind == "pass":
        grid = np.arange(length) / sq  # x at deficit d
        exact_cdf = _pass_exact_cdf(n, length)
    else:
        grid = np.arange(1, length + 1) / sq  # z at j
        exact_cdf = _collision_exact_cdf(n, length)
    rayleigh_cdf = -np.expm1(-grid * grid / 2.0)
    return float(np.max(np.abs(exact_cdf - rayleigh_cdf)))


# ---------------------------------------------------------------------------
# empirical law summaries
# ---------------------------------------------------------------------------


def law_tally(kind: str, n: int, trials: int, stream: SeededStream) -> np.ndarray:
    """Tally of lattice values (deficit d for pass, j = C-1 for collision).

    Tallies from different streams add associatively, which is the merge
    rule for parallel runs.
    """
    if kind not in LAW_KINDS:
        raise ValueError(f"kind must be one of {LAW_KINDS}")
    if kind == "pass":
        values = n - sample_pass_counts(n, trials, stream)
        return np.bincount(values, minlength=n)
    values = sample_collision_counts(n, trials, stream) - 1
    return np.bincount(values, minlength=n + 1)


def merge_tallies(tallies: Iterable[np.ndarray]) -> np.ndarray:
    """Associative merge of per-stream tallies."""
    out: np.ndarray | None = None
    for t in tallies:
        out = t.copy() if out is None else out + t
    if out is None:
        raise ValueError("no tallies to merge")
    return out


def summarize_law_tally(kind: str, n: int, tally: np.ndarray) -> EmpiricalSummary:
    """Summary statistics plus KS distances computed from a lattice tally."""
    trials = int(tally.sum())
    sq = math.sqrt(n)
    if kind == "pass":
        length = max(_ks_grid_length(kind, n), int(np.nonzero(tally)[0].max()) + 1)
        length = min(length, tally.size)
        counts = tally[:length].astype(np.float64)  # deficits 0..length-1
        grid = np.arange(length) / sq
        exact_cdf = _pass_exact_cdf(n, length)
    else:
        length = max(_ks_grid_length(kind, n), int(np.nonzero(tally)[0].max()))
        length = min(length, tally.size - 1)
        counts = tally[1 : length + 1].astype(np.float64)  # j = 1..length
        grid = np.arange(1, length + 1) / sq
        exact_cdf = _collision_exact_cdf(n, length)
    leftover = trials - counts.sum()
    if leftover:  # values beyond the scan window (possible only for tiny n)
        counts[-1] += leftover
    ecdf = np.cumsum(counts) / trials
    rayleigh_cdf = -np.expm1(-grid * grid / 2.0)
    ks_exact = float(np.max(np.abs(ecdf - exact_cdf)))
    ks_ray = float(np.max(np.abs(ecdf - rayleigh_cdf)))

    scaled = grid  # lattice values of the scaled statistic
    probs = counts / trials
    mean = float(scaled @ probs)
    var = float(((scaled - mean) ** 2) @ probs)
    se = math.sqrt(var / trials) if trials > 1 else 0.0
    return EmpiricalSummary(
        kind=kind,
        n=n,
        m=None,
        sample_count=trials,
        mean=mean,
        variance=var,
        se_mean=se,
        ks_exact=ks_exact,
        ks_rayleigh=ks_ray,
    )


def empirical_law(kind: str, n: int, trials: int, stream: SeededStream) -> EmpiricalSummary:
    """Sample the scaled pass or collision statistic and compare laws."""
    if trials < 1000:
        raise ValueError("need trials >= 1000 for a meaningful law comparison")
    return summarize_law_tally(kind, n, law_tally(kind, n, trials, stream))


# ---------------------------------------------------------------------------
# pairwise-match counts vs the Poisson law
# ---------------------------------------------------------------------------


def empirical_pair_matches(
    kind: str, n: int, m: int, trials: int, stream: SeededStream, chunk: int = 200_000
) -> EmpiricalSummary:
    """Sample the pairwise equal-value count among the first m+1 variables
    and measure total variation against the matched-mean Poisson law.
    """
    if kind not in MATCH_KINDS:
        raise ValueError(f"kind must be one of {MATCH_KINDS}")
    if trials < 1000:
        raise ValueError("need trials >= 1000")
    if (m + 1) * trials > 2_000_000_000:
        raise ResourceBoundError(
            f"pair-match simulation of {(m + 1) * trials} draws exceeds the resource bound"
        )
    family = birthday_family(n, m) if kind == "birthday" else inversion_family(n, m)
    mu = stein_chen_bound(family).mu
    cols = m + 1
    rng = stream.generator()
    tally = np.zeros(1 + cols * (cols - 1) // 2, dtype=np.int64)
    done = 0
    while done < trials:
        rows = min(chunk, trials - done)
        if kind == "birthday":
            draws = rng.integers(0, n, size=(rows, cols))
        else:
            draws = np.empty((rows, cols), dtype=np.int64)
            for i in range(1, cols + 1):
                draws[:, i - 1] = rng.integers(0, n - i + 1, size=rows)
        matches = np.zeros(rows, dtype=np.int64)
        for a in range(cols):
            for b in range(a + 1, cols):
                matches += draws[:, a] == draws[:, b]
        tally += np.bincount(matches, minlength=tally.size)
        done += rows

    probs = tally / trials
    support = np.arange(tally.size)
    mean = float(support @ probs)
    var = float(((support - mean) ** 2) @ probs)
    pmf = {int(k): float(p) for k, p in zip(support, probs) if p}
    kmax = max(pmf) if pmf else 0
    qs = poisson_pmf_vector(PoissonLaw(mu), kmax)
    acc = sum(abs(pmf.get(k, 0.0) - qs[k]) for k in range(kmax + 1))
    tv = 0.5 * (acc + max(0.0, 1.0 - sum(qs)))
    tv_se = 0.5 * math.sqrt(float(np.sum(probs * (1.0 - probs))) / trials)
    return EmpiricalSummary(
        kind=kind,
        n=n,
        m=m,
        sample_count=trials,
        mean=mean,
        variance=var,
        se_mean=math.sqrt(var / trials),
        tv_distance=tv,
        tv_se=tv_se,
        reference_mu=mu,
    )


# ---------------------------------------------------------------------------
# operation-count expectations
# ---------------------------------------------------------------------------


def empirical_opcounts(
    n: int, trials: int, stream: SeededStream
) -> dict[str, EmpiricalSummary]:
    """Mean operation-count deltas of the early-exit variants vs plain sort.

    Small n runs the instrumented sorts on permutations materialized from
    sampled inversion tables; larger n derives the per-run counts from
    (passes, inversions) through the per-permutation identities that the
    exhaustive small-n suite verifies exactly.
    """
    if n < 2 or trials < 1:
        raise ValueError("need n >= 2 and trials >= 1")
    rng = stream.generator()
    if n <= SORT_DIRECT_LIMIT:
        reductions = np.empty(trials)
        flags_opt = np.empty(trials)
        flags_var = np.empty(trials)
        for t in range(trials):
            table = tuple(
                int(rng.integers(0, n - i + 1)) for i in range(1, n + 1)
            )
            perm = permutation_from_inversion_table(table)
            _, plain = bubble_sort_instrumented(perm, "plain")
            _, early = bubble_sort_instrumented(perm, "early_exit")
            _, variant = bubble_sort_instrumented(perm, "early_exit_variant")
            reductions[t] = plain.comparisons - early.comparisons
            flags_opt[t] = early.bool_assignments
            flags_var[t] = variant.bool_assignments
    else:
        maxes = np.zeros(trials, dtype=np.int64)
        sums = np.zeros(trials, dtype=np.int64)
        for i in range(1, n + 1):
            draws = rng.integers(0, n - i + 1, size=trials)
            np.maximum(maxes, draws, out=maxes)
            sums += draws
        passes = maxes + 1
        plain_cmp = n * (n - 1) // 2
        early_cmp = n * passes - passes * (passes + 1) // 2
        reductions = (plain_cmp - early_cmp).astype(np.float64)
        flags_opt = (passes + sums).astype(np.float64)
        flags_var = (2 * passes - 1).astype(np.float64)

    def summary(name: str, values: np.ndarray) -> EmpiricalSummary:
        mean = float(values.mean())
        var = float(values.var(ddof=1)) if trials > 1 else 0.0
        return EmpiricalSummary(
            kind=name,
            n=n,
            m=None,
            sample_count=trials,
            mean=mean,
            variance=var,
            se_mean=math.sqrt(var / trials) if trials > 1 else 0.0,
        )

    return {
        "comparison_reduction": summary("comparison_reduction", reductions),
        "flag_writes_early_exit": summary("flag_writes_early_exit", flags_opt),
        "flag_writes_variant": summary("flag_writes_variant", flags_var),
    }
