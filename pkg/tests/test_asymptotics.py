"""Asymptotic expansions against the exact laws they approximate."""

import cmath
import math
from fractions import Fraction

import pytest

from collisort import exact
from collisort.asymptotics import (
    euler_maclaurin_residual,
    expected_opcount_deltas,
    log_factorial_hp,
    scaled_collision_cdf_approx,
    scaled_collision_pmf_approx,
    scaled_pass_cdf_approx,
    scaled_pass_charfn_approx,
    scaled_pass_moment_approx,
    scaled_pass_pmf_approx,
    scaled_pass_stats_approx,
    scaled_pass_survival,
    scaled_pass_survival_expansion,
)
from collisort.distributions import rayleigh_charfn
from oracles import ln_frac


# -- log factorial -------------------------------------------------------------


def test_log_factorial_at_one():
    assert abs(float(log_factorial_hp(1))) <= 1e-14


def test_log_factorial_exact_oracle_small():
    got = log_factorial_hp(10)
    ref = ln_frac(Fraction(math.factorial(10)))
    assert abs(float(got.to_fraction() - ref)) <= got.err


def test_log_factorial_large_argument():
    got = log_factorial_hp(170)
    ref = ln_frac(Fraction(math.factorial(170)))
    dev = abs(float(got.to_fraction() - ref))
    assert dev <= got.err
    assert dev / float(ref) <= 1e-25


def test_log_factorial_domain():
    with pytest.raises(ValueError):
        log_factorial_hp(0.5)


# -- survival of the scaled pass statistic ---------------------------------------


def test_survival_at_zero():
    assert float(scaled_pass_survival(100, 0.0)) == 1.0


def test_survival_tiny_lattice_point():
    # lattice m = 2 at n = 3, matching the 1/6 enumeration
    x = 2.0 / math.sqrt(3.0)
    assert float(scaled_pass_survival(3, x)) == pytest.approx(1.0 / 6.0, rel=1e-14)


def test_survival_headline_point():
    x = 22.0 / math.sqrt(365.0)
    assert abs(float(scaled_pass_survival(365, x)) - 0.4857848) <= 5e-8


def test_survival_off_lattice_rejected():
    with pytest.raises(ValueError):
        scaled_pass_survival(100, 0.05)
    with pytest.raises(ValueError):
        scaled_pass_survival(100, 100.0)


def test_survival_equals_rational_law_up_to_60():
    # on the lattice the survival is the pass-count CDF exactly
    for n in (7, 23, 41, 60):
        sq = math.sqrt(n)
        for m in range(0, n):
            got = scaled_pass_survival(n, m / sq)
            assert abs(got.to_fraction() - exact.pass_cdf_fraction(n, m)) <= got.err


def test_expansion_at_zero():
    assert scaled_pass_survival_expansion(10**4, 0.0) == 1.0


def test_expansion_near_exact_at_lattice():
    got = scaled_pass_survival_expansion(10**4, 1.0)
    ref = float(scaled_pass_survival(10**4, 1.0))  # 100 is an exact lattice index
    assert got == pytest.approx(ref, rel=5e-7)


def test_expansion_error_order():
    errs = []
    for n in (100, 400, 1600):
        m = round(math.sqrt(n))
        ref = float(scaled_pass_survival(n, m / math.sqrt(n)))
        errs.append(abs(scaled_pass_survival_expansion(n, 1.0) - ref))
    assert 16.0 <= errs[0] / errs[1] <= 64.0
    assert 16.0 <= errs[1] / errs[2] <= 64.0


def test_expansion_warns_out_of_comfort_zone():
    with pytest.warns(RuntimeWarning):
        scaled_pass_survival_expansion(100, 6.0)


# -- CDF / PMF approximations ------------------------------------------------------


def test_pass_cdf_approx_at_zero():
    assert scaled_pass_cdf_approx(10**4, 0.0) == 0.0


def test_pass_cdf_approx_accuracy():
    n = 10**4
    got = scaled_pass_cdf_approx(n, 1.0)
    ref = 1.0 - float(exact.pass_cdf(n, 101))  # F(x) = 1 - survival(x + 1/sqrt n)
    assert got == pytest.approx(ref, abs=2e-4)


def test_pass_cdf_approx_headline_point():
    # F(x_m) = 1 - survival(x_{m+1}); the printed survival 0.4857848 sits
    # at lattice depth 22, so it is the CDF complement at depth 21
    got = scaled_pass_cdf_approx(365, 21.0 / math.sqrt(365.0))
    assert got == pytest.approx(1.0 - 0.4857848, abs=5e-3)
    got = scaled_pass_cdf_approx(365, 22.0 / math.sqrt(365.0))
    assert got == pytest.approx(1.0 - float(exact.pass_cdf(365, 23)), abs=5e-3)


def test_pass_cdf_approx_off_lattice():
    with pytest.raises(ValueError):
        scaled_pass_cdf_approx(10**4, 0.005)


def test_pass_pmf_approx_rejects_zero():
    with pytest.raises(ValueError):
        scaled_pass_pmf_approx(10**4, 0.0)


def test_pass_pmf_approx_sums_to_one():
    n = 10**4
    sq = math.sqrt(n)
    total = sum(scaled_pass_pmf_approx(n, m / sq) for m in range(1, 1500))
    # exact lattice pmf from survival differences sums to exactly 1
    assert total == pytest.approx(1.0, abs=2e-3)


def test_collision_pmf_small_argument_behavior():
    n = 10**4
    z = 1.0 / math.sqrt(n)
    assert scaled_collision_pmf_approx(n, z) == pytest.approx(z / math.sqrt(n), rel=0.01)


def test_collision_cdf_approx_headline_point():
    z = 22.0 / math.sqrt(365.0)
    got = scaled_collision_cdf_approx(365, z)
    ref = 1.0 - float(exact.collision_sf(365, 22))
    assert got == pytest.approx(ref, abs=6e-3)


def test_cdf_error_halves_with_n():
    for approx_fn, truth_fn in (
        (scaled_pass_cdf_approx, lambda n, m: 1.0 - float(exact.pass_cdf(n, m + 1))),
        (scaled_collision_cdf_approx, lambda n, m: 1.0 - float(exact.collision_sf(n, m))),
    ):
        errs = []
        for n in (500, 1000):
            sq = math.sqrt(n)
            m = round(sq)
            errs.append(abs(approx_fn(n, m / sq) - truth_fn(n, m)))
        assert 1.5 <= errs[0] / errs[1] <= 3.0


# -- Euler-Maclaurin ---------------------------------------------------------------


def test_em_residual_small_n():
    assert euler_maclaurin_residual(100, 0.15) < 1e-3


def test_em_residual_quadratic_decay():
    r1 = euler_maclaurin_residual(10**4, 0.15)
    r2 = euler_maclaurin_residual(4 * 10**4, 0.15)
    assert 8.0 <= r1 / r2 <= 32.0


def test_em_residual_epsilon_same_order():
    # different cuts change only the Theta(1/n^2)-sized remainder
    ra = euler_maclaurin_residual(10**4, 0.16)
    rb = euler_maclaurin_residual(10**4, 0.10)
    assert 0.1 <= ra / rb <= 10.0


def test_em_residual_domain():
    with pytest.raises(ValueError):
        euler_maclaurin_residual(10**4, 0.2)
    with pytest.raises(ValueError):
        euler_maclaurin_residual(10**4, 0.0)
    with pytest.raises(ValueError):
        euler_maclaurin_residual(50, 0.1)


# -- moments / characteristic function / stats --------------------------------------


def test_moment_approx_order_zero():
    assert scaled_pass_moment_approx(10**4, 0) == 1.0


def test_moment_approx_first_two():
    n = 10**4
    assert abs(scaled_pass_moment_approx(n, 1) - float(exact.scaled_pass_moment(n, 1))) <= 5.0 / n
    assert scaled_pass_moment_approx(n, 2) == pytest.approx(1.950365345384, abs=6e-4)


def test_charfn_at_zero():
    assert scaled_pass_charfn_approx(10**4, 0.0) == 1.0 + 0.0j


def test_charfn_conjugate_symmetry():
    for t in (0.3, 1.0, 2.5):
        a = scaled_pass_charfn_approx(10**4, t)
        b = scaled_pass_charfn_approx(10**4, -t)
        assert cmath.isclose(a.conjugate(), b, rel_tol=1e-14)


def test_charfn_matches_exact_lattice_sum():
    n = 10**4
    got = scaled_pass_charfn_approx(n, 0.5)
    ref = exact.scaled_pass_charfn_exact(n, 0.5)
    assert abs(got - ref) <= 2e-3


def test_charfn_limit_is_rayleigh():
    # the finite-n corrections vanish as n grows
    t = 1.0
    got = scaled_pass_charfn_approx(10**12, t)
    assert abs(got - rayleigh_charfn(t)) <= 2e-6


def test_charfn_range_guard():
    with pytest.raises(ValueError):
        scaled_pass_charfn_approx(100, 9.0)


def test_stats_headline_values():
    stats = scaled_pass_stats_approx(10**4)
    assert stats.mean_approx == pytest.approx(1.23670494307065, rel=1e-12)
    assert stats.second_moment_approx == pytest.approx(1.950365345354, rel=1e-12)
    assert stats.variance_approx == pytest.approx(0.4209262291679, rel=1e-12)


def test_stats_variance_consistent_with_truncation():
    # v differs from e2 - e^2 only by dropped cross terms of order n^-5/2
    for n in (100, 10**4):
        stats = scaled_pass_stats_approx(n)
        drop = abs(stats.variance_approx - (stats.second_moment_approx - stats.mean_approx**2))
        assert drop <= 1.0 * n ** (-2.5)


def test_stats_track_exact_moments():
    # remainder of the five-term truncations is Theta(n^-5/2): fit the
    # constant at n = 100, then validate at larger n (factor-2 slack
    # covers the constant's drift toward its asymptotic value)
    def deviations(n):
        stats = scaled_pass_stats_approx(n)
        return (
            abs(stats.mean_approx - float(exact.scaled_pass_moment(n, 1))),
            abs(stats.second_moment_approx - float(exact.scaled_pass_moment(n, 2))),
            abs(stats.variance_approx - float(exact.scaled_pass_variance(n))),
        )

    fitted = [d * 100 ** 2.5 for d in deviations(100)]
    for n in (400, 1600, 10**4):
        for dev, c in zip(deviations(n), fitted):
            assert dev <= 2.0 * c * n ** (-2.5)


# -- expected operation-count deltas --------------------------------------------------


def test_opcount_deltas_finite_and_bounded_at_two():
    deltas = expected_opcount_deltas(2)
    assert deltas.comparison_reduction < 2
    assert math.isfinite(deltas.flag_writes_early_exit)
    assert math.isfinite(deltas.flag_writes_variant)


def test_opcount_reduction_below_n():
    for n in (2, 3, 5, 10, 100, 10**4):
        assert expected_opcount_deltas(n).comparison_reduction < n


def test_opcount_reduction_matches_exact_moments():
    n = 10**4
    deltas = expected_opcount_deltas(n)
    e1 = float(exact.scaled_pass_moment(n, 1))
    e2 = float(exact.scaled_pass_moment(n, 2))
    exact_reduction = (n * e2 - math.sqrt(n) * e1) / 2.0
    assert deltas.comparison_reduction == pytest.approx(exact_reduction, abs=1e-2)


def test_opcount_flag_writes_match_exact_expectations():
    # flag writes: E(P) + n(n-1)/4 for the early exit, 2 E(P) for the variant
    n = 10**4
    deltas = expected_opcount_deltas(n)
    expected_passes = n - math.sqrt(n) * float(exact.scaled_pass_moment(n, 1))
    assert deltas.flag_writes_early_exit == pytest.approx(
        expected_passes + n * (n - 1) / 4.0, abs=1e-2
    )
    assert deltas.flag_writes_variant == pytest.approx(2.0 * expected_passes, abs=1e-2)


def test_net_cost_positive_for_both_variants():
    # the flag-write increase dominates the comparison reduction
    deltas = expected_opcount_deltas(10**4)
    assert deltas.flag_writes_early_exit - deltas.comparison_reduction > 0
    assert deltas.flag_writes_variant - deltas.comparison_reduction > 0
