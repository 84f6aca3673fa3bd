"""Stein-Chen bound machinery against enumeration and direct-summation oracles."""

import math
from itertools import product

import pytest

from collisort.poisson_approx import (
    DissociatedFamily,
    birthday_family,
    cross_means_direct,
    inversion_family,
    match_count_law,
    ordered_triple_sum,
    poisson_limit_functionals,
    stein_chen_bound,
    tv_distance_to_poisson,
    tv_exact_enumerated,
)
from collisort.sorters import ResourceBoundError


# -- family moments ---------------------------------------------------------------


def test_birthday_family_means():
    fam = birthday_family(365, 22)
    assert fam.base_set_size == 23
    assert fam.pair_mean(1, 5) == pytest.approx(1.0 / 365.0)
    assert fam.triple_mean(1, 5, 9) == pytest.approx(1.0 / 365.0**2)


def test_birthday_family_empty():
    report = stein_chen_bound(birthday_family(365, 0))
    assert report.mu == 0.0
    assert report.tv_bound == 0.0


def test_birthday_means_by_enumeration():
    # independence oracle: average the indicator over every tuple
    for n in (2, 4, 6):
        fam = birthday_family(n, 2)
        pair_hits = sum(1 for t in product(range(n), repeat=2) if t[0] == t[1])
        assert fam.pair_mean(1, 2) == pytest.approx(pair_hits / n**2)
        triple_hits = sum(
            1 for t in product(range(n), repeat=3) if t[0] == t[1] == t[2]
        )
        assert fam.triple_mean(1, 2, 3) == pytest.approx(triple_hits / n**3)


def test_inversion_family_pair_mean():
    fam = inversion_family(3, 2)
    # direct summation: entries uniform on {0,1,2} and {0,1}
    assert fam.pair_mean(1, 2) == pytest.approx(1.0 / 3.0)


def test_inversion_family_means_by_enumeration():
    n, m = 5, 3
    fam = inversion_family(n, m)
    sizes = [n - i + 1 for i in range(1, m + 2)]
    states = list(product(*[range(s) for s in sizes]))
    total = len(states)
    for i, j in ((1, 2), (1, 4), (2, 3)):
        hits = sum(1 for s in states if s[i - 1] == s[j - 1])
        assert fam.pair_mean(i, j) == pytest.approx(hits / total)
    for i, j, k in ((1, 2, 3), (2, 1, 4), (4, 2, 3)):
        hits = sum(1 for s in states if s[i - 1] == s[j - 1] and s[i - 1] == s[k - 1])
        assert fam.triple_mean(i, j, k) == pytest.approx(hits / total)


def test_inversion_family_validation():
    with pytest.raises(ValueError):
        inversion_family(4, 4)  # m+1 > n
    fam = inversion_family(5, 3)
    with pytest.raises(ValueError):
        fam.pair_mean(0, 2)


# -- Stein-Chen bound ---------------------------------------------------------------


def _direct_bound_oracle(fam: DissociatedFamily) -> float:
    """Independent re-implementation of the bound display by direct loops."""
    pairs = fam.pairs()
    mu = sum(fam.pair_mean(i, j) for i, j in pairs)
    if mu == 0.0:
        return 0.0
    total = 0.0
    for i, j in pairs:
        e = fam.pair_mean(i, j)
        total += e * e
        for l, r in pairs:
            if (l, r) == (i, j) or not ({l, r} & {i, j}):
                continue
            total += e * fam.pair_mean(l, r)
            # joint moment of the two overlapping indicators: shared index
            shared = ({i, j} & {l, r}).pop()
            others = ({i, j} | {l, r}) - {shared}
            a, b = sorted(others)
            total += fam.triple_mean(shared, a, b)
    return (1.0 - math.exp(-mu)) / mu * total


def test_bound_matches_direct_oracle_birthday():
    fam = birthday_family(365, 22)
    report = stein_chen_bound(fam)
    assert report.mu == pytest.approx(22 * 23 / (2 * 365.0), rel=1e-12)
    assert report.tv_bound == pytest.approx(_direct_bound_oracle(fam), rel=1e-10)


def test_bound_matches_direct_oracle_inversion():
    fam = inversion_family(30, 6)
    report = stein_chen_bound(fam)
    assert report.tv_bound == pytest.approx(_direct_bound_oracle(fam), rel=1e-10)


def test_cross_means_rearrangement_identity():
    for fam in (birthday_family(50, 8), inversion_family(40, 7), birthday_family(7, 4)):
        report = stein_chen_bound(fam)
        assert report.cross_means_sum == pytest.approx(cross_means_direct(fam), rel=1e-12)


def test_bound_shrinks_with_year_length():
    # at fixed m the squared-mean, cross-mean, and triple sums all scale
    # as 1/n^2 while the (1-e^-mu)/mu factor drifts to 1, so quadrupling
    # n shrinks the bound by slightly less than 16
    b1 = stein_chen_bound(birthday_family(1000, 22)).tv_bound
    b2 = stein_chen_bound(birthday_family(4000, 22)).tv_bound
    assert 12.0 <= b1 / b2 <= 18.0


def test_triple_sum_aggregates_match_literal_loop():
    for fam in (
        birthday_family(365, 10),
        birthday_family(6, 5),
        inversion_family(30, 9),
        inversion_family(8, 6),
    ):
        assert fam.triple_sum_fn() == pytest.approx(ordered_triple_sum(fam), rel=1e-12)


# -- limit-hypothesis functionals -----------------------------------------------------


def test_functionals_empty_family():
    assert poisson_limit_functionals(birthday_family(10, 0)) == (0.0, 0.0)


def test_functionals_vanish_birthday():
    values = [
        poisson_limit_functionals(birthday_family(n, int(math.isqrt(n))))
        for n in (10**2, 10**4, 10**6)
    ]
    assert values[0][0] > values[1][0] > values[2][0]
    assert values[0][1] > values[1][1] > values[2][1]


def test_functionals_vanish_inversion():
    values = [
        poisson_limit_functionals(inversion_family(n, int(math.isqrt(n))))
        for n in (10**2, 10**3, 10**4)
    ]
    assert values[0][0] > values[1][0] > values[2][0]
    assert values[0][1] > values[1][1] > values[2][1]


def _match_count_variance(fam: DissociatedFamily) -> float:
    """Var of the indicator sum from the family moments.

    sum pm(1-pm) plus the ordered overlapping covariances, which equal
    the triple sum minus the ordered cross-mean sum; disjoint pairs are
    independent by dissociation.
    """
    report = stein_chen_bound(fam)
    bernoulli_var = sum(
        fam.pair_mean(i, j) * (1.0 - fam.pair_mean(i, j)) for i, j in fam.pairs()
    )
    return bernoulli_var + report.hypothesis_triple - report.cross_means_sum


def test_moments_converge_to_poisson_limit():
    # with m chosen so the pair-mean sum tends to lambda = 1, both the mean
    # and the variance of the match count approach 1 for both families
    lam = 1.0
    for family_fn in (birthday_family, inversion_family):
        mean_gaps = []
        var_gaps = []
        for n in (10**2, 10**3, 10**4, 10**5):
            m = round((-1.0 + math.sqrt(1.0 + 8.0 * lam * n)) / 2.0)
            fam = family_fn(n, m)
            mean_gaps.append(abs(stein_chen_bound(fam).mu - lam))
            var_gaps.append(abs(_match_count_variance(fam) - lam))
        assert mean_gaps[0] < 0.1 and var_gaps[0] < 0.1
        assert mean_gaps[3] < mean_gaps[0] and var_gaps[3] < var_gaps[0]
        assert max(mean_gaps[3], var_gaps[3]) < 0.01


def test_match_count_variance_against_enumeration():
    # exact law oracle for the variance formula on a small instance
    for kind, fam in (("birthday", birthday_family(6, 4)), ("inversion", inversion_family(7, 4))):
        law = match_count_law(kind, 6 if kind == "birthday" else 7, 4)
        mean = sum(k * p for k, p in law.items())
        var = sum((k - mean) ** 2 * p for k, p in law.items())
        assert _match_count_variance(fam) == pytest.approx(var, rel=1e-10)


# -- exact TV on enumerable instances ---------------------------------------------------


def test_tv_exact_below_bound_birthday():
    tv = tv_exact_enumerated("birthday", 6, 3)
    bound = stein_chen_bound(birthday_family(6, 3)).tv_bound
    assert 0.0 < tv <= bound


def test_tv_exact_below_bound_inversion():
    tv = tv_exact_enumerated("inversion", 6, 3)
    bound = stein_chen_bound(inversion_family(6, 3)).tv_bound
    assert 0.0 < tv <= bound


def test_tv_exact_zero_matches():
    assert tv_exact_enumerated("birthday", 5, 0) == 0.0


def test_tv_resource_bounds():
    with pytest.raises(ResourceBoundError):
        match_count_law("birthday", 7, 3)
    with pytest.raises(ResourceBoundError):
        match_count_law("inversion", 9, 4)


def test_match_count_law_is_probability():
    law = match_count_law("birthday", 5, 4)
    assert sum(law.values()) == pytest.approx(1.0, abs=1e-12)
    assert all(v > 0 for v in law.values())


def test_tv_distance_helper():
    assert tv_distance_to_poisson({0: 1.0}, 0.0) == 0.0
    # point mass at 0 vs Poisson(1): TV = 1 - e^-1
    assert tv_distance_to_poisson({0: 1.0}, 1.0) == pytest.approx(
        1.0 - math.exp(-1.0), rel=1e-12
    )
