"""Pointed GH machinery: correspondences, bounds, and certificates.

The key soundness facts are checked against independent oracles: the
branch-and-bound reduction against a full-relation brute force, and the
sandwich bounds against a grid search over admissible metrics on the
disjoint union (the definition itself), on tiny instances.
"""

import itertools
import random

import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from dlscape import (DomainError, FiniteMetricSpace, MetricError, build,
                     brute_force_min_distortion, build_eps_isometry,
                     corr_from_isometry, eps_delta_certificate, gh_bounds,
                     materialize_window, min_distortion_correspondence,
                     pa_gh_experiment, u_point_assigned)
from dlscape.gh import MAPPINGS, Correspondence, distortion


def metric_from_weights(n, weights, base=0):
    """Shortest-path completion of a weighted complete graph: always a
    metric, so random instances are cheap to generate."""
    d = [[0] * n for _ in range(n)]
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            d[i][j] = d[j][i] = weights[k]
            k += 1
    for m in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][m] + d[m][j] < d[i][j]:
                    d[i][j] = d[i][m] + d[m][j]
    return FiniteMetricSpace(n, tuple(map(tuple, d)), base)


def rand_space(rng, n_max=6):
    n = rng.randint(1, n_max)
    weights = [rng.randint(1, 9) for _ in range(n * (n - 1) // 2)]
    return metric_from_weights(n, weights)


def test_metric_validation():
    with pytest.raises(MetricError):
        FiniteMetricSpace(2, ((0, 1), (2, 0)), 0)            # asymmetric
    with pytest.raises(MetricError):
        FiniteMetricSpace(2, ((1, 1), (1, 0)), 0)            # diagonal
    with pytest.raises(MetricError):
        FiniteMetricSpace(2, ((0, 0), (0, 0)), 0)            # zero off-diag
    with pytest.raises(MetricError) as exc:
        FiniteMetricSpace(3, ((0, 1, 9), (1, 0, 1), (9, 1, 0)), 0)
    assert exc.value.witness is not None                     # triangle


def test_from_json_malformed():
    with pytest.raises(DomainError):
        FiniteMetricSpace.from_json({"n": 2})


def test_two_point_example():
    X = FiniteMetricSpace(2, ((0, 1), (1, 0)), 0)
    Y = FiniteMetricSpace(2, ((0, 2), (2, 0)), 0)
    corr = min_distortion_correspondence(X, Y)
    assert corr.distortion == 1 and corr.proved_optimal
    lo, up, _ = gh_bounds(X, Y)
    assert (lo, up) == (Fraction(1, 2), Fraction(1))


def test_identical_spaces_distortion_zero():
    Z = metric_from_weights(4, [1, 2, 3, 2, 1, 2])
    corr = min_distortion_correspondence(Z, Z)
    assert corr.distortion == 0


def test_reduction_equals_brute_force_exhaustive():
    """All pointed pairs with |X|, |Y| <= 3 and small integer distances."""
    spaces = [FiniteMetricSpace(1, ((0,),), 0)]
    for a in (1, 2):
        spaces.append(FiniteMetricSpace(2, ((0, a), (a, 0)), 0))
    for a, b, c in itertools.product((1, 2), repeat=3):
        if a <= b + c and b <= a + c and c <= a + b:
            spaces.append(FiniteMetricSpace(
                3, ((0, a, b), (a, 0, c), (b, c, 0)), 0))
    for X, Y in itertools.product(spaces, repeat=2):
        fast = min_distortion_correspondence(X, Y)
        slow = brute_force_min_distortion(X, Y)
        assert fast.proved_optimal
        assert fast.distortion == slow.distortion, (X, Y)


def test_reduction_equals_brute_force_random():
    rng = random.Random(11)
    for _ in range(40):
        X, Y = rand_space(rng, 3), rand_space(rng, 3)
        assert min_distortion_correspondence(X, Y).distortion == \
            brute_force_min_distortion(X, Y).distortion


def pointed_gh_grid(X, Y, step=Fraction(1, 2)):
    """Grid search over admissible metrics on the disjoint union:
    min of d_H(X, Y) + d(base_X, base_Y) with cross-distances on a
    half-integer grid.  An upper bound on the true pointed GH that the
    known optimal-correspondence construction always attains."""
    dX, dY = X.real_matrix(), Y.real_matrix()
    cap = max(max(r) for r in dX) + max(max(r) for r in dY) + \
        min_distortion_correspondence(X, Y).distortion + 1
    # include 0: the infimum ranges over the closure where distinct points
    # of the union may coincide (pseudometric limit of admissible metrics)
    values = [step * k for k in range(0, int(cap / step) + 1)]
    cells = [(i, j) for i in range(X.n) for j in range(Y.n)]
    best = [None]

    def feasible(c, i, j, v):
        for i2 in range(X.n):
            if i2 != i and (i2, j) in c:
                w = c[(i2, j)]
                if abs(v - w) > dX[i][i2] or dX[i][i2] > v + w:
                    return False
        for j2 in range(Y.n):
            if j2 != j and (i, j2) in c:
                w = c[(i, j2)]
                if abs(v - w) > dY[j][j2] or dY[j][j2] > v + w:
                    return False
        return True

    def rec(k, c):
        if k == len(cells):
            haus = max(
                max(min(c[(i, j)] for j in range(Y.n))
                    for i in range(X.n)),
                max(min(c[(i, j)] for i in range(X.n))
                    for j in range(Y.n)))
            total = haus + c[(X.base, Y.base)]
            if best[0] is None or total < best[0]:
                best[0] = total
            return
        i, j = cells[k]
        for v in values:
            if best[0] is not None and (i, j) == (X.base, Y.base) \
                    and v >= best[0]:
                break
            if feasible(c, i, j, v):
                c[(i, j)] = v
                rec(k + 1, c)
                del c[(i, j)]

    rec(0, {})
    return best[0]


def test_sandwich_against_definition_oracle():
    rng = random.Random(5)
    cases = [(rand_space(rng, 2), rand_space(rng, 2)) for _ in range(6)]
    cases += [(rand_space(rng, 3), rand_space(rng, 2)) for _ in range(3)]
    cases.append((FiniteMetricSpace(2, ((0, 1), (1, 0)), 0),
                  FiniteMetricSpace(2, ((0, 2), (2, 0)), 0)))
    for X, Y in cases:
        lo, up, _ = gh_bounds(X, Y)
        g = pointed_gh_grid(X, Y)
        # g is an upper bound on the true pointed GH; the sandwich says
        # the true value lies in [lo, up], so g >= lo and g <= up must
        # both hold (the correspondence construction realizes <= up on
        # the half-integer grid).
        assert lo <= g <= up, (X, Y, lo, g, up)


def test_eps_isometry_from_correspondence():
    rng = random.Random(3)
    for _ in range(100):
        X, Y = rand_space(rng, 4), rand_space(rng, 4)
        corr = min_distortion_correspondence(X, Y)
        iso = build_eps_isometry(corr, X, Y)
        assert iso.mapping[X.base] == Y.base
        assert iso.dis <= corr.distortion
        assert iso.net_eps <= corr.distortion


def test_isometry_roundtrip_three_eps():
    rng = random.Random(4)
    for _ in range(100):
        X, Y = rand_space(rng, 4), rand_space(rng, 4)
        corr = min_distortion_correspondence(X, Y)
        iso = build_eps_isometry(corr, X, Y)
        eps = max(iso.dis, iso.net_eps, Fraction(1, 2))
        back = corr_from_isometry(iso, X, Y, eps)
        assert back.distortion <= 3 * eps


def test_corr_from_isometry_precondition():
    X = FiniteMetricSpace(2, ((0, 4), (4, 0)), 0)
    corr = min_distortion_correspondence(X, X)
    iso = build_eps_isometry(corr, X, X)
    with pytest.raises(DomainError):
        corr_from_isometry(iso, X, X, Fraction(-1))


def test_correspondence_validate():
    X = FiniteMetricSpace(2, ((0, 1), (1, 0)), 0)
    bad = Correspondence(frozenset({(0, 0)}), Fraction(0))
    with pytest.raises(DomainError):
        bad.validate(X, X)


def test_eps_delta_certificate_trivial():
    Z = metric_from_weights(4, [1, 2, 3, 2, 1, 2])
    cert = eps_delta_certificate(Z, Z, range(4), range(4), 1, Fraction(1, 2))
    assert cert.ok and cert.bound == 2 + Fraction(1, 2)


def test_eps_delta_certificate_witness():
    X = FiniteMetricSpace(2, ((0, 1), (1, 0)), 0)
    Y = FiniteMetricSpace(2, ((0, 5), (5, 0)), 0)
    cert = eps_delta_certificate(X, Y, [0, 1], [0, 1], 1, 1)
    assert not cert.ok and cert.witness is not None


def test_eps_delta_pendant_line():
    pw = materialize_window(build("pendant_line"), (0, 0), 12)
    lw = materialize_window(build("line"), 0, 12)
    sample_p = [(n, k) for n in range(-3, 4) for k in (0, 1)]
    sample_l = list(range(-4, 5))
    P = FiniteMetricSpace.from_window_sample(pw, sample_p)
    L = FiniteMetricSpace.from_window_sample(lw, sample_l, base=0)
    net_p = [sample_p.index((n, 0)) for n in range(-3, 4)]
    net_l = [sample_l.index(n) for n in range(-3, 4)]
    cert = eps_delta_certificate(P, L, net_p, net_l, 1, 1)
    assert cert.ok and cert.bound == 3


@given(weights=st.lists(st.integers(1, 9), min_size=6, max_size=6))
@settings(max_examples=40, deadline=None)
def test_distortion_monotone_under_inclusion(weights):
    X = metric_from_weights(4, weights)
    Y = metric_from_weights(4, list(reversed(weights)))
    full = {(i, j) for i in range(4) for j in range(4)}
    sub = {(i, i) for i in range(4)}
    assert distortion(sub, X, Y) <= distortion(full, X, Y)


def test_experiment_identity_zero_deviation(h_field):
    report = pa_gh_experiment(h_field, h_field, MAPPINGS["identity"], 0)
    assert report.max_abs_deviation == 0 and report.max_one_sided == 0
    assert report.abs_bound_ok and report.one_sided_bound_ok


def test_experiment_nearest_spine():
    pw = materialize_window(build("pendant_line"), (0, 0), 40)
    lw = materialize_window(build("line"), 0, 40)
    fx, _ = u_point_assigned(pw, range(8, 33, 4), 8, tail=16)
    fy, _ = u_point_assigned(lw, range(8, 33, 4), 8, tail=16)
    report = pa_gh_experiment(fx, fy, MAPPINGS["nearest_spine"], 1)
    assert report.conclusive
    assert report.max_abs_deviation <= 8
    assert report.max_one_sided <= 4


def test_experiment_map_out_of_zone(line_field):
    hw = materialize_window(build("halfline"), 0, 60)
    fy, _ = u_point_assigned(hw, range(8, 49, 8), 10)
    with pytest.raises(DomainError):
        pa_gh_experiment(line_field, fy, MAPPINGS["identity"], 1)
