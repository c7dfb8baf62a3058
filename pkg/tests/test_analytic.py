import math

import numpy as np
import pytest
from hypothesis import given, settings

from deficitx.analytic import (
    Branch,
    classify_branch,
    g_at_pi2,
    g_at_zero,
    h0,
    h_pi2_prime,
    one_way_deficit,
    solve_theta_s,
)
from deficitx.families import (
    example1,
    example1_boundaries,
    example1_h0,
    example1_h_pi2_prime,
    example2,
    example2_h0,
    example2_h_pi2_prime,
)
from deficitx.measurement import MeasurementAngles, g_theta0_profile, g_value
from deficitx.state import BlochX, InvalidStateError, XMatrix, canonicalize, from_matrix, random_state

from conftest import x_states

HALF_PI = math.pi / 2
LN2 = math.log(2)


def curvature(s, theta, h=1e-4):
    g = lambda t: g_theta0_profile(s, t)
    return (g(theta + h) - 2 * g(theta) + g(theta - h)) / h**2


def test_criteria_match_curvature(rng):
    checked = 0
    while checked < 100:
        s = canonicalize(random_state(rng))[0]
        # keep away from near-zero eigenvalues where the curvature blows up
        if min(1 - abs(s.y), 1 - math.hypot(s.t1, s.x)) < 0.05:
            continue
        lam0 = [(1 + a * s.x + b * (s.y + a * s.t3)) / 4 for a in (1, -1) for b in (1, -1)]
        if min(lam0) < 0.02:
            continue
        assert h0(s) == pytest.approx(-4 * curvature(s, 0.0), rel=1e-5, abs=1e-5)
        assert h_pi2_prime(s) == pytest.approx(-4 * LN2 * curvature(s, HALF_PI), rel=1e-5, abs=1e-5)
        checked += 1


@pytest.mark.parametrize("q", [0.2, 0.4, 0.55, 0.6, 0.7, 0.9])
def test_criteria_match_example1_closed_forms(q):
    s = example1(q)
    assert h0(s) == pytest.approx(example1_h0(q), rel=1e-9)
    assert h_pi2_prime(s) == pytest.approx(example1_h_pi2_prime(q), rel=1e-9)


@pytest.mark.parametrize("alpha", [0.1, 0.3, 0.5, 0.8])
def test_criteria_match_example2_closed_forms(alpha):
    s = example2(alpha)
    assert h0(s) == pytest.approx(example2_h0(alpha), rel=1e-9)
    assert h_pi2_prime(s) == pytest.approx(example2_h_pi2_prime(alpha), rel=1e-9)


def test_criteria_reference_values():
    # alpha = 1/2: h0 = 1/ln2, h_pi2' = -ln 3 (mpmath)
    s = example2(0.5)
    assert h0(s) == pytest.approx(1.4426950408889634, abs=1e-12)
    assert h_pi2_prime(s) == pytest.approx(-1.0986122886681097, abs=1e-12)


@pytest.mark.parametrize(
    "m", [XMatrix(0, 0.3, 0.3, 0.4, 0.25, 0), XMatrix(0.3, 0.3, 0, 0.4, 0, 0.3)]
)
def test_h0_diverges_with_zero_eigenvalue(m):
    # an empty diagonal entry with coherence elsewhere: G''(0) is +inf
    assert h0(from_matrix(m)) == -math.inf
    assert curvature(from_matrix(m), 0.0, 1e-6) > curvature(from_matrix(m), 0.0, 1e-3) > 0


def test_h0_finite_when_zero_eigenvalue_is_harmless():
    # example 1 always has d = 0, yet its criterion stays finite
    assert h0(example1(0.3)) == pytest.approx(example1_h0(0.3), rel=1e-9)
    assert h0(example1(1.0)) == 0.0


def test_endpoint_values():
    s = BlochX(0.45, 0.32, 0.43, 0.09, 0.15)
    assert g_at_pi2(s) == pytest.approx(1.698938983420698, abs=1e-13)
    assert g_at_zero(s) == pytest.approx(g_value(s, MeasurementAngles(0, 0)), abs=1e-14)
    assert g_at_zero(BlochX(0, 0, 0, 0, 0)) == pytest.approx(2.0)


def test_solve_theta_s_example1():
    theta = solve_theta_s(example1(0.6))
    assert theta == pytest.approx(0.5945892666857219, abs=1e-9)
    d = [g_theta0_profile(canonicalize(example1(0.6))[0], theta + h) for h in (-1e-3, 0, 1e-3)]
    assert d[1] < d[0] and d[1] < d[2]


def test_solve_theta_s_precondition():
    with pytest.raises(ValueError):
        solve_theta_s(example1(0.3))


@pytest.mark.parametrize(
    "q, branch",
    [(0.3, Branch.THETA_ZERO), (0.55, Branch.INTERIOR), (0.6, Branch.INTERIOR), (0.7, Branch.THETA_HALF_PI)],
)
def test_classify_example1(q, branch):
    d = classify_branch(example1(q))
    assert d.branch is branch
    assert (d.theta_s is not None) == (branch is Branch.INTERIOR)


def test_example1_deficit_reference_values():
    refs = {
        0.55: 0.5480998377530852,
        0.6: 0.5901860214144696,
        0.65: 0.62313571531482,
        0.7: 0.6457987440159398,
    }
    for q, ref in refs.items():
        assert one_way_deficit(example1(q)).deficit == pytest.approx(ref, abs=1e-10)


def test_tie_goes_to_theta_zero():
    r = one_way_deficit(example1(1.0))
    assert r.g_at_0 == pytest.approx(r.g_at_pi2, abs=1e-12)
    assert r.branch is Branch.THETA_ZERO
    assert r.deficit == pytest.approx(1.0, abs=1e-12)


def test_diagonal_states_have_zero_deficit(rng):
    for _ in range(200):
        s = random_state(rng)
        d = BlochX(s.x, s.y, 0.0, 0.0, s.t3)
        assert abs(one_way_deficit(d).deficit) <= 1e-12


def test_bell_state_deficit_is_one():
    assert one_way_deficit(BlochX(0, 0, 1, -1, 1)).deficit == pytest.approx(1.0, abs=1e-12)


def test_invalid_state_rejected():
    with pytest.raises(InvalidStateError):
        one_way_deficit(BlochX(0.9, 0.9, 0.5, 0.5, 0.9))


def test_continuity_across_example1_boundaries():
    for b in example1_boundaries():
        lo = one_way_deficit(example1(b - 1e-5))
        hi = one_way_deficit(example1(b + 1e-5))
        assert lo.branch is not hi.branch
        assert abs(lo.deficit - hi.deficit) <= 1e-4


def test_lower_envelope(rng):
    for _ in range(300):
        r = one_way_deficit(random_state(rng))
        assert r.g_min <= min(r.g_at_0, r.g_at_pi2) + 1e-15
        grid = g_theta0_profile(r.canonical, np.linspace(0, HALF_PI, 401))
        assert r.g_min <= grid.min() + 1e-12


@settings(max_examples=300, deadline=None)
@given(x_states(min_weight=0.0))
def test_deficit_nonnegative(s):
    assert one_way_deficit(s).deficit >= -1e-9


@settings(max_examples=200, deadline=None)
@given(x_states())
def test_canonicalization_invariance(s):
    x, y, t1, t2, t3 = s.as_tuple()
    ref = one_way_deficit(s).deficit
    for variant in (BlochX(x, y, t2, t1, t3), BlochX(x, y, -t1, -t2, t3), BlochX(x, y, -t2, -t1, t3)):
        assert one_way_deficit(variant).deficit == pytest.approx(ref, abs=1e-9)


def test_result_reports_canonical_transforms():
    r = one_way_deficit(BlochX(0.1, 0.2, -0.1, 0.3, 0.1))
    assert r.transforms == ("swap",)
    assert r.canonical.t1 == pytest.approx(0.3)
