"""Analytic one-way deficit of X states by branch classification.

After canonicalization the optimal measurement lies in the ``phi = 0`` plane,
so the problem is a one-dimensional minimization of ``G(theta, 0)`` on
``[0, pi/2]``. The signs of two curvature criteria at the endpoints decide
whether the minimum is at ``theta = 0``, at ``theta = pi/2``, or at an
interior critical angle ``theta_s``.

Both criteria are negative multiples of ``d^2 G / d theta^2``:

* ``h0 = -4 G''(0)``
* ``h_pi2_prime = -4 ln(2) G''(pi/2)`` (natural-log normalization of the closed form)
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .entropy import binary_entropy, shannon_bits
from .measurement import (
    LN2,
    SINGULAR_GAP,
    SingularEvaluationError,
    g_theta0_profile,
    h_theta,
    log_ratio_over_r,
)
from .search import bisect_sign, golden_section
from .state import DEFAULT_TOL, BlochX, canonicalize, check_valid, von_neumann_entropy

CRITERION_TOL = 1e-10
ROOT_EPS = 1e-8
ROOT_XTOL = 1e-12
FD_STEP_CURVATURE = 1e-3
FD_STEP_SLOPE = 1e-6
SCAN_POINTS = 1001
# |coefficient| of log2(lambda) below this is treated as an exact zero when lambda -> 0.
ZERO_COEF_TOL = 1e-8


class Branch(str, enum.Enum):
    THETA_ZERO = "ThetaZero"
    THETA_HALF_PI = "ThetaHalfPi"
    INTERIOR = "Interior"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class BranchDecision:
    branch: Branch
    h0: float
    h_pi2_prime: float
    theta_s: float | None = None
    # True when a numerical scan or golden-section search replaced the analytic route.
    fallback: bool = False


@dataclass(frozen=True)
class DeficitResult:
    deficit: float
    decision: BranchDecision
    g_min: float
    g_at_0: float
    g_at_pi2: float
    entropy: float
    canonical: BlochX
    transforms: tuple[str, ...] = ()

    @property
    def branch(self) -> Branch:
        return self.decision.branch


def _second_derivative_fd(s: BlochX, theta: float, h: float = FD_STEP_CURVATURE) -> float:
    g = g_theta0_profile(s, theta + h * np.array([-2.0, -1.0, 0.0, 1.0, 2.0]))
    return (-g[0] + 16 * g[1] - 30 * g[2] + 16 * g[3] - g[4]) / (12 * h * h)


def _h0_limit(s: BlochX) -> float | None:
    """Closed-form ``-4 G''(0)``; ``None`` when only a finite difference will do.

    Writes the curvature as a sum of ``c_i log2(lambda_i)`` over the four
    eigenvalues at ``theta = 0``. Zero eigenvalues contribute nothing when
    their coefficient vanishes and send the criterion to ``-inf`` otherwise.
    """
    x, y, t1, _, t3 = s.as_tuple()
    total = 0.0
    diverges = False
    for sign in (1.0, -1.0):
        p = 1 + sign * y
        signed = x + sign * t3
        r = abs(signed)
        curv_p = -sign * y
        k = t1 * t1 - sign * t3 * signed
        if p <= SINGULAR_GAP:
            return None
        gap = p - r
        if gap >= r:
            total += curv_p * (math.log2((p + r) / 4) + math.log2(gap / 4)) + k * log_ratio_over_r(p, r)
            continue
        c_hi = curv_p + k / r
        c_lo = curv_p - k / r
        total += c_hi * math.log2((p + r) / 4)
        if gap > SINGULAR_GAP:
            total += c_lo * math.log2(gap / 4)
        elif c_lo > ZERO_COEF_TOL:
            diverges = True
        elif c_lo < -ZERO_COEF_TOL:
            return None
    return -math.inf if diverges else total


def _h_pi2_closed(s: BlochX) -> float | None:
    """Closed-form criterion at ``theta = pi/2``, rearranged to stay finite as t1^2 + x^2 -> 0."""
    x, y, t1, _, t3 = s.as_tuple()
    rho2 = t1 * t1 + x * x
    if rho2 >= 1 - 1e-12:
        return None
    rho = math.sqrt(rho2)
    inv = 1.0 / (1.0 - rho2)
    if rho < 1e-8:
        atanh_ratio = 1.0 + rho2 / 3.0
        t3_term = t3 * t3
    else:
        atanh_ratio = math.atanh(rho) / rho
        t3_term = t3 * t3 * ((x * x / rho2) * inv + (t1 * t1 / rho2) * atanh_ratio)
    return 4 * ((y * y - 2 * x * y * t3) * inv + t3_term - t1 * t1 * atanh_ratio)


def _criteria(s: BlochX) -> tuple[float, float, bool]:
    singular = False
    h0v = _h0_limit(s)
    if h0v is None:
        h0v = -4 * _second_derivative_fd(s, 0.0)
        singular = True
    hpv = _h_pi2_closed(s)
    if hpv is None:
        hpv = -4 * LN2 * _second_derivative_fd(s, math.pi / 2)
        singular = True
    return h0v, hpv, singular


def h0(s: BlochX) -> float:
    """Curvature criterion at ``theta = 0`` (positive means a local maximum of G)."""
    return _criteria(canonicalize(s)[0])[0]


def h_pi2_prime(s: BlochX) -> float:
    """Curvature criterion at ``theta = pi/2`` (positive means a local maximum of G)."""
    return _criteria(canonicalize(s)[0])[1]


def g_at_zero(s: BlochX) -> float:
    """G(0, 0): entropy after measuring B in the computational basis."""
    x, y, _, _, t3 = s.as_tuple()
    q = [
        ((1 + sk * x) + sj * (y + sk * t3)) / 4
        for sk in (1.0, -1.0)
        for sj in (1.0, -1.0)
    ]
    return shannon_bits(q)


def g_at_pi2(s: BlochX) -> float:
    x, _, t1, _, _ = canonicalize(s)[0].as_tuple()
    return 1.0 + binary_entropy((1 - math.hypot(t1, x)) / 2)


def _slope_sign(s: BlochX, theta: float) -> int:
    """Sign of H_theta, i.e. of -dG/dtheta, with a finite-difference fallback."""
    try:
        value = h_theta(s, theta)
    except SingularEvaluationError:
        h = FD_STEP_SLOPE
        value = -(g_theta0_profile(s, theta + h) - g_theta0_profile(s, theta - h))
    return 1 if value > 0 else -1


def _endpoint_sign(s: BlochX, theta: float, expected: int) -> int:
    try:
        value = h_theta(s, theta)
    except SingularEvaluationError:
        return expected
    return 1 if value > 0 else -1


def solve_theta_s(s: BlochX, full_output: bool = False):
    """Interior critical angle solving ``H_theta = 0`` on ``(0, pi/2)``.

    Requires both criteria to be positive. Bisects on the sign of ``H_theta``
    over ``[1e-8, pi/2 - 1e-8]``; when the bracket does not straddle a sign
    change it falls back to golden-section minimization of ``G(theta, 0)``.
    With ``full_output`` returns ``(theta, info)`` where ``info["fallback"]``
    flags the second route.
    """
    s = canonicalize(s)[0]
    h0v, hpv, _ = _criteria(s)
    if not (h0v > CRITERION_TOL and hpv > CRITERION_TOL):
        raise ValueError(
            f"interior root requires both criteria positive (h0={h0v:.3g}, h_pi2'={hpv:.3g})"
        )
    lo, hi = ROOT_EPS, math.pi / 2 - ROOT_EPS
    sign_lo = _endpoint_sign(s, lo, 1)
    sign_hi = _endpoint_sign(s, hi, -1)
    if sign_lo != sign_hi:
        theta = bisect_sign(lambda t: _slope_sign(s, t), lo, hi, sign_lo, xtol=ROOT_XTOL)
        fallback = False
    else:
        theta = golden_section(lambda t: g_theta0_profile(s, t), 0.0, math.pi / 2, tol=ROOT_XTOL)[0]
        fallback = True
    if full_output:
        return theta, {"fallback": fallback, "h0": h0v, "h_pi2_prime": hpv}
    return theta


def _scan_decision(s: BlochX, h0v: float, hpv: float, g0: float, gp: float) -> BranchDecision:
    thetas = np.linspace(0.0, math.pi / 2, SCAN_POINTS)
    profile = g_theta0_profile(s, thetas)
    i = int(np.argmin(profile))
    if 0 < i < SCAN_POINTS - 1:
        theta, g, _ = golden_section(
            lambda t: g_theta0_profile(s, t), thetas[i - 1], thetas[i + 1], tol=ROOT_XTOL
        )
        if g < min(g0, gp):
            return BranchDecision(Branch.INTERIOR, h0v, hpv, theta, fallback=True)
    return _endpoint_decision(h0v, hpv, g0, gp, fallback=True)


def _endpoint_decision(h0v, hpv, g0, gp, fallback=False) -> BranchDecision:
    branch = Branch.THETA_ZERO if g0 <= gp else Branch.THETA_HALF_PI
    return BranchDecision(branch, h0v, hpv, None, fallback)


def _decide(s: BlochX, g0: float, gp: float) -> BranchDecision:
    h0v, hpv, singular = _criteria(s)
    if singular:
        return _scan_decision(s, h0v, hpv, g0, gp)
    if h0v > CRITERION_TOL and hpv > CRITERION_TOL:
        theta, info = solve_theta_s(s, full_output=True)
        if 0.0 < theta < math.pi / 2 and g_theta0_profile(s, theta) <= min(g0, gp):
            return BranchDecision(Branch.INTERIOR, h0v, hpv, theta, info["fallback"])
        return _endpoint_decision(h0v, hpv, g0, gp, fallback=True)
    return _endpoint_decision(h0v, hpv, g0, gp)


def classify_branch(s: BlochX) -> BranchDecision:
    """Which of theta = 0, theta = pi/2 or an interior angle minimizes G(theta, 0)."""
    s = canonicalize(s)[0]
    return _decide(s, g_at_zero(s), g_at_pi2(s))


def one_way_deficit(s: BlochX, tol: float = DEFAULT_TOL) -> DeficitResult:
    """One-way deficit in bits; the decision is reported in canonical coordinates."""
    check_valid(s, tol)
    canon, log = canonicalize(s)
    g0, gp = g_at_zero(canon), g_at_pi2(canon)
    decision = _decide(canon, g0, gp)
    if decision.branch is Branch.INTERIOR:
        g_min = g_theta0_profile(canon, decision.theta_s)
    else:
        g_min = g0 if decision.branch is Branch.THETA_ZERO else gp
    entropy = von_neumann_entropy(s)
    return DeficitResult(
        deficit=g_min - entropy,
        decision=decision,
        g_min=g_min,
        g_at_0=g0,
        g_at_pi2=gp,
        entropy=entropy,
        canonical=canon,
        transforms=log,
    )
