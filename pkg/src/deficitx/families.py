"""Example state families with reference closed forms for their deficits.

``example1(q)``: ``q |psi-><psi-| + (1 - q) |00><00|``.
``example2(alpha)``: ``alpha |phi+><phi+| + (1 - alpha)/2 (|01><01| + |10><10|)``.
``bell_diagonal(t1, t2, t3)``: x = y = 0. ``werner(p)`` is ``bell_diagonal(-p, -p, -p)``.

``example*_h0`` and ``example*_h_pi2_prime`` are closed-form curvature
criteria specialised to each family, written independently of
:mod:`deficitx.analytic` so the two can be compared.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from scipy.optimize import brentq

from .analytic import Branch
from .entropy import binary_entropy, xlog2x
from .measurement import g_theta0_profile
from .search import golden_section
from .state import BlochX, canonicalize, check_valid, von_neumann_entropy


@dataclass(frozen=True)
class FamilyPoint:
    family: str
    parameters: tuple[float, ...]
    state: BlochX
    closed_form_deficit: float | None = None


def _unit(name: str, value: float) -> float:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name}={value!r} outside [0, 1]")
    return float(value)


def example1(q: float) -> BlochX:
    q = _unit("q", q)
    return BlochX(1 - q, 1 - q, -q, -q, 1 - 2 * q)


def example1_h0(q: float) -> float:
    """Closed-form zero-angle criterion for example 1 (finite for 0 < q < 1, q != 2/3)."""
    m = abs(2 - 3 * q)
    return (q - 1) / m * (
        m * math.log2(2 / q - 2) + (5 * q - 2) * math.log2((q - 2 + m) / (q - 2 - m))
    )


def example1_h_pi2_prime(q: float) -> float:
    r = math.sqrt(2 * q * q - 2 * q + 1)
    return 4 * (1 - q) / r**3 * (r * (4 * q * q - 3 * q + 1) - 2 * q**3 * math.atanh(r))


@lru_cache(maxsize=None)
def example1_boundaries() -> tuple[float, float]:
    """(lower, upper) ends of the interior-branch interval of example 1."""
    lower = brentq(example1_h0, 0.3, 0.6, xtol=1e-15)
    upper = brentq(example1_h_pi2_prime, 0.6, 0.75, xtol=1e-15)
    return lower, upper


def example1_closed_deficit(q: float) -> tuple[float, Branch]:
    q = _unit("q", q)
    lower, upper = example1_boundaries()
    if q <= lower:
        return q, Branch.THETA_ZERO
    entropy_term = xlog2x(q) + xlog2x(1 - q)
    if q <= upper:
        s = BlochX(1 - q, 1 - q, q, q, 1 - 2 * q)
        g = golden_section(lambda t: g_theta0_profile(s, t), 0.0, math.pi / 2, tol=1e-13)[1]
        return entropy_term + g, Branch.INTERIOR
    value = entropy_term + 1 + binary_entropy((1 + math.sqrt(q * q + (1 - q) ** 2)) / 2)
    return value, Branch.THETA_HALF_PI


def example2(alpha: float) -> BlochX:
    alpha = _unit("alpha", alpha)
    return BlochX(0.0, 0.0, alpha, -alpha, 2 * alpha - 1)


def example2_h0(alpha: float) -> float:
    m = abs(2 * alpha - 1)
    # (log2(1 - m) - log2(1 + m)) / m, with its m -> 0 limit
    ratio = -2 * math.atanh(m) / (m * math.log(2)) if m > 0 else -2 / math.log(2)
    return 2 * (alpha - 1) * (3 * alpha - 1) * ratio


def example2_h_pi2_prime(alpha: float) -> float:
    return 4 * (alpha - 1) * (3 * alpha - 1) * math.atanh(alpha) / alpha


def example2_branch_formulas(alpha: float) -> tuple[float, float]:
    """Both closed-form branches evaluated at ``alpha`` (theta = 0 first)."""
    a = alpha
    return a, 1 + a + xlog2x(a) + 0.5 * (xlog2x(1 - a) - xlog2x(1 + a))


def example2_closed_deficit(alpha: float) -> tuple[float, Branch]:
    alpha = _unit("alpha", alpha)
    zero, half_pi = example2_branch_formulas(alpha)
    if alpha <= 1 / 3:
        return zero, Branch.THETA_ZERO
    return half_pi, Branch.THETA_HALF_PI


def bell_diagonal(t1: float, t2: float, t3: float) -> BlochX:
    return check_valid(BlochX(0.0, 0.0, float(t1), float(t2), float(t3)))


def werner(p: float) -> BlochX:
    return bell_diagonal(-p, -p, -p)


def bell_diagonal_g_min(t1: float, t2: float, t3: float) -> float:
    c = canonicalize(BlochX(0.0, 0.0, t1, t2, t3))[0]
    t = max(abs(c.t1), abs(c.t3))
    return 1 + binary_entropy((1 + t) / 2)


FAMILIES = {
    "example1": example1,
    "example2": example2,
    "bell-diagonal": bell_diagonal,
    "werner": werner,
}
# Families a sweep can scan (one scalar parameter).
SWEEPABLE = ("example1", "example2", "werner")


def family_point(name: str, *params: float) -> FamilyPoint:
    if name not in FAMILIES:
        raise KeyError(f"unknown family {name!r}; known: {sorted(FAMILIES)}")
    state = FAMILIES[name](*params)
    closed = None
    if name == "example1":
        closed = example1_closed_deficit(*params)[0]
    elif name == "example2":
        closed = example2_closed_deficit(*params)[0]
    elif name == "bell-diagonal":
        closed = bell_diagonal_g_min(*params) - von_neumann_entropy(state)
    return FamilyPoint(name, tuple(float(p) for p in params), state, closed)

