"""Local phase damping on both qubits and the resulting deficit trajectories."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .analytic import Branch, one_way_deficit
from .state import BlochX, XMatrix, from_matrix, to_matrix

KRAUS_EXACT = "kraus-exact"
PAPER_TRANSFORM = "paper-transform"
MODES = (KRAUS_EXACT, PAPER_TRANSFORM)


@dataclass(frozen=True)
class DampingParameter:
    gamma: float

    def __post_init__(self):
        _check_gamma(self.gamma)

    @classmethod
    def from_rate(cls, tau: float, time: float) -> "DampingParameter":
        return cls(1.0 - math.exp(-tau * time))


@dataclass(frozen=True)
class TrajectoryPoint:
    gamma: float
    deficit: float
    branch: Branch
    g_at_0: float
    g_at_pi2: float
    h0: float
    h_pi2_prime: float
    state: BlochX


def _check_gamma(gamma: float) -> float:
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"damping parameter {gamma!r} outside [0, 1]")
    return float(gamma)


def kraus_operators(gamma: float) -> tuple[np.ndarray, np.ndarray]:
    gamma = _check_gamma(gamma)
    return np.diag([1.0, math.sqrt(1.0 - gamma)]), np.diag([0.0, math.sqrt(gamma)])


def apply_phase_damping_kraus(m: XMatrix, gamma: float) -> XMatrix:
    """Apply ``sum_ij (F_i x F_j) rho (F_i x F_j)^dag`` to the dense matrix.

    The coherences e and f come out scaled by ``1 - gamma``.
    """
    ops = kraus_operators(gamma)
    rho = m.dense()
    out = np.zeros_like(rho)
    for fa in ops:
        for fb in ops:
            k = np.kron(fa, fb)
            out += k @ rho @ k.T
    return XMatrix.from_dense(out)


def paper_dephasing_transform(s: BlochX, gamma: float) -> BlochX:
    """Scale t1 and t2 by ``(1 - gamma)^2``, leaving x, y, t3."""
    scale = (1.0 - _check_gamma(gamma)) ** 2
    return BlochX(s.x, s.y, scale * s.t1, scale * s.t2, s.t3)


def damp(s: BlochX, gamma: float, mode: str = KRAUS_EXACT) -> BlochX:
    if mode == PAPER_TRANSFORM:
        return paper_dephasing_transform(s, gamma)
    if mode != KRAUS_EXACT:
        raise ValueError(f"unknown damping mode {mode!r}; expected one of {MODES}")
    if _check_gamma(gamma) == 0.0:
        return s
    return from_matrix(apply_phase_damping_kraus(to_matrix(s), gamma))


def _point(s: BlochX, gamma: float, mode: str) -> TrajectoryPoint:
    damped = damp(s, gamma, mode)
    r = one_way_deficit(damped)
    return TrajectoryPoint(
        gamma, r.deficit, r.branch, r.g_at_0, r.g_at_pi2, r.decision.h0, r.decision.h_pi2_prime, damped
    )


def deficit_trajectory(s: BlochX, gammas: Sequence[float], mode: str = KRAUS_EXACT, executor=None) -> list[TrajectoryPoint]:
    """Deficit of the damped state at each gamma (strictly increasing).

    ``executor`` may be any object with an order-preserving ``map``.
    """
    gammas = [_check_gamma(g) for g in gammas]
    if any(b <= a for a, b in zip(gammas, gammas[1:])):
        raise ValueError("gamma values must be strictly increasing")
    if mode not in MODES:
        raise ValueError(f"unknown damping mode {mode!r}; expected one of {MODES}")
    mapper = executor.map if executor is not None else map
    return list(mapper(lambda g: _point(s, g, mode), gammas))


def detect_branch_transitions(
    traj: Sequence[TrajectoryPoint],
    state: BlochX | None = None,
    mode: str = KRAUS_EXACT,
    tol: float = 1e-6,
) -> list[float]:
    """Gamma values where the optimal branch changes between consecutive points.

    With the undamped ``state`` each change is refined by bisection on the
    branch label to a bracket narrower than ``tol``; otherwise the midpoint of
    the coarse bracket is reported.
    """
    if len(traj) < 2:
        raise ValueError("need at least two trajectory points")
    out = []
    for left, right in zip(traj, traj[1:]):
        if left.branch == right.branch:
            continue
        lo, hi = left.gamma, right.gamma
        if state is not None:
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                if one_way_deficit(damp(state, mid, mode)).branch == left.branch:
                    lo = mid
                else:
                    hi = mid
        out.append(0.5 * (lo + hi))
    return out
