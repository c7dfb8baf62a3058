"""Brute-force reference for the one-way deficit.

Minimizes G over the full measurement sphere (no canonicalization and no
reduction to ``phi = 0``): an exhaustive grid followed by coordinate-wise
golden-section refinement. ``dense_post_measurement_entropy`` builds the
measured 4x4 matrix explicitly and shares nothing with the eigenvalue
formulas, so it can cross-check them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .measurement import MeasurementAngles, g_grid, g_value
from .search import golden_section
from .state import BlochX, XMatrix, check_valid, von_neumann_entropy

_I2 = np.eye(2, dtype=complex)
_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True)
class OracleSettings:
    theta_grid_points: int = 361
    phi_grid_points: int = 181
    refine_tolerance: float = 1e-10
    refine_max_iters: int = 200

    def __post_init__(self):
        if self.theta_grid_points < 3 or self.phi_grid_points < 3:
            raise ValueError("grids need at least 3 points")
        if not self.refine_tolerance > 0:
            raise ValueError("refine_tolerance must be positive")


@dataclass(frozen=True)
class OracleResult:
    g_min: float
    argmin_angles: MeasurementAngles
    deficit: float
    evaluations: int
    converged: bool = True


def _grids(settings: OracleSettings):
    thetas = np.linspace(0.0, math.pi / 2, settings.theta_grid_points)
    # phi in [0, pi): endpoint excluded, G(theta, phi + pi) = G(theta, phi)
    phis = np.linspace(0.0, math.pi, settings.phi_grid_points, endpoint=False)
    return thetas, phis


def grid_minimum(s: BlochX, settings: OracleSettings = OracleSettings()) -> OracleResult:
    """Exhaustive grid argmin; ties go to the smallest theta, then the smallest phi."""
    thetas, phis = _grids(settings)
    values = g_grid(s, thetas, phis)
    i, j = np.unravel_index(int(np.argmin(values)), values.shape)
    g = float(values[i, j])
    return OracleResult(
        g_min=g,
        argmin_angles=MeasurementAngles(float(thetas[i]), float(phis[j])),
        deficit=g - von_neumann_entropy(s),
        evaluations=values.size,
    )


def refine_minimum(s: BlochX, seed: OracleResult, settings: OracleSettings = OracleSettings()) -> OracleResult:
    """Alternate golden-section searches in theta and phi, one grid cell either side."""
    d_theta = (math.pi / 2) / (settings.theta_grid_points - 1)
    d_phi = math.pi / settings.phi_grid_points
    theta, phi = seed.argmin_angles.theta, seed.argmin_angles.phi
    best = g_value(s, seed.argmin_angles)
    evals = seed.evaluations + 1
    converged = False
    for _ in range(settings.refine_max_iters):
        start = best
        t_new, g_t, n = golden_section(
            lambda t: g_value(s, MeasurementAngles(t, phi)),
            max(0.0, theta - d_theta),
            min(math.pi / 2, theta + d_theta),
            tol=1e-10,
        )
        evals += n
        if g_t < best:
            theta, best = t_new, g_t
        p_new, g_p, n = golden_section(
            lambda p: g_value(s, MeasurementAngles(theta, p)), phi - d_phi, phi + d_phi, tol=1e-10
        )
        evals += n
        if g_p < best:
            phi, best = p_new, g_p
        if start - best < settings.refine_tolerance:
            converged = True
            break
    angles = MeasurementAngles(theta, phi)
    if best > seed.g_min:
        best, angles = seed.g_min, seed.argmin_angles
    return OracleResult(best, angles, best - von_neumann_entropy(s), evals, converged)


def dense_post_measurement_entropy(m: XMatrix, t: float, y1: float, y2: float, y3: float) -> float:
    """Entropy after measuring B with projectors ``V|k><k|V^dag``, built from 4x4 matrices."""
    norm2 = t * t + y1 * y1 + y2 * y2 + y3 * y3
    if abs(norm2 - 1.0) > 1e-10:
        raise ValueError(f"unitary parameters not normalized: {norm2!r}")
    V = t * _I2 + 1j * (y1 * _PAULI[0] + y2 * _PAULI[1] + y3 * _PAULI[2])
    rho = m.dense().astype(complex)
    out = np.zeros((4, 4), dtype=complex)
    for k in range(2):
        ket = V[:, k : k + 1]
        M = np.kron(_I2, ket @ ket.conj().T)
        out += M @ rho @ M
    w = np.linalg.eigvalsh(out)
    w = w[w > 0]
    return float(-np.sum(w * np.log2(w)))


def deficit_oracle(s: BlochX, settings: OracleSettings = OracleSettings()) -> OracleResult:
    check_valid(s)
    return refine_minimum(s, grid_minimum(s, settings), settings)
