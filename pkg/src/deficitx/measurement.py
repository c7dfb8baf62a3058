"""Projective measurements on qubit B: post-measurement spectrum and the entropy objective.

A projective measurement on B is fixed by a unit Bloch vector ``z``. The
post-measurement state is block diagonal with eigenvalues

    lambda_{1,2} = (p_+ +- sqrt(R + S_+)) / 4,   lambda_{3,4} = (p_- +- sqrt(R + S_-)) / 4

where ``p_+- = 1 +- y z3``, ``R = t1^2 z1^2 + t2^2 z2^2`` and ``S_+- = (x +- t3 z3)^2``.
``G(theta, phi)`` is the Shannon entropy of these eigenvalues.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entropy import shannon_bits, xlog2x
from .state import BlochX, to_matrix

LN2 = math.log(2.0)

# p - sqrt(R + S) below this means a zero eigenvalue and a divergent log.
SINGULAR_GAP = 1e-12


class SingularEvaluationError(ArithmeticError):
    """An analytic derivative hit a zero eigenvalue; use a finite difference instead."""


@dataclass(frozen=True)
class MeasurementAngles:
    """Polar angle ``theta`` in [0, pi] and azimuth ``phi`` in [0, 2 pi)."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta = math.fmod(float(self.theta), 2 * math.pi)
        phi = float(self.phi)
        if theta < 0:
            theta += 2 * math.pi
        if theta > math.pi:
            theta = 2 * math.pi - theta
            phi += math.pi
        phi = math.fmod(phi, 2 * math.pi)
        if phi < 0:
            phi += 2 * math.pi
        if phi >= 2 * math.pi:
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)


@dataclass(frozen=True)
class ZVector:
    z1: float
    z2: float
    z3: float

    def norm(self) -> float:
        return math.sqrt(self.z1**2 + self.z2**2 + self.z3**2)


@dataclass(frozen=True)
class PostMeasurementSpectrum:
    lambda1: float
    lambda2: float
    lambda3: float
    lambda4: float
    p_plus: float
    p_minus: float
    R: float
    S_plus: float
    S_minus: float

    def eigenvalues(self) -> tuple[float, float, float, float]:
        return (self.lambda1, self.lambda2, self.lambda3, self.lambda4)


def direction(angles: MeasurementAngles) -> ZVector:
    st = math.sin(angles.theta)
    return ZVector(st * math.cos(angles.phi), st * math.sin(angles.phi), math.cos(angles.theta))


def unitary_to_direction(t: float, y1: float, y2: float, y3: float) -> ZVector:
    """Bloch vector of ``V|0>`` for ``V = t I + i (y1 s1 + y2 s2 + y3 s3)``."""
    norm2 = t * t + y1 * y1 + y2 * y2 + y3 * y3
    if abs(norm2 - 1.0) > 1e-10:
        raise ValueError(f"unitary parameters not normalized: t^2+|y|^2 = {norm2!r}")
    return ZVector(
        2 * (-t * y2 + y1 * y3),
        2 * (t * y1 + y2 * y3),
        t * t + y3 * y3 - y1 * y1 - y2 * y2,
    )


def _eigenvalues(s: BlochX, z1, z2, z3) -> np.ndarray:
    """Vectorized lambda_1..4 over broadcastable z components; last axis has length 4."""
    x, y, t1, t2, t3 = s.as_tuple()
    R = t1 * t1 * z1 * z1 + t2 * t2 * z2 * z2
    rp = np.sqrt(R + (x + t3 * z3) ** 2)
    rm = np.sqrt(R + (x - t3 * z3) ** 2)
    pp = 1 + y * z3
    pm = 1 - y * z3
    return np.stack([(pp + rp) / 4, (pp - rp) / 4, (pm + rm) / 4, (pm - rm) / 4], axis=-1)


def post_measurement_spectrum(s: BlochX, z: ZVector) -> PostMeasurementSpectrum:
    x, y, t1, t2, t3 = s.as_tuple()
    lam = _eigenvalues(s, z.z1, z.z2, z.z3)
    return PostMeasurementSpectrum(
        *(float(v) for v in lam),
        p_plus=1 + y * z.z3,
        p_minus=1 - y * z.z3,
        R=t1 * t1 * z.z1 ** 2 + t2 * t2 * z.z2 ** 2,
        S_plus=(x + t3 * z.z3) ** 2,
        S_minus=(x - t3 * z.z3) ** 2,
    )


def g_value(s: BlochX, angles: MeasurementAngles) -> float:
    """Entropy (bits) of the state after measuring B along ``angles``."""
    z = direction(angles)
    return shannon_bits(_eigenvalues(s, z.z1, z.z2, z.z3))


def g_grid(s: BlochX, thetas, phis) -> np.ndarray:
    """G on the outer-product grid; result has shape ``(len(thetas), len(phis))``."""
    th = np.asarray(thetas, dtype=float)[:, None]
    ph = np.asarray(phis, dtype=float)[None, :]
    st = np.sin(th)
    lam = _eigenvalues(s, st * np.cos(ph), st * np.sin(ph), np.cos(th) + 0 * ph)
    return -np.sum(xlog2x(np.clip(lam, 0.0, None)), axis=-1)


def g_theta0_profile(s: BlochX, theta):
    """G(theta, 0) through the w_{j,k} form; vectorized over ``theta``."""
    x, y, t1, _, t3 = s.as_tuple()
    theta = np.asarray(theta, dtype=float)
    c = np.cos(theta)
    st2 = np.sin(theta) ** 2
    total = 0.0
    for sj in (-1.0, 1.0):
        root = np.sqrt(t1 * t1 * st2 + (x + sj * t3 * c) ** 2)
        base = 1 + sj * y * c
        for sk in (-1.0, 1.0):
            w = np.clip((base + sk * root) / 4, 0.0, None)
            total = total - xlog2x(w)
    return total if np.ndim(total) else float(total)


def log_ratio_over_r(p: float, r: float) -> float:
    """``log2((p + r) / (p - r)) / r``, continuous at ``r = 0`` where it equals 2/(p ln 2)."""
    q = r / p
    if abs(q) < 1e-6:
        return 2.0 / (p * LN2) * (1.0 + q * q / 3.0)
    return 2.0 * math.atanh(q) / (r * LN2)


def _pair_terms(s: BlochX, theta: float, phi: float = 0.0):
    x, y, t1, t2, t3 = s.as_tuple()
    c, st = math.cos(theta), math.sin(theta)
    R = (t1 * t1 * math.cos(phi) ** 2 + t2 * t2 * math.sin(phi) ** 2) * st * st
    out = []
    for sign in (1.0, -1.0):
        p = 1 + sign * y * c
        signed = x + sign * t3 * c
        r = math.sqrt(R + signed * signed)
        if p - r < SINGULAR_GAP or p <= 0:
            raise SingularEvaluationError(
                f"zero eigenvalue at theta={theta!r}: p={p!r}, sqrt(R+S)={r!r}"
            )
        out.append((p, r, signed))
    return out


def h_theta(s: BlochX, theta: float) -> float:
    """H_theta at ``phi = 0``, normalized so that dG/dtheta = -(sin theta / 4) H_theta.

    Uses the signed factor ``x +- t3 cos(theta)`` so the identity holds for
    every state, not only when that factor is nonnegative.
    """
    x, y, t1, _, t3 = s.as_tuple()
    (pp, rp, sp), (pm, rm, sm) = _pair_terms(s, theta)
    c = math.cos(theta)
    return (
        y * math.log2((pm * pm - rm * rm) / (pp * pp - rp * rp))
        + (t1 * t1 * c - t3 * sp) * log_ratio_over_r(pp, rp)
        + (t1 * t1 * c + t3 * sm) * log_ratio_over_r(pm, rm)
    )


def h_phi(s: BlochX, angles: MeasurementAngles) -> float:
    """H_phi, positive for non-degenerate inputs."""
    (pp, rp, _), (pm, rm, _) = _pair_terms(s, angles.theta, angles.phi)
    return log_ratio_over_r(pp, rp) + log_ratio_over_r(pm, rm)


def dg_dtheta(s: BlochX, theta: float) -> float:
    """Analytic dG/dtheta along ``phi = 0``."""
    return -math.sin(theta) / 4 * h_theta(s, theta)


def dg_dphi(s: BlochX, angles: MeasurementAngles) -> float:
    """Analytic dG/dphi = 2 e f sin^2(theta) sin(2 phi) H_phi."""
    m = to_matrix(s)
    return 2 * m.e * m.f * math.sin(angles.theta) ** 2 * math.sin(2 * angles.phi) * h_phi(s, angles)
