"""Entropy primitives in bits, with the convention 0*log2(0) = 0."""
from __future__ import annotations

import numpy as np

# Eigenvalues in [-NEG_TOL, 0) are rounding noise and get clamped to zero.
NEG_TOL = 1e-12


def xlog2x(p):
    """Elementwise ``p * log2(p)``, zero where ``p == 0``. Accepts scalars or arrays."""
    p = np.asarray(p, dtype=float)
    safe = np.where(p > 0, p, 1.0)
    out = np.where(p > 0, p * np.log2(safe), 0.0)
    return out if out.ndim else float(out)


def shannon_bits(probs, axis=-1):
    """Shannon entropy in bits along ``axis``; tiny negatives are clamped to zero."""
    probs = np.asarray(probs, dtype=float)
    if np.any(probs < -NEG_TOL):
        raise ValueError(f"negative probability {probs.min():.3e} below tolerance")
    probs = np.clip(probs, 0.0, None)
    out = -np.sum(xlog2x(probs), axis=axis)
    return out if np.ndim(out) else float(out)


def binary_entropy(w: float) -> float:
    """Binary entropy ``-w log2 w - (1-w) log2 (1-w)``."""
    if w < -NEG_TOL or w > 1.0 + NEG_TOL:
        raise ValueError(f"binary entropy argument {w!r} outside [0, 1]")
    w = min(max(float(w), 0.0), 1.0)
    return -(xlog2x(w) + xlog2x(1.0 - w))
