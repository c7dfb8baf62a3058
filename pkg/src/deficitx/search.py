"""One-dimensional searches used by the analytic solver and the oracle."""
from __future__ import annotations

import math
from typing import Callable

INV_PHI = (math.sqrt(5) - 1) / 2


def golden_section(f: Callable[[float], float], a: float, b: float, tol: float = 1e-12, max_iter: int = 200):
    """Minimize a unimodal ``f`` on ``[a, b]``.

    Returns ``(x, fx, n_evals)``. The endpoints are evaluated too, so a
    minimum sitting on the boundary is returned exactly.
    """
    a, b = min(a, b), max(a, b)
    fa, fb = f(a), f(b)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    n = 4
    while b - a > tol and n < max_iter:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
        n += 1
    best = min((fc, c), (fd, d), (fa, a), (fb, b))
    return best[1], best[0], n


def bisect_sign(sign: Callable[[float], int], lo: float, hi: float, sign_lo: int, xtol: float = 1e-12, max_iter: int = 200) -> float:
    """Bisection driven only by the sign of the target function.

    ``sign_lo`` is the sign at ``lo``; the sign at ``hi`` is assumed opposite.
    """
    for _ in range(max_iter):
        if hi - lo <= xtol:
            break
        mid = 0.5 * (lo + hi)
        if sign(mid) == sign_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
