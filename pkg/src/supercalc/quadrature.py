"""Adaptive Gauss-Legendre quadrature for black-box real integrands.

Deterministic recursive bisection on a fixed 15-point rule; results do
not depend on evaluation scheduling.  Only the floating-point integration
path uses this; polynomial integrands are integrated exactly elsewhere.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(15)
_NODES_30, _WEIGHTS_30 = np.polynomial.legendre.leggauss(30)


def _fixed(f: Callable[[float], float], a: float, b: float, nodes, weights) -> float:
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return float(half * sum(w * f(mid + half * x) for x, w in zip(nodes, weights)))


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_depth: int = 40,
) -> float:
    """Integrate f over [a, b] to absolute tolerance tol."""

    def recurse(lo: float, hi: float, budget: float, depth: int) -> float:
        coarse = _fixed(f, lo, hi, _NODES, _WEIGHTS)
        fine = _fixed(f, lo, hi, _NODES_30, _WEIGHTS_30)
        if abs(fine - coarse) <= budget or depth >= max_depth:
            return fine
        mid = 0.5 * (lo + hi)
        return recurse(lo, mid, budget / 2, depth + 1) + recurse(mid, hi, budget / 2, depth + 1)

    if a == b:
        return 0.0
    return recurse(float(a), float(b), float(tol), 0)
