"""Quadrature rules for profile integrals.

Two rules cover everything the package integrates:

* an adaptive composite Gauss-Legendre rule for integrands that are smooth
  on (-1, 1) and at worst continuous at the endpoints (moments f^l, f^l K);
* a Gauss-Jacobi rule with weight (1-x^2)^(-1/2) for integrands with
  inverse-square-root endpoint behaviour, which appear because admissible
  profiles vanish linearly at x = +-1.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import roots_jacobi

from .errors import QuadratureAccuracyError

ADAPTIVE_GAUSS = "adaptive-composite-Gauss"
GAUSS_JACOBI = "Gauss-Jacobi-endpoint-weighted"

_RULES = (ADAPTIVE_GAUSS, GAUSS_JACOBI)

_GL15 = leggauss(15)
_GL25 = leggauss(25)


@dataclass(frozen=True)
class QuadratureConfig:
    """Accuracy contract for the integral operations.

    ``rule`` selects the composite Gauss rule or the endpoint-weighted
    Gauss-Jacobi rule; ``abs_tol`` is the absolute tolerance the result must
    meet; ``max_subdivisions`` caps panel splits (or node-count doublings for
    the Jacobi rule) before the computation gives up.
    """

    rule: str = ADAPTIVE_GAUSS
    abs_tol: float = 1e-10
    max_subdivisions: int = 1000

    def __post_init__(self):
        if self.rule not in _RULES:
            raise ValueError(f"unknown quadrature rule {self.rule!r}; expected one of {_RULES}")
        if not (self.abs_tol > 0.0):
            raise ValueError("abs_tol must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


DEFAULT_QUADRATURE = QuadratureConfig()


def _panel(fn, a, b):
    """Return (value, error) on [a, b] from paired 25/15-point Gauss rules."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    lo = half * float(np.dot(_GL15[1], fn(mid + half * _GL15[0])))
    hi = half * float(np.dot(_GL25[1], fn(mid + half * _GL25[0])))
    return hi, abs(hi - lo)


def adaptive_gauss(fn, a, b, abs_tol, max_subdivisions=1000):
    """Integrate a vectorized callable over [a, b] to absolute tolerance.

    Panels are split worst-error-first until the summed error estimate drops
    below ``abs_tol``. Raises QuadratureAccuracyError (carrying the best
    estimate) if the split budget runs out first.
    """
    val, err = _panel(fn, a, b)
    heap = [(-err, 0, a, b, val)]
    seq = 1  # heap tiebreaker; keeps the refinement order deterministic
    total_err = err
    splits = 0
    while total_err > abs_tol:
        if splits >= max_subdivisions:
            total = sum(item[4] for item in heap)
            raise QuadratureAccuracyError(
                f"adaptive quadrature needs more than {max_subdivisions} subdivisions "
                f"(error estimate {total_err:.3e} > tolerance {abs_tol:.3e})",
                best_estimate=total,
                error_estimate=total_err,
            )
        neg_err, _, pa, pb, pval = heapq.heappop(heap)
        pm = 0.5 * (pa + pb)
        lval, lerr = _panel(fn, pa, pm)
        rval, rerr = _panel(fn, pm, pb)
        total_err += lerr + rerr - (-neg_err)
        heapq.heappush(heap, (-lerr, seq, pa, pm, lval))
        heapq.heappush(heap, (-rerr, seq + 1, pm, pb, rval))
        seq += 2
        splits += 1
    return sum(item[4] for item in heap)


def gauss_jacobi_sqrt_weight(g, abs_tol, max_doublings=12):
    """Integrate (1-x^2)^(-1/2) * g(x) over [-1, 1] for smooth g.

    Gauss-Jacobi nodes with exponents (-1/2, -1/2) absorb the endpoint
    singularity; the node count doubles from 16 until two successive
    estimates agree to ``abs_tol``.
    """
    n = 16
    prev = None
    for _ in range(max_doublings + 1):
        x, w = roots_jacobi(n, -0.5, -0.5)
        val = float(np.dot(w, g(x)))
        if prev is not None and abs(val - prev) <= abs_tol:
            return val
        prev = val
        n *= 2
    raise QuadratureAccuracyError(
        f"Gauss-Jacobi rule did not settle to {abs_tol:.3e} within {n // 2} nodes",
        best_estimate=prev,
    )
