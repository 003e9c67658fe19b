# twolayer/catalog/integration.py
"""Quadrature and ODE helpers for entries whose profiles have no closed form."""
import numpy as np
from scipy.integrate import quad, solve_ivp

from ..errors import BranchError, NumericalInstabilityError
from ..utils.logging import logger

QUAD_TOL = 1e-10
ODE_RTOL = 1e-11
ODE_ATOL = 1e-12


def time_integral(fn, upper: float, lower: float = 0.0) -> float:
    """Adaptive quadrature of ``fn`` over [lower, upper]."""
    value, _ = quad(fn, float(lower), float(upper), epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=200)
    return value


class OdeProfile:
    """
    Solution of y' = rhs(s, y) with y(s0) = y0, integrated from s0 to both ends of [lo, hi].
    Calling it evaluates one component through the dense output; points outside [lo, hi]
    are reported by ``outside``.
    """

    def __init__(self, rhs, s0: float, y0, lo: float, hi: float, label: str = "profile"):
        if lo >= hi or not lo <= s0 <= hi:
            raise BranchError(f"{label}: start point {s0} must lie in a nonempty [{lo}, {hi}]")
        self.rhs, self.s0, self.lo, self.hi, self.label = rhs, float(s0), float(lo), float(hi), label
        y0 = np.asarray(y0)
        self.left = self._integrate(y0, self.lo) if lo < s0 else None
        self.right = self._integrate(y0, self.hi) if hi > s0 else None

    def _integrate(self, y0, end):
        result = solve_ivp(self.rhs, (self.s0, end), y0, method="DOP853", dense_output=True,
                           rtol=ODE_RTOL, atol=ODE_ATOL)
        if not result.success:
            raise NumericalInstabilityError(f"{self.label}: integration towards {end} failed: {result.message}")
        logger.debug(f"{self.label}: {result.t.size} steps from {self.s0} to {end}")
        return result.sol

    def outside(self, s):
        s = np.asarray(s, dtype=float)
        return (s < self.lo) | (s > self.hi)

    def __call__(self, s, component: int = 0):
        s = np.asarray(s, dtype=float)
        flat = s.ravel()
        out = np.empty(flat.shape, dtype=complex if self._complex() else float)
        below = flat < self.s0
        if np.any(below):
            out[below] = self.left(flat[below])[component]
        if np.any(~below):
            branch = self.right if self.right is not None else self.left
            out[~below] = branch(flat[~below])[component]
        return out.reshape(s.shape)

    def _complex(self):
        branch = self.right if self.right is not None else self.left
        return np.iscomplexobj(branch(self.s0))
