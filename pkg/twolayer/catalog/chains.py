# twolayer/catalog/chains.py
"""
Extended reduction of the linear equation

    v_ppq - 2F (A v)_q + beta v_p = 0

by a Jordan block of m copies of it. The chained ansatz

    v^a = exp(lam p) sum_{b=1..a} phi^b(q) p^(a-b) / (a-b)!

turns it into the triangular system L phi^1 = 0, L phi^k = -S_k with

    L = (lam^2 - 2F A) d/dq - 2F A' + beta lam,
    S_k = beta phi^(k-1) + 2 lam phi^(k-1)' + phi^(k-2)'.

Constant A with rational data is solved in closed form over the ExpPoly ring; everything else
goes through a numeric integration of the triangular system.
"""
from dataclasses import dataclass
from math import factorial

import numpy as np
import sympy
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from ..algebra import ExpPoly
from ..errors import NumericalInstabilityError, SingularLocusError
from ..transforms.functions import as_time_function
from ..utils.logging import logger
from .integration import ODE_ATOL, ODE_RTOL
from .models import GUARD, ParamSpec, SolutionExpr, require

DENOMINATOR_SAMPLES = 2001


@dataclass(frozen=True)
class ChainMember:
    """v^a(p, q) of a chain; ``part`` selects the real or imaginary part for complex lam."""
    index: int
    lam: complex
    phis: tuple
    q_range: tuple[float, float] | None = None
    part: str | None = None

    def __call__(self, p, q):
        p, q = np.broadcast_arrays(np.asarray(p, dtype=float), np.asarray(q, dtype=float))
        if self.q_range is not None and (np.any(q < self.q_range[0]) or np.any(q > self.q_range[1])):
            raise SingularLocusError(f"chain member {self.index} is integrated on q in {list(self.q_range)}")
        total = np.zeros(p.shape, dtype=complex)
        for b in range(1, self.index + 1):
            total = total + self.phis[b - 1](q) * p ** (self.index - b) / factorial(self.index - b)
        total = np.exp(self.lam * p) * total
        if self.part == "imag":
            return total.imag
        return total.real

    @property
    def exact(self) -> bool:
        return self.q_range is None


def _as_rational(value):
    """Exact rational for real data given as int/Fraction/str or a float with a short expansion."""
    if isinstance(value, complex):
        return None
    number = sympy.nsimplify(value, rational=True) if isinstance(value, float) else sympy.sympify(value, rational=True)
    return number if number.is_Rational else None


def _exact_chain(m, lam, A, constants, q0, F, beta):
    lam_q, F_q, beta_q, q0_q, A_q = (_as_rational(v) for v in (lam, F, beta, q0, A.constant_value()))
    denominator = 2 * F_q * A_q - lam_q**2
    if denominator == 0:
        raise SingularLocusError(f"2F A - lam^2 vanishes identically (A = {A}, lam = {lam})")
    # exp(-zeta) with zeta(q0) = 0
    rate = beta_q * lam_q / denominator
    decay = ExpPoly.exponential(rate, sympy.exp(-rate * q0_q))
    growth = ExpPoly.exponential(-rate, sympy.exp(rate * q0_q))
    phis = []
    for k in range(m):
        phi = decay * _as_rational_or_float(constants[k])
        if k >= 1:
            source = phis[k - 1] * beta_q + phis[k - 1].diff() * (2 * lam_q)
            if k >= 2:
                source = source + phis[k - 2].diff()
            anti = (source * growth * (1 / denominator)).antiderivative()
            phi = phi + decay * (anti - anti.value_at(q0_q))
        phis.append(phi)
    return phis


def _as_rational_or_float(value):
    exact = _as_rational(value)
    return exact if exact is not None else sympy.Float(value)


def _check_denominator(A_fn, lam, F, q_range):
    q = np.linspace(q_range[0], q_range[1], DENOMINATOR_SAMPLES)
    den = 2 * F * np.asarray(A_fn(q), dtype=float) - lam**2
    scale = np.max(np.abs(2 * F * np.asarray(A_fn(q), dtype=float))) + abs(lam) ** 2
    if np.iscomplexobj(den):
        worst = int(np.argmin(np.abs(den)))
        if abs(den[worst]) <= GUARD * scale:
            raise SingularLocusError(f"2F A(q) - lam^2 vanishes near q = {q[worst]:.6g}")
        return
    if np.any(np.abs(den) <= GUARD * scale):
        worst = int(np.argmin(np.abs(den)))
        raise SingularLocusError(f"2F A(q) - lam^2 vanishes at q = {q[worst]:.6g}")
    flips = np.nonzero(np.sign(den[:-1]) != np.sign(den[1:]))[0]
    if flips.size:
        i = int(flips[0])
        root = brentq(lambda s: 2 * F * float(A_fn(s)) - lam**2, q[i], q[i + 1])
        raise SingularLocusError(f"2F A(q) - lam^2 vanishes at q = {root:.6g}")


def _numeric_chain(m, lam, A_fn, constants, q_range, F, beta):
    """Integrate (lam^2 - 2F A) phi^k' = (2F A' - beta lam) phi^k - S_k from phi^k(q0) = c_k."""

    def rhs(q, phi):
        d = lam**2 - 2 * F * A_fn(q)
        coef = 2 * F * A_fn.derivative(q) - beta * lam
        dphi = []
        for k in range(m):
            source = 0.0
            if k >= 1:
                source = beta * phi[k - 1] + 2 * lam * dphi[k - 1]
            if k >= 2:
                source = source + dphi[k - 2]
            dphi.append((coef * phi[k] - source) / d)
        return dphi

    y0 = np.asarray(constants[:m], dtype=complex)
    result = solve_ivp(rhs, q_range, y0, method="DOP853", dense_output=True, rtol=ODE_RTOL, atol=ODE_ATOL)
    if not result.success:
        raise NumericalInstabilityError(f"chain integration failed: {result.message}")
    solution = result.sol

    def component(k):
        def phi(q):
            q = np.asarray(q, dtype=float)
            return solution(q.ravel())[k].reshape(q.shape)
        return phi

    return [component(k) for k in range(m)]


def extended_reduction_chain(m: int, lam, A, c, q_range, F: float = 1.0, beta: float = 1.0,
                             method: str = "auto"):
    """
    The first m members v^1 .. v^m of the chain with constants c = (c_1, .., c_m).

    Returns a list of ``ChainMember``; for complex lam a pair (real parts, imaginary parts).
    ``method`` is "exact" (constant rational A and rational lam), "numeric" or "auto".
    """
    require(m >= 1, "m >= 1")
    require(len(c) >= m, f"{m} constants")
    require(method in ("auto", "exact", "numeric"), "method in {auto, exact, numeric}")
    q_range = (float(q_range[0]), float(q_range[1]))
    require(q_range[0] < q_range[1], "q_range[0] < q_range[1]")
    A = as_time_function(A)
    lam = complex(lam) if isinstance(lam, complex) and lam.imag != 0 else float(np.real(lam))

    exact_possible = (isinstance(A, ExpPoly) and A.is_constant() and not isinstance(lam, complex)
                      and all(_as_rational(v) is not None for v in (lam, F, beta, q_range[0]))
                      and _as_rational(A.constant_value()) is not None)
    if method == "exact" and not exact_possible:
        require(False, "exact chains need a constant A and rational lam, F, beta, q0")

    if exact_possible and method != "numeric":
        phis = _exact_chain(m, lam, A, c, q_range[0], F, beta)
        logger.debug(f"Exact chain of length {m}: {[str(p) for p in phis]}")
        return [ChainMember(index=a, lam=lam, phis=tuple(phis[:a])) for a in range(1, m + 1)]

    _check_denominator(A, lam, F, q_range)
    phis = _numeric_chain(m, lam, A, c, q_range, F, beta)
    if isinstance(lam, complex):
        return tuple(
            [ChainMember(index=a, lam=lam, phis=tuple(phis[:a]), q_range=q_range, part=part)
             for a in range(1, m + 1)]
            for part in ("real", "imag")
        )
    return [ChainMember(index=a, lam=lam, phis=tuple(phis[:a]), q_range=q_range) for a in range(1, m + 1)]


JORDAN_CHAIN_SCHEMA = {
    "A": ParamSpec(default=1.0, description="constant coefficient A = 1/H, 0 < A <= 1"),
    "lam": ParamSpec(default=1.0, description="rate lam of exp(lam p)"),
    "m": ParamSpec(default=3, description="chain length", kind="int"),
    "index": ParamSpec(default=3, description="which member v^a to return (1..m)", kind="int"),
    "c1": ParamSpec(default=1.0, description="c_1"),
    "c2": ParamSpec(default=0.5, description="c_2"),
    "c3": ParamSpec(default=0.25, description="c_3"),
}


def jordan_chain(params, model) -> SolutionExpr:
    """
    Full-model solution from a chain member with constant A = 1/H: f = sqrt(H - 1) is constant,
    qbar = t/H, and psi- = v^a(x - f y, qbar)/H, psi+ = 0.
    """
    A, lam, m, index = params["A"], params["lam"], params["m"], params["index"]
    require(0 < A <= 1, "0 < A <= 1")
    require(1 <= m <= 3 and 1 <= index <= m, "1 <= index <= m <= 3")
    constants = [params["c1"], params["c2"], params["c3"]]
    chain = extended_reduction_chain(m, lam, ExpPoly.constant(sympy.nsimplify(A, rational=True)),
                                     constants, (0.0, 1.0), F=model.F, beta=model.beta)
    member = chain[index - 1]
    f0 = np.sqrt(1 / A - 1)

    def evaluator(t, x, y):
        p = x - f0 * y
        return np.zeros_like(p), A * member(p, A * t)

    return SolutionExpr.from_pm(
        "jordan_chain", evaluator, params=params,
        provenance="extended Lie reduction of the linear A1_2 equation (Jordan-block chain)",
    )
