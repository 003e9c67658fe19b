# twolayer/catalog/polynomials.py
"""
Exact polynomial solutions of the scaling-reduced ODE

    r v''' + (lam + 2) v'' + (beta - 2 kF r) v' - 2 kF (lam + 2) v = 0,    lam = -k,

where kF is the product varkappa * F.
"""
import sympy

from ..errors import UsageError
from ..utils.logging import logger

r = sympy.Symbol("r")


def whittaker_operator(v, lambda_k, kappa_F, beta, coupling_sign: int = -1):
    """Apply the ODE to an expression in r; ``coupling_sign`` is the sign of the 2 kF (lam + 2) v term."""
    lam = -sympy.Integer(lambda_k)
    kF, beta = sympy.Rational(kappa_F), sympy.Rational(beta)
    return sympy.expand(
        r * v.diff(r, 3) + (lam + 2) * v.diff(r, 2) + (beta - 2 * kF * r) * v.diff(r)
        + coupling_sign * 2 * kF * (lam + 2) * v
    )


def polynomial_solutions(lambda_k: int, kappa_F, beta, max_degree: int, coupling_sign: int = -1):
    """
    Basis of the polynomials of degree <= max_degree annihilated by the ODE, as ascending
    coefficient tuples of rationals without trailing zeros. Empty when there are none.
    """
    if int(lambda_k) != lambda_k or lambda_k < 1:
        raise UsageError(f"lambda_k must be a positive integer, got {lambda_k}")
    if max_degree < 0:
        raise UsageError(f"max_degree must be non-negative, got {max_degree}")
    kF, beta = sympy.Rational(kappa_F), sympy.Rational(beta)
    if kF <= 0 or beta <= 0:
        raise UsageError("kappa_F and beta must be positive")

    a = sympy.symbols(f"a0:{max_degree + 1}")
    v = sum(coeff * r**j for j, coeff in enumerate(a))
    residual = sympy.Poly(whittaker_operator(v, lambda_k, kF, beta, coupling_sign), r)
    rows = [[sympy.expand(c).coeff(s) for s in a] for c in residual.all_coeffs()]
    matrix = sympy.Matrix(rows) if rows else sympy.zeros(1, len(a))

    basis = []
    for vector in matrix.nullspace():
        # normalized to a monic polynomial
        coefficients = list(vector)
        while coefficients[-1] == 0:
            coefficients.pop()
        lead = coefficients[-1]
        basis.append(tuple(sympy.Rational(c) / lead for c in coefficients))
    if basis:
        logger.info(f"✅ {len(basis)} polynomial solution(s) for k={lambda_k} up to degree {max_degree}")
    else:
        logger.info(f"none found <= degree {max_degree} for k={lambda_k}")
    return basis


def as_polynomial(coefficients):
    return sum(sympy.Rational(c) * r**j for j, c in enumerate(coefficients))


def polynomial_residual(coefficients, lambda_k, kappa_F, beta):
    """Exact residual of a coefficient vector; zero for every returned basis element."""
    return whittaker_operator(as_polynomial(coefficients), lambda_k, kappa_F, beta)
