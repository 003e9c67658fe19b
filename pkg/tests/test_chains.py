"""Polynomial solutions of the scaling ODE and extended reduction chains."""
import numpy as np
import pytest
import sympy

from twolayer.catalog import ChainMember, extended_reduction_chain, polynomial_residual, polynomial_solutions
from twolayer.catalog.polynomials import as_polynomial, r, whittaker_operator
from twolayer.errors import BranchError, SingularLocusError, UsageError


class TestPolynomialSolutions:

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_kernel_is_nonempty_and_exact(self, k):
        basis = polynomial_solutions(k, 1, 1, max_degree=4)
        assert basis
        for coefficients in basis:
            assert polynomial_residual(coefficients, k, 1, 1) == 0

    def test_quadratic_for_k_4(self):
        beta = sympy.Rational(3, 2)
        basis = polynomial_solutions(4, 1, beta, max_degree=2)
        assert basis == [((4 + beta**2) / 4, -beta, 1)]
        assert sympy.expand(as_polynomial(basis[0]) - (r**2 - beta * r + (4 + beta**2) / 4)) == 0

    def test_degree_is_k_minus_2(self):
        for k in (2, 3, 4, 5):
            basis = polynomial_solutions(k, 1, 1, max_degree=6)
            assert [len(c) - 1 for c in basis] == [k - 2]

    def test_constant_solution_has_no_trailing_zeros(self):
        assert polynomial_solutions(2, 1, 1, max_degree=6) == [(1,)]

    def test_too_small_degree_bound(self):
        assert polynomial_solutions(5, 1, 1, max_degree=2) == []

    @pytest.mark.parametrize("k", [3, 4])
    def test_flipped_coupling_sign_has_no_polynomials(self, k):
        assert polynomial_solutions(k, 1, 1, max_degree=6, coupling_sign=1) == []

    def test_operator(self):
        v = 1 - 2 * r
        # lam = -3 with varkappa F = beta = 1
        assert whittaker_operator(v, 3, 1, 1) == 0

    @pytest.mark.parametrize("args", [(0, 1, 1, 3), (2.5, 1, 1, 3), (2, 0, 1, 3), (2, 1, -1, 3), (2, 1, 1, -1)])
    def test_invalid_arguments(self, args):
        with pytest.raises(UsageError):
            polynomial_solutions(*args)


class TestExtendedChain:

    def test_exact_chain_of_three(self):
        chain = extended_reduction_chain(3, 1, 1, (1, 0.5, 0.25), (0.0, 1.0))
        assert [member.index for member in chain] == [1, 2, 3]
        assert all(isinstance(member, ChainMember) and member.exact for member in chain)
        # first member: exp(lam p + rate q) with rate = beta lam / (2F A - lam^2) = 1
        p, q = np.array([0.3, -0.2]), np.array([0.1, 0.8])
        np.testing.assert_allclose(chain[0](p, q), np.exp(p + q))

    def test_numeric_chain_matches_the_exact_one(self):
        constants = (1, 0.5, 0.25)
        exact = extended_reduction_chain(3, 1, 1, constants, (0.0, 1.0), method="exact")
        numeric = extended_reduction_chain(3, 1, 1, constants, (0.0, 1.0), method="numeric")
        p, q = np.meshgrid(np.linspace(-1, 1, 7), np.linspace(0, 1, 5))
        for a, b in zip(exact, numeric):
            np.testing.assert_allclose(b(p, q), a(p, q), rtol=1e-8, atol=1e-10)

    def test_numeric_members_stay_in_their_interval(self):
        chain = extended_reduction_chain(2, 1, lambda q: 1 + 0 * q, (1, 1), (0.0, 1.0))
        with pytest.raises(SingularLocusError):
            chain[0](np.zeros(2), np.array([0.5, 1.5]))

    def test_complex_rate_gives_real_and_imaginary_parts(self):
        real, imag = extended_reduction_chain(2, 1 + 1j, lambda q: 1 + 0 * q, (1, 0), (0.0, 1.0))
        assert real[0].part == "real" and imag[0].part == "imag"
        p, q = np.zeros(3), np.zeros(3)
        np.testing.assert_allclose(real[0](p, q), 1.0)
        np.testing.assert_allclose(imag[0](p, q), 0.0, atol=1e-14)

    def test_constant_degenerate_denominator(self):
        with pytest.raises(SingularLocusError):
            extended_reduction_chain(2, 1, sympy.Rational(1, 2), (1, 1), (0.0, 1.0))

    def test_denominator_crossing_zero(self):
        # 2F A(q) - lam^2 = 2q - 1 changes sign at q = 1/2
        with pytest.raises(SingularLocusError, match="0.5"):
            extended_reduction_chain(1, 1, lambda q: q, (1,), (0.0, 1.0))

    @pytest.mark.parametrize("kwargs", [
        {"m": 0},
        {"c": (1,)},
        {"q_range": (1.0, 0.0)},
        {"method": "symbolic"},
        {"method": "exact", "A": lambda q: 1 + q},
    ])
    def test_invalid_requests(self, kwargs):
        args = {"m": 2, "lam": 1, "A": 1, "c": (1, 1), "q_range": (0.0, 1.0), **kwargs}
        with pytest.raises(BranchError):
            extended_reduction_chain(**args)
