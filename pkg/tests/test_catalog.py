"""Catalog entries: parameters, validity predicates and residuals against the full model."""
import math

import numpy as np
import pytest

from twolayer.algebra import ExpPoly
from twolayer.catalog import (
    CATALOG,
    build_solution,
    eval_solution,
    get_entry,
    list_entries,
    parse_params,
    resolve_params,
)
from twolayer.catalog.one_dimensional import constant_coefficient_rates, coupled_wave_frequencies
from twolayer.errors import BranchError, SingularLocusError, UsageError
from twolayer.fields import GridSpec
from twolayer.model import ModelParams, Representation, pde_residual


def _residuals(solution, model, t=0.3, sizes=((32, 2e-2), (64, 1e-2)), representation=Representation.LAYERED):
    errors = []
    for n, dt in sizes:
        grid = GridSpec(nx=n, ny=n, Lx=2.0, Ly=2.0)
        errors.append(pde_residual(solution, model, grid, t, dt, representation)[0])
    return errors


def _converges(errors):
    coarse, fine = errors
    return fine < 1e-9 or coarse / fine > 3.5


class TestRegistry:

    def test_entries_are_sorted_by_name(self):
        names = [entry.name for entry in list_entries()]
        assert names == sorted(CATALOG)
        assert "rossby_classic" in names and "jordan_chain" in names

    def test_unknown_entry(self):
        with pytest.raises(UsageError, match="unknown solution"):
            get_entry("rossby_quantum")

    def test_unknown_parameter(self):
        with pytest.raises(UsageError, match="has no parameter"):
            build_solution("rossby_classic", {"omega": 1})

    def test_defaults_are_coerced(self):
        params = resolve_params(get_entry("rossby_channel"), {"n": "2", "k": "1.5"})
        assert params["n"] == 2 and isinstance(params["n"], int)
        assert params["k"] == 1.5

    def test_integer_parameters_reject_fractions(self):
        with pytest.raises(UsageError, match="not an integer"):
            resolve_params(get_entry("rossby_channel"), {"n": "1.5"})

    def test_function_parameters_parse(self):
        params = resolve_params(get_entry("a13_decoupled"), {"f": "2 + t"})
        assert params["f"] == ExpPoly([(0, (2, 1))])

    def test_parse_params(self):
        assert parse_params("k=3, l=2") == {"k": "3", "l": "2"}
        assert parse_params(None) == {}
        assert parse_params("f=1/2 t,c1=0") == {"f": "1/2 t", "c1": "0"}

    @pytest.mark.parametrize("text", ["k", "=3", "  =1"])
    def test_malformed_params(self, text):
        with pytest.raises(UsageError):
            parse_params(text)

    def test_eval_solution_broadcasts(self, model):
        x, y = np.meshgrid(np.linspace(0, 1, 5), np.linspace(0, 1, 4))
        psi1, psi2 = eval_solution("rossby_classic", {"c2": 0.0}, 0.0, x, y, model)
        assert psi1.shape == (4, 5)
        np.testing.assert_allclose(psi1, psi2)
        np.testing.assert_allclose(psi1, 0.5 * np.cos(3 * x + 2 * y))


class TestResiduals:

    @pytest.mark.parametrize("name", sorted(CATALOG))
    def test_every_entry_solves_the_model(self, name, model):
        assert _converges(_residuals(build_solution(name, None, model), model))

    @pytest.mark.parametrize("name", ["rossby_generalized", "a13_decoupled", "a22_exponential_integral"])
    def test_modal_form_agrees(self, name, model):
        solution = build_solution(name, None, model)
        assert _converges(_residuals(solution, model, representation=Representation.BAROTROPIC_BAROCLINIC))

    def test_other_model_parameters(self):
        model = ModelParams(beta=0.5, F=2.0)
        for name in ("rossby_classic", "a21_exponential", "a23_trigonometric", "a12_coupled_wave"):
            assert _converges(_residuals(build_solution(name, None, model), model)), name

    def test_wrong_model_parameters_are_detected(self, model):
        solution = build_solution("rossby_classic", {"c2": 1.0}, ModelParams(beta=2.0, F=1.0))
        assert min(_residuals(solution, model)) > 1e-2

    def test_exactly_resolved_entries(self, model):
        for name in ("a21_constant_wind", "a24_polynomial"):
            assert _residuals(build_solution(name, None, model), model)[1] < 1e-9, name


class TestRossbyWaves:

    def test_classic_frequencies(self, model):
        solution = build_solution("rossby_classic", {"k": 3, "l": 2}, model)
        assert solution.params["omega_barotropic"] == pytest.approx(3 / 13)
        assert solution.params["omega_baroclinic"] == pytest.approx(3 / 15)

    def test_channel_mode_vanishes_on_the_walls(self, model):
        solution = build_solution("rossby_channel", {"width": math.pi, "south": 0.5, "n": 2}, model)
        x = np.linspace(0, 2 * math.pi, 9)
        for wall in (0.5, 0.5 + math.pi):
            psi1, psi2 = solution.evaluate(0.7, x, np.full_like(x, wall))
            assert np.max(np.abs(psi1)) < 1e-14 and np.max(np.abs(psi2)) < 1e-14

    def test_channel_needs_a_single_vertical_mode(self, model):
        with pytest.raises(BranchError):
            build_solution("rossby_channel", {"c1": 1.0, "c2": 1.0}, model)

    def test_zero_wavevector(self, model):
        with pytest.raises(BranchError):
            build_solution("rossby_classic", {"k": 0, "l": 0}, model)

    def test_coupled_wave_needs_coupling(self, model):
        with pytest.raises(BranchError):
            build_solution("a12_coupled_wave", {"b": 0.0}, model)

    def test_coupled_wave_complex_frequencies(self, model):
        # a large coupling makes the dispersion relation lose its real roots
        assert coupled_wave_frequencies(1.0, 0.0, 3.0, model).size == 0
        with pytest.raises(BranchError):
            build_solution("a12_coupled_wave", {"b": 3.0}, model)

    def test_constant_coefficient_roots(self, model):
        rates = constant_coefficient_rates(1.0, 0.5, 1.0, model)
        assert rates.size == 3
        np.testing.assert_allclose(rates**3 - 0.5 * rates**2 - 3 * rates + 1, 0.0, atol=1e-12)


class TestBranches:

    @pytest.mark.parametrize("name, params", [
        ("a21_exponential", {"mu": -0.25}),
        ("a21_upper_wave", {"mu": 0.25}),
        ("a21_general", {"mu": 0.3, "rho": 0.3}),
        ("a22_exponential_integral", {"sigma": 0.0}),
        ("a23_trigonometric", {"mu": 2.0}),
        ("a23_trigonometric", {"rho": 0.0}),
        ("a23_exponential", {"mu": 0.25}),
        ("a24_polynomial", {"kappa": 1.0, "rho": 1.0}),
        ("a12_whittaker", {"varkappa": -1.0}),
        ("a12_whittaker", {"r_min": -1.0, "r_max": 1.0}),
        ("jordan_chain", {"A": 2.0}),
        ("jordan_chain", {"index": 4}),
    ])
    def test_validity_predicates(self, name, params, model):
        with pytest.raises(BranchError):
            build_solution(name, params, model)

    def test_guard_band_around_zero(self, model):
        with pytest.raises(BranchError):
            build_solution("a21_exponential", {"mu": 1e-12}, model)


class TestSingularLoci:

    def test_logarithm_needs_a_positive_argument(self, model):
        solution = build_solution("a22_exponential_integral", None, model)
        with pytest.raises(SingularLocusError):
            solution.evaluate(0.0, np.zeros(3), np.array([-2.0, 0.0, 1.0]))

    def test_numeric_profile_outside_its_interval(self, model):
        solution = build_solution("a21_general", {"p_min": -1.0, "p_max": 1.0}, model)
        with pytest.raises(SingularLocusError):
            solution.evaluate(0.0, np.array([5.0]), np.array([0.0]))

    def test_whittaker_before_the_real_tilt(self, model):
        solution = build_solution("a12_whittaker", {"C": 0.0}, model)
        with pytest.raises(SingularLocusError):
            solution.evaluate(0.5, np.zeros(2), np.zeros(2))

    def test_decoupled_a13_at_a_zero_of_f(self, model):
        solution = build_solution("a13_decoupled", {"f": "t - 1"}, model)
        with pytest.raises(SingularLocusError):
            solution.evaluate(1.0, np.zeros(2), np.zeros(2))
