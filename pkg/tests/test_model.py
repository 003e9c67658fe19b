"""Potential vorticity, tendencies and residuals of the two-layer model."""
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from twolayer.catalog import SolutionExpr, build_solution
from twolayer.errors import GridMismatchError
from twolayer.fields import Field2D, GridSpec, sample
from twolayer.model import (
    LayerState,
    ModelParams,
    Representation,
    format_residual_record,
    pde_residual,
    potential_vorticity,
    sample_state,
    tendency,
)


def _state(grid, psi1, psi2, representation=Representation.LAYERED):
    return LayerState(psi1=sample(grid, psi1), psi2=sample(grid, psi2), representation=representation)


def _uniform_wind(U):
    return SolutionExpr(name="uniform_wind", evaluator=lambda t, x, y: (-U * y, 0 * y))


class TestModelParams:

    def test_parameters_must_be_positive(self):
        with pytest.raises(ValueError):
            ModelParams(beta=0.0, F=1.0)
        with pytest.raises(ValueError):
            ModelParams(beta=1.0, F=-1.0)


class TestLayerState:

    def test_layers_share_a_grid(self, periodic_grid, channel_grid):
        with pytest.raises(GridMismatchError):
            LayerState(psi1=Field2D.zeros(periodic_grid), psi2=Field2D.zeros(channel_grid))

    def test_representations_convert_back(self, periodic_grid):
        state = _state(periodic_grid, lambda x, y: np.sin(x), lambda x, y: np.cos(y))
        modal = state.barotropic_baroclinic()
        assert_allclose(modal.psi1.values, state.psi1.values + state.psi2.values)
        assert_allclose(modal.psi2.values, state.psi1.values - state.psi2.values)
        back = modal.layered()
        assert_allclose(back.psi1.values, state.psi1.values, atol=1e-15)
        assert_allclose(back.psi2.values, state.psi2.values, atol=1e-15)

    def test_conversion_to_own_representation_is_identity(self, periodic_grid):
        state = _state(periodic_grid, lambda x, y: np.sin(x), lambda x, y: 0 * x)
        assert state.as_representation("layered") is state


class TestPotentialVorticity:

    def test_rest_state_carries_only_planetary_vorticity(self, channel_grid, model):
        state = LayerState(psi1=Field2D.zeros(channel_grid), psi2=Field2D.zeros(channel_grid))
        Q1, Q2 = potential_vorticity(state, model)
        Y = channel_grid.mesh()[1]
        assert_allclose(Q1.values, model.beta * Y)
        assert_allclose(Q2.values, model.beta * Y)

    def test_modal_form(self, channel_grid):
        params = ModelParams(beta=2.0, F=0.5)
        state = _state(channel_grid, lambda x, y: 1 + 0 * x, lambda x, y: 3 + 0 * x,
                       Representation.BAROTROPIC_BAROCLINIC)
        Qp, Qm = potential_vorticity(state, params)
        Y = channel_grid.mesh()[1]
        assert_allclose(Qp.values, 2 * params.beta * Y, atol=1e-10)
        assert_allclose(Qm.values, -2 * params.F * 3.0, atol=1e-10)

    def test_layered_coupling(self, periodic_grid, model):
        state = _state(periodic_grid, lambda x, y: np.sin(x), lambda x, y: 0 * x)
        Q1, Q2 = potential_vorticity(state, model)
        X, Y = periodic_grid.mesh()
        h2 = periodic_grid.hx**2
        assert_allclose(Q1.values, -np.sin(X) + model.beta * Y - model.F * np.sin(X), atol=h2)
        assert_allclose(Q2.values, model.beta * Y + model.F * np.sin(X), atol=1e-12)


class TestTendency:

    def test_rest_state_is_steady(self, periodic_grid, model):
        state = LayerState(psi1=Field2D.zeros(periodic_grid), psi2=Field2D.zeros(periodic_grid))
        for rate in tendency(state, model):
            assert rate.max_abs() == 0.0

    def test_zonal_flow_is_steady(self, channel_grid, model):
        state = _state(channel_grid, lambda x, y: np.sin(y), lambda x, y: 0.3 * np.cos(2 * y))
        for rate in tendency(state, model):
            assert rate.max_abs() < 1e-12

    def test_both_representations_agree(self, periodic_grid, model):
        layered = _state(periodic_grid, lambda x, y: np.sin(x + y) + 0.2 * np.cos(2 * x),
                         lambda x, y: np.cos(x - 2 * y))
        dq1, dq2 = tendency(layered, model)
        dqp, dqm = tendency(layered.barotropic_baroclinic(), model)
        assert_allclose(dqp.values, dq1.values + dq2.values, atol=1e-10)
        assert_allclose(dqm.values, dq1.values - dq2.values, atol=1e-10)


class TestPdeResidual:

    def test_zero_solution(self, periodic_grid, model):
        zero = build_solution("rossby_classic", {"c1": 0.0, "c2": 0.0}, model)
        assert pde_residual(zero, model, periodic_grid, 0.5, 1e-2) == (0.0, 0.0)

    @pytest.mark.parametrize("representation", list(Representation))
    def test_uniform_wind_is_exact(self, channel_grid, model, representation):
        max_res, l2_res = pde_residual(_uniform_wind(0.7), model, channel_grid, 0.0, 1e-2, representation)
        assert max_res < 1e-10
        assert l2_res <= max_res

    def test_non_solution_is_detected(self, periodic_grid, model):
        wrong = SolutionExpr(name="wrong", evaluator=lambda t, x, y: (np.sin(x + t), 0 * x))
        assert pde_residual(wrong, model, periodic_grid, 0.0, 1e-3)[0] > 0.1

    def test_rossby_wave_converges_at_second_order(self, model):
        solution = build_solution("rossby_classic", {"k": 3, "l": 2, "c1": 1.0, "c2": 0.5}, model)
        errors = []
        for n, dt in ((32, 2e-2), (64, 1e-2)):
            grid = GridSpec(nx=n, ny=n, Lx=2 * math.pi, Ly=2 * math.pi)
            errors.append(pde_residual(solution, model, grid, 0.3, dt)[0])
        assert errors[0] / errors[1] > 3.5

    def test_dt_must_be_positive(self, periodic_grid, model):
        with pytest.raises(ValueError):
            pde_residual(_uniform_wind(1.0), model, periodic_grid, 0.0, 0.0)


def test_sample_state_in_modal_form(periodic_grid):
    state = sample_state(_uniform_wind(2.0), periodic_grid, 0.0, Representation.BAROTROPIC_BAROCLINIC)
    Y = periodic_grid.mesh()[1]
    assert_allclose(state.psi1.values, -2.0 * Y)
    assert_allclose(state.psi2.values, -2.0 * Y)


def test_residual_record_format(periodic_grid):
    record = format_residual_record("rossby_classic", periodic_grid, 0.5, 0.125, 0.0625)
    assert record.startswith("solution=rossby_classic grid=64x64 ")
    assert "dt=0.5 " in record
    assert record.endswith("max_res=0.125 l2_res=0.0625")
