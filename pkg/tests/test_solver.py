"""Time integration: dispersion, conservation, boundaries and the run driver."""
import csv
import math

import numpy as np
import pytest

from twolayer.catalog import SolutionExpr, build_solution
from twolayer.errors import GridMismatchError, NumericalInstabilityError, SolvabilityError, UsageError
from twolayer.fields import Field2D, GridSpec, Scheme, Topology
from twolayer.model import LayerState
from twolayer.solver import (
    LeapfrogRA,
    SolverConfig,
    SolverState,
    TimeScheme,
    advance,
    boost,
    diagnostics,
    fit_phase_speed,
    make_integrator,
    run,
    state_from_solution,
    step,
    to_layers,
)
from twolayer.solver.models import DIAGNOSTICS_HEADER
from twolayer.utils import read_field

SPECTRAL = {"derivatives": Scheme.SPECTRAL}


@pytest.fixture
def small_grid():
    return GridSpec(nx=32, ny=32, Lx=2 * math.pi, Ly=2 * math.pi)


def _turbulent_state(grid):
    X, Y = grid.mesh()
    psi1 = 0.3 * np.cos(X + Y) + 0.2 * np.sin(2 * X - Y)
    psi2 = 0.25 * np.cos(3 * X) + 0.1 * np.sin(X + 2 * Y)
    return LayerState(t=0.0, psi1=Field2D(grid=grid, values=psi1), psi2=Field2D(grid=grid, values=psi2))


class _Exploding:
    def set_rhs_func(self, rhs_func, *args):
        pass

    def step(self, t, y, dt):
        return tuple(np.full_like(part, np.nan) for part in y)


class TestDispersion:

    @pytest.mark.parametrize("scheme", [TimeScheme.RK4, TimeScheme.LEAPFROG_RA])
    def test_barotropic_phase_speed(self, model, small_grid, scheme):
        wave = build_solution("rossby_classic", {"k": 3, "l": 2, "c1": 1e-3, "c2": 0.0}, model)
        cfg = SolverConfig(dt=0.05, steps=40, scheme=scheme, **SPECTRAL)
        trajectory = run(wave, model, cfg, output_every=5, grid=small_grid)
        assert fit_phase_speed(trajectory, 3, 2) == pytest.approx(-1 / 13, rel=1e-2)

    def test_baroclinic_phase_speed(self, model, small_grid):
        wave = build_solution("rossby_classic", {"k": 3, "l": 2, "c1": 0.0, "c2": 1e-3}, model)
        cfg = SolverConfig(dt=0.05, steps=40, **SPECTRAL)
        trajectory = run(wave, model, cfg, output_every=5, grid=small_grid)
        assert fit_phase_speed(trajectory, 3, 2, component="minus") == pytest.approx(-1 / 15, rel=1e-2)

    def test_phase_fit_needs_two_snapshots(self, model, small_grid):
        wave = build_solution("rossby_classic", None, model)
        trajectory = run(wave, model, SolverConfig(dt=0.01, steps=0), grid=small_grid)
        with pytest.raises(UsageError):
            fit_phase_speed(trajectory, 3, 2)


class TestConservation:

    def test_energy_and_total_enstrophy(self, model, small_grid):
        cfg = SolverConfig(dt=0.01, steps=100, dealias=True, **SPECTRAL)
        trajectory = run(_turbulent_state(small_grid), model, cfg, output_every=50)
        first, last = trajectory.records[0], trajectory.records[-1]
        assert last.step == 100
        assert last.energy == pytest.approx(first.energy, rel=1e-6)
        total = first.enstrophy1 + first.enstrophy2
        assert last.enstrophy1 + last.enstrophy2 == pytest.approx(total, rel=1e-6)
        # the layers exchange enstrophy
        assert abs(last.enstrophy1 - first.enstrophy1) > 1e-8

    def test_diagnostics_of_a_barotropic_mode(self, model, small_grid):
        X, _ = small_grid.mesh()
        field = Field2D(grid=small_grid, values=np.cos(X))
        record = diagnostics(LayerState(psi1=field, psi2=field), model, SolverConfig(**SPECTRAL))
        assert record.energy == pytest.approx(2 * math.pi**2)
        assert record.enstrophy1 == pytest.approx(math.pi**2)
        assert record.enstrophy2 == pytest.approx(math.pi**2)
        assert record.circulation_south == pytest.approx(0.0, abs=1e-12)


class TestBoundaries:

    def test_channel_mode_follows_the_exact_solution(self, model, channel_grid):
        wave = build_solution("rossby_channel", {"width": math.pi, "n": 1}, model)
        cfg = SolverConfig(dt=0.02, steps=50)
        trajectory = run(wave, model, cfg, grid=channel_grid)
        final = trajectory.final
        X, Y = channel_grid.mesh()
        psi1, psi2 = wave.evaluate(final.t, X, Y)
        assert final.t == pytest.approx(1.0)
        assert np.max(np.abs(final.psi1.values - psi1)) < 1e-2
        assert np.max(np.abs(final.psi2.values - psi2)) < 1e-2
        for row in (0, -1):
            assert np.max(np.abs(final.psi1.values[row])) < 1e-12

    def test_spectral_needs_a_doubly_periodic_grid(self, model, channel_grid):
        wave = build_solution("rossby_channel", {"width": math.pi}, model)
        with pytest.raises(GridMismatchError):
            run(wave, model, SolverConfig(steps=1, **SPECTRAL), grid=channel_grid)

    def test_uniform_meridional_barotropic_wind(self, model, small_grid):
        def evaluator(t, x, y):
            return 0.5 * x + np.cos(y), 0.5 * x
        windy = SolutionExpr(name="windy", evaluator=evaluator)
        with pytest.raises(SolvabilityError):
            state_from_solution(windy, small_grid, 0.0, model, SolverConfig())

    def test_nonperiodic_field(self, model, small_grid):
        bumpy = SolutionExpr(name="bumpy", evaluator=lambda t, x, y: (x**2, np.zeros_like(x)))
        with pytest.raises(GridMismatchError):
            state_from_solution(bumpy, small_grid, 0.0, model, SolverConfig())

    def test_linear_background_is_carried(self, model, small_grid):
        def evaluator(t, x, y):
            return 0.25 * y + np.cos(x), -0.25 * y
        sheared = SolutionExpr(name="sheared", evaluator=evaluator)
        state = state_from_solution(sheared, small_grid, 0.0, model, SolverConfig())
        assert state.background_plus.b == pytest.approx(0.0, abs=1e-12)
        assert state.background_minus.b == pytest.approx(0.5)
        layers = to_layers(state, model, SolverConfig())
        X, Y = small_grid.mesh()
        np.testing.assert_allclose(layers.psi2.values, -0.25 * Y, atol=1e-10)


class TestStepping:

    def test_step_keeps_the_state_kind(self, model, small_grid):
        cfg = SolverConfig(dt=0.01, **SPECTRAL)
        layers = step(_turbulent_state(small_grid), model, cfg)
        assert isinstance(layers, LayerState) and layers.t == pytest.approx(0.01)
        solver_state = state_from_solution(build_solution("rossby_classic", None, model), small_grid, 0.0,
                                           model, cfg)
        assert isinstance(step(solver_state, model, cfg), SolverState)

    def test_leapfrog_keeps_the_previous_level(self):
        growth = 1 + 0.1 + 0.1**2 / 2 + 0.1**3 / 6 + 0.1**4 / 24
        leapfrog = LeapfrogRA(nu=0.0)
        leapfrog.set_rhs_func(lambda t, y: tuple(y))
        start = (np.array([1.0]),)
        first = leapfrog.step(0.0, start, 0.1)
        assert first[0][0] == pytest.approx(growth)
        assert leapfrog.step(0.1, first, 0.1)[0][0] == pytest.approx(1 + 0.2 * growth)
        # a call off the stored trajectory starts over
        assert leapfrog.step(0.0, start, 0.1)[0][0] == pytest.approx(growth)

    def test_step_continues_a_leapfrog_run(self, model, small_grid):
        cfg = SolverConfig(dt=0.01, scheme=TimeScheme.LEAPFROG_RA, **SPECTRAL)
        start = _turbulent_state(small_grid)
        integrator = make_integrator(cfg)
        assert isinstance(integrator, LeapfrogRA)
        first = step(start, model, cfg, integrator)
        second = step(first, model, cfg, integrator)
        starter_only = step(step(start, model, cfg), model, cfg)
        np.testing.assert_allclose(first.psi1.values, step(start, model, cfg).psi1.values, atol=1e-12)
        np.testing.assert_allclose(second.psi1.values, starter_only.psi1.values, atol=1e-4)
        assert np.max(np.abs(second.psi1.values - starter_only.psi1.values)) > 1e-9

    def test_non_finite_values_are_reported(self, model, small_grid):
        cfg = SolverConfig(dt=0.01)
        state = state_from_solution(build_solution("rossby_classic", None, model), small_grid, 0.0, model, cfg)
        with pytest.raises(NumericalInstabilityError) as info:
            advance(state, model, cfg, _Exploding(), step_index=7)
        assert info.value.last_healthy_step == 7

    def test_boost_commutes_with_time_stepping(self, model, small_grid):
        cfg = SolverConfig(dt=0.01, steps=20, **SPECTRAL)
        start = state_from_solution(build_solution("rossby_classic", {"c2": 0.3}, model), small_grid, 0.0,
                                    model, cfg)
        boosted_later = boost(run(start, model, cfg).solver_state, 0.5, model, cfg)
        boosted_first = run(boost(start, 0.5, model, cfg), model, cfg).solver_state
        a, b = to_layers(boosted_later, model, cfg), to_layers(boosted_first, model, cfg)
        np.testing.assert_allclose(a.psi1.values, b.psi1.values, atol=1e-7)
        np.testing.assert_allclose(a.psi2.values, b.psi2.values, atol=1e-7)

    def test_boost_needs_a_periodic_x_axis(self, model, rectangle_grid):
        cfg = SolverConfig()
        zero = Field2D.zeros(rectangle_grid)
        state = SolverState(q_plus=zero, q_minus=zero, walls_plus=zero, walls_minus=zero)
        with pytest.raises(GridMismatchError):
            boost(state, 1.0, model, cfg)


class TestRun:

    def test_output_directory(self, model, small_grid, tmp_path):
        wave = build_solution("rossby_classic", None, model)
        cfg = SolverConfig(dt=0.01, steps=4)
        trajectory = run(wave, model, cfg, output_every=2, grid=small_grid, output_dir=tmp_path)
        assert [record.step for record in trajectory.records] == [0, 2, 4]
        assert trajectory.times == pytest.approx([0.0, 0.02, 0.04])
        field, t = read_field(tmp_path / "psi1_000004.txt")
        assert t == pytest.approx(0.04)
        np.testing.assert_allclose(field.values, trajectory.final.psi1.values)
        with open(tmp_path / "diagnostics.csv", newline="", encoding="utf-8") as infile:
            rows = list(csv.reader(infile))
        assert rows[0] == DIAGNOSTICS_HEADER
        assert [row[0] for row in rows[1:]] == ["0", "2", "4"]

    def test_analytic_start_needs_a_grid(self, model):
        with pytest.raises(UsageError):
            run(build_solution("rossby_classic", None, model), model, SolverConfig(steps=1))

    def test_rows_are_round_trip_exact(self, model, small_grid):
        trajectory = run(_turbulent_state(small_grid), model, SolverConfig(dt=0.01, steps=1))
        row = trajectory.records[-1].as_row()
        assert float(row[2]) == trajectory.records[-1].energy
