"""Point symmetries: group law, action on solutions, discrete involutions."""
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from twolayer.algebra import ExpPoly, parse_exppoly
from twolayer.catalog import SolutionExpr, build_solution
from twolayer.errors import NotDifferentiableError
from twolayer.fields import GridSpec
from twolayer.model import pde_residual
from twolayer.transforms import (
    DISCRETE_DICTIONARY,
    DiscreteSymmetry,
    PointTransform,
    TabulatedFunction,
    TimeFunction,
    apply_discrete,
    apply_to_solution,
    compose,
    discrete_as_point,
    identity,
    inverse,
    random_transform,
    second_derivative_vanishes,
)

ORBIT_SOLUTIONS = [
    ("rossby_classic", {"k": 3, "l": 2, "c1": 1.0, "c2": 0.5}),
    ("rossby_generalized", {}),
    ("a21_exponential", {}),
]


def _points(rng, n=200):
    return rng.uniform(0.0, 1.0, n), rng.uniform(-1.0, 1.0, n), rng.uniform(-1.0, 1.0, n)


def _values(solution, t, x, y):
    return np.stack([solution.evaluate(ti, xi, yi) for ti, xi, yi in zip(t, x, y)])


@pytest.fixture
def wave(model):
    return build_solution("rossby_classic", {"k": 3, "l": 2, "c1": 1.0, "c2": 0.5}, model)


class TestPointTransform:

    def test_signs_must_be_units(self):
        with pytest.raises(ValueError):
            PointTransform(eps1=2)

    def test_scalars_become_exponential_polynomials(self):
        tr = PointTransform(f=2, g=None)
        assert tr.f == ExpPoly.constant(2)
        assert tr.g.is_zero()
        assert tr.is_exact()

    def test_callables_become_time_functions(self):
        tr = PointTransform(f=np.sin)
        assert isinstance(tr.f, TimeFunction)
        assert not tr.is_exact()


class TestTimeFunctions:

    def test_difference_derivative(self):
        fn = TimeFunction(np.sin)
        assert fn.derivative(0.7) == pytest.approx(math.cos(0.7), abs=1e-9)

    def test_tabulated_spline(self):
        ts = np.linspace(0.0, 2.0, 41)
        fn = TabulatedFunction(ts, ts**2)
        assert fn(1.3) == pytest.approx(1.69, abs=1e-10)
        assert fn.derivative(1.3) == pytest.approx(2.6, abs=1e-8)

    def test_tabulated_outside_the_table(self):
        fn = TabulatedFunction([0.0, 1.0, 2.0, 3.0], [0.0, 1.0, 4.0, 9.0])
        with pytest.raises(NotDifferentiableError):
            fn(3.5)

    def test_second_derivative_vanishes(self):
        assert second_derivative_vanishes(parse_exppoly("3t - 1")) is True
        assert second_derivative_vanishes(parse_exppoly("t^2")) is False
        assert second_derivative_vanishes(parse_exppoly("exp(t)")) is False
        assert second_derivative_vanishes(TimeFunction(np.sin)) is None


class TestGroupLaw:

    def test_exact_inverse(self):
        tr = PointTransform(eps1=-1, eps2=1, eps3=-1, f=parse_exppoly("t^2 + t"), g=parse_exppoly("exp(t)"))
        assert compose(tr, inverse(tr)) == identity()

    def test_composition_adds_shifts(self):
        product = compose(PointTransform(T0=1.0, Y0=2.0, Psi0=3.0), PointTransform(T0=0.5, Y0=-1.0, Psi0=1.0))
        assert (product.T0, product.Y0, product.Psi0) == (1.5, 1.0, 4.0)

    def test_composition_acts_in_order(self, rng, wave):
        tr1, tr2 = random_transform(rng), random_transform(rng)
        stepwise = apply_to_solution(tr2, apply_to_solution(tr1, wave))
        product = apply_to_solution(compose(tr1, tr2), wave)
        points = _points(rng)
        assert_allclose(_values(product, *points), _values(stepwise, *points), atol=1e-10)

    def test_inverse_undoes_the_action(self, rng, wave):
        for _ in range(3):
            tr = random_transform(rng)
            back = apply_to_solution(inverse(tr), apply_to_solution(tr, wave))
            points = _points(rng)
            assert_allclose(_values(back, *points), _values(wave, *points), atol=1e-10)

    def test_identity_keeps_values(self, rng, wave):
        points = _points(rng)
        assert_allclose(_values(apply_to_solution(identity(), wave), *points), _values(wave, *points))

    def test_image_is_renamed(self, wave):
        assert apply_to_solution(identity(), wave).name == "rossby_classic~"


class TestOrbits:

    @pytest.mark.parametrize("name, params", ORBIT_SOLUTIONS)
    def test_images_solve_the_model(self, name, params, model, rng):
        solution = build_solution(name, params, model)
        for _ in range(2):
            image = apply_to_solution(random_transform(rng), solution)
            errors = []
            for n, dt in ((32, 2e-2), (64, 1e-2)):
                grid = GridSpec(nx=n, ny=n, Lx=2.0, Ly=2.0)
                errors.append(pde_residual(image, model, grid, 0.3, dt)[0])
            assert errors[0] / errors[1] > 3.5

    def test_mixing_the_layers_breaks_the_solution(self, model, wave):
        grid = GridSpec(nx=64, ny=64, Lx=2.0, Ly=2.0)

        def mixed(t, x, y):
            psi1, psi2 = wave.evaluate(t, x, y)
            return 2 * psi1 + psi2, psi2

        broken = SolutionExpr(name="mixed", evaluator=mixed)
        assert pde_residual(broken, model, grid, 0.3, 1e-2)[0] > 20 * pde_residual(wave, model, grid, 0.3, 1e-2)[0]


class TestDiscreteSymmetries:

    @pytest.mark.parametrize("sym", list(DiscreteSymmetry))
    def test_matches_the_point_form(self, sym, rng, wave):
        points = _points(rng)
        direct = _values(apply_discrete(sym, wave), *points)
        via_point = _values(apply_to_solution(discrete_as_point(sym), wave), *points)
        assert_allclose(direct, via_point, atol=1e-12)

    @pytest.mark.parametrize("sym", list(DiscreteSymmetry))
    def test_involution(self, sym, rng, wave):
        twice = apply_discrete(sym, apply_discrete(sym, wave))
        points = _points(rng)
        assert_allclose(_values(twice, *points), _values(wave, *points))

    def test_layer_swap_exchanges_layers(self, wave):
        psi1, psi2 = wave.evaluate(0.2, 0.3, 0.4)
        swapped = apply_discrete("layer_swap", wave).evaluate(0.2, 0.3, 0.4)
        assert swapped == (psi2, psi1)

    @pytest.mark.parametrize("sym", list(DiscreteSymmetry))
    def test_images_solve_the_model(self, sym, model, wave):
        image = apply_discrete(sym, wave)
        errors = []
        for n, dt in ((32, 2e-2), (64, 1e-2)):
            grid = GridSpec(nx=n, ny=n, Lx=2.0, Ly=2.0)
            errors.append(pde_residual(image, model, grid, 0.3, dt)[0])
        assert errors[0] / errors[1] > 3.5

    def test_dictionary_covers_both_representations(self):
        for sym in DiscreteSymmetry:
            assert set(DISCRETE_DICTIONARY[sym]) == {"layered", "barotropic_baroclinic", "point"}
