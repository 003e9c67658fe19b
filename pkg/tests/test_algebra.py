"""Exponential polynomials, the Lie bracket, the adjoint action and the subalgebra catalog."""
import numpy as np
import pytest
import sympy

from twolayer.algebra import (
    SUBALGEBRAS,
    AlgebraElement as E,
    ExpPoly,
    adjoint,
    build_subalgebra,
    closure_summary,
    commutator,
    format_element,
    format_exppoly,
    parse_element,
    parse_exppoly,
    random_exppoly,
    sample_subalgebras,
    structure_subspaces,
    subalgebra_closed,
)
from twolayer.algebra.models import SubalgebraSpec
from twolayer.errors import (
    BranchError,
    DependentGeneratorsError,
    ExpPolyParseError,
    NonTerminatingSeriesError,
)


def _random_element(rng):
    def scalar():
        return int(rng.integers(-3, 4))
    return E(a=scalar(), b=scalar(), f=random_exppoly(rng), c=scalar(), g=random_exppoly(rng))


class TestExpPoly:

    def test_parse_implicit_products(self):
        assert parse_exppoly("1/2 t") == ExpPoly.monomial(1, 0, sympy.Rational(1, 2))
        assert parse_exppoly("(1+t)exp(2t)") == ExpPoly([(2, (1, 1))])

    @pytest.mark.parametrize("text, terms", [
        ("t exp(t)", [(1, (0, 1))]),
        ("2t exp(-t)", [(-1, (0, 2))]),
        ("t (1 + t)", [(0, (0, 1, 1))]),
        ("3 t exp(2t) + t", [(0, (0, 1)), (2, (0, 3))]),
    ])
    def test_parse_spaced_products(self, text, terms):
        assert parse_exppoly(text) == ExpPoly(terms)

    def test_empty_text_is_zero(self):
        assert parse_exppoly("").is_zero()
        assert parse_exppoly(None).is_zero()

    @pytest.mark.parametrize("text", ["sin(t)", "t^(1/2)", "exp(t^2)", "x + t", "1/t"])
    def test_outside_the_ring(self, text):
        with pytest.raises(ExpPolyParseError):
            parse_exppoly(text)

    def test_derivative(self):
        assert parse_exppoly("t exp(2t)").diff() == parse_exppoly("(1 + 2t) exp(2t)")
        assert parse_exppoly("t^3").diff() == parse_exppoly("3t^2")

    def test_antiderivative_inverts_diff(self, rng):
        for _ in range(10):
            p = random_exppoly(rng)
            assert p.antiderivative().diff() == p

    def test_shift(self):
        assert parse_exppoly("t^2").shift(1) == parse_exppoly("t^2 - 2t + 1")
        shifted = ExpPoly.exponential(1).shift(1)
        assert shifted == ExpPoly.exponential(1, sympy.exp(-1))

    def test_numeric_evaluation(self):
        p = parse_exppoly("(3 + 2t^2) exp(1/2 t)")
        ts = np.linspace(-1.0, 2.0, 7)
        np.testing.assert_allclose(p(ts), (3 + 2 * ts**2) * np.exp(ts / 2))
        assert p.derivative(0.0, 2) == pytest.approx(4 + 3 / 4)

    def test_format(self):
        assert format_exppoly(parse_exppoly("(3 + 2t^2) exp(1/2 t)")) == "(3+2*t^2)exp(1/2*t)"
        assert format_exppoly(ExpPoly.zero()) == "0"
        assert format_exppoly(parse_exppoly("exp(-t) - t")) == "exp(-t) - t"
        assert format_exppoly(parse_exppoly("-2exp(2t) + exp(-t)")) == "exp(-t) - 2*exp(2*t)"

    def test_formatted_text_parses_back(self, rng):
        for _ in range(20):
            p = random_exppoly(rng)
            assert parse_exppoly(format_exppoly(p)) == p

    def test_immutable(self):
        with pytest.raises(AttributeError):
            ExpPoly.constant(1).terms = ()


class TestCommutator:

    def test_dt_with_x(self):
        assert commutator(E.Dt(), E.X(parse_exppoly("t^2"))) == E.X(parse_exppoly("2t"))

    def test_dy_with_x(self):
        assert commutator(E.Dy(), E.X(parse_exppoly("exp(2t)"))) == E.Z(parse_exppoly("-2exp(2t)"))

    def test_dt_with_z(self):
        assert commutator(E.Dt(), E.Z(parse_exppoly("t^3"))) == E.Z(parse_exppoly("3t^2"))

    def test_center_commutes(self, rng):
        for central in (E.X(1), E.F(), E.Z(1)):
            assert commutator(central, _random_element(rng)).is_zero()

    def test_antisymmetry(self, rng):
        for _ in range(10):
            x, y = _random_element(rng), _random_element(rng)
            assert commutator(x, y) == -commutator(y, x)

    def test_jacobi_identity(self, rng):
        for _ in range(10):
            x, y, z = (_random_element(rng) for _ in range(3))
            total = (commutator(commutator(x, y), z) + commutator(commutator(y, z), x)
                     + commutator(commutator(z, x), y))
            assert total.is_zero()

    def test_brackets_land_in_the_derived_algebra(self, rng):
        in_derived = structure_subspaces()["g'"]
        for _ in range(10):
            assert in_derived(commutator(_random_element(rng), _random_element(rng)))


class TestAdjoint:

    def test_z_acting_on_dt(self):
        result = adjoint(E.Z(parse_exppoly("t^3")), 2, E.Dt())
        assert result == E.Dt() + E.Z(parse_exppoly("6t^2"))

    def test_time_shift_is_exact(self):
        assert adjoint(E.Dt(), 1, E.Z(parse_exppoly("t"))) == E.Z(parse_exppoly("t - 1"))

    def test_time_shift_of_an_exponential(self):
        result = adjoint(E.Dt(), sympy.Rational(1, 2), E.X(ExpPoly.exponential(2)))
        assert result == E.X(ExpPoly.exponential(2, sympy.exp(-1)))

    def test_x_acting_on_dt(self):
        assert adjoint(E.X(parse_exppoly("t")), 3, E.Dt()) == E.Dt() + E.X(3)

    def test_zero_epsilon_is_identity(self, rng):
        target = _random_element(rng)
        assert adjoint(E.Dy(), 0, target) is target

    def test_inverse_action(self):
        A = E.Dy() + E.X(parse_exppoly("t^2"))
        B = E.Dt() + E.Z(parse_exppoly("t"))
        assert adjoint(A, -1, adjoint(A, 1, B)) == B

    def test_nonterminating_series(self):
        with pytest.raises(NonTerminatingSeriesError):
            adjoint(E.Dt() + E.Dy(), 1, E.X(ExpPoly.exponential(1)))


class TestStructureSubspaces:

    def test_membership(self):
        subspaces = structure_subspaces()
        assert subspaces["n"](E.Dy() + E.F())
        assert not subspaces["n"](E.Dt())
        assert subspaces["n'"](E.Z(parse_exppoly("t")))
        assert not subspaces["n'"](E.X(1))
        assert subspaces["z"](E.X(1) + E.F() + E.Z(2))
        assert not subspaces["z"](E.Z(parse_exppoly("t")))
        assert subspaces["z&g'"](E.X(1))
        assert not subspaces["z&g'"](E.F())
        assert subspaces["z&n'"](E.Z(1))

    def test_every_subspace_holds_zero(self):
        for member in structure_subspaces().values():
            assert member(E())


class TestNotation:

    def test_format(self):
        element = E(a=1, b=-2, f=parse_exppoly("t^2"), c=sympy.Rational(1, 2), g=ExpPoly.exponential(2))
        assert format_element(element) == "Dt - 2*Dy + X(t^2) + 1/2*F + Z(exp(2*t))"
        assert format_element(E()) == "0"

    @pytest.mark.parametrize("text", [
        "Dt + X(t^2)",
        "2*Dy - Z(exp(2t))",
        "1/2 F + X((1 + t) exp(-t))",
        "Dt + 3*Dy + X(1) + F + Z(t)",
    ])
    def test_parse_format_parse(self, text):
        element = parse_element(text)
        assert parse_element(format_element(element)) == element

    def test_parse_collects_terms(self):
        assert parse_element("Dt + 2 Dt + X(t) + X(t)") == E(a=3, f=parse_exppoly("2t"))

    @pytest.mark.parametrize("text", ["X(t) * Z(t)", "t*Dt", "Dx", "Dt + * Dy"])
    def test_rejects(self, text):
        with pytest.raises(ExpPolyParseError):
            parse_element(text)


class TestSubalgebras:

    def test_a2_2_closure(self):
        spec = build_subalgebra("A2_2", nu=1, sigma=2, kappa=0)
        assert closure_summary(spec, subalgebra_closed(spec)) == "closed: true; [e1,e2] = 2*e2"

    def test_mutated_a2_2_is_not_closed(self):
        spec = build_subalgebra("A2_2", nu=1, sigma=2, kappa=0, z_degree=2)
        report = subalgebra_closed(spec)
        assert report["closed"] is False
        assert closure_summary(spec, report) == "closed: false; [e1,e2] = outside span"

    def test_a2_minus_1(self):
        spec = build_subalgebra("A2_-1", nu=0, sigma=3)
        assert subalgebra_closed(spec)["bracket_coords"][(0, 1)] == [0, 3]

    def test_every_sampled_member_is_closed(self, rng):
        specs = sample_subalgebras(rng, samples=3)
        assert {spec.name for spec in specs} == set(SUBALGEBRAS)
        for spec in specs:
            assert subalgebra_closed(spec)["closed"], spec

    def test_one_dimensional_members_trivially_close(self):
        spec = build_subalgebra("A1_2", f=parse_exppoly("t"), b=1)
        assert subalgebra_closed(spec) == {"closed": True, "bracket_coords": {}}

    def test_dependent_generators(self):
        spec = SubalgebraSpec("degenerate", (E.Dt() + E.F(), 2 * (E.Dt() + E.F())))
        with pytest.raises(DependentGeneratorsError):
            subalgebra_closed(spec)

    @pytest.mark.parametrize("name, params", [
        ("A2_2", {"sigma": 0}),
        ("A2_4", {"kappa": 1, "rho": 1}),
        ("A2_-5", {"g": 0}),
        ("A2_-6", {"f1": 1, "g1": 0, "f2": 2, "g2": 0}),
        ("A9_9", {}),
    ])
    def test_branch_predicates(self, name, params):
        with pytest.raises(BranchError):
            build_subalgebra(name, **params)
