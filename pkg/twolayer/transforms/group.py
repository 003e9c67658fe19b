# twolayer/transforms/group.py
"""Group law of the point symmetries and their action on analytic solutions."""
import numpy as np
import sympy

from ..algebra import ExpPoly
from ..catalog.models import SolutionExpr, layered_from_pm, pm_from_layered
from ..utils.logging import logger
from .functions import compose_affine, derivative_function, linear_combination
from .models import DISCRETE_DICTIONARY, DiscreteSymmetry, PointTransform


def identity() -> PointTransform:
    return PointTransform()


def compose(tr1: PointTransform, tr2: PointTransform) -> PointTransform:
    """The transformation that applies ``tr1`` first and ``tr2`` second."""
    e1, e2 = tr1, tr2
    # f and g of the product are functions of the original time; tr2 sees t1 = eps1 t + T0
    f2_at_t1 = compose_affine(e2.f, e1.eps1, e1.T0)
    df2_at_t1 = compose_affine(derivative_function(e2.f), e1.eps1, e1.T0)
    g2_at_t1 = compose_affine(e2.g, e1.eps1, e1.T0)
    return PointTransform(
        eps1=e1.eps1 * e2.eps1,
        eps2=e1.eps2 * e2.eps2,
        eps3=e1.eps3 * e2.eps3,
        T0=e2.eps1 * e1.T0 + e2.T0,
        Y0=e2.eps2 * e1.Y0 + e2.Y0,
        Psi0=e2.eps3 * e1.Psi0 + e2.Psi0,
        f=linear_combination((e2.eps1, e1.f), (1, f2_at_t1)),
        g=linear_combination((e2.eps2, e1.g), (1, g2_at_t1),
                             (-2 * e2.eps1 * e2.eps2 * e1.Y0, df2_at_t1)),
    )


def inverse(tr: PointTransform) -> PointTransform:
    e1, e2 = tr.eps1, tr.eps2
    # original time as a function of the new one: t = eps1 t~ - eps1 T0
    f_back = compose_affine(tr.f, e1, -e1 * tr.T0)
    df_back = compose_affine(derivative_function(tr.f), e1, -e1 * tr.T0)
    g_back = compose_affine(tr.g, e1, -e1 * tr.T0)
    return PointTransform(
        eps1=e1, eps2=e2, eps3=tr.eps3,
        T0=-e1 * tr.T0,
        Y0=-e2 * tr.Y0,
        Psi0=-tr.eps3 * tr.Psi0,
        f=linear_combination((-e1, f_back)),
        g=linear_combination((-e2, g_back), (-2 * e1 * e2 * tr.Y0, df_back)),
    )


def pull_back_coordinates(tr: PointTransform, t_new, x_new, y_new):
    """Preimage (t, x, y) of a point of the transformed solution."""
    t = tr.eps1 * (t_new - tr.T0)
    y = tr.eps2 * (np.asarray(y_new, dtype=float) - tr.Y0)
    x = tr.eps1 * (np.asarray(x_new, dtype=float) - tr.f(t))
    return t, x, y


def apply_to_solution(tr: PointTransform, s: SolutionExpr) -> SolutionExpr:
    """The image of ``s``: evaluating it at (t~, x~, y~) transforms s at the preimage point."""

    def evaluator(t_new, x_new, y_new):
        t, x, y = pull_back_coordinates(tr, t_new, x_new, y_new)
        plus, minus = pm_from_layered(*s.evaluate(t, x, y))
        plus = tr.eps2 * plus - 2 * tr.eps1 * tr.eps2 * tr.f.derivative(t) * y + tr.g(t)
        minus = tr.eps3 * minus + tr.Psi0
        return layered_from_pm(plus, minus)

    locus = None
    if s.singular_locus is not None:
        def locus(t_new, x_new, y_new):
            return s.singular_locus(*pull_back_coordinates(tr, t_new, x_new, y_new))

    logger.debug(f"Transforming {s.name} by {tr.describe()}")
    return SolutionExpr(
        name=f"{s.name}~",
        evaluator=evaluator,
        params={**s.params, "transform": tr.describe()},
        provenance=s.provenance,
        singular_locus=locus,
        locus_description=s.locus_description,
    )


def apply_discrete(sym, s: SolutionExpr) -> SolutionExpr:
    sym = DiscreteSymmetry(sym)

    if sym == DiscreteSymmetry.MIRROR_TX:
        def evaluator(t, x, y):
            return s.evaluate(-t, -x, y)

        def mapped(t, x, y):
            return -t, -x, y
    elif sym == DiscreteSymmetry.MIRROR_Y:
        def evaluator(t, x, y):
            psi1, psi2 = s.evaluate(t, x, -y)
            return -psi1, -psi2

        def mapped(t, x, y):
            return t, x, -y
    else:
        def evaluator(t, x, y):
            psi1, psi2 = s.evaluate(t, x, y)
            return psi2, psi1

        def mapped(t, x, y):
            return t, x, y

    locus = None
    if s.singular_locus is not None:
        def locus(t, x, y):
            return s.singular_locus(*mapped(t, np.asarray(x), np.asarray(y)))

    return SolutionExpr(
        name=f"{s.name}|{sym.value}",
        evaluator=evaluator,
        params=s.params,
        provenance=s.provenance,
        singular_locus=locus,
        locus_description=s.locus_description,
    )


def discrete_as_point(sym) -> PointTransform:
    return PointTransform(**DISCRETE_DICTIONARY[DiscreteSymmetry(sym)]["point"])


def random_transform(rng: np.random.Generator, degree: int = 3, discrete: bool = True,
                     scale: float = 0.5) -> PointTransform:
    """Random transform with polynomial f, g of the given degree and small rational coefficients."""
    def poly():
        coeffs = [sympy.Rational(int(rng.integers(-4, 5)), 8) for _ in range(degree + 1)]
        return ExpPoly([(0, coeffs)]) * sympy.nsimplify(scale)

    def sign():
        return int(rng.choice([-1, 1])) if discrete else 1

    return PointTransform(
        eps1=sign(), eps2=sign(), eps3=sign(),
        T0=float(rng.uniform(-1, 1)), Y0=float(rng.uniform(-1, 1)), Psi0=float(rng.uniform(-1, 1)),
        f=poly(), g=poly(),
    )
