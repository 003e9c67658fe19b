# twolayer/algebra/brackets.py
"""
Lie bracket, adjoint action and structure subspaces of the symmetry algebra.

The only nonzero brackets of basis elements are
    [Dt, X(f)] = X(f'),   [Dt, Z(g)] = Z(g'),   [Dy, X(f)] = -Z(f').
The adjoint action uses Ad(e^{eps A}) B = sum_k (-eps)^k / k! ad_A^k B with ad_A B = [A, B],
which gives Ad(e^{eps Dt}) X(f) = X(f(t - eps)) and Ad(e^{eps X(f)}) Dt = Dt + eps X(f').
"""
import sympy

from ..errors import NonTerminatingSeriesError
from ..utils.logging import logger
from .models import AlgebraElement

MAX_SERIES_TERMS = 64


def commutator(e1: AlgebraElement, e2: AlgebraElement) -> AlgebraElement:
    df1, df2 = e1.f.diff(), e2.f.diff()
    return AlgebraElement(
        f=df2 * e1.a - df1 * e2.a,
        g=e2.g.diff() * e1.a - e1.g.diff() * e2.a - df2 * e1.b + df1 * e2.b,
    )


def _is_time_shift(e: AlgebraElement) -> bool:
    return e.a != 0 and e.b == 0 and e.f.is_zero() and e.g.is_zero()


def adjoint(e: AlgebraElement, epsilon, target: AlgebraElement) -> AlgebraElement:
    """Ad(e^{epsilon e}) target."""
    epsilon = sympy.nsimplify(epsilon) if isinstance(epsilon, float) else sympy.sympify(epsilon)
    if e.is_zero() or epsilon == 0:
        return target
    if _is_time_shift(e):
        # a Dt + c F with F central: exact shift of the argument functions
        lag = e.a * epsilon
        return AlgebraElement(a=target.a, b=target.b, f=target.f.shift(lag),
                              c=target.c, g=target.g.shift(lag))

    total = target
    term = target
    for k in range(1, MAX_SERIES_TERMS + 1):
        term = commutator(e, term) * (-epsilon / k)
        if term.is_zero():
            return total
        total = total + term
    logger.warning(f"⚠️ adjoint series of {e} on {target} did not terminate")
    raise NonTerminatingSeriesError(
        f"Ad(exp(eps*({e})))({target}) does not terminate within {MAX_SERIES_TERMS} terms"
    )


# membership predicates for the ideals used when classifying the point symmetry group

def in_algebra(e: AlgebraElement) -> bool:
    return True


def in_derived(e: AlgebraElement) -> bool:
    """g' = <X(f), Z(g)>."""
    return e.a == 0 and e.b == 0 and e.c == 0


def in_nilradical(e: AlgebraElement) -> bool:
    """n = <Dy, X(f), F, Z(g)>."""
    return e.a == 0


def in_derived_nilradical(e: AlgebraElement) -> bool:
    """n' = [n, n] = <Z(g)>."""
    return e.a == 0 and e.b == 0 and e.c == 0 and e.f.is_zero()


def in_center(e: AlgebraElement) -> bool:
    """z = <X(1), F, Z(1)>."""
    return e.a == 0 and e.b == 0 and e.f.is_constant() and e.g.is_constant()


def in_center_derived(e: AlgebraElement) -> bool:
    """z and g' = <X(1), Z(1)>."""
    return in_center(e) and e.c == 0


def in_center_derived_nilradical(e: AlgebraElement) -> bool:
    """z and n' = <Z(1)>."""
    return in_center(e) and e.c == 0 and e.f.is_zero()


def structure_subspaces() -> dict:
    return {
        "g": in_algebra,
        "g'": in_derived,
        "n": in_nilradical,
        "n'": in_derived_nilradical,
        "z": in_center,
        "z&g'": in_center_derived,
        "z&n'": in_center_derived_nilradical,
    }
