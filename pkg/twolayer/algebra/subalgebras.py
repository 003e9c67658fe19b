# twolayer/algebra/subalgebras.py
"""
Optimal lists of one- and two-dimensional subalgebras, encoded as data, and the exact
closure check used to verify them.
"""
from itertools import combinations

import numpy as np
import sympy

from ..errors import BranchError, DependentGeneratorsError
from .brackets import commutator
from .exppoly import ExpPoly
from .models import AlgebraElement as E
from .models import SubalgebraSpec


def _coordinate_matrix(elements, keys):
    return sympy.Matrix([[e.coordinates().get(k, 0) for e in elements] for k in keys])


def _keys(elements):
    keys = set()
    for e in elements:
        keys.update(e.coordinates())
    return sorted(keys, key=lambda k: tuple(str(part) for part in k))


def span_coordinates(generators, target):
    """Coefficients expressing ``target`` in the span of ``generators``, or None."""
    keys = _keys(list(generators) + [target])
    if not keys:
        return [sympy.S.Zero] * len(generators)
    M = _coordinate_matrix(generators, keys)
    rhs = _coordinate_matrix([target], keys)
    try:
        solution, free = M.gauss_jordan_solve(rhs)
    except ValueError:
        return None
    solution = solution.subs({s: 0 for s in free})
    return [sympy.nsimplify(v) if v.is_Float else v for v in solution]


def check_independent(generators):
    keys = _keys(generators)
    rank = _coordinate_matrix(generators, keys).rank() if keys else 0
    if rank < len(generators):
        raise DependentGeneratorsError(
            f"generators are linearly dependent (rank {rank} < {len(generators)})"
        )


def subalgebra_closed(spec: SubalgebraSpec) -> dict:
    """
    Brackets every pair of generators and solves for it in the generator span.

    Returns ``{"closed": bool, "bracket_coords": {(i, j): [coeffs] or None}}``.
    """
    gens = list(spec.generators)
    check_independent(gens)
    coords = {}
    for i, j in combinations(range(len(gens)), 2):
        coords[(i, j)] = span_coordinates(gens, commutator(gens[i], gens[j]))
    return {"closed": all(v is not None for v in coords.values()), "bracket_coords": coords}


def format_combination(coeffs) -> str:
    """``[0, 2]`` -> ``2*e2``."""
    parts = []
    for idx, c in enumerate(coeffs, start=1):
        if c == 0:
            continue
        name = f"e{idx}"
        parts.append(name if c == 1 else f"-{name}" if c == -1 else f"{c}*{name}")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def closure_summary(spec: SubalgebraSpec, report: dict) -> str:
    closed = "true" if report["closed"] else "false"
    pieces = [f"closed: {closed}"]
    for (i, j), coeffs in report["bracket_coords"].items():
        value = "outside span" if coeffs is None else format_combination(coeffs)
        pieces.append(f"[e{i + 1},e{j + 1}] = {value}")
    return "; ".join(pieces)


# --- the shipped catalog -------------------------------------------------------------

def _r(v):
    return sympy.Rational(v)


def _ep(v):
    return v if isinstance(v, ExpPoly) else ExpPoly.constant(v)


def a1_1(a=0, b=0):
    return SubalgebraSpec("A1_1", (E(a=1, b=a, c=b),), {"a": _r(a), "b": _r(b)})


def a1_2(f=0, b=0):
    return SubalgebraSpec("A1_2", (E(b=1, f=_ep(f), c=b),), {"f": _ep(f), "b": _r(b)})


def a1_3(f=0, g=0, b=0):
    return SubalgebraSpec("A1_3", (E(f=_ep(f), g=_ep(g), c=b),), {"f": _ep(f), "g": _ep(g), "b": _r(b)})


def a2_1(kappa=0, nu=0, mu=0, rho=0):
    return SubalgebraSpec("A2_1", (E(a=1, c=kappa), E(b=1, f=nu, g=mu, c=rho)),
                          {"kappa": _r(kappa), "nu": _r(nu), "mu": _r(mu), "rho": _r(rho)})


def a2_2(nu=0, sigma=1, kappa=0, z_degree=1):
    """``z_degree`` is the power of t in the Z argument; the family itself uses 1."""
    sigma = _r(sigma)
    if sigma == 0:
        raise BranchError("A2_2 requires sigma != 0")
    e_sigma = ExpPoly.exponential(sigma)
    z_arg = ExpPoly.monomial(z_degree, sigma, _r(nu) * sigma)
    return SubalgebraSpec("A2_2", (E(a=1, b=nu, c=kappa), E(f=e_sigma, g=z_arg)),
                          {"nu": _r(nu), "sigma": sigma, "kappa": _r(kappa)})


def a2_m1(nu=0, sigma=1, kappa=0):
    return SubalgebraSpec("A2_-1", (E(a=1, b=nu, c=kappa), E(g=ExpPoly.exponential(_r(sigma)))),
                          {"nu": _r(nu), "sigma": _r(sigma), "kappa": _r(kappa)})


def a2_3(nu=0, kappa=0, mu=0, rho=0):
    return SubalgebraSpec("A2_3", (E(a=1, b=nu, c=kappa), E(f=1, g=mu, c=rho)),
                          {"nu": _r(nu), "kappa": _r(kappa), "mu": _r(mu), "rho": _r(rho)})


def a2_m2(nu=0, kappa=0, rho=0):
    return SubalgebraSpec("A2_-2", (E(a=1, b=nu, c=kappa), E(g=1, c=rho)),
                          {"nu": _r(nu), "kappa": _r(kappa), "rho": _r(rho)})


def a2_m3(nu=0):
    return SubalgebraSpec("A2_-3", (E(a=1, b=nu), E(c=1)), {"nu": _r(nu)})


def a2_4(f=0, g=0, kappa=0, rho=0):
    if _r(kappa) * _r(rho) != 0:
        raise BranchError("A2_4 requires kappa*rho = 0")
    return SubalgebraSpec("A2_4", (E(b=1, f=_ep(f), c=kappa), E(f=1, g=_ep(g), c=rho)),
                          {"f": _ep(f), "g": _ep(g), "kappa": _r(kappa), "rho": _r(rho)})


def a2_m4(f=0, g=0):
    return SubalgebraSpec("A2_-4", (E(b=1, f=_ep(f)), E(g=_ep(g), c=1)), {"f": _ep(f), "g": _ep(g)})


def a2_m5(f=0, g=1, kappa=0):
    if _ep(g).is_zero():
        raise BranchError("A2_-5 requires g not identically zero")
    return SubalgebraSpec("A2_-5", (E(b=1, f=_ep(f), c=kappa), E(g=_ep(g))),
                          {"f": _ep(f), "g": _ep(g), "kappa": _r(kappa)})


def a2_m6(f1=1, g1=0, kappa=0, f2=0, g2=1, rho=0):
    spec = SubalgebraSpec("A2_-6", (E(f=_ep(f1), g=_ep(g1), c=kappa), E(f=_ep(f2), g=_ep(g2), c=rho)),
                          {"f1": _ep(f1), "g1": _ep(g1), "kappa": _r(kappa),
                           "f2": _ep(f2), "g2": _ep(g2), "rho": _r(rho)})
    try:
        check_independent(spec.generators)
    except DependentGeneratorsError as e:
        raise BranchError("A2_-6 requires (f1, g1, kappa) and (f2, g2, rho) linearly independent") from e
    return spec


SUBALGEBRAS = {
    "A1_1": a1_1, "A1_2": a1_2, "A1_3": a1_3,
    "A2_1": a2_1, "A2_2": a2_2, "A2_-1": a2_m1, "A2_3": a2_3, "A2_-2": a2_m2, "A2_-3": a2_m3,
    "A2_4": a2_4, "A2_-4": a2_m4, "A2_-5": a2_m5, "A2_-6": a2_m6,
}

FUNCTION_PARAMS = frozenset({"f", "g", "f1", "g1", "f2", "g2"})


def build_subalgebra(name: str, **params) -> SubalgebraSpec:
    try:
        factory = SUBALGEBRAS[name]
    except KeyError:
        raise BranchError(f"unknown subalgebra {name!r}; known: {', '.join(SUBALGEBRAS)}") from None
    return factory(**params)


def random_exppoly(rng: np.random.Generator, degree: int = 3, exponentials: bool = True) -> ExpPoly:
    """Small random exponential polynomial with integer data."""
    terms = []
    sigmas = [0] + ([int(rng.integers(-2, 3))] if exponentials else [])
    for sigma in sigmas:
        coeffs = [int(c) for c in rng.integers(-3, 4, size=int(rng.integers(1, degree + 2)))]
        terms.append((sigma, coeffs))
    return ExpPoly(terms)


def sample_subalgebras(rng: np.random.Generator, samples: int = 5):
    """``samples`` random parameter points for every family."""
    def r():
        return sympy.Rational(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))

    def nonzero():
        v = r()
        return v if v != 0 else sympy.Rational(1)

    def fn():
        return random_exppoly(rng)

    out = []
    for _ in range(samples):
        kappa = r()
        out.extend([
            a1_1(r(), r()), a1_2(fn(), r()), a1_3(fn(), fn(), r()),
            a2_1(r(), r(), r(), r()),
            a2_2(r(), nonzero(), r()),
            a2_m1(r(), r(), r()),
            a2_3(r(), r(), r(), r()),
            a2_m2(r(), r(), r()),
            a2_m3(r()),
            a2_4(fn(), fn(), kappa, 0 if kappa != 0 else r()),
            a2_m4(fn(), fn()),
            a2_m5(fn(), fn() + ExpPoly.monomial(4), r()),
            a2_m6(fn() + ExpPoly.monomial(4), fn(), r(), fn(), fn() + ExpPoly.monomial(5), r()),
        ])
    return out
