# twolayer/catalog/two_dimensional.py
"""
Solutions invariant under the two-dimensional subalgebras A2_1 .. A2_4.

Each family exposes its reduced profiles (functions of the single invariant) next to the
builder, so the same profiles feed both the full-model evaluator and reduced residual checks.
"""
import numpy as np
from scipy.special import expi

from .integration import OdeProfile
from .models import GUARD, ParamSpec, SolutionExpr, guard_nonzero, require


def _real(default, description=""):
    return ParamSpec(default=default, description=description)


def _exppoly(default, description=""):
    return ParamSpec(default=default, description=description, kind="exppoly")


# A2_1: psi1 = v1(p) + kappa t + (mu + rho) y, psi2 = v2(p) - kappa t + (mu - rho) y, p = x - nu y

def _a21_layers(name, v1, v2, params, provenance, locus=None, locus_description=""):
    kappa, nu, mu, rho = params["kappa"], params["nu"], params["mu"], params["rho"]

    def evaluator(t, x, y):
        p = x - nu * y
        return v1(p) + kappa * t + (mu + rho) * y, v2(p) - kappa * t + (mu - rho) * y

    return SolutionExpr(name=name, evaluator=evaluator, params=params, provenance=provenance,
                        singular_locus=locus, locus_description=locus_description)


CONSTANT_WIND_SCHEMA = {
    "kappa": _real(1.0, "time rate of the baroclinic shift"),
    "nu": _real(0.5, "p = x - nu y"),
    "c1": _real(0.0, "constant in v1"),
    "c2": _real(0.0, "constant in v2"),
}


def constant_wind_profiles(params, model):
    slope = 2 * model.F * params["kappa"] / model.beta
    return (lambda p: slope * p + params["c1"]), (lambda p: -slope * p + params["c2"])


def a21_constant_wind(params, model) -> SolutionExpr:
    """rho = mu = 0: v1 = 2F kappa p / beta + c1, v2 = -2F kappa p / beta + c2."""
    v1, v2 = constant_wind_profiles(params, model)
    return _a21_layers("a21_constant_wind", v1, v2, {**params, "mu": 0.0, "rho": 0.0},
                       "A2_1, rho = mu = 0: a constant wind field in both layers")


SINGULAR_CASE_SCHEMA = {
    "kappa": _real(0.5, "time rate of the baroclinic shift"),
    "nu": _real(0.5, "p = x - nu y"),
    "mu": _real(0.25, "mu (its sign selects exponential or wave profiles)"),
    "ca": _real(0.5, "coefficient of exp(s p) or cos(s p)"),
    "cb": _real(0.25, "coefficient of exp(-s p) or sin(s p)"),
    "c3": _real(0.0, "constant in the profile carrying the homogeneous part"),
    "c4": _real(0.0, "constant in the other profile"),
}


def singular_case_profiles(params, model, swap: bool):
    """
    Profiles for rho = mu (swap False) or rho = -mu (swap True), mu != 0.
    The active layer carries ca, cb times exp(+-s p) (mu > 0) or cos/sin(s p) (mu < 0) with
    s = sqrt(beta / (2 |mu| (1 + nu^2))); the linear parts are +-2F kappa p / (2F mu + beta).
    """
    kappa, nu, mu = params["kappa"], params["nu"], params["mu"]
    F, beta = model.F, model.beta
    guard_nonzero(mu, 1.0, "mu != 0")
    guard_nonzero(2 * F * mu + beta, beta + 2 * F * abs(mu), "2F mu + beta != 0")
    s = np.sqrt(beta / (2 * abs(mu) * (1 + nu**2)))
    slope = 2 * F * kappa / (2 * F * mu + beta)
    ca, cb = params["ca"], params["cb"]
    if mu > 0:
        def homogeneous(p):
            return ca * np.exp(s * p) + cb * np.exp(-s * p)
    else:
        def homogeneous(p):
            return ca * np.cos(s * p) + cb * np.sin(s * p)
    if not swap:
        return (lambda p: homogeneous(p) + slope * p + params["c3"]), (lambda p: -slope * p + params["c4"])
    return (lambda p: slope * p + params["c4"]), (lambda p: homogeneous(p) - slope * p + params["c3"])


def _singular_case(name, swap, sign, provenance):
    def builder(params, model):
        require(np.sign(params["mu"]) == sign, f"mu {'>' if sign > 0 else '<'} 0")
        v1, v2 = singular_case_profiles(params, model, swap)
        rho = -params["mu"] if swap else params["mu"]
        return _a21_layers(name, v1, v2, {**params, "rho": rho}, provenance)
    return builder


a21_exponential = _singular_case(
    "a21_exponential", swap=False, sign=1,
    provenance="A2_1, rho = mu > 0: a simple exponential solution")
a21_upper_wave = _singular_case(
    "a21_upper_wave", swap=False, sign=-1,
    provenance="A2_1, rho = mu < 0: a stationary Rossby wave in the upper layer")
a21_lower_exponential = _singular_case(
    "a21_lower_exponential", swap=True, sign=1,
    provenance="A2_1, rho = -mu with mu > 0: layers interchanged")
a21_lower_wave = _singular_case(
    "a21_lower_wave", swap=True, sign=-1,
    provenance="A2_1, rho = -mu with mu < 0: layers interchanged")


GENERAL_A21_SCHEMA = {
    "kappa": _real(0.5, "time rate of the baroclinic shift"),
    "nu": _real(0.5, "p = x - nu y"),
    "mu": _real(0.3, "mu"),
    "rho": _real(0.1, "rho, with mu +- rho != 0"),
    "u1": _real(1.0, "v1'(p0)"),
    "du1": _real(0.0, "v1''(p0)"),
    "u2": _real(-1.0, "v2'(p0)"),
    "du2": _real(0.0, "v2''(p0)"),
    "p0": _real(0.0, "start of the integration"),
    "p_min": _real(-10.0, "lower end of the integrated p interval"),
    "p_max": _real(10.0, "upper end of the integrated p interval"),
}


def general_a21_profile(params, model) -> OdeProfile:
    """
    Once-integrated nonsingular system for u_i = v_i', integrated together with v_i:
        (mu + rho) N u1'' = -2F kappa + (beta - 2F rho) u1 + (mu + rho) F (u1 - u2)
        (mu - rho) N u2'' =  2F kappa + (beta + 2F rho) u2 - (mu - rho) F (u1 - u2)
    with N = 1 + nu^2. State order (v1, u1, u1', v2, u2, u2').
    """
    kappa, nu, mu, rho = params["kappa"], params["nu"], params["mu"], params["rho"]
    F, beta = model.F, model.beta
    scale = abs(mu) + abs(rho)
    guard_nonzero(mu + rho, scale, "mu + rho != 0 (singular case, see a21_* entries)")
    guard_nonzero(mu - rho, scale, "mu - rho != 0 (singular case, see a21_* entries)")
    N = 1 + nu**2

    def rhs(p, y):
        _, u1, du1, _, u2, du2 = y
        d2u1 = (-2 * F * kappa + (beta - 2 * F * rho) * u1 + (mu + rho) * F * (u1 - u2)) / ((mu + rho) * N)
        d2u2 = (2 * F * kappa + (beta + 2 * F * rho) * u2 - (mu - rho) * F * (u1 - u2)) / ((mu - rho) * N)
        return [u1, du1, d2u1, u2, du2, d2u2]

    y0 = [0.0, params["u1"], params["du1"], 0.0, params["u2"], params["du2"]]
    return OdeProfile(rhs, params["p0"], y0, params["p_min"], params["p_max"], label="A2_1 profile")


def a21_general(params, model) -> SolutionExpr:
    profile = general_a21_profile(params, model)
    nu = params["nu"]

    def locus(t, x, y):
        return profile.outside(np.asarray(x) - nu * np.asarray(y))

    return _a21_layers("a21_general", lambda p: profile(p, 0), lambda p: profile(p, 3), params,
                       "A2_1 nonsingular case, integrated numerically",
                       locus=locus, locus_description="p = x - nu y outside the integrated interval")


# A2_2: psi+ = v1(p) - 2 sigma p x, psi- = v2(p) + 2 kappa t, p = y - nu t

EXPONENTIAL_INTEGRAL_SCHEMA = {
    "nu": _real(1.0, "p = y - nu t"),
    "sigma": _real(1.0, "rate sigma != 0"),
    "kappa": _real(0.5, "time rate of psi-"),
    "b0": _real(0.0, "constant in v1"),
    "b1": _real(0.0, "linear coefficient in v1"),
    "b2": _real(0.0, "quadratic coefficient in v1"),
    "c4": _real(0.0, "coefficient of exp(sqrt(2F) p) in v2"),
    "c5": _real(0.1, "coefficient of exp(-sqrt(2F) p) in v2"),
    "c6": _real(0.0, "constant in v2"),
}


def exponential_integral_profiles(params, model):
    """
    With z = nu + sigma p > 0, c = sqrt(2F)/sigma:
        v1 = -beta p^3/3 + (2 beta nu / sigma^3)(z^2 ln z / 2 - 3 z^2 / 4) + b0 + b1 p + b2 p^2
        v2 = -(kappa/sigma)(exp(cz) Ei(-cz) + exp(-cz) Ei(cz) - 2 ln z) + c4 e^{sqrt(2F) p} + c5 e^{-sqrt(2F) p} + c6
    Ei is the principal-value exponential integral.
    """
    nu, sigma, kappa = params["nu"], params["sigma"], params["kappa"]
    guard_nonzero(sigma, 1.0, "sigma != 0")
    beta = model.beta
    a = np.sqrt(2 * model.F)
    c = a / sigma

    def v1(p):
        z = nu + sigma * p
        return (-beta * p**3 / 3 + 2 * beta * nu / sigma**3 * (z**2 * np.log(z) / 2 - 0.75 * z**2)
                + params["b0"] + params["b1"] * p + params["b2"] * p**2)

    def v2(p):
        z = nu + sigma * p
        special = np.exp(c * z) * expi(-c * z) + np.exp(-c * z) * expi(c * z) - 2 * np.log(z)
        return (-kappa / sigma * special + params["c4"] * np.exp(a * p) + params["c5"] * np.exp(-a * p)
                + params["c6"])

    return v1, v2


def a22_exponential_integral(params, model) -> SolutionExpr:
    nu, sigma, kappa = params["nu"], params["sigma"], params["kappa"]
    v1, v2 = exponential_integral_profiles(params, model)

    def locus(t, x, y):
        return nu + sigma * (np.asarray(y) - nu * t) <= 0

    def evaluator(t, x, y):
        p = y - nu * t
        return v1(p) - 2 * sigma * p * x, v2(p) + 2 * kappa * t

    return SolutionExpr.from_pm(
        "a22_exponential_integral", evaluator, params=params,
        provenance="A2_2: logarithm and exponential integral solution",
        singular_locus=locus, locus_description="nu + sigma (y - nu t) <= 0",
    )


# A2_3: psi+ = v1(p) + 2 mu x, psi- = v2(p) + 2 kappa t + 2 rho x, p = y - nu t

TRIGONOMETRIC_SCHEMA = {
    "nu": _real(0.0, "p = y - nu t"),
    "mu": _real(0.5, "mu"),
    "rho": _real(1.0, "rho != 0"),
    "kappa": _real(0.25, "time rate of psi-"),
    "A": _real(1.0, "coefficient of cos(omega p) in v1'"),
    "B": _real(0.5, "coefficient of sin(omega p) in v1'"),
    "c1": _real(0.0, "quadratic constant of the v2 relation"),
    "c2": _real(0.0, "linear constant of the v2 relation"),
    "c3": _real(0.0, "constant of the v2 relation"),
    "d0": _real(0.0, "constant in v1"),
}


def _a23_coefficients(params, model):
    """
    v1' = u solves gamma1 u'' + gamma2 u = r2 p^2 + r1 p + r0 with m = mu - nu,
    gamma1 = rho^2 - m^2, gamma2 = 2F (rho^2 + m^2).
    """
    nu, mu, rho, kappa = params["nu"], params["mu"], params["rho"], params["kappa"]
    F, beta = model.F, model.beta
    guard_nonzero(rho, 1.0, "rho != 0")
    m = mu - nu
    gamma1, gamma2 = rho**2 - m**2, 2 * F * (rho**2 + m**2)
    guard_nonzero(gamma1, rho**2 + m**2, "gamma1 != 0")
    r2 = -2 * F * m * beta * mu
    r1 = 4 * F * m * params["c1"]
    r0 = 2 * F * m * params["c2"] + 2 * beta * mu * m - 2 * beta * rho**2 + 4 * F * kappa * rho
    alpha2 = r2 / gamma2
    alpha1 = r1 / gamma2
    alpha0 = (r0 - 2 * gamma1 * alpha2) / gamma2
    return m, gamma1, gamma2, (r2, r1, r0), (alpha2, alpha1, alpha0)


def _v2_from_v1(params, model, m, v1):
    """rho v2 = -m v1 - beta mu p^3/3 + c1 p^2 + c2 p + c3."""
    rho, mu = params["rho"], params["mu"]

    def v2(p):
        return (-m * v1(p) - model.beta * mu * p**3 / 3
                + params["c1"] * p**2 + params["c2"] * p + params["c3"]) / rho
    return v2


def trigonometric_profiles(params, model):
    m, gamma1, gamma2, _, (alpha2, alpha1, alpha0) = _a23_coefficients(params, model)
    require(gamma2 / gamma1 > 0, "gamma2/gamma1 > 0")
    omega = np.sqrt(gamma2 / gamma1)
    A, B = params["A"], params["B"]

    def v1(p):
        return (A / omega * np.sin(omega * p) - B / omega * np.cos(omega * p)
                + alpha2 * p**3 / 3 + alpha1 * p**2 / 2 + alpha0 * p + params["d0"])

    return v1, _v2_from_v1(params, model, m, v1)


def _a23_solution(name, params, v1, v2, provenance, locus=None, locus_description=""):
    nu, mu, rho, kappa = params["nu"], params["mu"], params["rho"], params["kappa"]

    def evaluator(t, x, y):
        p = y - nu * t
        return v1(p) + 2 * mu * x, v2(p) + 2 * kappa * t + 2 * rho * x

    return SolutionExpr.from_pm(name, evaluator, params=params, provenance=provenance,
                                singular_locus=locus, locus_description=locus_description)


def a23_trigonometric(params, model) -> SolutionExpr:
    v1, v2 = trigonometric_profiles(params, model)
    return _a23_solution("a23_trigonometric", params, v1, v2,
                         "A2_3, gamma2/gamma1 > 0: travelling wave in y with a cubic part")


EXPONENTIAL_A23_SCHEMA = {
    **TRIGONOMETRIC_SCHEMA,
    "nu": _real(0.0, "p = y - nu t"),
    "mu": _real(1.0, "mu"),
    "rho": _real(0.5, "rho != 0"),
    "p_min": _real(-10.0, "lower end of the integrated p interval"),
    "p_max": _real(10.0, "upper end of the integrated p interval"),
}


def exponential_a23_profile(params, model) -> OdeProfile:
    """gamma2/gamma1 < 0 branch: v1 integrated numerically from (d0, A, B) at p = 0."""
    _, gamma1, gamma2, (r2, r1, r0), _ = _a23_coefficients(params, model)
    require(gamma2 / gamma1 < 0, "gamma2/gamma1 < 0")

    def rhs(p, y):
        v1, u, du = y
        return [u, du, (r2 * p**2 + r1 * p + r0 - gamma2 * u) / gamma1]

    return OdeProfile(rhs, 0.0, [params["d0"], params["A"], params["B"]],
                      params["p_min"], params["p_max"], label="A2_3 exponential profile")


def a23_exponential(params, model) -> SolutionExpr:
    profile = exponential_a23_profile(params, model)
    m = params["mu"] - params["nu"]
    v1 = lambda p: profile(p, 0)  # noqa: E731
    v2 = _v2_from_v1(params, model, m, v1)
    nu = params["nu"]

    def locus(t, x, y):
        return profile.outside(np.asarray(y) - nu * t)

    return _a23_solution("a23_exponential", params, v1, v2,
                         "A2_3, gamma2/gamma1 < 0: exponential branch, integrated numerically",
                         locus=locus, locus_description="p = y - nu t outside the integrated interval")


# A2_4: psi+ = theta(t) - f' y^2 - 2 g (f y - x), psi- = v2(t) + 2 kappa y - 2 rho (f y - x)

POLYNOMIAL_SCHEMA = {
    "f": _exppoly("t^2", "f(t)"),
    "theta": _exppoly("0", "theta(t), a pure gauge"),
    "kappa": _real(0.0, "kappa (kappa rho = 0)"),
    "rho": _real(0.5, "rho (kappa rho = 0)"),
    "c": _real(0.0, "constant in v2"),
}


def a24_polynomial(params, model) -> SolutionExpr:
    """g = f''/beta is forced; v2 = -2 kappa f'/beta + beta rho t / F + c."""
    f, theta, kappa, rho = params["f"], params["theta"], params["kappa"], params["rho"]
    require(abs(kappa * rho) <= GUARD, "kappa*rho == 0")
    beta, F = model.beta, model.F

    def evaluator(t, x, y):
        fv, f1, f2 = f(t), f.derivative(t, 1), f.derivative(t, 2)
        g = f2 / beta
        v2 = -2 * kappa * f1 / beta + beta * rho * t / F + params["c"]
        plus = theta(t) - f1 * y**2 - 2 * g * (fv * y - x)
        minus = v2 + 2 * kappa * y - 2 * rho * (fv * y - x)
        return plus, minus

    return SolutionExpr.from_pm(
        "a24_polynomial", evaluator, params=params,
        provenance="A2_4: polynomial solution with time-dependent coefficients",
    )
