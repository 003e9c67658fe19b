# twolayer/catalog/one_dimensional.py
"""
Solutions invariant under one-dimensional subalgebras (A1_2 waves and their relatives, A1_3).

A1_2 ansatz, with H = 1 + f(t)^2 and p = x - f(t) y:
    psi+ = W(p, t) - f'(t) y^2,     psi- = V(p, t) + 2 b y
A1_3 ansatz, with p~ = f(t) y - int_0^t g:
    psi+ = v+(y, t) - 2 (f' y - g) x / f,     psi- = v-(y, t) + 2 b x / f
"""
import numpy as np

from .integration import OdeProfile, time_integral
from .models import ParamSpec, SolutionExpr, guard_nonzero, require


def _real(default, description=""):
    return ParamSpec(default=default, description=description)


def _exppoly(default, description=""):
    return ParamSpec(default=default, description=description, kind="exppoly")


def _integer(default, description=""):
    return ParamSpec(default=default, description=description, kind="int")


# Rossby waves

ROSSBY_CLASSIC_SCHEMA = {
    "k": _real(3.0, "zonal wavenumber"),
    "l": _real(2.0, "meridional wavenumber"),
    "c1": _real(1.0, "barotropic amplitude (psi+)"),
    "c2": _real(0.0, "baroclinic amplitude (psi-)"),
}


def rossby_frequencies(k: float, l: float, model) -> tuple[float, float]:
    """Barotropic and baroclinic angular frequencies of cos(kx + ly + omega t)."""
    K2 = k**2 + l**2
    return model.beta * k / K2, model.beta * k / (K2 + 2 * model.F)


def rossby_classic(params, model) -> SolutionExpr:
    k, l, c1, c2 = params["k"], params["l"], params["c1"], params["c2"]
    require(k**2 + l**2 > 0, "k^2 + l^2 > 0")
    w_plus, w_minus = rossby_frequencies(k, l, model)

    def evaluator(t, x, y):
        phase = k * x + l * y
        return c1 * np.cos(phase + w_plus * t), c2 * np.cos(phase + w_minus * t)

    return SolutionExpr.from_pm(
        "rossby_classic", evaluator,
        params={**params, "omega_barotropic": w_plus, "omega_baroclinic": w_minus},
        provenance="A1_2 with constant f = -l/k: the classic two-layer Rossby waves",
    )


ROSSBY_CHANNEL_SCHEMA = {
    "k": _real(2.0, "zonal wavenumber (integer multiple of 2 pi / Lx for periodicity)"),
    "n": _integer(1, "number of meridional half waves between the walls"),
    "south": _real(0.0, "y of the southern wall"),
    "width": _real(2 * np.pi, "channel width Y"),
    "c1": _real(1.0, "barotropic amplitude"),
    "c2": _real(0.0, "baroclinic amplitude"),
}


def rossby_channel(params, model) -> SolutionExpr:
    """Standing meridional mode sin(l (y - south)) cos(kx + omega t); vanishes on both walls."""
    k, n, south, width = params["k"], params["n"], params["south"], params["width"]
    c1, c2 = params["c1"], params["c2"]
    require(width > 0 and n >= 1, "width > 0 and n >= 1")
    # modes with different frequencies but the same y-structure do not decouple
    require(c1 * c2 == 0, "c1*c2 == 0 (a single vertical mode)")
    l = n * np.pi / width
    w_plus, w_minus = rossby_frequencies(k, l, model)

    def evaluator(t, x, y):
        shape = np.sin(l * (y - south))
        return c1 * shape * np.cos(k * x + w_plus * t), c2 * shape * np.cos(k * x + w_minus * t)

    return SolutionExpr.from_pm(
        "rossby_channel", evaluator,
        params={**params, "l": l, "omega_barotropic": w_plus, "omega_baroclinic": w_minus},
        provenance="A1_2 Rossby wave standing between zonal walls",
    )


ROSSBY_GENERALIZED_SCHEMA = {
    "k": _real(2.0, "wavenumber along p = x - f(t) y"),
    "c1": _real(1.0, "barotropic amplitude at f = 0"),
    "c2": _real(0.5, "baroclinic amplitude at f = 0"),
    "f": _exppoly("1/2 t", "tilt f(t) of the wave crests"),
}


def rossby_generalized(params, model) -> SolutionExpr:
    """
    Decoupled (b = 0) A1_2 wave with a time-dependent tilt:
        W = (c1/H) cos(kp + (beta/k) int_0^t ds/H) + 2 f'' p / beta
        V = c2 (2F + k^2)/(2F + k^2 H) cos(kp + beta k int_0^t ds/(2F + k^2 H))
    The gauge function from integrating in p is fixed to zero.
    """
    k, c1, c2, f = params["k"], params["c1"], params["c2"], params["f"]
    require(k != 0, "k != 0")
    beta, F = model.beta, model.F

    def evaluator(t, x, y):
        fv, f1, f2 = f(t), f.derivative(t, 1), f.derivative(t, 2)
        H = 1 + fv**2
        p = x - fv * y
        phase_plus = beta / k * time_integral(lambda s: 1 / (1 + f(s) ** 2), t)
        phase_minus = beta * k * time_integral(lambda s: 1 / (2 * F + k**2 * (1 + f(s) ** 2)), t)
        plus = c1 / H * np.cos(k * p + phase_plus) + 2 * f2 * p / beta - f1 * y**2
        minus = c2 * (2 * F + k**2) / (2 * F + k**2 * H) * np.cos(k * p + phase_minus)
        return plus, minus

    return SolutionExpr.from_pm(
        "rossby_generalized", evaluator, params=params,
        provenance="A1_2 decoupled system (b = 0), generalized Rossby wave",
    )


# A1_2 with coupling b != 0 and constant f

COUPLED_WAVE_SCHEMA = {
    "k": _real(1.0, "wavenumber"),
    "f0": _real(0.0, "constant tilt f"),
    "b": _real(0.2, "coupling constant"),
    "amplitude": _real(1.0, "amplitude of W"),
    "branch": _integer(0, "0 or 1: which real root of the dispersion relation"),
}


def coupled_wave_frequencies(k: float, f0: float, b: float, model) -> np.ndarray:
    """Real roots omega of the coupled dispersion relation, ascending; empty when they are complex."""
    beta, F = model.beta, model.F
    H = 1 + f0**2
    coeffs = [
        H * k * (H * k**2 + 2 * F),
        beta * (2 * H * k**2 + 2 * F),
        beta**2 * k - b**2 * H * k**3 * (H * k**2 - 2 * F),
    ]
    disc = coeffs[1] ** 2 - 4 * coeffs[0] * coeffs[2]
    if disc < 0:
        return np.array([])
    return np.sort(np.roots(coeffs).real)


def a12_coupled_wave(params, model) -> SolutionExpr:
    """
    W = A cos(kp - omega t), V = B cos(kp - omega t) with
        (H k omega + beta) A + b H k^2 B = 0,
        (H k^2 omega + 2F omega + beta k) B + b k (H k^2 - 2F) A = 0.
    """
    k, f0, b, A, branch = params["k"], params["f0"], params["b"], params["amplitude"], params["branch"]
    require(k != 0, "k != 0")
    guard_nonzero(b, 1.0, "b != 0 (use rossby_generalized for b = 0)")
    require(branch in (0, 1), "branch in {0, 1}")
    roots = coupled_wave_frequencies(k, f0, b, model)
    require(roots.size == 2, "real frequency: discriminant of the dispersion relation >= 0")
    omega = float(roots[branch])
    H = 1 + f0**2
    B = -(H * k * omega + model.beta) * A / (b * H * k**2)

    def evaluator(t, x, y):
        phase = k * (x - f0 * y) - omega * t
        return A * np.cos(phase), B * np.cos(phase) + 2 * b * y

    return SolutionExpr.from_pm(
        "a12_coupled_wave", evaluator, params={**params, "omega": omega, "B": B},
        provenance="A1_2 coupled system, constant f: exponential (wave) reduction",
    )


CONSTANT_COEFFICIENT_SCHEMA = {
    "f0": _real(0.0, "constant tilt f"),
    "kappa": _real(1.0, "drift of r = p - kappa q"),
    "lam": _real(0.5, "growth rate lambda in q"),
    "n": _real(0.5, "rate of the barotropic exponential"),
    "c0": _real(0.1, "barotropic amplitude"),
    "c1": _real(0.1, "amplitude on the smallest real root"),
    "c2": _real(0.1, "amplitude on the middle real root"),
    "c3": _real(0.1, "amplitude on the largest real root"),
}


def constant_coefficient_rates(kappa: float, lam: float, H: float, model) -> np.ndarray:
    """Real roots m of kappa m^3 - lam m^2 - (2F kappa/H + beta) m + 2F lam/H = 0, ascending."""
    F, beta = model.F, model.beta
    roots = np.roots([kappa, -lam, -(2 * F * kappa / H + beta), 2 * F * lam / H])
    real = roots[np.abs(roots.imag) <= 1e-10 * np.maximum(1.0, np.abs(roots))].real
    return np.sort(real)


def a12_constant_coefficient(params, model) -> SolutionExpr:
    """
    Decoupled A1_2 with constant f:
        psi+ = c0 exp(n p - beta t/(H n)),
        psi- = sum_i c_i exp(m_i (p - kappa t/H) + lam t/H)
    where m_i are the real roots of the constant-coefficient cubic.
    """
    f0, kappa, lam, n = params["f0"], params["kappa"], params["lam"], params["n"]
    amplitudes = [params["c1"], params["c2"], params["c3"]]
    H = 1 + f0**2
    guard_nonzero(n, 1.0, "n != 0")
    rates = constant_coefficient_rates(kappa, lam, H, model)
    used = [c for c in amplitudes if c != 0]
    require(len(used) <= rates.size, f"{len(used)} nonzero amplitudes need as many real roots (found {rates.size})")
    terms = [(c, m) for c, m in zip(amplitudes, rates) if c != 0]
    beta = model.beta

    def evaluator(t, x, y):
        p = x - f0 * y
        plus = params["c0"] * np.exp(n * p - beta * t / (H * n))
        minus = sum((c * np.exp(m * (p - kappa * t / H) + lam * t / H) for c, m in terms), np.zeros_like(p))
        return plus, minus

    return SolutionExpr.from_pm(
        "a12_constant_coefficient", evaluator, params={**params, "rates": tuple(float(m) for m in rates)},
        provenance="A1_2 with constant f: constant-coefficient reduction solved by standard methods",
    )


WHITTAKER_SCHEMA = {
    "varkappa": _real(1.0, "H = varkappa s^2"),
    "C": _real(2.0, "time offset, s = t + C"),
    "x_shift": _real(1.0, "shift of p keeping r away from 0"),
    "a0": _real(1.0, "v(r0)"),
    "a1": _real(0.5, "v'(r0)"),
    "a2": _real(0.0, "v''(r0)"),
    "r0": _real(-1.0, "start of the integration"),
    "r_min": _real(-40.0, "lower end of the integrated r interval"),
    "r_max": _real(-0.05, "upper end of the integrated r interval"),
}


def whittaker_profile(params, model) -> OdeProfile:
    """v(r) solving r v''' + (beta - 2 varkappa F r) v' = 0 (the lambda = -2 case)."""
    varkappa, beta, F = params["varkappa"], model.beta, model.F

    def rhs(r, v):
        return [v[1], v[2], -(beta - 2 * varkappa * F * r) * v[1] / r]

    return OdeProfile(rhs, params["r0"], [params["a0"], params["a1"], params["a2"]],
                      params["r_min"], params["r_max"], label="whittaker profile")


def a12_whittaker(params, model) -> SolutionExpr:
    """
    lambda = -2 reduction with H = varkappa s^2, s = t + C:
        f = -sqrt(varkappa s^2 - 1),  qbar = -1/(varkappa s),  r = p qbar,
        psi- = varkappa v(r),  psi+ = 2 f'' p / beta - f' y^2.
    v is integrated numerically. The Whittaker indices n = 1/2, m = beta (8 varkappa F)^(-1/2)
    are kept as metadata.
    """
    varkappa, C, shift = params["varkappa"], params["C"], params["x_shift"]
    require(varkappa > 0, "varkappa > 0")
    require(params["r_max"] < 0 or params["r_min"] > 0, "r interval on one side of r = 0")
    profile = whittaker_profile(params, model)
    beta = model.beta

    def geometry(t, x, y):
        s = t + C
        root = np.sqrt(varkappa * s**2 - 1)
        f, f1, f2 = -root, -varkappa * s / root, varkappa / root**3
        p = x - f * y + shift
        return s, f1, f2, p, -p / (varkappa * s)

    def locus(t, x, y):
        if varkappa * (t + C) ** 2 <= 1:
            return np.ones(np.shape(x), dtype=bool)
        return profile.outside(geometry(t, x, y)[4])

    def evaluator(t, x, y):
        _, f1, f2, p, r = geometry(t, x, y)
        return 2 * f2 * p / beta - f1 * y**2, varkappa * profile(r)

    metadata = {"whittaker_n": 0.5, "whittaker_m": beta / np.sqrt(8 * varkappa * model.F)}
    return SolutionExpr.from_pm(
        "a12_whittaker", evaluator, params={**params, **metadata},
        provenance="A1_2 decoupled system, H = varkappa q^2, lambda = -2 (Whittaker case)",
        singular_locus=locus,
        locus_description="varkappa (t + C)^2 <= 1 or r outside the integrated interval",
    )


# A1_3

DECOUPLED_SCHEMA = {
    "f": _exppoly("1+t^2", "f(t), nonvanishing"),
    "g": _exppoly("t", "g(t)"),
    "a1": _real(1.0, "amplitude of zeta(p~) = a1 cos(k1 p~)"),
    "k1": _real(1.0, "wavenumber of zeta"),
    "a2": _real(0.5, "amplitude of Omega(p~) = a2 cos(k2 p~)"),
    "k2": _real(2.0, "wavenumber of Omega"),
    "theta1": _exppoly("0", "coefficient of exp(sqrt(2F) y)"),
    "theta2": _exppoly("0", "coefficient of exp(-sqrt(2F) y)"),
}


def a13_decoupled(params, model) -> SolutionExpr:
    """
    General solution of the decoupled (b = 0) A1_3 system:
        psi+ = zeta(p~)/f^2 - beta y^3/3 - 2 (f' y - g) x / f
        psi- = v(t, p~) + theta1(t) exp(sqrt(2F) y) + theta2(t) exp(-sqrt(2F) y)
    with f^2 v_p~p~ - 2F v = Omega(p~), p~ = f y - int_0^t g.
    """
    f, g = params["f"], params["g"]
    a1, k1, a2, k2 = params["a1"], params["k1"], params["a2"], params["k2"]
    theta1, theta2 = params["theta1"], params["theta2"]
    G_anti = g.antiderivative()
    G0 = float(G_anti(0.0))
    beta, root = model.beta, np.sqrt(2 * model.F)

    def locus(t, x, y):
        return np.full(np.shape(x), abs(f(t)) < 1e-12)

    def evaluator(t, x, y):
        fv, f1, gv = f(t), f.derivative(t, 1), g(t)
        pt = fv * y - (G_anti(t) - G0)
        plus = a1 * np.cos(k1 * pt) / fv**2 - beta * y**3 / 3 - 2 * (f1 * y - gv) / fv * x
        minus = (-a2 * np.cos(k2 * pt) / (fv**2 * k2**2 + 2 * model.F)
                 + theta1(t) * np.exp(root * y) + theta2(t) * np.exp(-root * y))
        return plus, minus

    return SolutionExpr.from_pm(
        "a13_decoupled", evaluator, params=params,
        provenance="A1_3 decoupled system (b = 0), general solution",
        singular_locus=locus, locus_description="f(t) = 0",
    )


def decoupled_profiles(params, model):
    """(v+, v-) of the A1_3 reduction as functions of (p, q) = (y, t), for reduced residual checks."""
    solution = a13_decoupled(params, model)

    def profiles(p, q):
        return solution.evaluate_pm(q, np.zeros_like(p), p)

    return profiles
