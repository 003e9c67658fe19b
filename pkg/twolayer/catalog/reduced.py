# twolayer/catalog/reduced.py
"""
Reduced systems and their residuals.

A candidate is a dict of unknowns sampled on a uniform tensor grid of the independent variables.
Derivatives are second-order central differences (``numpy.gradient``, second-order edges), and
residuals are reported on the central part of every axis: ``REDUCED_MARGIN`` of the axis length is
dropped at each end, and never fewer than ``REDUCED_HALO`` nodes, so refining the samples keeps the
checked region fixed.
"""
from dataclasses import dataclass

import numpy as np

from ..algebra import ExpPoly, parse_exppoly
from ..errors import GridMismatchError, SingularLocusError, UsageError
from ..utils.logging import logger
from .models import GUARD, ReducedSystem

# each nested derivative spoils one more node at the edges; the systems nest up to four
REDUCED_HALO = 4
REDUCED_MARGIN = 0.1


class Sampled:
    """Unknowns on a grid of the independent variables, with derivative and coordinate access."""

    def __init__(self, coords: dict, fields: dict):
        self.names = tuple(coords)
        self.axes = {name: np.asarray(values, dtype=float) for name, values in coords.items()}
        shape = tuple(axis.size for axis in self.axes.values())
        for name, axis in self.axes.items():
            if axis.ndim != 1 or axis.size < 2 * REDUCED_HALO + 1:
                raise GridMismatchError(f"coordinate {name} needs at least {2 * REDUCED_HALO + 1} samples")
            steps = np.diff(axis)
            if not np.allclose(steps, steps[0], rtol=1e-9, atol=0):
                raise GridMismatchError(f"coordinate {name} is not uniformly spaced")
        self.fields = {}
        for name, values in fields.items():
            values = np.asarray(values, dtype=float)
            if values.shape != shape:
                raise GridMismatchError(f"unknown {name} has shape {values.shape}, expected {shape}")
            self.fields[name] = values
        self.shape = shape
        self._mesh = dict(zip(self.names, np.meshgrid(*self.axes.values(), indexing="ij")))

    def __getitem__(self, name):
        return self.fields[name]

    def coord(self, name):
        return self._mesh[name]

    def d(self, values, *variables):
        """Partial derivative of an unknown (by name) or of an array along the named variables."""
        out = self.fields[values] if isinstance(values, str) else np.broadcast_to(values, self.shape)
        for var in variables:
            axis = self.names.index(var)
            out = np.gradient(out, self.axes[var][1] - self.axes[var][0], axis=axis, edge_order=2)
        return out

    def margin(self, name) -> int:
        """Nodes dropped at each end of the named axis."""
        intervals = self.axes[name].size - 1
        return max(REDUCED_HALO, int(round(REDUCED_MARGIN * intervals)))

    def interior(self, values):
        values = np.broadcast_to(values, self.shape)
        index = tuple(slice(self.margin(name), -self.margin(name)) for name in self.names)
        return values[index]


@dataclass(frozen=True)
class ReducedResidual:
    system: str
    max_residuals: tuple[float, ...]
    rms_residuals: tuple[float, ...]

    @property
    def max_residual(self) -> float:
        return max(self.max_residuals)

    def format(self) -> str:
        parts = [f"eq{i + 1}_max={m:.17g} eq{i + 1}_rms={r:.17g}"
                 for i, (m, r) in enumerate(zip(self.max_residuals, self.rms_residuals))]
        return f"system={self.system} " + " ".join(parts)


def _function(params, name, default="0"):
    """A coefficient function of one variable: ExpPoly, textual ExpPoly, number or callable."""
    value = params.get(name, default)
    if isinstance(value, str):
        return parse_exppoly(value)
    if isinstance(value, ExpPoly) or callable(value):
        return value
    return ExpPoly.constant(value)


def _derivative(fn, values, order=1):
    if isinstance(fn, ExpPoly):
        return fn.derivative(values, order)
    raise UsageError(f"derivatives of {fn!r} are needed; pass it as an exponential polynomial")


def _model(params):
    return float(params.get("beta", 1.0)), float(params.get("F", 1.0))


# A1_1: psi1 = v1 + b t, psi2 = v2 - b t, p = x, q = y - a t

def _a11(s, params):
    beta, F = _model(params)
    a, b = params["a"], params.get("b", 0.0)
    v1_p, v1_q, v2_p, v2_q = s.d("v1", "p"), s.d("v1", "q"), s.d("v2", "p"), s.d("v2", "q")
    w1 = s.d("v1", "p", "p") + s.d("v1", "q", "q")
    w2 = s.d("v2", "p", "p") + s.d("v2", "q", "q")
    w1_p, w1_q, w2_p, w2_q = s.d(w1, "p"), s.d(w1, "q"), s.d(w2, "p"), s.d(w2, "q")
    r1 = (a * w1_q - F * a * (v1_q - v2_q) + 2 * F * b
          - v1_p * (w1_q + beta + F * v2_q) + v1_q * (w1_p + F * v2_p))
    r2 = (a * w2_q + F * a * (v1_q - v2_q) - 2 * F * b
          - v2_p * (w2_q + beta + F * v1_q) + v2_q * (w2_p + F * v1_p))
    return [r1, r2]


# A1_2 family

def _a12_full(s, params):
    """(H W_pp)_t - 2 f'' + beta W_p - b H V_ppp, (H V_pp)_t - 2F V_t + beta V_p - 2 b F W_p - b H W_ppp."""
    beta, F = _model(params)
    f, b = _function(params, "f"), params.get("b", 0.0)
    tt = s.coord("t")
    H = 1 + f(tt) ** 2
    f2 = _derivative(f, tt, 2)
    r1 = s.d(H * s.d("W", "p", "p"), "t") - 2 * f2 + beta * s.d("W", "p") - b * H * s.d("V", "p", "p", "p")
    r2 = (s.d(H * s.d("V", "p", "p"), "t") - 2 * F * s.d("V", "t") + beta * s.d("V", "p")
          - 2 * b * F * s.d("W", "p") - b * H * s.d("W", "p", "p", "p"))
    return [r1, r2]


def _a12_hat(s, params):
    """(H w_p)_q + beta w - b H v_pp, (H v_pp)_q - 2F v_q + beta v_p - b (H w_ppp + 2F w_p)."""
    beta, F = _model(params)
    f, b = _function(params, "f"), params.get("b", 0.0)
    H = 1 + f(s.coord("q")) ** 2
    r1 = s.d(H * s.d("w", "p"), "q") + beta * s["w"] - b * H * s.d("v", "p", "p")
    r2 = (s.d(H * s.d("v", "p", "p"), "q") - 2 * F * s.d("v", "q") + beta * s.d("v", "p")
          - b * (H * s.d("w", "p", "p", "p") + 2 * F * s.d("w", "p")))
    return [r1, r2]


def _a12_decoupled(s, params):
    return _a12_hat(s, {**params, "b": 0.0})


def _a12_linear(s, params):
    """w_pqbar + beta w, v_ppqbar - 2F (A v)_qbar + beta v_p, A = 1/H as a function of qbar."""
    beta, F = _model(params)
    A = _function(params, "A", "1")(s.coord("qbar"))
    r1 = s.d("w", "p", "qbar") + beta * s["w"]
    r2 = s.d("v", "p", "p", "qbar") - 2 * F * s.d(A * s["v"], "qbar") + beta * s.d("v", "p")
    return [r1, r2]


def _a12_sub(s, params):
    beta, F = _model(params)
    A = _function(params, "A", "1")(s.coord("q"))
    return [s.d("v", "p", "p", "q") - 2 * F * s.d(A * s["v"], "q") + beta * s.d("v", "p")]


def _a12_coupled_const(s, params):
    beta, F = _model(params)
    H, b, kappa, lam = params["H"], params.get("b", 0.0), params["kappa"], params["lam"]
    r1 = H * (kappa * s.d("w", "r", "r") - lam * s.d("w", "r")) - beta * s["w"] + b * H * s.d("v", "r", "r")
    r2 = (H * (kappa * s.d("v", "r", "r", "r") - lam * s.d("v", "r", "r")) - (2 * F * kappa + beta) * s.d("v", "r")
          + 2 * F * lam * s["v"] + b * (H * s.d("w", "r", "r", "r") + 2 * F * s.d("w", "r")))
    return [r1, r2]


def _a12_coupled_quadratic(s, params):
    """H = varkappa q^2, r = p/q."""
    beta, F = _model(params)
    k, b, lam = params["varkappa"], params.get("b", 0.0), params["lam"]
    r = s.coord("r")
    r1 = k * (lam + 1) * s.d("w", "r") - k * r * s.d("w", "r", "r") + beta * s["w"] - b * k * s.d("v", "r", "r")
    r2 = (k * r * s.d("v", "r", "r", "r") - lam * k * s.d("v", "r", "r") + 2 * F * (lam * s["v"] - r * s.d("v", "r"))
          - beta * s.d("v", "r") + b * (k * s.d("w", "r", "r", "r") + 2 * F * s.d("w", "r")))
    return [r1, r2]


def _a12_whittaker_ode(s, params):
    beta, F = _model(params)
    lam, k = params["lam"], params["varkappa"]
    r = s.coord("r")
    return [r * s.d("v", "r", "r", "r") + (lam + 2) * s.d("v", "r", "r")
            + (beta - 2 * k * F * r) * s.d("v", "r") - 2 * k * F * (lam + 2) * s["v"]]


# A1_3 family; p = y, q = t

def _a13_coefficients(s, params):
    f, g = _function(params, "f", "1"), _function(params, "g")
    q, p = s.coord("q"), s.coord("p")
    fv = f(q)
    return (_derivative(f, q) * p - g(q)) / fv, _derivative(f, q) / fv, params.get("b", 0.0) / fv


def _f_vanishes(s, params):
    return np.abs(_function(params, "f", "1")(s.coord("q"))) < GUARD


def _a13_inhomogeneous(s, params):
    beta, F = _model(params)
    drift, _, coupling = _a13_coefficients(s, params)
    vp_ppp, vm_ppp = s.d("vp", "p", "p", "p"), s.d("vm", "p", "p", "p")
    r1 = s.d("vp", "p", "p", "q") - drift * (vp_ppp + 2 * beta) + coupling * vm_ppp
    r2 = (s.d("vm", "p", "p", "q") - 2 * F * s.d("vm", "q") - drift * (vm_ppp - 2 * F * s.d("vm", "p"))
          + coupling * (vp_ppp + 2 * F * s.d("vp", "p") + 2 * beta))
    return [r1, r2]


def _a13_homogeneous(s, params):
    beta, F = _model(params)
    drift, rate, coupling = _a13_coefficients(s, params)
    vm_ppp = s.d("vm", "p", "p", "p")
    r1 = s.d("vp", "q") - drift * s.d("vp", "p") + 2 * rate * s["vp"] + coupling * s.d("vm", "p")
    r2 = (s.d("vm", "p", "p", "q") - 2 * F * s.d("vm", "q") - drift * (vm_ppp - 2 * F * s.d("vm", "p"))
          + coupling * (s.d("vp", "p", "p", "p") + 2 * F * s.d("vp", "p")))
    return [r1, r2]


def _a13_new_vars(s, params):
    """(f^2 v+)_q + b (f^2 v-)_p, (f^2 v-_pp - 2F v-)_q + b (f^2 v+_pp + 2F v+)_p in (p~, q~)."""
    _, F = _model(params)
    f, b = _function(params, "f", "1"), params.get("b", 0.0)
    f2 = f(s.coord("qt")) ** 2
    r1 = s.d(f2 * s["vp"], "qt") + b * f2 * s.d("vm", "pt")
    r2 = (s.d(f2 * s.d("vm", "pt", "pt") - 2 * F * s["vm"], "qt")
          + b * s.d(f2 * s.d("vp", "pt", "pt") + 2 * F * s["vp"], "pt"))
    return [r1, r2]


def _a13_potential(s, params):
    """f^2 (f^2 V_ppq)_q - 2F f^2 V_qq - b^2 (V_pppp + 2F V_pp / f^2), q = qbar, p = p~."""
    _, F = _model(params)
    f, b = _function(params, "f", "1"), params.get("b", 0.0)
    f2 = f(s.coord("qbar")) ** 2
    V_pp = s.d("V", "pt", "pt")
    return [f2 * s.d(f2 * s.d(V_pp, "qbar"), "qbar") - 2 * F * f2 * s.d("V", "qbar", "qbar")
            - b**2 * (s.d(V_pp, "pt", "pt") + 2 * F * V_pp / f2)]


def _a13_lambda(s, params):
    """u_q + b f^2 lam v = 0, ((f^2 lam^2 - 2F) v)_q + b lam (lam^2 + 2F/f^2) u = 0, u = f^2 v+."""
    _, F = _model(params)
    f, b, lam = _function(params, "f", "1"), params.get("b", 0.0), params["lam"]
    f2 = f(s.coord("qt")) ** 2
    r1 = s.d("u", "qt") + b * f2 * lam * s["vm"]
    r2 = s.d((f2 * lam**2 - 2 * F) * s["vm"], "qt") + b * lam * (lam**2 + 2 * F / f2) * s["u"]
    return [r1, r2]


def _a13_lambda_singular(s, params):
    _, F = _model(params)
    f2 = _function(params, "f", "1")(s.coord("qt")) ** 2
    lam2 = params["lam"] ** 2
    return np.abs(lam2 * f2 - 2 * F) <= GUARD * (lam2 * f2 + 2 * F)


def _a13_const(s, params):
    _, F = _model(params)
    k, kappa, lam, b = params["varkappa"], params["kappa"], params["lam"], params.get("b", 0.0)
    r1 = kappa * s.d("vp", "r") - lam * s["vp"] - b * s.d("vm", "r")
    r2 = (k**2 * (kappa * s.d("vm", "r", "r", "r") - lam * s.d("vm", "r", "r"))
          - 2 * F * (kappa * s.d("vm", "r") - lam * s["vm"])
          - b * (k**2 * s.d("vp", "r", "r", "r") + 2 * F * s.d("vp", "r")))
    return [r1, r2]


def _a13_scaling(s, params):
    """f = varkappa q, r = p/q."""
    _, F = _model(params)
    k, lam, b = params["varkappa"], params["lam"], params.get("b", 0.0)
    r = s.coord("r")
    r1 = r * s.d("vp", "r") - (lam + 2) * s["vp"] - b * s.d("vm", "r")
    r2 = (k**2 * (r * s.d("vm", "r", "r", "r") - lam * s.d("vm", "r", "r"))
          - 2 * F * (r * s.d("vm", "r") - lam * s["vm"])
          - b * (k**2 * s.d("vp", "r", "r", "r") + 2 * F * s.d("vp", "r")))
    return [r1, r2]


# two-dimensional subalgebras

def _a21(s, params):
    beta, F = _model(params)
    nu, mu, rho, kappa = params["nu"], params["mu"], params["rho"], params["kappa"]
    N = 1 + nu**2
    d1, d2 = s.d("v1", "p"), s.d("v2", "p")
    r1 = (-(rho + mu) * N * s.d("v1", "p", "p", "p") + F * mu * (d1 - d2) - F * rho * (d1 + d2)
          - 2 * F * kappa + beta * d1)
    r2 = ((rho - mu) * N * s.d("v2", "p", "p", "p") - F * mu * (d1 - d2) + F * rho * (d1 + d2)
          + 2 * F * kappa + beta * d2)
    return [r1, r2]


def _a22(s, params):
    beta, F = _model(params)
    nu, sigma, kappa = params["nu"], params["sigma"], params["kappa"]
    p = s.coord("p")
    z = nu + sigma * p
    r1 = z * s.d("v1", "p", "p", "p") + 2 * sigma * beta * p
    r2 = z * (s.d("v2", "p", "p", "p") - 2 * F * s.d("v2", "p")) + 4 * F * kappa
    return [r1, r2]


def _a22_singular(s, params):
    return params["nu"] + params["sigma"] * s.coord("p") <= 0


def _a23(s, params):
    beta, F = _model(params)
    nu, mu, rho, kappa = params["nu"], params["mu"], params["rho"], params["kappa"]
    v1_ppp, v2_ppp = s.d("v1", "p", "p", "p"), s.d("v2", "p", "p", "p")
    r1 = (nu - mu) * v1_ppp - rho * v2_ppp - 2 * beta * mu
    r2 = ((nu - mu) * v2_ppp - rho * v1_ppp - 2 * F * (nu - mu) * s.d("v2", "p")
          - 2 * F * rho * s.d("v1", "p") + 4 * F * kappa - 2 * beta * rho)
    return [r1, r2]


def _a24(s, params):
    beta, F = _model(params)
    f, g = _function(params, "f"), _function(params, "g")
    kappa, rho = params["kappa"], params["rho"]
    t = s.coord("t")
    r1 = _derivative(f, t, 2) - beta * g(t)
    r2 = s.d("v2", "t") + 2 * kappa * g(t) - beta * rho / F
    return [r1, r2]


def _system(name, variables, unknowns, residual, provenance, params=(), singular=None, description=""):
    return ReducedSystem(name=name, independent_vars=variables, unknowns=unknowns, residual=residual,
                         provenance=provenance, params=params, singular=singular,
                         singular_description=description)


REDUCED_SYSTEMS = {
    s.name: s for s in [
        _system("a11", ("p", "q"), ("v1", "v2"), _a11,
                "A1_1 reduction, w^i = v^i_pp + v^i_qq", ("a", "b")),
        _system("a12_full", ("p", "t"), ("W", "V"), _a12_full,
                "A1_2 reduction in (p, t)", ("f", "b")),
        _system("a12_hat", ("p", "q"), ("w", "v"), _a12_hat,
                "A1_2 system after the hat change of variables", ("f", "b")),
        _system("a12_decoupled", ("p", "q"), ("w", "v"), _a12_decoupled,
                "A1_2 hat system with b = 0", ("f",)),
        _system("a12_linear", ("p", "qbar"), ("w", "v"), _a12_linear,
                "A1_2 decoupled system in qbar: Klein-Gordon equation in light-cone variables", ("A",)),
        _system("a12_sub", ("p", "q"), ("v",), _a12_sub,
                "second equation of the A1_2 decoupled system", ("A",)),
        _system("a12_coupled_const", ("r",), ("w", "v"), _a12_coupled_const,
                "A1_2 with constant H, r = p - kappa q", ("H", "b", "kappa", "lam")),
        _system("a12_coupled_quadratic", ("r",), ("w", "v"), _a12_coupled_quadratic,
                "A1_2 with H = varkappa q^2, r = p/q", ("varkappa", "b", "lam")),
        _system("a12_whittaker_ode", ("r",), ("v",), _a12_whittaker_ode,
                "A1_2 scaling reduction, Whittaker-type ODE", ("lam", "varkappa")),
        _system("a13_inhomogeneous", ("p", "q"), ("vp", "vm"), _a13_inhomogeneous,
                "A1_3 reduction with p = y, q = t", ("f", "g", "b"),
                _f_vanishes, "f(q) = 0"),
        _system("a13_homogeneous", ("p", "q"), ("vp", "vm"), _a13_homogeneous,
                "A1_3 system in the corresponding homogeneous form", ("f", "g", "b"),
                _f_vanishes, "f(q) = 0"),
        _system("a13_new_vars", ("pt", "qt"), ("vp", "vm"), _a13_new_vars,
                "A1_3 system in the variables p~ = f p - int g, q~ = q", ("f", "b")),
        _system("a13_potential", ("pt", "qbar"), ("V",), _a13_potential,
                "A1_3 potential equation, V_p~ = f^2 v+, V_q~ = -b f^2 v-", ("f", "b")),
        _system("a13_lambda", ("qt",), ("u", "vm"), _a13_lambda,
                "A1_3 reduction by d_p~ + lam I, u = f^2 v+", ("f", "b", "lam"),
                _a13_lambda_singular, "lam^2 f^2 - 2F = 0"),
        _system("a13_const", ("r",), ("vp", "vm"), _a13_const,
                "A1_3 with f = varkappa constant, r = p~ - kappa q~", ("varkappa", "kappa", "lam", "b")),
        _system("a13_scaling", ("r",), ("vp", "vm"), _a13_scaling,
                "A1_3 with f = varkappa q, r = p/q", ("varkappa", "lam", "b")),
        _system("a21", ("p",), ("v1", "v2"), _a21,
                "A2_1 reduction, p = x - nu y", ("nu", "mu", "rho", "kappa")),
        _system("a22", ("p",), ("v1", "v2"), _a22,
                "A2_2 reduction, p = y - nu t", ("nu", "sigma", "kappa"),
                _a22_singular, "nu + sigma p <= 0"),
        _system("a23", ("p",), ("v1", "v2"), _a23,
                "A2_3 reduction, p = y - nu t", ("nu", "mu", "rho", "kappa")),
        _system("a24", ("t",), ("v1", "v2"), _a24,
                "A2_4 reduction, p = t", ("f", "g", "kappa", "rho")),
        _system("chain_linear", ("p", "q"), ("v",), _a12_sub,
                "linear equation v_ppq - 2(Av)_q + v_p = 0 behind the extended reduction", ("A",)),
    ]
}


def reduced_residual(system_name: str, candidate: dict, coords: dict, params: dict | None = None) -> ReducedResidual:
    """
    Equationwise max and RMS residual of a sampled candidate.

    ``coords`` maps each independent variable to its 1-D sample points, ``candidate`` maps each
    unknown to its samples on the tensor grid; ``params`` holds the system parameters plus
    optional ``beta`` and ``F`` (default 1).
    """
    if system_name not in REDUCED_SYSTEMS:
        raise UsageError(f"unknown reduced system {system_name!r}; known: {sorted(REDUCED_SYSTEMS)}")
    system = REDUCED_SYSTEMS[system_name]
    params = dict(params or {})
    if tuple(coords) != system.independent_vars:
        raise GridMismatchError(f"{system_name} has independent variables {system.independent_vars}, got {tuple(coords)}")
    missing = set(system.unknowns) - set(candidate)
    if missing:
        raise GridMismatchError(f"{system_name} needs samples of {sorted(missing)}")
    sampled = Sampled(coords, {name: candidate[name] for name in system.unknowns})
    if system.singular is not None and np.any(system.singular(sampled, params)):
        logger.warning(f"⚠️ {system_name}: singular coefficient inside the sample range")
        raise SingularLocusError(f"{system_name}: {system.singular_description} inside the sample range")

    maxima, rms = [], []
    for residual in system.residual(sampled, params):
        inner = sampled.interior(residual)
        maxima.append(float(np.max(np.abs(inner))))
        rms.append(float(np.sqrt(np.mean(inner**2))))
    logger.debug(f"{system_name}: max residuals {maxima}")
    return ReducedResidual(system=system_name, max_residuals=tuple(maxima), rms_residuals=tuple(rms))
