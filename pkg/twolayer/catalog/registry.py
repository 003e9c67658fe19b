# twolayer/catalog/registry.py
"""Named catalog entries, parameter resolution and evaluation."""
import re

from ..algebra import ExpPoly, parse_exppoly
from ..errors import UsageError
from ..model import ModelParams
from ..utils.logging import logger
from . import chains, one_dimensional as one, two_dimensional as two
from .models import CatalogEntry, ParamSpec, SolutionExpr

_WAVE_MU = ParamSpec(default=-0.25, description="mu < 0 selects the wave profile")


def _entry(name, builder, schema, provenance, **flags):
    return CatalogEntry(name=name, provenance=provenance, builder=builder, schema=schema, **flags)


CATALOG = {
    entry.name: entry for entry in [
        _entry("rossby_classic", one.rossby_classic, one.ROSSBY_CLASSIC_SCHEMA,
               "A1_2 with constant f: the classic two-layer Rossby waves"),
        _entry("rossby_channel", one.rossby_channel, one.ROSSBY_CHANNEL_SCHEMA,
               "A1_2 waves with a standing meridional mode fitting the channel walls",
               channel_compatible=True),
        _entry("rossby_generalized", one.rossby_generalized, one.ROSSBY_GENERALIZED_SCHEMA,
               "A1_2 decoupled system (b = 0), generalized Rossby wave"),
        _entry("a12_coupled_wave", one.a12_coupled_wave, one.COUPLED_WAVE_SCHEMA,
               "A1_2 coupled system, constant f: wave reduction"),
        _entry("a12_constant_coefficient", one.a12_constant_coefficient, one.CONSTANT_COEFFICIENT_SCHEMA,
               "A1_2 decoupled system, constant coefficients"),
        _entry("a12_whittaker", one.a12_whittaker, one.WHITTAKER_SCHEMA,
               "A1_2 scaling reduction, Whittaker-type ODE (lam = -2 antiderivative case)",
               numeric=True),
        _entry("a13_decoupled", one.a13_decoupled, one.DECOUPLED_SCHEMA,
               "A1_3 decoupled system (b = 0), general solution"),
        _entry("a21_constant_wind", two.a21_constant_wind, two.CONSTANT_WIND_SCHEMA,
               "A2_1, rho = mu = 0: constant wind field in both layers"),
        _entry("a21_exponential", two.a21_exponential, two.SINGULAR_CASE_SCHEMA,
               "A2_1, rho = mu > 0: a simple exponential solution"),
        _entry("a21_upper_wave", two.a21_upper_wave, {**two.SINGULAR_CASE_SCHEMA, "mu": _WAVE_MU},
               "A2_1, rho = mu < 0: a stationary Rossby wave in the upper layer"),
        _entry("a21_lower_exponential", two.a21_lower_exponential, two.SINGULAR_CASE_SCHEMA,
               "A2_1, rho = -mu with mu > 0: layers interchanged"),
        _entry("a21_lower_wave", two.a21_lower_wave, {**two.SINGULAR_CASE_SCHEMA, "mu": _WAVE_MU},
               "A2_1, rho = -mu with mu < 0: layers interchanged"),
        _entry("a21_general", two.a21_general, two.GENERAL_A21_SCHEMA,
               "A2_1, nonsingular case: integrated linear system", numeric=True),
        _entry("a22_exponential_integral", two.a22_exponential_integral, two.EXPONENTIAL_INTEGRAL_SCHEMA,
               "A2_2: logarithmic and exponential-integral solution"),
        _entry("a23_trigonometric", two.a23_trigonometric, two.TRIGONOMETRIC_SCHEMA,
               "A2_3: constant-coefficient second-order ODE, gamma2/gamma1 > 0"),
        _entry("a23_exponential", two.a23_exponential, two.EXPONENTIAL_A23_SCHEMA,
               "A2_3: constant-coefficient second-order ODE, gamma2/gamma1 < 0", numeric=True),
        _entry("a24_polynomial", two.a24_polynomial, two.POLYNOMIAL_SCHEMA,
               "A2_4: polynomial solution with time-dependent coefficients"),
        _entry("jordan_chain", chains.jordan_chain, chains.JORDAN_CHAIN_SCHEMA,
               "extended Lie reduction of the linear A1_2 equation (Jordan-block chain)"),
    ]
}


def list_entries() -> list[CatalogEntry]:
    return [CATALOG[name] for name in sorted(CATALOG)]


def get_entry(name: str) -> CatalogEntry:
    if name not in CATALOG:
        raise UsageError(f"unknown solution {name!r}; see `catalog list`")
    return CATALOG[name]


def describe_schema(entry: CatalogEntry) -> str:
    return "; ".join(f"{key}={spec.default} ({spec.description})" for key, spec in entry.schema.items())


def coerce_param(name: str, spec: ParamSpec, value):
    try:
        if spec.kind == "int":
            number = float(value)
            if number != int(number):
                raise ValueError(f"{value} is not an integer")
            return int(number)
        if spec.kind == "exppoly":
            return value if isinstance(value, ExpPoly) else parse_exppoly(str(value))
        return float(value)
    except ValueError as exc:
        raise UsageError(f"parameter {name}: {exc}") from exc


def resolve_params(entry: CatalogEntry, overrides: dict | None = None) -> dict:
    """Schema defaults updated by ``overrides``, every value coerced to its declared kind."""
    overrides = dict(overrides or {})
    unknown = sorted(set(overrides) - set(entry.schema))
    if unknown:
        raise UsageError(f"{entry.name} has no parameter(s) {unknown}; known: {sorted(entry.schema)}")
    merged = {**entry.defaults(), **overrides}
    return {key: coerce_param(key, entry.schema[key], value) for key, value in merged.items()}


_ASSIGNMENT = re.compile(r",(?=\s*[A-Za-z_]\w*\s*=)")


def parse_params(text: str | None) -> dict:
    """``"k=3,l=2"`` to ``{"k": "3", "l": "2"}``; values stay text until resolved against a schema."""
    if not text:
        return {}
    params = {}
    for item in _ASSIGNMENT.split(text):
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"malformed parameter {item!r}; expected name=value")
        params[key.strip()] = value.strip()
    return params


def build_solution(name: str, params: dict | None = None, model: ModelParams | None = None) -> SolutionExpr:
    entry = get_entry(name)
    model = model or ModelParams()
    resolved = resolve_params(entry, params)
    logger.debug(f"Building {name} with {resolved}")
    return entry.builder(resolved, model)


def eval_solution(name: str, params: dict | None, t: float, x, y, model: ModelParams | None = None):
    """Layer stream functions (psi1, psi2) of a catalog entry at time t on broadcastable x, y."""
    return build_solution(name, params, model).evaluate(t, x, y)
