# twolayer/catalog/models.py
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field

import numpy as np

from ..errors import BranchError, SingularLocusError
from ..utils.logging import logger


def layered_from_pm(plus, minus):
    return 0.5 * (plus + minus), 0.5 * (plus - minus)


def pm_from_layered(psi1, psi2):
    return psi1 + psi2, psi1 - psi2


@dataclass(frozen=True)
class SolutionExpr:
    """
    A named analytic solution. ``evaluator(t, x, y)`` returns the layer stream functions
    (psi1, psi2) for scalar t and broadcastable x, y.
    """
    name: str
    evaluator: Callable
    params: Mapping = field(default_factory=dict)
    provenance: str = ""
    singular_locus: Callable | None = None
    locus_description: str = ""

    def evaluate(self, t, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        if self.singular_locus is not None:
            hit = np.asarray(self.singular_locus(t, x, y))
            if np.any(hit):
                logger.warning(f"⚠️ {self.name} evaluated on its singular locus at t={t}")
                raise SingularLocusError(
                    f"{self.name} is undefined where {self.locus_description or 'its singular locus holds'} "
                    f"({int(np.count_nonzero(hit))} points at t={t})"
                )
        psi1, psi2 = self.evaluator(t, x, y)
        return np.broadcast_to(psi1, x.shape).astype(float), np.broadcast_to(psi2, x.shape).astype(float)

    def evaluate_pm(self, t, x, y):
        return pm_from_layered(*self.evaluate(t, x, y))

    @classmethod
    def from_pm(cls, name: str, evaluator_pm: Callable, **kwargs) -> "SolutionExpr":
        """Build from an evaluator returning (psi+, psi-)."""
        def layered(t, x, y):
            return layered_from_pm(*evaluator_pm(t, x, y))
        return cls(name=name, evaluator=layered, **kwargs)


@dataclass(frozen=True)
class ParamSpec:
    default: float | str
    description: str = ""
    kind: str = "real"


@dataclass(frozen=True)
class CatalogEntry:
    """A catalog solution family: parameter schema plus a builder ``(params, model) -> SolutionExpr``."""
    name: str
    provenance: str
    builder: Callable
    schema: Mapping[str, ParamSpec] = field(default_factory=dict)
    channel_compatible: bool = False
    numeric: bool = False

    def defaults(self) -> dict:
        return {k: spec.default for k, spec in self.schema.items()}


@dataclass(frozen=True)
class ReducedSystem:
    """
    Equations after a reduction. ``residual(sampled, params)`` receives the candidate unknowns
    sampled on a 1-D or 2-D grid (a ``Sampled``) and returns one residual array per equation;
    ``singular(sampled, params)`` marks sample points where a coefficient degenerates.
    """
    name: str
    independent_vars: tuple[str, ...]
    unknowns: tuple[str, ...]
    residual: Callable
    provenance: str = ""
    params: tuple[str, ...] = ()
    singular: Callable | None = None
    singular_description: str = ""


GUARD = 1e-8


def guard_nonzero(value: float, scale: float, predicate: str):
    """Refuse parameters that put ``value`` within the relative guard band around zero."""
    if abs(value) <= GUARD * max(abs(scale), 1e-300):
        logger.warning(f"⚠️ rejected parameters: {predicate} fails (value {value:.3g})")
        raise BranchError(f"parameters violate {predicate} (value {value:.17g})")


def require(condition: bool, predicate: str):
    if not condition:
        logger.warning(f"⚠️ rejected parameters: {predicate} fails")
        raise BranchError(f"parameters violate {predicate}")
