# twolayer/catalog/__init__.py
from .models import CatalogEntry, ParamSpec, ReducedSystem, SolutionExpr, layered_from_pm, pm_from_layered
from .chains import ChainMember, extended_reduction_chain
from .polynomials import polynomial_residual, polynomial_solutions
from .reduced import REDUCED_SYSTEMS, ReducedResidual, Sampled, reduced_residual
from .registry import (
    CATALOG,
    build_solution,
    eval_solution,
    get_entry,
    list_entries,
    parse_params,
    resolve_params,
)
