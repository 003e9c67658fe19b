# twolayer/bvp/preservation.py
"""
Which point symmetries map the boundary value problem to itself.

Channels (infinite or periodic in x) keep the walls y = 0, Y for eps2 = 1 and Y0 = 0,
and keep the wall circulation only when f'' = 0 (f' y enters both layers). The rectangle also
fixes its sidewalls, so f = 0: what survives is time shifts, the gauges g and Psi0, and the
reflections that map the domain onto itself.

The predicate is sufficient, not necessary: it allows no y-reflection, while the mirror
eps2 = -1, Y0 = Y swaps the two walls and the empirical check accepts it.
"""
import math

from ..catalog import build_solution
from ..fields import GridSpec, Topology
from ..model import ModelParams, sample_state
from ..transforms import PointTransform, apply_to_solution
from ..transforms.functions import second_derivative_vanishes
from ..algebra import ExpPoly
from ..utils.logging import logger
from .conditions import bc_residual
from .models import BoundaryKind, BoundarySetting, PreservationReport

EMPIRICAL_TOLERANCE = 1e-6
PROBE_TIMES = (0.1, 0.4, 0.7)
PROBE_DT = 1e-3
PROBE_NODES = (32, 17)
PROBE_WINDOW = 2 * math.pi


def _vanishes(fn) -> bool | None:
    if isinstance(fn, ExpPoly):
        return fn.is_zero()
    return None


def predicate_check(tr: PointTransform, setting: BoundarySetting) -> PreservationReport | None:
    """
    Decide from the transformation parameters; None when f is not an exponential polynomial.
    The wall mirror eps2 = -1, Y0 = Y is reported as violated here; use the empirical check for it.
    """
    witness = {}
    if tr.eps2 != 1:
        witness["eps2"] = tr.eps2
    if tr.Y0 != 0:
        witness["Y0"] = tr.Y0
    straight = second_derivative_vanishes(tr.f)
    if straight is None:
        return None
    if not straight:
        witness["f''"] = str(tr.f.diff().diff())
    if setting.kind == BoundaryKind.LIMITED_RECTANGLE and not _vanishes(tr.f):
        witness["f"] = str(tr.f)
    return PreservationReport(preserved=not witness, mode="predicate", witness=witness)


def probe_grid(setting: BoundarySetting) -> GridSpec:
    nx, ny = PROBE_NODES
    if setting.kind == BoundaryKind.LIMITED_RECTANGLE:
        return GridSpec(nx=nx + 1, ny=ny, Lx=2 * setting.L, Ly=setting.Y,
                        topology=Topology.RECTANGLE, x0=-setting.L)
    length = 2 * setting.L if math.isfinite(setting.L) else PROBE_WINDOW
    x0 = -setting.L if math.isfinite(setting.L) else 0.0
    return GridSpec(nx=nx, ny=ny, Lx=length, Ly=setting.Y, topology=Topology.CHANNEL, x0=x0)


def probe_solution(setting: BoundarySetting, grid: GridSpec, model: ModelParams):
    """A solution satisfying the boundary conditions of ``setting`` on ``grid``."""
    if setting.kind == BoundaryKind.LIMITED_RECTANGLE:
        # only the stationary rest state fits all four walls
        return build_solution("rossby_classic", {"c1": 0, "c2": 0}, model)
    k = 2 * (2 * math.pi / grid.Lx)
    return build_solution("rossby_channel", {"k": k, "n": 1, "south": 0, "width": setting.Y,
                                             "c1": 1, "c2": 0}, model)


def _domain_witness(tr: PointTransform, setting: BoundarySetting, times) -> dict:
    """Where the image of the domain differs from the domain."""
    witness = {}
    walls = sorted((tr.eps2 * 0 + tr.Y0, tr.eps2 * setting.Y + tr.Y0))
    if not (math.isclose(walls[0], 0.0, abs_tol=1e-12) and math.isclose(walls[1], setting.Y, rel_tol=1e-12)):
        witness["walls_y"] = f"[{walls[0]:.6g}, {walls[1]:.6g}]"
    if setting.kind == BoundaryKind.LIMITED_RECTANGLE:
        shifts = [abs(float(tr.f(t))) for t in times]
        if max(shifts) > EMPIRICAL_TOLERANCE:
            witness["walls_x_shift"] = f"{max(shifts):.6g}"
    return witness


def empirical_check(tr: PointTransform, setting: BoundarySetting, model: ModelParams | None = None,
                    tolerance: float = EMPIRICAL_TOLERANCE, times=PROBE_TIMES) -> PreservationReport:
    """Transform a boundary-compatible probe and measure its boundary residuals on the domain."""
    model = model or ModelParams()
    grid = probe_grid(setting)
    witness = _domain_witness(tr, setting, times)
    image = apply_to_solution(tr, probe_solution(setting, grid, model))
    worst_name, worst = None, 0.0
    for t in times:
        before = sample_state(image, grid, t)
        after = sample_state(image, grid, t + PROBE_DT)
        report = bc_residual(after, setting, before, PROBE_DT)
        for name, value in report.conditions.items():
            if value > worst:
                worst_name, worst = name, value
    if worst > tolerance:
        witness[worst_name] = f"{worst:.6g}"
    logger.debug(f"Empirical boundary check of {tr.describe()}: worst residual {worst:.3g}")
    return PreservationReport(preserved=not witness, mode="empirical", witness=witness)


def transform_preserves_bvp(tr: PointTransform, setting: BoundarySetting, mode: str = "auto",
                            model: ModelParams | None = None) -> PreservationReport:
    """
    ``mode`` is "predicate" (needs exponential-polynomial f), "empirical" or "auto" (predicate
    when decidable, else empirical).
    """
    if mode not in ("auto", "predicate", "empirical"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode != "empirical":
        report = predicate_check(tr, setting)
        if report is not None:
            return report
        logger.info("f is not an exponential polynomial; deciding empirically")
    return empirical_check(tr, setting, model)
