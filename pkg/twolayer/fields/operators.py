# twolayer/fields/operators.py
"""
Differential operators and elliptic inversion on ``Field2D``.

Two schemes share one interface: ``fd2`` (second-order central differences, one-sided
second-order stencils on walls) and ``spectral`` (FFT derivatives, doubly periodic grids only).
"""
import numpy as np
from scipy import fft
from scipy.integrate import trapezoid

from ..errors import GridMismatchError, SolvabilityError
from ..utils.logging import logger
from .models import Field2D, GridSpec, Scheme, Topology

# relative size of the mean that makes a periodic Poisson problem unsolvable
MEAN_TOLERANCE = 1e-10


def _check_scheme(grid: GridSpec, scheme: Scheme):
    if Scheme(scheme) == Scheme.SPECTRAL and grid.topology != Topology.DOUBLY_PERIODIC:
        raise GridMismatchError(f"spectral scheme requires a doubly periodic grid, got {grid.topology.value}")


def _fd_periodic(v, axis, order, h):
    fwd = np.roll(v, -1, axis=axis)
    bwd = np.roll(v, 1, axis=axis)
    if order == 1:
        return (fwd - bwd) / (2 * h)
    return (fwd - 2 * v + bwd) / h**2


def _fd_bounded(v, axis, order, h):
    v = np.moveaxis(v, axis, 0)
    out = np.empty_like(v)
    if order == 1:
        out[1:-1] = (v[2:] - v[:-2]) / (2 * h)
        out[0] = (-3 * v[0] + 4 * v[1] - v[2]) / (2 * h)
        out[-1] = (3 * v[-1] - 4 * v[-2] + v[-3]) / (2 * h)
    else:
        out[1:-1] = (v[2:] - 2 * v[1:-1] + v[:-2]) / h**2
        out[0] = (2 * v[0] - 5 * v[1] + 4 * v[2] - v[3]) / h**2
        out[-1] = (2 * v[-1] - 5 * v[-2] + 4 * v[-3] - v[-4]) / h**2
    return np.moveaxis(out, 0, axis)


def _wavenumbers(n, h):
    return 2 * np.pi * fft.fftfreq(n, d=h)


def _spectral(v, axis, order, h):
    n = v.shape[axis]
    k = _wavenumbers(n, h)
    if order == 1 and n % 2 == 0:
        # the Nyquist mode has no odd derivative on a real grid
        k[n // 2] = 0.0
    shape = [1, 1]
    shape[axis] = n
    factor = ((1j * k) ** order).reshape(shape)
    return np.real(fft.ifft(factor * fft.fft(v, axis=axis), axis=axis))


def diff_array(values: np.ndarray, grid: GridSpec, axis: int, order: int = 1, scheme: Scheme = Scheme.FD2):
    """Derivative of a raw array along ``axis`` (0 = y, 1 = x)."""
    h = grid.hy if axis == 0 else grid.hx
    periodic = grid.periodic_y if axis == 0 else grid.periodic_x
    if Scheme(scheme) == Scheme.SPECTRAL:
        return _spectral(values, axis, order, h)
    if periodic:
        return _fd_periodic(values, axis, order, h)
    return _fd_bounded(values, axis, order, h)


def ddx(f: Field2D, scheme: Scheme = Scheme.FD2) -> Field2D:
    _check_scheme(f.grid, scheme)
    return Field2D(grid=f.grid, values=diff_array(f.values, f.grid, 1, 1, scheme))


def ddy(f: Field2D, scheme: Scheme = Scheme.FD2) -> Field2D:
    _check_scheme(f.grid, scheme)
    return Field2D(grid=f.grid, values=diff_array(f.values, f.grid, 0, 1, scheme))


def gradient(f: Field2D, scheme: Scheme = Scheme.FD2) -> tuple[Field2D, Field2D]:
    return ddx(f, scheme), ddy(f, scheme)


def laplacian(f: Field2D, scheme: Scheme = Scheme.FD2) -> Field2D:
    _check_scheme(f.grid, scheme)
    v = f.values
    lap = diff_array(v, f.grid, 1, 2, scheme) + diff_array(v, f.grid, 0, 2, scheme)
    return Field2D(grid=f.grid, values=lap)


def poisson_bracket(a: Field2D, b: Field2D, scheme: Scheme = Scheme.FD2) -> Field2D:
    """{a, b} = a_x b_y - a_y b_x."""
    if a.grid != b.grid:
        raise GridMismatchError(f"poisson_bracket needs one grid, got {a.grid.label()} and {b.grid.label()}")
    _check_scheme(a.grid, scheme)
    ax = diff_array(a.values, a.grid, 1, 1, scheme)
    ay = diff_array(a.values, a.grid, 0, 1, scheme)
    bx = diff_array(b.values, b.grid, 1, 1, scheme)
    by = diff_array(b.values, b.grid, 0, 1, scheme)
    return Field2D(grid=a.grid, values=ax * by - ay * bx)


def integrate(f: Field2D) -> float:
    """Domain integral: rectangle rule on periodic axes, trapezoid on bounded ones."""
    g = f.grid
    v = f.values
    v = v.sum(axis=1) * g.hx if g.periodic_x else trapezoid(v, dx=g.hx, axis=1)
    return float(v.sum() * g.hy if g.periodic_y else trapezoid(v, dx=g.hy))


def _symbol(n, h, scheme):
    """Eigenvalues of d²/dx² on a periodic axis."""
    if Scheme(scheme) == Scheme.SPECTRAL:
        return -_wavenumbers(n, h) ** 2
    theta = 2 * np.pi * np.arange(n) / n
    return -(2 - 2 * np.cos(theta)) / h**2


def _dst_symbol(n_interior, h):
    m = np.arange(1, n_interior + 1)
    return -(2 - 2 * np.cos(np.pi * m / (n_interior + 1))) / h**2


def invert_helmholtz(rhs: Field2D, mu: float, scheme: Scheme = Scheme.FD2,
                     boundary: Field2D | None = None) -> Field2D:
    """
    Solve (laplacian - mu) psi = rhs.

    Periodic axes are diagonalised by FFT, bounded axes by DST-I on interior nodes. On
    bounded axes the wall values of ``boundary`` are Dirichlet data (zero if omitted) and
    the interior values of ``boundary`` are ignored. The periodic mu=0 problem returns the
    zero-mean solution and requires a zero-mean right-hand side.
    """
    if mu < 0:
        raise ValueError(f"mu must be nonnegative, got {mu}")
    g = rhs.grid
    _check_scheme(g, scheme)
    if boundary is not None and boundary.grid != g:
        raise GridMismatchError("boundary data lives on a different grid")

    if g.topology == Topology.DOUBLY_PERIODIC:
        eig = _symbol(g.ny, g.hy, scheme)[:, None] + _symbol(g.nx, g.hx, scheme)[None, :] - mu
        hat = fft.fft2(rhs.values)
        if mu == 0:
            scale = max(1.0, rhs.max_abs())
            if abs(rhs.mean()) > MEAN_TOLERANCE * scale:
                logger.warning("⚠️ periodic Poisson right-hand side has mean %.3e", rhs.mean())
                raise SolvabilityError(
                    f"mu=0 on a doubly periodic grid needs a zero-mean right-hand side, mean is {rhs.mean():.3e}"
                )
            eig[0, 0] = 1.0
            hat[0, 0] = 0.0
        return Field2D(grid=g, values=np.real(fft.ifft2(hat / eig)))

    # walls: carry the Dirichlet ring and move its stencil contribution to the right-hand side
    ring = np.zeros(g.shape)
    if boundary is not None:
        ring[0, :] = boundary.values[0, :]
        ring[-1, :] = boundary.values[-1, :]
        if not g.periodic_x:
            ring[:, 0] = boundary.values[:, 0]
            ring[:, -1] = boundary.values[:, -1]
    ring_field = Field2D(grid=g, values=ring)
    r = (rhs - (laplacian(ring_field) - mu * ring_field)).values

    ys = slice(1, -1)
    xs = slice(None) if g.periodic_x else slice(1, -1)
    interior = r[ys, xs]

    hat = fft.dst(interior, type=1, axis=0)
    eig_y = _dst_symbol(interior.shape[0], g.hy)
    if g.periodic_x:
        hat = fft.fft(hat, axis=1)
        eig_x = _symbol(g.nx, g.hx, Scheme.FD2)
    else:
        hat = fft.dst(hat, type=1, axis=1)
        eig_x = _dst_symbol(interior.shape[1], g.hx)
    hat = hat / (eig_y[:, None] + eig_x[None, :] - mu)
    if g.periodic_x:
        hat = np.real(fft.ifft(hat, axis=1))
    else:
        hat = fft.idst(hat, type=1, axis=1)
    solved = fft.idst(hat, type=1, axis=0)

    out = ring.copy()
    out[ys, xs] = solved
    return Field2D(grid=g, values=out)
