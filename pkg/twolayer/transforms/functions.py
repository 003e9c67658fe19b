# twolayer/transforms/functions.py
"""
Parameter functions of t for point transformations.

ExpPoly values are used as they are. Anything else is wrapped in a ``TimeFunction`` that
knows its value and first derivative; tabulated data goes through a cubic spline.
"""
from collections.abc import Callable

import numpy as np
from scipy.interpolate import CubicSpline

from ..algebra import ExpPoly
from ..errors import NotDifferentiableError

DIFF_STEP = 1e-5


class TimeFunction:
    """Callable f(t) with f'(t). ``derivative`` falls back to a fourth-order central difference."""

    def __init__(self, value: Callable, derivative: Callable | None = None, label: str = "f"):
        self._value = value
        self._derivative = derivative
        self.label = label

    def __call__(self, t):
        return self._value(t)

    def derivative(self, t, order=1):
        if order != 1:
            raise ValueError("only first derivatives of generic time functions are available")
        if self._derivative is not None:
            return self._derivative(t)
        h = DIFF_STEP * max(1.0, float(np.max(np.abs(t))))
        return (8 * (self._value(t + h) - self._value(t - h))
                - (self._value(t + 2 * h) - self._value(t - 2 * h))) / (12 * h)

    def __repr__(self):
        return f"TimeFunction({self.label})"


class TabulatedFunction(TimeFunction):
    """Cubic spline through samples; requesting t outside the table is an error."""

    def __init__(self, times, values, label: str = "tabulated"):
        times = np.asarray(times, dtype=float)
        self.spline = CubicSpline(times, np.asarray(values, dtype=float))
        self.t_min, self.t_max = float(times[0]), float(times[-1])
        super().__init__(self._checked(self.spline), self._checked(self.spline.derivative()), label)

    def _checked(self, fn):
        def inner(t):
            arr = np.asarray(t, dtype=float)
            if np.any(arr < self.t_min) or np.any(arr > self.t_max):
                raise NotDifferentiableError(
                    f"{self.label} is tabulated on [{self.t_min}, {self.t_max}], requested t={t}"
                )
            out = fn(arr)
            return out if np.ndim(out) else float(out)
        return inner


def as_time_function(obj):
    if obj is None:
        return ExpPoly.zero()
    if isinstance(obj, (ExpPoly, TimeFunction)):
        return obj
    if callable(obj):
        return TimeFunction(obj, label=getattr(obj, "__name__", "f"))
    return ExpPoly.constant(obj)


def derivative_function(fn):
    if isinstance(fn, ExpPoly):
        return fn.diff()
    return TimeFunction(fn.derivative, label=f"{fn!r}'")


def second_derivative_vanishes(fn) -> bool | None:
    """Exact answer for ExpPoly, None when undecidable."""
    if isinstance(fn, ExpPoly):
        return fn.diff().diff().is_zero()
    return None


def compose_affine(fn, scale: int, offset: float):
    """t -> fn(scale*t + offset)."""
    if isinstance(fn, ExpPoly):
        return fn.compose_affine(scale, offset)
    return TimeFunction(lambda t: fn(scale * t + offset),
                        lambda t: scale * fn.derivative(scale * t + offset),
                        label=f"{fn!r}({scale}t+{offset})")


def linear_combination(*pairs):
    """sum c_i * fn_i for (c_i, fn_i) pairs; stays an ExpPoly when every fn_i is one."""
    if all(isinstance(fn, ExpPoly) for _, fn in pairs):
        total = ExpPoly.zero()
        for c, fn in pairs:
            total = total + fn * c
        return total
    return TimeFunction(lambda t: sum(c * fn(t) for c, fn in pairs),
                        lambda t: sum(c * fn.derivative(t) for c, fn in pairs),
                        label="combination")
