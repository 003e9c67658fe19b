# twolayer/solver/integrators.py
"""
Explicit time steppers over a tuple of arrays.

Both hold the right-hand side as ``rhs_func(t, y, *args)`` returning a tuple shaped like y.
"""
import numpy as np


class RK4:

    def __init__(self):
        self.rhs_func = None
        self.rhs_func_args = ()

    def set_rhs_func(self, rhs_func, *rhs_func_args):
        self.rhs_func = rhs_func
        self.rhs_func_args = rhs_func_args

    def _rhs(self, t, y):
        return self.rhs_func(t, y, *self.rhs_func_args)

    def step(self, t, y, dt):
        ki = [dt / 6, dt / 3, dt / 3]
        hi = [dt / 2, dt / 2, dt]

        y0 = tuple(np.array(part) for part in y)
        acc = [np.zeros_like(part) for part in y0]
        stage = y0
        offset = 0.0
        for h, k in zip(hi, ki):
            rhs = self._rhs(t + offset, stage)
            acc = [a + k * r for a, r in zip(acc, rhs)]
            stage = tuple(base + h * r for base, r in zip(y0, rhs))
            offset = h

        rhs = self._rhs(t + dt, stage)
        return tuple(base + a + (dt / 6) * r for base, a, r in zip(y0, acc, rhs))

    def reset(self):
        pass


class LeapfrogRA:
    """
    Leapfrog with a Robert-Asselin filter of coefficient ``nu``. The first step after
    ``reset`` is an RK4 step; afterwards y_{n+1} = y_{n-1} + 2 dt f(y_n) and the middle level
    is filtered, y_n <- y_n + nu (y_{n+1} - 2 y_n + y_{n-1}).

    The filtered previous level is kept between calls, so one instance carries one trajectory.
    A call at any time other than the end of the last step starts over with RK4.
    """

    def __init__(self, nu: float = 0.05):
        self.nu = nu
        self.previous = None
        self.t_next = None
        self.starter = RK4()
        self.rhs_func = None
        self.rhs_func_args = ()

    def set_rhs_func(self, rhs_func, *rhs_func_args):
        self.rhs_func = rhs_func
        self.rhs_func_args = rhs_func_args
        self.starter.set_rhs_func(rhs_func, *rhs_func_args)

    def reset(self):
        self.previous = None
        self.t_next = None

    def step(self, t, y, dt):
        current = tuple(np.array(part) for part in y)
        continuing = self.previous is not None and np.isclose(t, self.t_next, rtol=0, atol=1e-9 * abs(dt))
        self.t_next = t + dt
        if not continuing:
            self.previous = current
            return self.starter.step(t, current, dt)

        rhs = self.rhs_func(t, current, *self.rhs_func_args)
        after = tuple(prev + 2 * dt * r for prev, r in zip(self.previous, rhs))
        self.previous = tuple(
            c + self.nu * (a - 2 * c + p) for c, a, p in zip(current, after, self.previous)
        )
        return after
