"""Direct integration of the particle-path equations.

The lab-frame system is dx/dt = u(x, z, t), dz/dt = v(x, z, t) with the
linear velocity field.  In the frame moving with the wave,
X = 2 pi (x - c t) and Z = 2 pi delta z, the system becomes autonomous.
These integrations are the reference against which the closed forms are
checked.
"""

from dataclasses import dataclass, field
import math

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ConfigurationError, StepSizeError
from .wavefield import TWO_PI, cosh_over_sinh, sinh_over_sinh

SOURCES = ("ode", "closed", "abel")


@dataclass(frozen=True)
class PhasePoint:
    X: float
    Z: float


def to_moving(params, x, z, t):
    return PhasePoint(TWO_PI * (x - params.c * t), TWO_PI * params.delta * z)


def to_lab(params, X, Z, t):
    """Inverse of the moving-frame map; returns (x, z)."""
    return X / TWO_PI + params.c * t, Z / (TWO_PI * params.delta)


@dataclass
class Trajectory:
    """Time-ordered (t, x, z) samples in the lab frame.

    ``breaks`` lists instants where z diverges (closed forms) or where the
    integration stopped at the Z ceiling; plotting never joins samples across
    them.  ``meta`` carries whatever configuration produced the samples.
    """

    t: np.ndarray
    x: np.ndarray
    z: np.ndarray
    source: str
    params: object
    breaks: tuple = ()
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        self.x = np.asarray(self.x, dtype=float)
        self.z = np.asarray(self.z, dtype=float)
        if not (self.t.shape == self.x.shape == self.z.shape) or self.t.ndim != 1:
            raise ConfigurationError("t, x, z must be 1-D arrays of equal length", module="trajectory_ode")
        if self.source not in SOURCES:
            raise ConfigurationError(f"unknown trajectory source {self.source!r}", module="trajectory_ode")
        if np.any(np.diff(self.t) <= 0.0):
            raise ConfigurationError("trajectory times must be strictly increasing", module="trajectory_ode")
        self.breaks = tuple(float(b) for b in self.breaks)

    def __len__(self):
        return len(self.t)

    @property
    def samples(self):
        return np.column_stack([self.t, self.x, self.z])


def rhs_lab(params, x, z, t):
    kd = TWO_PI * params.delta
    phase = TWO_PI * (x - params.c * t)
    dx = cosh_over_sinh(kd * params.c, kd * z, kd) * np.cos(phase) + params.c0
    dz = sinh_over_sinh(TWO_PI * params.c, kd * z, kd) * np.sin(phase)
    return dx, dz


def rhs_moving(params, X, Z):
    """Moving-frame velocities (dX/dt, dZ/dt)."""
    kd = TWO_PI * params.delta
    coef = TWO_PI * TWO_PI * params.delta * params.c
    dX = cosh_over_sinh(coef, Z, kd) * np.cos(X) + params.b
    dZ = sinh_over_sinh(coef, Z, kd) * np.sin(X)
    return dX, dZ


def integrate(params, x0, z0, t0, t1, n_out=2000, *, frame="lab", rtol=1e-10, atol=1e-12,
              z_ceiling=30.0, method="RK45", times=None):
    """Integrate one particle path and sample it at ``n_out`` uniform times.

    ``frame`` picks the system that is actually integrated ("lab" or
    "moving"); both return lab-frame samples.  If |Z| reaches ``z_ceiling``
    the integration stops there: the returned trajectory then ends at the
    last output instant before the ceiling, and the crossing time is
    recorded in ``breaks`` and ``meta["asymptote_time"]``.  ``times`` replaces the uniform grid with
    explicit sample instants inside [t0, t1].
    """
    if not t1 > t0:
        raise ConfigurationError("need t1 > t0", module="trajectory_ode")
    if n_out < 2:
        raise ConfigurationError("need at least two output samples", module="trajectory_ode")
    if z0 < 0.0:
        raise ConfigurationError("z0 must be non-negative (bed at z = 0)", module="trajectory_ode")
    if frame not in ("lab", "moving"):
        raise ConfigurationError(f"unknown frame {frame!r}", module="trajectory_ode")

    d = params.delta
    if frame == "lab":
        def rhs(t, y):
            return rhs_lab(params, y[0], y[1], t)

        def ceiling(t, y):
            return z_ceiling - abs(TWO_PI * d * y[1])

        y0 = [x0, z0]
    else:
        def rhs(t, y):
            return rhs_moving(params, y[0], y[1])

        def ceiling(t, y):
            return z_ceiling - abs(y[1])

        p = to_moving(params, x0, z0, t0)
        y0 = [p.X, p.Z]
    reached = [t0]

    def fun(t, y):
        # remember how far the solver got, for the failure report
        reached[0] = max(reached[0], t)
        return rhs(t, y)

    ceiling.terminal = True
    ceiling.direction = -1

    t_eval = np.linspace(t0, t1, n_out) if times is None else np.asarray(times, dtype=float)
    sol = solve_ivp(fun, (t0, t1), y0, method=method, t_eval=t_eval, rtol=rtol, atol=atol,
                    events=ceiling)
    if sol.status == -1:
        t_fail = reached[0]
        raise StepSizeError(f"integration failed near t={t_fail!r}: {sol.message}", time=t_fail,
                            module="trajectory_ode")
    t = sol.t
    a, b = sol.y
    if frame == "moving":
        a, b = to_lab(params, a, b, t)
    breaks = ()
    meta = {"frame": frame, "rtol": rtol, "atol": atol, "method": method, "x0": x0, "z0": z0,
            "t0": t0, "t1": t1}
    if sol.status == 1:
        t_hit = float(sol.t_events[0][0])
        breaks = (t_hit,)
        meta["asymptote_time"] = t_hit
    return Trajectory(t, a, b, "ode", params, breaks, meta)
