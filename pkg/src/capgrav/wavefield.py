"""Wave configuration, dispersion relation and linearized flow fields.

Everything is non-dimensional: x in wavelengths, z in mean depths, and the
horizontal mode is fixed at wavenumber 2*pi.  The amplitude parameter has
already been sent to zero, so the fields below are the leading-order
(linear) solution.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import DomainError

TWO_PI = 2.0 * math.pi
_LOG2 = math.log(2.0)
# sinh(2*pi*delta) is evaluated in log space beyond this argument
_SINH_LOG_SWITCH = 700.0


def _check_delta(delta):
    if not (delta > 0.0) or not math.isfinite(delta):
        raise DomainError(f"shallowness delta must be positive, got {delta!r}", module="wavefield")


def _log_sinh(s):
    # s > 0
    return s - _LOG2 + math.log1p(-math.exp(-2.0 * s))


def _log_cosh(a):
    a = np.abs(a)
    return a - _LOG2 + np.log1p(np.exp(-2.0 * a))


def cosh_over_sinh(coef, a, s):
    """coef * cosh(a) / sinh(s), stable for large s (requires s > 0)."""
    if s < _SINH_LOG_SWITCH:
        return coef * np.cosh(a) / math.sinh(s)
    if coef == 0.0:
        return np.zeros_like(np.asarray(a, dtype=float))
    return math.copysign(1.0, coef) * np.exp(math.log(abs(coef)) + _log_cosh(a) - _log_sinh(s))


def sinh_over_sinh(coef, a, s):
    """coef * sinh(a) / sinh(s), stable for large s (requires s > 0)."""
    if s < _SINH_LOG_SWITCH:
        return coef * np.sinh(a) / math.sinh(s)
    a = np.asarray(a, dtype=float)
    if coef == 0.0:
        return np.zeros_like(a)
    mag = np.exp(math.log(abs(coef)) + _log_cosh(a) + np.log(np.abs(np.tanh(a))) - _log_sinh(s))
    return math.copysign(1.0, coef) * np.sign(a) * mag


def dispersion_speed(delta, we=0.0):
    """Positive wave speed from c**2 = tanh(2 pi delta)/(2 pi delta) * (1 + 4 pi^2 delta^2 We)."""
    _check_delta(delta)
    if we < 0.0:
        raise DomainError(f"Weber number must be non-negative, got {we!r}", module="wavefield")
    kd = TWO_PI * delta
    return math.sqrt(math.tanh(kd) / kd * (1.0 + kd * kd * we))


def amplitude_constant_A2(delta, c):
    """A**2 = 8 pi^4 delta^2 c^2 / sinh^2(2 pi delta)."""
    _check_delta(delta)
    kd = TWO_PI * delta
    num = 8.0 * math.pi ** 4 * delta * delta * c * c
    if kd < _SINH_LOG_SWITCH:
        return num / math.sinh(kd) ** 2
    if num == 0.0:
        return 0.0
    # underflows to 0 in the deep-water limit
    return math.exp(math.log(num) - 2.0 * _log_sinh(kd))


@dataclass(frozen=True)
class WaveParameters:
    """Non-dimensional wave and current configuration.

    ``c`` defaults to the positive root of the dispersion relation but can be
    overridden (the published figures use c = 10, which needs an unstated
    Weber number).  ``c0`` is the underlying uniform current and defaults to
    still water.  ``a2`` and ``b = 2 pi (c0 - c)`` are derived.
    """

    delta: float
    we: float = 0.0
    c: float = None
    c0: float = 0.0
    a2: float = field(init=False)
    b: float = field(init=False)

    def __post_init__(self):
        _check_delta(self.delta)
        if self.we < 0.0:
            raise DomainError(f"Weber number must be non-negative, got {self.we!r}", module="wavefield")
        c = dispersion_speed(self.delta, self.we) if self.c is None else float(self.c)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "c0", float(self.c0))
        object.__setattr__(self, "a2", amplitude_constant_A2(self.delta, c))
        object.__setattr__(self, "b", TWO_PI * (self.c0 - c))

    @classmethod
    def resonant(cls, delta, c=None, we=0.0):
        """Parameters with the current equal to the wave speed (c0 = c)."""
        if c is None:
            c = dispersion_speed(delta, we)
        return cls(delta=delta, we=we, c=c, c0=c)

    @property
    def is_resonant(self):
        return math.isclose(self.c0, self.c, rel_tol=1e-12, abs_tol=1e-300)

    @property
    def orbit_rate(self):
        """Moving-frame prefactor 4 pi^2 delta c / sinh(2 pi delta); its square is 2 A^2."""
        return cosh_over_sinh(2.0 * math.pi * TWO_PI * self.delta * self.c, 0.0, TWO_PI * self.delta).item()

    def as_dict(self):
        return {"delta": self.delta, "we": self.we, "c": self.c, "c0": self.c0, "a2": self.a2, "b": self.b}


@dataclass(frozen=True)
class FieldSample:
    eta: object
    u: object
    v: object
    p: object


def linear_fields(params, x, z, t):
    """Free surface, velocity and dynamic pressure of the linear solution.

    Inputs broadcast like numpy arrays.
    """
    d, c = params.delta, params.c
    kd = TWO_PI * d
    phase = TWO_PI * (np.asarray(x, dtype=float) - c * np.asarray(t, dtype=float))
    kz = kd * np.asarray(z, dtype=float)
    cos_p, sin_p = np.cos(phase), np.sin(phase)
    u = cosh_over_sinh(kd * c, kz, kd) * cos_p + params.c0
    v = sinh_over_sinh(TWO_PI * c, kz, kd) * sin_p
    p = cosh_over_sinh(kd * c * c, kz, kd) * cos_p
    out = [cos_p, u, v, p]
    if all(np.ndim(a) == 0 for a in (x, z, t)):
        out = [float(a) for a in out]
    return FieldSample(*out)


def mean_horizontal_velocity(params, z, t, n=256):
    """Average of u over one wavelength in x (trapezoid rule, exact for this trigonometric integrand)."""
    xs = np.arange(n) / n
    return float(np.mean(linear_fields(params, xs, z, t).u))
