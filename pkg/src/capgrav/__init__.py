"""Capillary-gravity water waves over finite depth: linear fields and particle paths.

Submodules:

* ``elliptic``: complete and incomplete elliptic integrals, Jacobi functions.
* ``wavefield``: dispersion relation, wave parameters, linearized fields.
* ``trajectory_ode``: particle paths by direct integration.
* ``closed_form``: exact elliptic-function paths when the current equals the wave speed.
* ``abel_case``: parametric paths when it does not.
* ``export``, ``svg``, ``plotting``, ``presets``, ``cli``: output and command line.
"""

from .errors import (AsymptoteError, CapgravError, ConfigurationError, DegenerateError,
                     DomainError, EmptyDomainError, PoleError, QuadratureError, StepSizeError)
from .wavefield import (FieldSample, WaveParameters, amplitude_constant_A2, dispersion_speed,
                        linear_fields)
from .trajectory_ode import Trajectory, integrate, rhs_lab, rhs_moving, to_lab, to_moving
from .closed_form import (ClosedFormConfig, asymptote_times, classify_family,
                          constants_from_initial, eval_derivatives, eval_xz, match_initial)
from .abel_case import AbelConfig, find_domain, t_of_tau, trajectory_param, y_of_tau
from .svg import emit_svg

__version__ = "0.1.0"

__all__ = [
    "AbelConfig", "AsymptoteError", "CapgravError", "ClosedFormConfig", "ConfigurationError",
    "DegenerateError", "DomainError", "EmptyDomainError", "FieldSample", "PoleError",
    "QuadratureError", "StepSizeError", "Trajectory", "WaveParameters", "amplitude_constant_A2",
    "asymptote_times", "classify_family", "constants_from_initial", "dispersion_speed",
    "emit_svg", "eval_derivatives", "eval_xz", "find_domain", "integrate",
    "linear_fields", "match_initial", "rhs_lab", "rhs_moving", "t_of_tau", "to_lab",
    "to_moving", "trajectory_param", "y_of_tau",
]
