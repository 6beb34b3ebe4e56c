import math

import numpy as np
import pytest

from capgrav import abel_case
from capgrav.wavefield import WaveParameters


def d1(f, t, h):
    """Five-point central first derivative."""
    return (f(t - 2 * h) - 8 * f(t - h) + 8 * f(t + h) - f(t + 2 * h)) / (12 * h)


def d2(f, t, h):
    """Five-point central second derivative."""
    return (-f(t - 2 * h) + 16 * f(t - h) - 30 * f(t) + 16 * f(t + h) - f(t + 2 * h)) / (12 * h * h)


def richardson_d1(f, t, h):
    """Central difference with one Richardson step, O(h^4)."""
    a = (f(t + h) - f(t - h)) / (2 * h)
    b = (f(t + h / 2) - f(t - h / 2)) / h
    return (4 * b - a) / 3


# Three parameter sets for the non-resonant parametric solution, all at
# delta = 1, c = 10.  ``C_reduced`` is the conserved quantity
# B sinh Z cos X + b Z; the Abel constant is C_reduced + b ln B.
ABEL_CASES = [
    {"c0": 11.0, "C_reduced": 5.0, "Z_hint": 0.9},
    {"c0": 9.0, "C_reduced": -3.0, "Z_hint": 0.5},
    {"c0": 9.0, "C_reduced": -3.0, "Z_hint": 4.0},
]


def abel_setup(case, **kw):
    params = WaveParameters(delta=1.0, c=10.0, c0=case["c0"])
    B = params.orbit_rate
    C = case["C_reduced"] + params.b * math.log(B)
    cfg = abel_case.AbelConfig.from_hint(params.a2, params.b, C, B * math.cosh(case["Z_hint"]), **kw)
    return params, cfg


def abel_from_point(params, X0, Z0, sign_z=1):
    """AbelConfig of the moving-frame path through (X0, Z0); test-only helper."""
    B = params.orbit_rate
    H = B * math.sinh(Z0) * math.cos(X0) + params.b * Z0
    C = H + params.b * math.log(B)
    tau0 = B * math.cosh(Z0)
    sign_y = 1 if math.sin(X0) >= 0 else -1
    cfg = abel_case.AbelConfig.from_hint(params.a2, params.b, C, tau0, sign_y=sign_y, sign_z=sign_z)
    return cfg, tau0


@pytest.fixture
def fig_params():
    return {
        1: WaveParameters(delta=1.0, c=10.0, c0=10.0),
        2: WaveParameters(delta=0.5, c=10.0, c0=10.0),
    }


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
