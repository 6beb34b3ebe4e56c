"""Exact particle paths for the resonant case c0 = c.

In the moving frame the second-order system X'' = -A^2 sin 2X,
Z'' = A^2 sinh 2Z integrates to

    (X')^2 = A^2 cos 2X + c1,        (Z')^2 = A^2 cosh 2Z + c2,

and both equations reduce to Jacobi elliptic functions.  The sign of
c1 - A^2 picks the x-branch (sc or cn), the position of c2 relative to
+-A^2 picks one of three z-branches, giving six families:

    family   x-branch            z-branch
    1        am / sc, k1         sn, k3       (c2 >  A^2)
    2        am / sc, k1         cn, k4       (-A^2 < c2 < A^2)
    3        am / sc, k1         dn, k5       (c2 < -A^2)
    4        cn, k2              sn, k3
    5        cn, k2              cn, k4
    6        cn, k2              dn, k5

For the sc branch, arctan(sc(u)) unwrapped across the poles of sc is just
the amplitude am(u), which is what ``eval_xz`` uses by default.  The
arctanh of the z-branch is evaluated through 1 - w^2 (cn^2, sn^2 or
m sn^2) so that it stays accurate close to the asymptotes.

Only constants with c1 + c2 = 0 come from actual particle paths (see
``constants_from_initial``); other pairs solve the second-order system
but not the first-order one.
"""

from dataclasses import dataclass, field, replace
import math

import numpy as np

from . import elliptic
from .errors import AsymptoteError, ConfigurationError, DegenerateError, DomainError, PoleError
from .trajectory_ode import Trajectory, rhs_moving
from .wavefield import TWO_PI

DEGENERACY_TOL = 1e-10
ASYMPTOTE_RADIUS = 1e-9
SC_FAMILIES = (1, 2, 3)
Z_SN, Z_CN, Z_DN = (1, 4), (2, 5), (3, 6)


def _sign(s):
    if s in (1, "+", "+1"):
        return 1
    if s in (-1, "-", "-1"):
        return -1
    raise ConfigurationError(f"sign must be '+' or '-', got {s!r}", module="closed_form")


@dataclass(frozen=True)
class ClosedFormConfig:
    """Integration constants, family and branch choices of one exact path.

    ``phase_x`` and ``phase_z`` shift the elliptic arguments,
    u = omega * t + phase.  The published formulas correspond to zero
    phases; non-zero phases are needed to pass through arbitrary initial
    data.
    """

    c1: float
    c2: float
    a2: float
    family: int
    m_x: float
    m_z: float
    sign_x: int = 1
    sign_z: int = 1
    phase_x: float = 0.0
    phase_z: float = 0.0
    K_x: float = field(init=False, repr=False)
    K_z: float = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "sign_x", _sign(self.sign_x))
        object.__setattr__(self, "sign_z", _sign(self.sign_z))
        object.__setattr__(self, "K_x", elliptic.complete_K(self.m_x))
        object.__setattr__(self, "K_z", elliptic.complete_K(self.m_z))

    @property
    def omega_x(self):
        if self.family in SC_FAMILIES:
            return math.sqrt(self.c1 + self.a2)
        return math.sqrt(2.0 * self.a2)

    @property
    def omega_z(self):
        if self.family in Z_SN:
            return math.sqrt(self.c2 + self.a2)
        if self.family in Z_CN:
            return math.sqrt(2.0 * self.a2)
        return math.sqrt(self.a2 - self.c2)

    @property
    def cn_amplitude(self):
        """Factor sqrt((A^2 + c1)/(A^2 - c1)) multiplying cn in families 4-6."""
        return math.sqrt((self.a2 + self.c1) / (self.a2 - self.c1))

    def as_dict(self):
        return {"c1": self.c1, "c2": self.c2, "a2": self.a2, "family": self.family,
                "m_x": self.m_x, "m_z": self.m_z, "sign_x": self.sign_x, "sign_z": self.sign_z,
                "phase_x": self.phase_x, "phase_z": self.phase_z}


def moduli(c1, c2, a2):
    """All five squared moduli (k1^2 .. k5^2); entries outside their branch are None."""
    k1 = 2 * a2 / (c1 + a2) if c1 > a2 else None
    k2 = (a2 + c1) / (2 * a2) if -a2 < c1 < a2 else None
    k3 = (c2 - a2) / (c2 + a2) if c2 > a2 else None
    k4 = (a2 - c2) / (2 * a2) if -a2 < c2 < a2 else None
    k5 = 2 * a2 / (a2 - c2) if c2 < -a2 else None
    return {"k1": k1, "k2": k2, "k3": k3, "k4": k4, "k5": k5}


def classify_family(c1, c2, a2, sign_x=1, sign_z=1, phase_x=0.0, phase_z=0.0):
    """Build the ClosedFormConfig for constants (c1, c2) at a given A^2."""
    if not a2 > 0.0:
        raise DegenerateError(f"A^2 = {a2!r}: the flat-surface case has no elliptic paths",
                              module="closed_form")
    if not c1 + a2 > 0.0:
        raise DomainError(f"need c1 + A^2 > 0, got c1={c1!r}, A^2={a2!r}", module="closed_form")
    tol = DEGENERACY_TOL * a2
    for name, gap in (("c1 + A^2", c1 + a2), ("c1 - A^2", c1 - a2),
                      ("c2 - A^2", c2 - a2), ("c2 + A^2", c2 + a2)):
        if abs(gap) < tol:
            raise DegenerateError(f"{name} = {gap!r} is on a family boundary", module="closed_form")
    k = moduli(c1, c2, a2)
    x_sc = c1 > a2
    if c2 > a2:
        zi, m_z = 0, k["k3"]
    elif c2 > -a2:
        zi, m_z = 1, k["k4"]
    else:
        zi, m_z = 2, k["k5"]
    family = (1 if x_sc else 4) + zi
    m_x = k["k1"] if x_sc else k["k2"]
    return ClosedFormConfig(c1, c2, a2, family, m_x, m_z, sign_x, sign_z, phase_x, phase_z)


def constants_from_initial(params, X0, Z0):
    """First integrals (c1, c2) of the moving-frame path through (X0, Z0)."""
    if not params.is_resonant:
        raise ConfigurationError("closed forms need c0 = c", module="closed_form")
    dX, dZ = rhs_moving(params, X0, Z0)
    c1 = float(dX * dX - params.a2 * math.cos(2 * X0))
    c2 = float(dZ * dZ - params.a2 * math.cosh(2 * Z0))
    return c1, c2


def match_initial(params, X0, Z0):
    """Config whose closed form passes through (X0, Z0) at t = 0 with the ODE's velocity.

    Every such path has c1 = -c2 >= A^2, i.e. it belongs to family 3, and the
    x- and z-branches share frequency and modulus.  The constants are
    recomputed from the identity c1 = A^2 (1 + 2 cos^2 X0 sinh^2 Z0) to avoid
    cancellation.
    """
    if not params.is_resonant:
        raise ConfigurationError("closed forms need c0 = c", module="closed_form")
    a2 = params.a2
    cosx = math.cos(X0)
    c1 = a2 * (1.0 + 2.0 * cosx * cosx * math.sinh(Z0) ** 2)
    cfg = classify_family(c1, -c1, a2)
    m, omega = cfg.m_x, cfg.omega_x
    dX0, dZ0 = rhs_moving(params, X0, Z0)

    sign_x = 1 if cosx > 0 else -1
    phase_x = elliptic.incomplete_F(sign_x * X0, m)

    sign_z = 1 if Z0 > 0 else -1
    # dn(phase_z) = tanh|Z0|  =>  sn^2 = sech^2 Z0 / m
    s = min(1.0, 1.0 / (math.cosh(Z0) * math.sqrt(m)))
    base = elliptic.incomplete_F(math.asin(s), m)
    # Z'(0) = -sign_z * omega * cn/sn at phase_z; pick the side with the right sign
    branch = 1 if -sign_z * dZ0 >= 0 else -1
    phase_z = branch * base
    out = replace(cfg, sign_x=sign_x, sign_z=sign_z, phase_x=phase_x, phase_z=phase_z)
    check_x, check_z = moving_derivatives(out, 0.0)
    scale = omega * (1.0 + abs(dX0) + abs(dZ0))
    if abs(check_x - dX0) > 1e-6 * scale or abs(check_z - dZ0) > 1e-6 * scale:
        raise ConfigurationError("could not match initial velocity", module="closed_form",
                                 closed=[check_x, check_z], ode=[float(dX0), float(dZ0)])
    return out


def _check_params(config, params):
    if not math.isclose(config.a2, params.a2, rel_tol=1e-9):
        raise ConfigurationError(f"config A^2={config.a2!r} does not match parameters "
                                 f"A^2={params.a2!r}", module="closed_form")


def _z_asymptote_u(config, u):
    """Nearest argument where the z-branch diverges."""
    K = config.K_z
    if config.family in Z_SN:
        return (2.0 * np.floor(u / (2.0 * K)) + 1.0) * K
    return 2.0 * K * np.round(u / (2.0 * K))


def _guard_asymptotes(config, t, u):
    ua = _z_asymptote_u(config, u)
    near = np.abs(u - ua) / config.omega_z < ASYMPTOTE_RADIUS
    if np.any(near):
        i = int(np.flatnonzero(np.atleast_1d(near))[0])
        ta = float((np.atleast_1d(ua)[i] - config.phase_z) / config.omega_z)
        raise AsymptoteError(f"z diverges at t={ta!r}", time=ta, module="closed_form")


def moving_X(config, t, unwrap=True):
    t = np.asarray(t, dtype=float)
    u = config.omega_x * t + config.phase_x
    if config.family in SC_FAMILIES:
        if unwrap:
            X = elliptic.jacobi_am(u, config.m_x)
        else:
            X = np.arctan(elliptic.jacobi_sc(u, config.m_x))
    else:
        _, cn, _ = elliptic.jacobi_sn_cn_dn(u, config.m_x)
        X = np.arctan(config.cn_amplitude * cn)
    return config.sign_x * np.asarray(X)


def moving_Z(config, t):
    t = np.asarray(t, dtype=float)
    u = config.omega_z * t + config.phase_z
    _guard_asymptotes(config, t, u)
    sn, cn, dn = (np.asarray(v) for v in elliptic.jacobi_sn_cn_dn(u, config.m_z))
    if config.family in Z_SN:
        w, gap = sn, np.abs(cn)
    elif config.family in Z_CN:
        w, gap = cn, np.abs(sn)
    else:
        w, gap = dn, math.sqrt(config.m_z) * np.abs(sn)
    # arctanh(w) = sign(w) * log((1 + |w|) / sqrt(1 - w^2))
    with np.errstate(divide="ignore"):
        Z = np.sign(w) * np.log((1.0 + np.abs(w)) / gap)
    return config.sign_z * Z


def moving_coordinates(config, t, unwrap=True):
    """(X(t), Z(t)) in the moving frame."""
    return moving_X(config, t, unwrap), moving_Z(config, t)


def moving_derivatives(config, t):
    """(dX/dt, dZ/dt) from the derivative rules of sn, cn, dn."""
    t = np.asarray(t, dtype=float)
    ux = config.omega_x * t + config.phase_x
    sn, cn, dn = (np.asarray(v) for v in elliptic.jacobi_sn_cn_dn(ux, config.m_x))
    if config.family in SC_FAMILIES:
        dX = config.omega_x * dn
    else:
        alpha = config.cn_amplitude
        dX = -alpha * config.omega_x * sn * dn / (1.0 + alpha * alpha * cn * cn)
    uz = config.omega_z * t + config.phase_z
    try:
        _guard_asymptotes(config, t, uz)
    except AsymptoteError as exc:
        raise PoleError(str(exc), pole=exc.time, module="closed_form") from None
    sn, cn, dn = (np.asarray(v) for v in elliptic.jacobi_sn_cn_dn(uz, config.m_z))
    w = config.omega_z
    if config.family in Z_SN:
        dZ = w * dn / cn
    elif config.family in Z_CN:
        dZ = -w * dn / sn
    else:
        dZ = -w * cn / sn
    out = (config.sign_x * dX, config.sign_z * dZ)
    if t.ndim == 0:
        return float(out[0]), float(out[1])
    return out


def eval_xz(config, params, t, unwrap=True):
    """Lab-frame position (x(t), z(t)).

    With ``unwrap=False`` the sc families use the principal arctan and jump
    by 1/2 at each pole of sc (debugging aid only).
    """
    _check_params(config, params)
    X, Z = moving_coordinates(config, t, unwrap)
    x = params.c * np.asarray(t, dtype=float) + X / TWO_PI
    z = Z / (TWO_PI * params.delta)
    if np.ndim(t) == 0:
        return float(x), float(z)
    return x, z


def eval_x(config, params, t):
    """x(t) alone; finite at the z-asymptotes."""
    _check_params(config, params)
    return params.c * np.asarray(t, dtype=float) + moving_X(config, t) / TWO_PI


def eval_derivatives(config, params, t):
    """(dx/dt, dz/dt) of the closed form."""
    _check_params(config, params)
    dX, dZ = moving_derivatives(config, t)
    return params.c + dX / TWO_PI, dZ / (TWO_PI * params.delta)


def asymptote_times(config, t_lo, t_hi):
    """All instants in [t_lo, t_hi] at which z(t) diverges, ascending."""
    if not t_hi > t_lo:
        raise ConfigurationError("need t_hi > t_lo", module="closed_form")
    w, K, ph = config.omega_z, config.K_z, config.phase_z
    u_lo, u_hi = w * t_lo + ph, w * t_hi + ph
    if config.family in Z_SN:
        # u = (2j + 1) K
        j0 = math.ceil((u_lo / K - 1.0) / 2.0)
        j1 = math.floor((u_hi / K - 1.0) / 2.0)
        us = [(2 * j + 1) * K for j in range(j0, j1 + 1)]
    else:
        # u = 2 j K
        j0 = math.ceil(u_lo / (2.0 * K))
        j1 = math.floor(u_hi / (2.0 * K))
        us = [2 * j * K for j in range(j0, j1 + 1)]
    ts = [(u - ph) / w for u in us]
    return [t for t in ts if t_lo <= t <= t_hi]


def asymptote_spacing(config):
    """Time between consecutive z-asymptotes."""
    return 2.0 * config.K_z / config.omega_z


def elliptic_periods(config):
    """Periods of the elliptic functions appearing in x(t) and z(t).

    sc and dn repeat after 2K, sn and cn after 4K.
    """
    tx = (2.0 if config.family in SC_FAMILIES else 4.0) * config.K_x / config.omega_x
    tz = (2.0 if config.family in Z_DN else 4.0) * config.K_z / config.omega_z
    return {"x": tx, "z": tz}


def sample(config, params, t0, t1, n=2000):
    """Closed-form trajectory on a uniform grid, skipping samples at asymptotes."""
    ts = np.linspace(t0, t1, n)
    asym = asymptote_times(config, t0, t1)
    keep = np.ones(n, dtype=bool)
    for ta in asym:
        keep &= np.abs(ts - ta) >= 2.0 * ASYMPTOTE_RADIUS
    ts = ts[keep]
    x, z = eval_xz(config, params, ts)
    meta = {"closed_form": config.as_dict(), "t0": t0, "t1": t1, "n": n}
    return Trajectory(ts, x, z, "closed", params, tuple(asym), meta)


def drift_diagnostics(config, params, t0, t1, n=4000):
    """Numbers describing whether the path loops or undulates; no classification is made."""
    ts = np.linspace(t0, t1, n)
    keep = np.ones(n, dtype=bool)
    for ta in asymptote_times(config, t0, t1):
        keep &= np.abs(ts - ta) >= 2.0 * ASYMPTOTE_RADIUS
    dx, _ = eval_derivatives(config, params, ts[keep])
    x = eval_x(config, params, ts)
    return {
        "min_dxdt": float(np.min(dx)),
        "max_dxdt": float(np.max(dx)),
        "backward_fraction": float(np.mean(dx < 0.0)),
        "mean_drift_speed": float((x[-1] - x[0]) / (t1 - t0)),
    }
