"""Parametric particle paths for c0 != c.

With y = tan X the moving-frame equation for X becomes a solvable Abel
equation of the second kind whose solution is known in parametric form:

    y(tau) = +- sqrt( (tau^2 - 2A^2) / (C - b L(tau))^2 - 1 ),
    L(tau) = ln|tau + sqrt(tau^2 - 2A^2)|,
    dt/dtau = 1 / ( sqrt(tau^2 - 2A^2) sqrt(R(tau)) ),
    R(tau)  = tau^2 - 2A^2 - (C - b L(tau))^2,

and the height follows from

    Z = 2 arctanh( exp(z_const) sqrt|(tau - sqrt2 A)/(tau + sqrt2 A)| ).

On a solution of the first-order system the parameter is
tau = sqrt(2) A cosh Z and C - b ln(sqrt2 A) equals the conserved quantity
sqrt(2) A sinh Z cos X + b Z, so z_const = 0 is the value that reproduces the
velocity field; other values still solve the differentiated equation for X.

The valid tau-set is bounded by simple roots of R, where dt/dtau has an
integrable inverse-square-root singularity.  Along one traversal tau is
monotone and the sign of sin X is fixed (``sign_y``); t(tau) carries that
sign so that t always increases along the motion.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy.optimize import brentq

from . import quadrature
from .errors import ConfigurationError, DomainError, EmptyDomainError, QuadratureError
from .trajectory_ode import Trajectory
from .wavefield import TWO_PI

ENDPOINT_TOL = 1e-12


def _err(msg, cls=DomainError, **kw):
    return cls(msg, module="abel_case", **kw)


def log_term(tau, a2):
    """L(tau) = ln|tau + sqrt(tau^2 - 2A^2)| for |tau| >= sqrt(2) A."""
    tau = np.asarray(tau, dtype=float)
    S = np.sqrt(np.maximum(tau * tau - 2.0 * a2, 0.0))
    # for tau < 0 use |tau| - S = 2A^2 / (|tau| + S) to avoid cancellation
    pos = np.log(np.abs(tau) + S)
    L = np.where(tau > 0, pos, np.log(2.0 * a2) - pos)
    return L if L.ndim else float(L)


def radicand(a2, b, C, tau):
    """R(tau) = tau^2 - 2A^2 - (C - b L(tau))^2."""
    tau = np.asarray(tau, dtype=float)
    Q = C - b * log_term(tau, a2)
    R = tau * tau - 2.0 * a2 - Q * Q
    return R if np.ndim(R) else float(R)


def find_domain(a2, b, C, tau_hint, scan=64, tau_limit=1e12):
    """Maximal interval around ``tau_hint`` on which R(tau) > 0.

    The edges are simple roots of R located by Brent bisection; an edge may
    be infinite when R stays positive out to ``tau_limit``.
    """
    if b == 0.0:
        raise _err("b = 0 is the resonant case; use closed_form", ConfigurationError)
    B = math.sqrt(2.0 * a2)
    if not abs(tau_hint) > B:
        raise _err(f"no domain near tau={tau_hint!r}: need |tau| > sqrt(2)A = {B!r}",
                   EmptyDomainError)

    def R(tau):
        return radicand(a2, b, C, tau)

    if not R(tau_hint) > 0.0:
        raise _err(f"radicand is not positive at tau={tau_hint!r}", EmptyDomainError)
    s = math.copysign(1.0, tau_hint)

    def root(p, q):
        r = brentq(R, p, q, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
        return r

    # inner edge: R(+-B) = -(C - b ln B)^2 <= 0, so a sign change always exists
    inner = s * B
    prev = tau_hint
    inner_edge = inner
    for k in range(1, scan + 1):
        cur = tau_hint + (inner - tau_hint) * k / scan
        if R(cur) <= 0.0:
            inner_edge = root(prev, cur) if R(cur) < 0.0 else cur
            break
        prev = cur

    outer_edge = s * math.inf
    prev = tau_hint
    found = False
    while abs(prev) < tau_limit and not found:
        nxt = prev * 2.0
        for k in range(1, 17):
            cur = prev + (nxt - prev) * k / 16
            if R(cur) <= 0.0:
                lo_pt = prev + (nxt - prev) * (k - 1) / 16
                outer_edge = root(lo_pt, cur) if R(cur) < 0.0 else cur
                found = True
                break
        prev = nxt
    return tuple(sorted((inner_edge, outer_edge)))


def _sign(s):
    if s in (1, "+", "+1"):
        return 1
    if s in (-1, "-", "-1"):
        return -1
    raise ConfigurationError(f"sign must be '+' or '-', got {s!r}", module="abel_case")


@dataclass(frozen=True)
class AbelConfig:
    """Constants and branch choices of one parametric path.

    ``tau_domain`` is one connected component of {R > 0}, normally from
    ``find_domain``.  ``sign_y`` is the sign of sin X along the traversal.
    """

    C: float
    b: float
    a2: float
    tau_domain: tuple
    z_const: float = 0.0
    sign_y: int = 1
    sign_z: int = 1

    def __post_init__(self):
        object.__setattr__(self, "sign_y", _sign(self.sign_y))
        object.__setattr__(self, "sign_z", _sign(self.sign_z))
        lo, hi = (float(v) for v in self.tau_domain)
        object.__setattr__(self, "tau_domain", (lo, hi))
        if self.b == 0.0:
            raise _err("AbelConfig needs b != 0", ConfigurationError)
        if not self.a2 > 0.0:
            raise _err("AbelConfig needs A^2 > 0", ConfigurationError)
        if not hi > lo:
            raise _err("empty tau domain", EmptyDomainError)
        B = self.sqrt2A
        # the open interval may touch +-sqrt(2) A but not reach inside
        if lo < B and hi > -B:
            raise _err("tau domain must lie in |tau| > sqrt(2) A", ConfigurationError)
        mid = self.interior_point()
        if not radicand(self.a2, self.b, self.C, mid) > 0.0:
            raise _err("radicand is not positive inside tau_domain", ConfigurationError)

    @classmethod
    def from_hint(cls, a2, b, C, tau_hint, **kw):
        return cls(C, b, a2, find_domain(a2, b, C, tau_hint), **kw)

    @property
    def sqrt2A(self):
        return math.sqrt(2.0 * self.a2)

    @property
    def bounded(self):
        return all(math.isfinite(v) for v in self.tau_domain)

    def interior_point(self):
        lo, hi = self.tau_domain
        if math.isfinite(lo) and math.isfinite(hi):
            return 0.5 * (lo + hi)
        edge = lo if math.isfinite(lo) else hi
        return 2.0 * edge

    def as_dict(self):
        return {"C": self.C, "b": self.b, "a2": self.a2, "tau_domain": list(self.tau_domain),
                "z_const": self.z_const, "sign_y": self.sign_y, "sign_z": self.sign_z}


def _checked_radicand(config, tau):
    tau = np.asarray(tau, dtype=float)
    lo, hi = config.tau_domain
    slack = ENDPOINT_TOL * np.maximum(1.0, np.abs(tau))
    if np.any(tau < lo - slack) or np.any(tau > hi + slack):
        raise _err(f"tau outside the domain {config.tau_domain}")
    P = tau * tau - 2.0 * config.a2
    if np.any(P <= 0.0):
        raise _err("tau^2 <= 2A^2 is excluded")
    Q = config.C - config.b * np.asarray(log_term(tau, config.a2))
    R = P - Q * Q
    if np.any(R < -1e-9 * P):
        raise _err("radicand negative: tau outside the valid set")
    return P, Q, np.maximum(R, 0.0)


def y_of_tau(config, tau):
    """y = tan X in parametric form.

    |y| is the published root; its sign is sign_y * sign(C - b L), which
    keeps y equal to tan X when the path crosses cos X = 0 (y passes through
    infinity and changes sign there).
    """
    P, Q, R = _checked_radicand(config, tau)
    if np.any(Q == 0.0):
        raise _err("C - b L(tau) vanishes; y is unbounded there")
    y = config.sign_y * np.sqrt(R) / Q
    return y if np.ndim(y) else float(y)


def moving_X(config, tau):
    """Continuous angle X with sin X = sign_y sqrt(R/P) and cos X = (C - b L)/sqrt(P).

    Equals arctan(y) whenever C - b L > 0 and continues it smoothly across
    cos X = 0.
    """
    P, Q, R = _checked_radicand(config, tau)
    X = np.arctan2(config.sign_y * np.sqrt(R), Q)
    return X if np.ndim(X) else float(X)


def moving_Z(config, tau):
    tau = np.asarray(tau, dtype=float)
    B = config.sqrt2A
    arg = math.exp(config.z_const) * np.sqrt(np.abs((tau - B) / (tau + B)))
    if np.any(arg >= 1.0):
        raise _err("exponential condition violated: arctanh argument reaches 1")
    Z = config.sign_z * 2.0 * np.arctanh(arg)
    return Z if np.ndim(Z) else float(Z)


def log_reduction(config, tau):
    """Closed form of the integral of sqrt(2) A sin X dt: 0.5 ln|(tau - sqrt2 A)/(tau + sqrt2 A)|."""
    tau = np.asarray(tau, dtype=float)
    B = config.sqrt2A
    return 0.5 * np.log(np.abs((tau - B) / (tau + B)))


def dt_dtau(config, tau):
    """Integrand of t(tau), including the traversal sign."""
    P, Q, R = _checked_radicand(config, tau)
    with np.errstate(divide="ignore"):
        return config.sign_y / (np.sqrt(P) * np.sqrt(R))


def _anchored_integrand(config, anchor, direction, anchor_R):
    """f(h) = 1 / (sqrt(P) sqrt(R)) at tau = anchor + direction * h.

    R(anchor + direction*h) - R(anchor) is assembled from pieces that are
    each exact for small h, so an anchor sitting on a root of R gives a
    clean h**-0.5 singularity.
    """
    a2, b, C = config.a2, config.b, config.C
    a = anchor
    Pa = a * a - 2.0 * a2
    Sa = math.sqrt(Pa)
    La = float(log_term(a, a2))
    Qa = C - b * La
    sgn = direction

    def f(h):
        dP = h * (2.0 * sgn * a + h)
        Pt = Pa + dP
        S = math.sqrt(Pt)
        dS = dP / (S + Sa)
        if a > 0.0:
            dL = math.log1p((sgn * h + dS) / (a + Sa))
        else:
            dL = -math.log1p((-sgn * h + dS) / (-a + Sa))
        R = anchor_R + dP + b * dL * (2.0 * Qa - b * dL)
        if R <= 0.0:
            return math.inf
        return 1.0 / (S * math.sqrt(R))

    return f


def _unsigned_integral(config, lo, hi, method, fallback):
    dlo, dhi = config.tau_domain

    def on_edge(v, edge):
        return math.isfinite(edge) and abs(v - edge) <= ENDPOINT_TOL * max(1.0, abs(edge))

    R_lo = 0.0 if on_edge(lo, dlo) else float(radicand(config.a2, config.b, config.C, lo))
    R_hi = 0.0 if on_edge(hi, dhi) else float(radicand(config.a2, config.b, config.C, hi))
    mid = 0.5 * (lo + hi)
    pieces = [(_anchored_integrand(config, lo, 1, R_lo), mid - lo),
              (_anchored_integrand(config, hi, -1, R_hi), hi - mid)]
    total = 0.0
    for f, H in pieces:
        if method == "adaptive":
            try:
                total += quadrature.adaptive(f, H)
            except QuadratureError:
                if not fallback:
                    raise QuadratureError("adaptive quadrature failed", (lo, hi), module="abel_case")
                total += quadrature.tanh_sinh(f, H)
        elif method == "tanh-sinh":
            try:
                total += quadrature.tanh_sinh(f, H)
            except QuadratureError:
                raise QuadratureError("tanh-sinh quadrature failed", (lo, hi), module="abel_case")
        else:
            raise ConfigurationError(f"unknown quadrature method {method!r}", module="abel_case")
    return total


def t_of_tau(config, tau0, tau, method="adaptive", fallback=True):
    """Elapsed time between parameters tau0 and tau along the traversal.

    ``method`` is "adaptive" (Gauss-Kronrod after h = s^2, falling back to
    tanh-sinh) or "tanh-sinh".
    """
    tau0, tau = float(tau0), float(tau)
    if tau == tau0:
        return 0.0
    lo, hi = min(tau0, tau), max(tau0, tau)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ConfigurationError("t_of_tau needs finite parameters", module="abel_case")
    _checked_radicand(config, np.array([lo, hi]))
    val = _unsigned_integral(config, lo, hi, method, fallback)
    direction = 1.0 if tau > tau0 else -1.0
    return config.sign_y * direction * val


def tau_grid(config, n, span=None):
    """n parameters across the domain, clustered towards finite edges."""
    lo, hi = config.tau_domain
    k = np.arange(n) / (n - 1)
    if math.isfinite(lo) and math.isfinite(hi):
        return lo + (hi - lo) * 0.5 * (1.0 - np.cos(math.pi * k))
    edge = lo if math.isfinite(lo) else hi
    sgn = 1.0 if math.isfinite(lo) else -1.0
    if span is None:
        span = abs(edge)
    return edge + sgn * span * (1.0 - np.cos(0.5 * math.pi * k))


def _check_params(config, params):
    if not math.isclose(config.a2, params.a2, rel_tol=1e-9):
        raise ConfigurationError("AbelConfig A^2 does not match the wave parameters", module="abel_case")
    if not math.isclose(config.b, params.b, rel_tol=1e-9, abs_tol=1e-12):
        raise ConfigurationError("AbelConfig b does not match 2 pi (c0 - c)", module="abel_case")


def trajectory_param(config, params, tau_samples, t_start=0.0, method="adaptive"):
    """Lab-frame path at the given parameters.

    t is accumulated from the first sample, which is placed at ``t_start``.
    Samples are returned in increasing t.
    """
    _check_params(config, params)
    taus = np.asarray(tau_samples, dtype=float)
    if taus.ndim != 1 or taus.size < 1:
        raise ConfigurationError("need a 1-D sequence of tau samples", module="abel_case")
    X = np.asarray(moving_X(config, taus))
    Z = np.asarray(moving_Z(config, taus))
    t = np.empty_like(taus)
    t[0] = t_start
    for i in range(1, taus.size):
        t[i] = t[i - 1] + t_of_tau(config, taus[i - 1], taus[i], method=method)
    order = np.argsort(t, kind="stable")
    t, X, Z, taus = t[order], X[order], Z[order], taus[order]
    x = params.c * t + X / TWO_PI
    z = Z / (TWO_PI * params.delta)
    meta = {"abel": config.as_dict(), "tau": taus.tolist(), "t_start": t_start}
    return Trajectory(t, x, z, "abel", params, (), meta)
