"""Elliptic integral of the first kind and Jacobi elliptic functions.

All functions take the parameter ``m = k**2`` (not the modulus ``k``) and
real arguments only.  ``K`` uses the arithmetic-geometric mean, ``F`` uses
Carlson's symmetric integral ``R_F``, and ``sn, cn, dn`` are recovered from
the amplitude computed by the descending Landen (AGM) scheme.

Functions accept scalars or numpy arrays for the argument; the parameter
``m`` is always a scalar.
"""

import math

import numpy as np

from .errors import DomainError, PoleError

EPS = np.finfo(float).eps
SNAP = 1e-12          # distance from 0 or 1 at which m is treated as degenerate
MAX_AGM_STEPS = 64
POLE_CUTOFF = 1e-12


def _err(msg, cls=DomainError, **kw):
    return cls(msg, module="elliptic", **kw)


def check_parameter(m):
    """Validate ``m`` and snap it to 0 or 1 when within ``SNAP`` of either."""
    m = float(m)
    if not math.isfinite(m) or m < -SNAP or m > 1.0 + SNAP:
        raise _err(f"parameter m={m!r} outside [0, 1]")
    if m < SNAP:
        return 0.0
    if m > 1.0 - SNAP:
        return 1.0
    return m


def _scalar_or_array(x):
    if np.ndim(x) == 0:
        return float(x)
    return x


def agm(a, b):
    """Arithmetic-geometric mean of two positive numbers."""
    for _ in range(MAX_AGM_STEPS):
        if abs(a - b) <= 4.0 * EPS * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return a


def complete_K(m):
    """Complete elliptic integral of the first kind K(m)."""
    m = check_parameter(m)
    if m == 1.0:
        raise _err("K(m) is infinite at m = 1 (infinite quarter period)")
    if m == 0.0:
        return math.pi / 2
    return math.pi / (2.0 * agm(1.0, math.sqrt(1.0 - m)))


def carlson_rf(x, y, z):
    """Carlson's symmetric elliptic integral R_F(x, y, z) by duplication.

    At most one argument may be zero.
    """
    if min(x, y, z) < 0.0 or (x == 0.0) + (y == 0.0) + (z == 0.0) > 1:
        raise _err("R_F needs non-negative arguments with at most one zero")
    for _ in range(200):
        mu = (x + y + z) / 3.0
        dev = max(abs(mu - x), abs(mu - y), abs(mu - z)) / mu
        if dev < 3e-4:
            break
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * (sy + sz) + sy * sz
        x, y, z = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam)
    mu = (x + y + z) / 3.0
    X, Y = 1.0 - x / mu, 1.0 - y / mu
    Z = -(X + Y)
    e2 = X * Y - Z * Z
    e3 = X * Y * Z
    series = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0
    return series / math.sqrt(mu)


def incomplete_F(phi, m):
    """Incomplete elliptic integral F(phi, m) for any real amplitude.

    Uses F(phi + j*pi) = F(phi) + 2 j K.  At m = 1 only |phi| < pi/2 is finite.
    """
    m = check_parameter(m)
    phi = float(phi)
    if m == 0.0:
        return phi
    j = round(phi / math.pi)
    r = phi - j * math.pi
    if m == 1.0:
        if j != 0 or abs(r) >= math.pi / 2:
            raise _err("F(phi, 1) diverges for |phi| >= pi/2")
        return math.atanh(math.sin(r))
    s = math.sin(r)
    c = math.cos(r)
    base = s * carlson_rf(c * c, 1.0 - m * s * s, 1.0)
    if j == 0:
        return base
    return base + 2.0 * j * complete_K(m)


def _landen_coefficients(m):
    a, b, c = 1.0, math.sqrt(1.0 - m), math.sqrt(m)
    aa, cc = [a], [c]
    for _ in range(MAX_AGM_STEPS):
        if abs(a - b) <= 4.0 * EPS * a:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        aa.append(a)
        cc.append(c)
    return aa, cc


def jacobi_am(u, m):
    """Jacobi amplitude am(u, m), continuous and increasing in u."""
    m = check_parameter(m)
    u = np.asarray(u, dtype=float)
    if m == 0.0:
        return _scalar_or_array(u.copy())
    if m == 1.0:
        return _scalar_or_array(np.arctan(np.sinh(u)))
    aa, cc = _landen_coefficients(m)
    n = len(aa) - 1
    phi = (2.0 ** n) * aa[n] * u
    for k in range(n, 0, -1):
        phi = 0.5 * (phi + np.arcsin(cc[k] / aa[k] * np.sin(phi)))
    return _scalar_or_array(phi)


def jacobi_sn_cn_dn(u, m):
    """Return (sn, cn, dn) of u at parameter m."""
    m = check_parameter(m)
    u = np.asarray(u, dtype=float)
    if m == 1.0:
        sech = 1.0 / np.cosh(u)
        out = (np.tanh(u), sech, sech.copy())
    elif m == 0.0:
        out = (np.sin(u), np.cos(u), np.ones_like(u))
    else:
        phi = np.asarray(jacobi_am(u, m))
        sn = np.sin(phi)
        out = (sn, np.cos(phi), np.sqrt(1.0 - m * sn * sn))
    return tuple(_scalar_or_array(v) for v in out)


def jacobi_sc(u, m, cutoff=POLE_CUTOFF):
    """Glaisher's sc = sn/cn.  Raises PoleError when |cn| < cutoff."""
    m = check_parameter(m)
    sn, cn, _ = jacobi_sn_cn_dn(u, m)
    cn_arr = np.asarray(cn)
    bad = np.abs(cn_arr) < cutoff
    if np.any(bad):
        u_bad = float(np.asarray(u, dtype=float)[bad].flat[0]) if np.ndim(u) else float(u)
        raise _err(f"sc has a pole near u={u_bad!r}", PoleError, pole=nearest_sc_pole(u_bad, m))
    return _scalar_or_array(np.asarray(sn) / cn_arr)


def nearest_sc_pole(u, m):
    """Abscissa (2j+1)K(m) of the sc pole closest to u."""
    m = check_parameter(m)
    quarter = math.pi / 2 if m == 0.0 else complete_K(m)
    j = math.floor(u / (2.0 * quarter))
    return (2 * j + 1) * quarter
