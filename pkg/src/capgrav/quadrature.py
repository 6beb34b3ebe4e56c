"""One-dimensional quadrature on [0, H] for integrands singular at 0.

Two unrelated rules are provided so that each can check the other:

* ``adaptive``: Gauss-Kronrod subdivision (QUADPACK via scipy) after the
  substitution h = s^2, which removes an inverse-square-root singularity.
* ``tanh_sinh``: double-exponential rule evaluated directly in h; the node
  distances from 0 are formed without cancellation, so the integrand can be
  sampled extremely close to the singular end.
"""

import math
import warnings

from scipy import integrate as _integrate

from .errors import QuadratureError


def adaptive(f, H, rtol=1e-13, limit=400):
    """Integral of f(h) over [0, H] (H >= 0)."""
    if H == 0.0:
        return 0.0
    root = math.sqrt(H)

    def g(s):
        return 2.0 * s * f(s * s)

    with warnings.catch_warnings():
        warnings.simplefilter("error", _integrate.IntegrationWarning)
        try:
            val, _ = _integrate.quad(g, 0.0, root, epsabs=0.0, epsrel=rtol, limit=limit)
        except _integrate.IntegrationWarning as exc:
            raise QuadratureError(f"adaptive quadrature did not converge: {exc}", (0.0, H),
                                  module="quadrature") from None
    return val


def tanh_sinh(f, H, rtol=1e-14, max_level=12, k_max=4.0):
    """Integral of f(h) over [0, H] by the tanh-sinh rule with step halving.

    Nodes are h = H / (1 + exp(-pi sinh k)); weights use
    sigma (1 - sigma) = 1 / (2 + 2 cosh(pi sinh k)).
    """
    if H == 0.0:
        return 0.0

    def term(k):
        q = math.pi * math.sinh(k)
        if q < -700.0:
            return 0.0
        if q > 700.0:
            return 0.0
        h = H / (1.0 + math.exp(-q))
        if h <= 0.0 or h >= H:
            return 0.0
        w = H * math.pi * math.cosh(k) / (2.0 + 2.0 * math.cosh(q))
        return w * f(h)

    step = 1.0
    n = int(k_max / step)
    total = sum(term(j * step) for j in range(-n, n + 1))
    estimate = total * step
    for _ in range(max_level):
        step *= 0.5
        n = int(k_max / step)
        # new nodes are the odd multiples of the halved step
        total += sum(term(j * step) for j in range(-n, n + 1) if j % 2)
        new = total * step
        if abs(new - estimate) <= rtol * abs(new):
            return new
        estimate = new
    raise QuadratureError("tanh-sinh rule did not converge", (0.0, H), module="quadrature")
