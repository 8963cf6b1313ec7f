"""Scalar special functions with analytic derivatives.

Everything downstream (seed solutions, partner potentials, Painleve IV
closed forms) is assembled from the confluent hypergeometric function
1F1(a;b;z), the error functions, the Dawson function and the Gamma
function.  All evaluators accept a float or an ndarray for the running
argument and preserve the input kind.

Accuracy target is 1e-12 relative on |z| <= 200, which leaves enough
headroom for the 1e-6 second-derivative residual checks downstream.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from scipy import special as _sp

__all__ = [
    "kummer_1f1",
    "kummer_1f1_dz",
    "kummer_z_derivatives",
    "erf",
    "erfi",
    "dawson",
    "gamma",
]

# Series length covering z well past the |z| <= 200 accuracy envelope
# (terms peak near k ~ z, tail ~ 20*sqrt(z)).
_MAX_TERMS = 2200
_EXACT_TERMINATING_LIMIT = 60


def _check_b(b: float) -> None:
    if b <= 0 and float(b) == int(b):
        raise ValueError(f"1F1 pole: b={b} is a non-positive integer")


def _terminating_exact(a: float, b: float, z: float) -> float:
    # a = -n: the series is a degree-n polynomial; evaluate in exact
    # rational arithmetic (floats are exact rationals) and round once.
    n = int(-a)
    af, bf, zf = Fraction(a), Fraction(b), Fraction(z)
    term = Fraction(1)
    total = Fraction(1)
    for k in range(n):
        term *= (af + k) * zf
        term /= (bf + k) * (k + 1)
        total += term
    return float(total)


def _series_scalar(a: float, b: float, z: float) -> float:
    # Direct Taylor series with Kahan compensation; z >= 0.
    s = 1.0
    comp = 0.0
    t = 1.0
    for k in range(_MAX_TERMS):
        t *= (a + k) * z / ((b + k) * (k + 1))
        y = t - comp
        u = s + y
        comp = (u - s) - y
        s = u
        if t == 0.0:
            return s
        if math.isinf(t) or math.isinf(s):
            raise OverflowError(f"1F1({a};{b};{z}) exceeds the floating range")
        # Convergence may only be declared past the term hump.
        if abs(t) <= 1e-17 * abs(s) and a + k >= 0.0 and (a + k) * z < (b + k) * (k + 1):
            return s
    raise ArithmeticError(f"1F1 series did not converge for a={a}, b={b}, z={z}")


def _series_array_block(a: float, b: float, z: np.ndarray) -> np.ndarray:
    s = np.ones_like(z)
    comp = np.zeros_like(z)
    t = np.ones_like(z)
    zmax = float(np.max(z, initial=0.0))
    # Extended-precision inputs keep coefficient arithmetic in the same
    # precision (used by residual checks to beat assembly cancellation).
    one = np.longdouble(1.0) if z.dtype == np.longdouble else 1.0
    conv_tol = 1e-20 if z.dtype == np.longdouble else 1e-17
    for k in range(_MAX_TERMS):
        t = t * (((a + k) * one) / (((b + k) * one) * (k + 1))) * z
        y = t - comp
        u = s + y
        comp = (u - s) - y
        s = u
        if a + k >= 0.0 and (a + k) * zmax < (b + k) * (k + 1):
            if np.all(np.abs(t) <= conv_tol * np.abs(s)):
                return s
    raise ArithmeticError(f"1F1 series did not converge for a={a}, b={b}, max z={zmax}")


# The series length scales with z; splitting the grid into z-blocks keeps
# small-z points from paying for the largest one.
_Z_BLOCK_EDGES = (16.0, 49.0, 100.0, np.inf)


def _series_array(a: float, b: float, z: np.ndarray) -> np.ndarray:
    if z.size <= 8:
        return _series_array_block(a, b, z)
    out = np.empty_like(z)
    lower = 0.0
    for edge in _Z_BLOCK_EDGES:
        mask = (z >= lower) & (z < edge)
        if np.any(mask):
            out[mask] = _series_array_block(a, b, z[mask])
        lower = edge
    return out


def _kummer_scalar(a: float, b: float, z: float) -> float:
    if z == 0.0:
        return 1.0
    if a <= 0 and float(a) == int(a) and -a <= _EXACT_TERMINATING_LIMIT:
        return _terminating_exact(a, b, z)
    if z < 0.0:
        # Kummer transformation: the series at positive argument is the
        # well-conditioned one.
        return math.exp(z) * _kummer_scalar(b - a, b, -z)
    c = b - a
    if z > 30.0 and c <= 0 and float(c) == int(c) and -c <= _EXACT_TERMINATING_LIMIT:
        # Reflected series terminates: better conditioned than a long sum.
        return math.exp(z) * _terminating_exact(c, b, -z)
    return _series_scalar(a, b, z)


def kummer_1f1(a: float, b: float, z):
    """Confluent hypergeometric function 1F1(a;b;z).

    ``z`` may be a float or an ndarray.  For non-positive integer ``a``
    the terminating polynomial is evaluated exactly (rational
    arithmetic) in the scalar path.
    """
    _check_b(b)
    if np.ndim(z) == 0:
        val = _kummer_scalar(a, b, float(z))
        if math.isinf(val):
            raise OverflowError(f"1F1({a};{b};{z}) exceeds the floating range")
        return val
    z = np.asarray(z)
    if z.dtype != np.longdouble:
        z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    neg = z < 0.0
    if np.any(neg):
        out[neg] = np.exp(z[neg]) * _series_array(b - a, b, -z[neg])
    if np.any(~neg):
        out[~neg] = _series_array(a, b, z[~neg])
    if np.any(np.isinf(out)):
        raise OverflowError(f"1F1({a};{b};z) exceeds the floating range on the grid")
    return out


def kummer_1f1_dz(a: float, b: float, z):
    """d/dz 1F1(a;b;z) via the contiguous identity (a/b)*1F1(a+1;b+1;z)."""
    _check_b(b + 1.0)
    return (a / b) * kummer_1f1(a + 1.0, b + 1.0, z)


def kummer_z_derivatives(a: float, b: float, z, order: int = 3):
    """1F1(a;b;z) together with its first ``order`` z-derivatives.

    The k-th derivative is (a)_k/(b)_k * 1F1(a+k;b+k;z); returned as a
    list [M, M', M'', ...].
    """
    _check_b(b + order)
    out = [kummer_1f1(a, b, z)]
    coef = 1.0
    for k in range(1, order + 1):
        coef *= (a + k - 1.0) / (b + k - 1.0)
        out.append(coef * kummer_1f1(a + k, b + k, z))
    return out


def erf(x):
    """Error function."""
    return _sp.erf(x)


def erfi(x):
    """Imaginary error function; raises instead of returning inf."""
    out = _sp.erfi(x)
    if np.any(np.isinf(out)):
        raise OverflowError("erfi overflow: |x| too large (grows like exp(x^2))")
    return out


def dawson(x):
    """Dawson function F(x) = (sqrt(pi)/2) exp(-x^2) erfi(x)."""
    return _sp.dawsn(x)


def gamma(x: float) -> float:
    """Gamma function on the real line, with an explicit pole error."""
    if x <= 0 and float(x) == int(x):
        raise ValueError(f"gamma pole at x={x}")
    return math.gamma(x)
