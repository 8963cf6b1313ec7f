"""Schrodinger seed solutions and eigenfunctions of the half-line oscillator.

The base Hamiltonian is -1/2 d^2/dx^2 + x^2/2 on x > 0 with an infinite
barrier at the origin (units hbar = m = omega = 1).  Its physical
eigenfunctions vanish at x = 0 with energies 2n + 3/2; the even-parity
solutions at 2n + 1/2 violate that boundary condition and are kept as
non-physical eigenfunctions (NPE) because Darboux transformations map
them into physical states of partner Hamiltonians.

Seed (transformation) functions are solutions of H u = eps u for
arbitrary real eps; they need not be normalizable.
"""

from __future__ import annotations

import enum
import functools
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import numverify, specfun

__all__ = [
    "Parity",
    "EigenKind",
    "SeedSolution",
    "H0Eigenfunction",
    "make_seed",
    "h0_eigenfunction",
    "riccati_residual",
]

log = logging.getLogger(__name__)

# Gaussian-decaying objects are effectively zero past this point.
EVAL_DOMAIN_RIGHT = 12.0


class Parity(enum.Enum):
    ODD = "Odd"
    EVEN = "Even"
    GENERAL = "General"


class EigenKind(enum.Enum):
    PHYSICAL = "Physical"
    NPE = "NPE"


def seed_series_params(parity: Parity, epsilon) -> tuple[float, float]:
    """(a, b) of the 1F1 factor for a parity-definite seed."""
    eps = float(epsilon)
    if parity is Parity.ODD:
        return (3.0 - 2.0 * eps) / 4.0, 1.5
    return (1.0 - 2.0 * eps) / 4.0, 0.5


def _coerce_x(x):
    # Preserve extended precision when a caller evaluates with it.
    if np.ndim(x) == 0:
        return np.longdouble(x) if isinstance(x, np.longdouble) else float(x)
    x = np.asarray(x)
    return x if x.dtype == np.longdouble else np.asarray(x, dtype=float)


@dataclass(frozen=True)
class SeedSolution:
    """Transformation function u(x; eps) with analytic log-derivative.

    ``epsilon`` is stored exactly as supplied so exact (rational)
    parameter bookkeeping downstream survives construction.
    """

    epsilon: object
    parity: Parity
    nu: float | None = None
    _mix_coef: float = field(default=0.0, repr=False)

    def value_fn(self, x):
        x = _coerce_x(x)
        z = np.multiply(x, x)
        gauss = np.exp(-0.5 * z)
        if self.parity is Parity.ODD:
            a, b = seed_series_params(Parity.ODD, self.epsilon)
            return x * gauss * specfun.kummer_1f1(a, b, z)
        if self.parity is Parity.EVEN:
            a, b = seed_series_params(Parity.EVEN, self.epsilon)
            return gauss * specfun.kummer_1f1(a, b, z)
        a1, b1 = seed_series_params(Parity.EVEN, self.epsilon)
        a2, b2 = seed_series_params(Parity.ODD, self.epsilon)
        even_part = specfun.kummer_1f1(a1, b1, z)
        odd_part = specfun.kummer_1f1(a2, b2, z)
        return gauss * (even_part + self._mix_coef * x * odd_part)

    def log_deriv_fn(self, x):
        """u'(x)/u(x), assembled from analytic 1F1 derivatives."""
        x = _coerce_x(x)
        z = np.multiply(x, x)
        if self.parity is Parity.ODD:
            a, b = seed_series_params(Parity.ODD, self.epsilon)
            m, mz = specfun.kummer_z_derivatives(a, b, z, order=1)
            return 1.0 / x - x + 2.0 * x * mz / m
        if self.parity is Parity.EVEN:
            a, b = seed_series_params(Parity.EVEN, self.epsilon)
            m, mz = specfun.kummer_z_derivatives(a, b, z, order=1)
            return -x + 2.0 * x * mz / m
        a1, b1 = seed_series_params(Parity.EVEN, self.epsilon)
        a2, b2 = seed_series_params(Parity.ODD, self.epsilon)
        m1, m1z = specfun.kummer_z_derivatives(a1, b1, z, order=1)
        m2, m2z = specfun.kummer_z_derivatives(a2, b2, z, order=1)
        c = self._mix_coef
        num = 2.0 * x * m1z + c * (m2 + 2.0 * z * m2z)
        den = m1 + c * x * m2
        return -x + num / den

def make_seed(epsilon, parity: Parity, nu: float | None = None) -> SeedSolution:
    """Build a seed solution of H0 u = epsilon u on x > 0.

    Range policing (which epsilons give nodeless seeds) belongs to the
    transformation layer, not here.
    """
    if parity is Parity.GENERAL:
        if nu is None:
            raise ValueError("parity=General requires nu")
        eps = float(epsilon)
        arg_num = (3.0 - 2.0 * eps) / 4.0
        arg_den = (1.0 - 2.0 * eps) / 4.0
        for arg in (arg_num, arg_den):
            if arg <= 0 and float(arg) == int(arg):
                raise ValueError(
                    f"gamma-ratio pole in general seed: argument {arg} at epsilon={epsilon}"
                )
        mix = 2.0 * nu * specfun.gamma(arg_num) / specfun.gamma(arg_den)
        return SeedSolution(epsilon, parity, nu, mix)
    return SeedSolution(epsilon, parity, nu)


def _printed_norm_constant(n: int, kind: EigenKind) -> float:
    # Closed-form constants as printed; kept as a diagnostic only, the
    # quadrature value is authoritative.
    pi4 = math.pi**0.25
    if kind is EigenKind.PHYSICAL:
        return (
            2.0
            * math.factorial(2 * n + 1)
            / (pi4 * math.factorial(n))
            * math.sqrt(2.0 ** (-2 * n) / math.factorial(2 * n + 1))
        )
    return (
        math.factorial(2 * n)
        / (pi4 * math.factorial(n))
        * math.sqrt(2.0 ** (1 - 2 * n) / math.factorial(2 * n))
    )


@dataclass(frozen=True)
class H0Eigenfunction:
    """Closed-form eigenfunction of the base problem, unit L2 norm on (0, inf)."""

    n: int
    kind: EigenKind
    energy: float
    norm_constant: float

    def _series(self, z):
        b = 1.5 if self.kind is EigenKind.PHYSICAL else 0.5
        return specfun.kummer_z_derivatives(-float(self.n), b, z, order=1)

    def value_fn(self, x):
        x = np.asarray(x, dtype=float) if np.ndim(x) else float(x)
        z = np.multiply(x, x)
        m, _ = self._series(z)
        body = x * m if self.kind is EigenKind.PHYSICAL else m
        val = self.norm_constant * np.exp(-0.5 * z) * body
        return np.where(x > EVAL_DOMAIN_RIGHT, 0.0, val) if np.ndim(x) else (
            0.0 if x > EVAL_DOMAIN_RIGHT else val
        )

    def derivative_fn(self, x):
        x = np.asarray(x, dtype=float) if np.ndim(x) else float(x)
        z = np.multiply(x, x)
        m, mz = self._series(z)
        if self.kind is EigenKind.PHYSICAL:
            body = (1.0 - z) * m + 2.0 * z * mz
        else:
            body = x * (2.0 * mz - m)
        val = self.norm_constant * np.exp(-0.5 * z) * body
        return np.where(x > EVAL_DOMAIN_RIGHT, 0.0, val) if np.ndim(x) else (
            0.0 if x > EVAL_DOMAIN_RIGHT else val
        )


@functools.lru_cache(maxsize=256)
def h0_eigenfunction(n: int, kind: EigenKind) -> H0Eigenfunction:
    """Physical eigenfunction (energy 2n + 3/2) or NPE (energy 2n + 1/2).

    The normalization constant is recomputed by quadrature; the printed
    closed form is only logged for comparison.  Results are cached (the
    objects are immutable).
    """
    if not 0 <= n <= 50:
        raise ValueError(f"n={n} outside the supported range 0..50")
    kind = EigenKind(kind)
    energy = 2.0 * n + (1.5 if kind is EigenKind.PHYSICAL else 0.5)
    raw = H0Eigenfunction(n, kind, energy, 1.0)
    norm_sq = numverify.quadrature(lambda t: raw.value_fn(t) ** 2, 0.0, EVAL_DOMAIN_RIGHT)
    constant = 1.0 / math.sqrt(norm_sq)
    printed = _printed_norm_constant(n, kind)
    log.debug(
        "norm constant n=%d kind=%s: quadrature %.15g, printed closed form %.15g",
        n, kind.value, constant, printed,
    )
    return H0Eigenfunction(n, kind, energy, constant)


def riccati_residual(seed: SeedSolution, x: float) -> float:
    """alpha' + alpha^2 - 2(x^2/2 - eps) with alpha = u'/u.

    alpha is analytic; its derivative is taken by finite differences, so
    a vanishing residual certifies the analytic log-derivative.
    """
    u = seed.value_fn(x)
    if abs(u) < 1e-14:
        raise ZeroDivisionError(f"seed has a node at x={x}; log-derivative undefined")
    alpha = seed.log_deriv_fn(x)
    alpha_prime = numverify.fd_derivative(seed.log_deriv_fn, x, order=1)
    return alpha_prime + alpha**2 - 2.0 * (0.5 * x * x - float(seed.epsilon))
