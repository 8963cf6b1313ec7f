"""Third-order ladder structure and Painleve IV solutions.

Partner Hamiltonians built from one seed (first order) or from the
reduced pair (u, a^- u) at energies (eps, eps - 1) (second order) carry
third-order ladder operators.  Their three extremal states phi_i with
eigenvalues eps_i generate solutions of the Painleve IV equation

    g'' = (g')^2/(2g) + 3 g^3/2 + 4 x g^2 + 2 (x^2 - a) g + b/g

through g = -x - [ln phi]', with parameters determined by the cyclic
permutations of the eigenvalue triple:

    a = e2 + e3 - 2 e1 - 1,   b = -2 (e2 - e3)^2.

Everything here is assembled from the seed's analytic log-derivative
alpha = u'/u; its x-derivatives follow from the Riccati relation
alpha' = x^2 - 2 eps - alpha^2, so no numerical differentiation enters
the constructions themselves.

The admissible epsilon domain is wider than the nonsingular windows of
the transformation layer: seeds with nodes give Painleve IV solutions
with poles at x > 0 (besides the fixed one at the origin), which are in
scope here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import numverify
from .seeds import Parity, SeedSolution, make_seed

__all__ = [
    "Provenance",
    "ExtremalState",
    "PivSolution",
    "UndeterminedSolutionError",
    "IdenticallyZeroStateError",
    "eigenvalue_triple",
    "permuted_triple",
    "piv_parameters",
    "extremal_states_first",
    "extremal_states_second",
    "extremal_partner_potential",
    "piv_from_state",
    "piv_residual",
    "closed_form_g",
    "reconstruct_potential_from_g",
]

_PROBE_XS = np.array([0.41, 0.93, 1.67, 2.55, 3.71])
_DEGENERACY_RTOL = 1e-9


class Provenance(enum.Enum):
    FIRST_ORDER = "FirstOrder"
    SECOND_ORDER_REDUCED = "SecondOrderReduced"


class UndeterminedSolutionError(ArithmeticError):
    """The requested closed form degenerates to 0/0 identically."""


class IdenticallyZeroStateError(ArithmeticError):
    """The extremal state vanishes identically; no PIV solution exists."""


class NearSingularityError(ArithmeticError):
    pass


class NearZeroError(ArithmeticError):
    pass


def _alpha_pack(seed: SeedSolution, x):
    """alpha, alpha', alpha'' at x, using the Riccati relation for the derivatives."""
    eps = float(seed.epsilon)
    alpha = seed.log_deriv_fn(x)
    z = np.multiply(x, x)
    alpha_p = z - 2.0 * eps - alpha * alpha
    alpha_pp = 2.0 * np.asarray(x) - 2.0 * alpha * alpha_p
    return alpha, alpha_p, alpha_pp


# ---------------------------------------------------------------------------
# Eigenvalue bookkeeping (kept exact for rational inputs)
# ---------------------------------------------------------------------------

def eigenvalue_triple(order: int, epsilon):
    """Base eigenvalues of the three extremal states."""
    half = Fraction(1, 2)
    if order == 1:
        return (epsilon, epsilon + 1, half)
    if order == 2:
        return (epsilon - 1, epsilon + 1, half)
    raise ValueError("order must be 1 or 2")


def permuted_triple(triple, index: int):
    """Cyclic permutation putting extremal state ``index`` in the lead slot."""
    e1, e2, e3 = triple
    if index == 1:
        return (e1, e2, e3)
    if index == 2:
        return (e2, e3, e1)
    if index == 3:
        return (e3, e1, e2)
    raise ValueError("index must be 1, 2 or 3")


def piv_parameters(order: int, index: int, epsilon):
    """(a, b) of the PIV equation solved by g built from state ``index``."""
    e1, e2, e3 = permuted_triple(eigenvalue_triple(order, epsilon), index)
    a = e2 + e3 - 2 * e1 - 1
    b = -2 * (e2 - e3) ** 2
    return a, b


# ---------------------------------------------------------------------------
# Extremal states
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtremalState:
    index: int
    varepsilon: object
    provenance: Provenance
    seed: SeedSolution
    _value: object
    _log_deriv: object
    _degeneracy: object  # callable x -> (factor, scale); None when never degenerate

    def value_fn(self, x):
        return self._value(x)

    def log_deriv_fn(self, x):
        return self._log_deriv(x)

    def is_identically_zero(self) -> bool:
        if self._degeneracy is None:
            return False
        factor, scale = self._degeneracy(_PROBE_XS)
        return bool(np.all(np.abs(factor) <= _DEGENERACY_RTOL * (np.abs(scale) + 1e-300)))


def extremal_states_first(seed: SeedSolution) -> tuple[ExtremalState, ExtremalState, ExtremalState]:
    """The three extremal states of a first-order partner.

    phi_1 ~ 1/u, phi_2 ~ u [(ln u)'' - 1], phi_3 ~ (x + alpha) exp(-x^2/2),
    with eigenvalues (eps, eps + 1, 1/2).
    """
    if seed.parity not in (Parity.ODD, Parity.EVEN):
        raise ValueError("extremal states need a parity-definite seed")
    triple = eigenvalue_triple(1, seed.epsilon)

    def v1(x):
        return 1.0 / seed.value_fn(x)

    def ld1(x):
        return -seed.log_deriv_fn(x)

    def v2(x):
        _, ap, _ = _alpha_pack(seed, x)
        return seed.value_fn(x) * (ap - 1.0)

    def ld2(x):
        a, ap, app = _alpha_pack(seed, x)
        return a + app / (ap - 1.0)

    def deg2(x):
        _, ap, _ = _alpha_pack(seed, x)
        return ap - 1.0, np.abs(ap) + 1.0

    def v3(x):
        a, _, _ = _alpha_pack(seed, x)
        return (x + a) * np.exp(-0.5 * np.multiply(x, x))

    def ld3(x):
        a, ap, _ = _alpha_pack(seed, x)
        return -np.asarray(x) + (1.0 + ap) / (x + a)

    def deg3(x):
        a, _, _ = _alpha_pack(seed, x)
        return x + a, np.abs(x) + np.abs(a)

    return (
        ExtremalState(1, triple[0], Provenance.FIRST_ORDER, seed, v1, ld1, None),
        ExtremalState(2, triple[1], Provenance.FIRST_ORDER, seed, v2, ld2, deg2),
        ExtremalState(3, triple[2], Provenance.FIRST_ORDER, seed, v3, ld3, deg3),
    )


def extremal_states_second(seed: SeedSolution) -> tuple[ExtremalState, ExtremalState, ExtremalState]:
    """Extremal states of the reduced second-order partner (u2 = a^- u1).

    With D = x^2 + 1 - 2 eps - alpha^2 and eta = 2 (x + alpha)/D:

        phi_1 ~ 1/(u D),  phi_2 ~ u (2 alpha - eta),
        phi_3 ~ exp(-x^2/2) [(x + alpha) eta + 2 eps - 1],

    eigenvalues (eps - 1, eps + 1, 1/2).
    """
    if seed.parity not in (Parity.ODD, Parity.EVEN):
        raise ValueError("extremal states need a parity-definite seed")
    eps = float(seed.epsilon)
    triple = eigenvalue_triple(2, seed.epsilon)

    def dpack(x):
        a, ap, app = _alpha_pack(seed, x)
        d = ap + 1.0
        d1 = app
        d2 = 2.0 - 2.0 * (ap * ap + a * app)
        return a, ap, d, d1, d2

    # The eta denominator D vanishing identically means the implied
    # companion seed a^- u is zero (u is the oscillator ground state).
    a0, _, d0, _, _ = dpack(_PROBE_XS)
    if np.all(np.abs(d0) <= _DEGENERACY_RTOL * (np.abs(a0) ** 2 + _PROBE_XS**2 + 1.0)):
        raise NearSingularityError(
            f"eta denominator vanishes identically at eps={eps}: the implied "
            "second seed a^- u is null"
        )

    def v1(x):
        a, ap, d, _, _ = dpack(x)
        return 1.0 / (seed.value_fn(x) * d)

    def ld1(x):
        a, ap, d, d1, _ = dpack(x)
        return -a - d1 / d

    def v2(x):
        a, ap, d, _, _ = dpack(x)
        eta = 2.0 * (x + a) / d
        return seed.value_fn(x) * (2.0 * a - eta)

    def ld2(x):
        a, ap, d, d1, _ = dpack(x)
        eta = 2.0 * (x + a) / d
        eta_p = 2.0 * (1.0 + ap) / d - eta * d1 / d
        return a + (2.0 * ap - eta_p) / (2.0 * a - eta)

    def deg2(x):
        a, ap, d, _, _ = dpack(x)
        eta = 2.0 * (x + a) / d
        return 2.0 * a - eta, np.abs(a) + np.abs(eta)

    def v3(x):
        a, ap, d, _, _ = dpack(x)
        eta = 2.0 * (x + a) / d
        return np.exp(-0.5 * np.multiply(x, x)) * ((x + a) * eta + 2.0 * eps - 1.0)

    def ld3(x):
        a, ap, d, d1, _ = dpack(x)
        eta = 2.0 * (x + a) / d
        eta_p = 2.0 * (1.0 + ap) / d - eta * d1 / d
        bracket = (x + a) * eta + 2.0 * eps - 1.0
        return -np.asarray(x) + ((1.0 + ap) * eta + (x + a) * eta_p) / bracket

    def deg3(x):
        a, ap, d, _, _ = dpack(x)
        eta = 2.0 * (x + a) / d
        bracket = (x + a) * eta + 2.0 * eps - 1.0
        return bracket, np.abs((x + a) * eta) + abs(2.0 * eps - 1.0) + 1.0

    return (
        ExtremalState(1, triple[0], Provenance.SECOND_ORDER_REDUCED, seed, v1, ld1, None),
        ExtremalState(2, triple[1], Provenance.SECOND_ORDER_REDUCED, seed, v2, ld2, deg2),
        ExtremalState(3, triple[2], Provenance.SECOND_ORDER_REDUCED, seed, v3, ld3, deg3),
    )


def extremal_partner_potential(provenance: Provenance, seed: SeedSolution):
    """Potential of the Hamiltonian the extremal states belong to.

    Computed through the Riccati relation, so it stays valid for seeds
    with nodes (where the transformation layer would refuse to build the
    partner).  First order: V = alpha^2 - x^2/2 + 2 eps.  Second order:
    V = x^2/2 - 2 alpha' - [ln D]''.
    """
    eps = float(seed.epsilon)
    if provenance is Provenance.FIRST_ORDER:
        def potential(x):
            a, _, _ = _alpha_pack(seed, x)
            return a * a - 0.5 * np.multiply(x, x) + 2.0 * eps

        return potential

    def potential(x):
        a, ap, app = _alpha_pack(seed, x)
        d = ap + 1.0
        d2 = 2.0 - 2.0 * (ap * ap + a * app)
        return 0.5 * np.multiply(x, x) - 2.0 * ap - (d2 / d - (app / d) ** 2)

    return potential


# ---------------------------------------------------------------------------
# Painleve IV solutions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PivSolution:
    a: object
    b: object
    order: int
    parity: Parity
    permutation_index: int
    epsilon: object
    trivial_zero: bool
    _g: object

    def g_fn(self, x):
        return self._g(x)


def _is_trivial_zero(gfn, scale_fn=None) -> bool:
    vals = np.asarray(gfn(_PROBE_XS), dtype=float)
    scale = np.abs(scale_fn(_PROBE_XS)) if scale_fn is not None else 0.0
    return bool(np.all(np.abs(vals) <= 1e-9 * (scale + _PROBE_XS + 1.0)))


def piv_from_state(state: ExtremalState) -> PivSolution:
    """g = -x - [ln phi]' for an extremal state, with its (a, b)."""
    if state.is_identically_zero():
        raise IdenticallyZeroStateError(
            f"extremal state index={state.index} at eps={state.seed.epsilon} is identically zero"
        )
    order = 1 if state.provenance is Provenance.FIRST_ORDER else 2
    a, b = piv_parameters(order, state.index, state.seed.epsilon)

    def g(x, _state=state):
        return -np.asarray(x) - _state.log_deriv_fn(x)

    return PivSolution(a, b, order, state.seed.parity, state.index,
                       state.seed.epsilon, _is_trivial_zero(g), g)


def _closed_g1_first(seed: SeedSolution):
    def g1(x):
        return -np.asarray(x) + seed.log_deriv_fn(x)

    return g1


def closed_form_g(order: int, parity: Parity, index: int, epsilon) -> PivSolution:
    """The printed closed-form solutions g1, g2, g3.

    g1 comes from the seed's log-derivative; g2 and g3 are rational in
    g1 (first order) or in alpha (second order).  Combinations whose
    defining expression degenerates to 0/0 identically raise
    ``UndeterminedSolutionError``.
    """
    parity = Parity(parity)
    if parity not in (Parity.ODD, Parity.EVEN):
        raise ValueError("closed forms exist for Odd/Even seeds")
    if index not in (1, 2, 3):
        raise ValueError("index must be 1, 2 or 3")
    seed = make_seed(epsilon, parity)
    eps = float(epsilon)

    den_probe = None
    if order == 1:
        g1 = _closed_g1_first(seed)
        if index == 1:
            gfn = g1
        elif index == 2:
            def gfn(x, _g1=g1):
                v1 = _g1(x)
                s = v1 + x
                num = x + (2.0 * eps - np.multiply(x, x)) * s + s**3
                den = np.multiply(x, x) - 2.0 * eps - 1.0 - s * s
                return -v1 - 2.0 * np.asarray(x) - 2.0 * num / den

            def den_probe(x, _g1=g1):
                s = _g1(x) + x
                den = np.multiply(x, x) - 2.0 * eps - 1.0 - s * s
                return den, np.multiply(x, x) + abs(2.0 * eps + 1.0) + s * s

        else:
            def gfn(x, _g1=g1):
                v1 = _g1(x)
                return (v1 * v1 + 2.0 * x * v1 + 2.0 * eps - 1.0) / (v1 + 2.0 * x)

            def den_probe(x, _g1=g1):
                v1 = _g1(x)
                return v1 + 2.0 * x, np.abs(v1) + 2.0 * np.abs(x)

    elif order == 2:
        def alpha(x):
            return seed.log_deriv_fn(x)

        def g1(x):
            al = alpha(x)
            d = np.multiply(x, x) + 1.0 - 2.0 * eps - al * al
            return -np.asarray(x) - al + 2.0 * (x + al) / d

        if index == 1:
            gfn = g1

            def den_probe(x):
                al = alpha(x)
                d = np.multiply(x, x) + 1.0 - 2.0 * eps - al * al
                return d, np.multiply(x, x) + al * al + abs(1.0 - 2.0 * eps) + 1.0

        elif index == 2:
            def gfn(x):
                al = alpha(x)
                v1 = g1(x)
                return v1 + (2.0 * al * al - 2.0 * np.multiply(x, x) + 2.0 * (2.0 * eps + 1.0)) / (al - v1 - x)

            def den_probe(x):
                al = alpha(x)
                v1 = g1(x)
                return al - v1 - x, np.abs(al) + np.abs(v1) + np.abs(x)

        else:
            def gfn(x):
                al = alpha(x)
                v1 = g1(x)
                xa = x + al
                num = xa * v1 * v1 + (2.0 * eps - 1.0 + xa * xa) * v1 + (2.0 * eps - 3.0) * xa
                den = xa * xa + xa * v1 + 2.0 * eps - 1.0
                return num / den

            def den_probe(x):
                al = alpha(x)
                v1 = g1(x)
                xa = x + al
                den = xa * xa + xa * v1 + 2.0 * eps - 1.0
                return den, xa * xa + np.abs(xa * v1) + abs(2.0 * eps - 1.0)

    else:
        raise ValueError("order must be 1 or 2")

    if den_probe is not None:
        den, scale = den_probe(_PROBE_XS)
        den = np.asarray(den, dtype=float)
        if not np.all(np.isfinite(den)) or np.all(
            np.abs(den) <= _DEGENERACY_RTOL * (np.abs(scale) + 1e-300)
        ):
            raise UndeterminedSolutionError(
                f"g{index} (order {order}, {parity.value}, eps={epsilon}) degenerates "
                f"to 0/0: denominator ~ {den[0]:.3e} at x={_PROBE_XS[0]}"
            )

    a, b = piv_parameters(order, index, epsilon)
    return PivSolution(a, b, order, parity, index, epsilon, _is_trivial_zero(gfn), gfn)


def _fd_with_guard(values, center, step, second: bool) -> float:
    # values: f at x -/+ step, step/2, step/4 for the chosen derivative.
    (m4, m2, m1, p1, p2, p4) = values
    if second:
        d_h = (p4 - 2.0 * center + m4) / step**2
        d_h2 = (p2 - 2.0 * center + m2) / (step / 2.0) ** 2
        d_h4 = (p1 - 2.0 * center + m1) / (step / 4.0) ** 2
    else:
        d_h = (p4 - m4) / (2.0 * step)
        d_h2 = (p2 - m2) / step
        d_h4 = (p1 - m1) / (step / 2.0)
    diff1 = float(d_h - d_h2)
    diff2 = float(d_h2 - d_h4)
    scale = max(1.0, abs(float(d_h4)))
    # Both central differences converge like h^2: successive gaps must
    # shrink by ~4 unless the evaluation is noise-dominated.  Gaps at
    # rounding level need no extrapolation safety check.
    negligible = abs(diff1) <= 1e-7 * scale and abs(diff2) <= 1e-7 * scale
    clean_ratio = (
        abs(diff2) > 0.0
        and 2.0 <= diff1 / diff2 <= 6.5
        and abs(diff2) <= 1e-5 * scale
    )
    if not (negligible or clean_ratio):
        raise NearSingularityError(
            "finite differences do not converge at truncation order; "
            "evaluation is not locally smooth"
        )
    return float((4.0 * d_h4 - d_h2) / 3.0)


def piv_residual(piv: PivSolution, x: float) -> float:
    """Defect of g in the PIV equation at x.

    Derivatives use central differences with one Richardson level on
    the finest step pair (base step 1e-3 max(1, |x|)); a convergence-
    ratio guard across three step sizes rejects points where the
    evaluation of g is roundoff-dominated (e.g. near removable
    singularities of the hypergeometric assembly).
    """
    if x <= 0:
        raise ValueError("residual is evaluated on x > 0")
    h = 1e-3 * max(1.0, abs(x))
    # Stencil evaluated in extended precision: the hypergeometric
    # assemblies carry ~1e-14 absolute cancellation noise in doubles,
    # which the h^-2 of the second difference would amplify past the
    # 1e-6 residual target.
    nodes = np.longdouble(x) + np.array(
        [-h, -h / 2.0, -h / 4.0, 0.0, h / 4.0, h / 2.0, h], dtype=np.longdouble
    )
    gv = np.asarray(piv.g_fn(nodes))
    g = gv[3]
    if not np.all(np.isfinite(gv.astype(float))) or float(np.max(np.abs(gv))) > 1e12:
        raise NearSingularityError(f"g has a pole within ~{h:.1e} of x={x}")
    if abs(float(g)) <= 1e-10:
        raise NearZeroError(f"|g(x)| <= 1e-10 at x={x}; the equation divides by g")
    vals = (gv[0], gv[1], gv[2], gv[4], gv[5], gv[6])
    g1 = _fd_with_guard(vals, g, h, second=False)
    g2 = _fd_with_guard(vals, g, h, second=True)
    g = float(g)
    a, b = float(piv.a), float(piv.b)
    rhs = g1 * g1 / (2.0 * g) + 1.5 * g**3 + 4.0 * x * g * g + 2.0 * (x * x - a) * g + b / g
    return float(g2 - rhs)


@dataclass(frozen=True)
class ReconstructedPotential:
    """Potential with third-order ladder operators rebuilt from g.

    Also exposes the first-order superpotential f = x + g and the
    second-order coefficient h used in the factorized ladder operators.
    """

    piv: PivSolution
    epsilon1: float

    def _g_and_d(self, x: float):
        g = float(self.piv.g_fn(x))
        gp = numverify.fd_derivative(self.piv.g_fn, x, order=1)
        return g, gp

    def potential_fn(self, x):
        if np.ndim(x):
            return np.array([self.potential_fn(float(t)) for t in np.asarray(x)])
        g, gp = self._g_and_d(float(x))
        return 0.5 * x * x - 0.5 * gp + 0.5 * g * g + x * g + self.epsilon1 - 0.5

    def f_fn(self, x):
        return x + self.piv.g_fn(x)

    def h_fn(self, x):
        if np.ndim(x):
            return np.array([self.h_fn(float(t)) for t in np.asarray(x)])
        g, gp = self._g_and_d(float(x))
        return 0.5 * gp - 0.5 * g * g - 2.0 * x * g - x * x + float(self.piv.a)


def reconstruct_potential_from_g(piv: PivSolution, epsilon1: float) -> ReconstructedPotential:
    """Rebuild the potential from a PIV solution (diagnostic closure check)."""
    return ReconstructedPotential(piv, float(epsilon1))
