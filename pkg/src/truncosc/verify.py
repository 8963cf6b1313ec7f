"""Verification check suites.

Each suite evaluates a family of analytic constructions against an
independent numerical oracle (finite-difference eigensolver, quadrature,
finite differences) and returns structured pass/fail records.  The CLI
serializes them; the acceptance tests assert them.

``REFERENCE_PIV_CELLS`` holds closed forms of the Painleve IV solutions
at special factorization energies.  Every entry has been verified to
satisfy the PIV equation symbolically (residual identically zero) for
its (a, b); entries whose commonly transcribed forms fail that equation
carry the corrected/derived expression, with provenance in ``status``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import numverify, pha_piv, specfun, susy
from .numverify import GridSpec
from .seeds import EigenKind, Parity, h0_eigenfunction, make_seed, riccati_residual
from .susy import TransformationCase

__all__ = [
    "Check",
    "REFERENCE_PIV_CELLS",
    "UNDETERMINED_PIV_CELLS",
    "suite",
    "SUITE_NAMES",
    "spectrum_states",
]


@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    threshold: float
    passed: bool
    detail: str = ""


def _check(name: str, measured: float, threshold: float, detail: str = "") -> Check:
    return Check(name, float(measured), float(threshold), bool(measured <= threshold), detail)


# ---------------------------------------------------------------------------
# Reference Painleve IV solutions at special energies
# ---------------------------------------------------------------------------

_SQRT_PI = math.sqrt(math.pi)


def _F(x):
    return specfun.dawson(x)


def _erf(x):
    return specfun.erf(x)


@dataclass(frozen=True)
class PivCell:
    order: int
    parity: Parity
    index: int
    epsilon: Fraction
    kind: str      # rational | transcendental | zero
    status: str    # printed | corrected | derived
    fn: object


def _cell(order, parity, index, eps, kind, status, fn):
    return PivCell(order, parity, index, Fraction(eps), kind, status, fn)


REFERENCE_PIV_CELLS: tuple[PivCell, ...] = (
    # ---- first order, odd seed ----
    _cell(1, Parity.ODD, 1, "-1/2", "transcendental", "printed",
          lambda x: 2.0 * np.exp(-x**2) / (_SQRT_PI * _erf(x))),
    _cell(1, Parity.ODD, 2, "-1/2", "transcendental", "printed",
          lambda x: 2.0 * np.exp(-x**2) / (_SQRT_PI * _erf(x))
          + 1.0 / (_SQRT_PI * np.exp(x**2) * x**2 * _erf(x) + x) - 1.0 / x),
    _cell(1, Parity.ODD, 3, "-1/2", "transcendental", "printed",
          lambda x: 2.0 * np.exp(-x**2) / (_SQRT_PI * _erf(x))
          + 1.0 / (_SQRT_PI * np.exp(x**2) * x**2 * _erf(x) + x) - 1.0 / x),
    _cell(1, Parity.ODD, 1, "1/2", "transcendental", "corrected",
          lambda x: 1.0 / _F(x) - 2.0 * x),
    _cell(1, Parity.ODD, 2, "1/2", "transcendental", "printed",
          lambda x: (1.0 - 2.0 * x * _F(x))**2 / (2.0 * _F(x)**2 * (_F(x) - x) + _F(x))),
    _cell(1, Parity.ODD, 3, "1/2", "transcendental", "printed",
          lambda x: 1.0 / _F(x) - 2.0 * x),
    _cell(1, Parity.ODD, 1, "3/2", "rational", "printed", lambda x: 1.0 / x - 2.0 * x),
    _cell(1, Parity.ODD, 2, "3/2", "rational", "printed",
          lambda x: (1.0 - 2.0 * x**2) / (2.0 * x**3 + x)),
    _cell(1, Parity.ODD, 3, "3/2", "rational", "printed", lambda x: 1.0 / x),
    # ---- first order, even seed ----
    _cell(1, Parity.EVEN, 1, "-1/2", "zero", "printed", lambda x: 0.0 * x),
    _cell(1, Parity.EVEN, 3, "-1/2", "rational", "printed", lambda x: -1.0 / x),
    _cell(1, Parity.EVEN, 1, "1/2", "rational", "printed", lambda x: -2.0 * x),
    _cell(1, Parity.EVEN, 2, "1/2", "zero", "printed", lambda x: 0.0 * x),
    _cell(1, Parity.EVEN, 1, "3/2", "transcendental", "corrected",
          lambda x: 2.0 * ((1.0 - 2.0 * x**2) * _F(x) + x) / (2.0 * x * _F(x) - 1.0)),
    _cell(1, Parity.EVEN, 2, "3/2", "transcendental", "printed",
          lambda x: ((2.0 * x**2 - 1.0) * _F(x) - x) * (2.0 * (x - _F(x)) * _F(x) - 1.0)
          / ((2.0 * x * _F(x) - 1.0)
             * (_F(x) * (2.0 * x**2 * _F(x) + _F(x) - 3.0 * x) + 1.0))),
    _cell(1, Parity.EVEN, 3, "3/2", "transcendental", "printed",
          lambda x: 2.0 * _F(x) / (2.0 * x * _F(x) - 1.0) - 1.0 / _F(x)),
    # ---- second order, odd seed ----
    _cell(2, Parity.ODD, 1, "-3/2", "rational", "printed",
          lambda x: (1.0 + 2.0 * x**2) / (2.0 * x**3 - x)),
    _cell(2, Parity.ODD, 2, "-3/2", "rational", "derived",
          lambda x: (6.0 * x - 4.0 * x**3) / (2.0 * x**2 - 1.0)),
    _cell(2, Parity.ODD, 3, "-3/2", "rational", "printed",
          lambda x: 4.0 * x * (3.0 + 4.0 * x**2 - 4.0 * x**4)
          / ((2.0 * x**2 - 1.0) * (3.0 + 4.0 * x**4))),
    _cell(2, Parity.ODD, 1, "3/2", "rational", "printed", lambda x: -1.0 / x - 2.0 * x),
    _cell(2, Parity.ODD, 2, "3/2", "zero", "derived", lambda x: 0.0 * x),
    _cell(2, Parity.ODD, 1, "7/2", "rational", "printed",
          lambda x: (9.0 - 48.0 * x**4 + 32.0 * x**6 - 16.0 * x**8)
          / (x * (2.0 * x**2 - 3.0) * (3.0 + 4.0 * x**4))),
    _cell(2, Parity.ODD, 2, "7/2", "rational", "derived",
          lambda x: -4.0 * x * (16.0 * x**8 + 72.0 * x**2 + 27.0)
          / ((3.0 + 4.0 * x**4) * (8.0 * x**6 + 12.0 * x**4 + 18.0 * x**2 - 9.0))),
    _cell(2, Parity.ODD, 3, "7/2", "rational", "printed",
          lambda x: 4.0 * x * (4.0 * x**4 + 4.0 * x**2 - 3.0)
          / ((1.0 + 2.0 * x**2) * (3.0 + 4.0 * x**4))),
    # ---- second order, even seed ----
    _cell(2, Parity.EVEN, 1, "-5/2", "rational", "printed",
          lambda x: 4.0 * x * (4.0 * x**4 + 4.0 * x**2 - 3.0)
          / ((1.0 + 2.0 * x**2) * (3.0 + 4.0 * x**4))),
    _cell(2, Parity.EVEN, 2, "-5/2", "rational", "derived",
          lambda x: (9.0 - 48.0 * x**4 + 32.0 * x**6 - 16.0 * x**8)
          / (x * (2.0 * x**2 - 3.0) * (3.0 + 4.0 * x**4))),
    _cell(2, Parity.EVEN, 3, "-5/2", "rational", "printed",
          lambda x: -4.0 * x * (16.0 * x**8 + 72.0 * x**2 + 27.0)
          / ((3.0 + 4.0 * x**4) * (8.0 * x**6 + 12.0 * x**4 + 18.0 * x**2 - 9.0))),
    _cell(2, Parity.EVEN, 1, "-1/2", "zero", "printed", lambda x: 0.0 * x),
    _cell(2, Parity.EVEN, 3, "-1/2", "rational", "printed",
          lambda x: 4.0 * x / (1.0 - 2.0 * x**2)),
    _cell(2, Parity.EVEN, 1, "5/2", "rational", "printed",
          lambda x: (6.0 * x + 8.0 * x**5) / (1.0 - 4.0 * x**4)),
    _cell(2, Parity.EVEN, 2, "5/2", "rational", "derived",
          lambda x: -(3.0 + 4.0 * x**4)
          / (x * (2.0 * x**2 + 1.0) * (2.0 * x**2 + 3.0))),
    _cell(2, Parity.EVEN, 3, "5/2", "rational", "printed",
          lambda x: 4.0 * x / (1.0 + 2.0 * x**2)),
)

# Combinations whose defining expression collapses to 0/0 identically.
UNDETERMINED_PIV_CELLS: tuple[tuple[int, Parity, int, Fraction], ...] = (
    (1, Parity.EVEN, 2, Fraction(-1, 2)),
    (1, Parity.EVEN, 3, Fraction(1, 2)),
    (2, Parity.ODD, 3, Fraction(3, 2)),
    (2, Parity.EVEN, 2, Fraction(-1, 2)),
)

_TABLE_GRID = np.linspace(0.2, 5.0, 50)


def _compare_cell(cell: PivCell) -> Check:
    name = f"piv-table o{cell.order} {cell.parity.value} g{cell.index} eps={cell.epsilon}"
    piv = pha_piv.closed_form_g(cell.order, cell.parity, cell.index, cell.epsilon)
    mine = np.asarray(piv.g_fn(_TABLE_GRID), dtype=float)
    ref = np.asarray(cell.fn(_TABLE_GRID), dtype=float)
    if cell.kind == "zero":
        return _check(name, np.max(np.abs(mine)), 1e-9, "zero solution")
    sup = float(np.max(np.abs(ref[np.isfinite(ref)])))
    if cell.kind == "rational":
        # Pointwise relative, skipping only grid points that sit on a
        # zero or pole of the reference itself.
        usable = np.isfinite(ref) & (np.abs(ref) > 1e-6 * sup) & (np.abs(ref) < 1e8)
        measured = float(np.max(np.abs((mine[usable] - ref[usable]) / ref[usable])))
        return _check(name, measured, 1e-9, cell.status)
    # Transcendental entries involve exponentially degenerate
    # combinations at large x (differences of e^{+x^2}-scale terms), so
    # the comparison is sup-relative and stops at x = 3.5, the edge of
    # what double precision supports for these assemblies.
    grid = np.linspace(0.2, 3.5, 50)
    mine = np.asarray(piv.g_fn(grid), dtype=float)
    ref = np.asarray(cell.fn(grid), dtype=float)
    usable = np.isfinite(ref)
    sup = float(np.max(np.abs(ref[usable])))
    measured = float(np.max(np.abs(mine[usable] - ref[usable]))) / sup
    return _check(name, measured, 1e-9, cell.status)


def _piv_residual_scale(piv: pha_piv.PivSolution, x: float) -> float:
    # Spec'd tolerance scale: max(1, |g''|).
    try:
        g2 = numverify.fd_derivative(piv.g_fn, x, order=2)
    except ValueError:
        return 1.0
    return max(1.0, abs(g2))


def _max_masked_residual(piv: pha_piv.PivSolution, xs=None) -> float:
    if piv.trivial_zero:
        return 0.0
    if xs is None:
        xs = np.linspace(0.2, 5.0, 60)
    worst = 0.0
    for x in xs:
        try:
            res = pha_piv.piv_residual(piv, float(x))
        except (pha_piv.NearSingularityError, pha_piv.NearZeroError):
            continue
        worst = max(worst, abs(res) / _piv_residual_scale(piv, float(x)))
    return worst


# ---------------------------------------------------------------------------
# seeds suite
# ---------------------------------------------------------------------------

_SEED_SAMPLES = (
    (Parity.ODD, 0.25, None),
    (Parity.ODD, -1.2, None),
    (Parity.ODD, 1.5, None),
    (Parity.EVEN, 0.37, None),
    (Parity.EVEN, -2.0, None),
    (Parity.GENERAL, 0.1, 0.4),
)


def _schrodinger_residual(value_fn, potential_fn, energy: float, xs: np.ndarray) -> float:
    h = 4e-4
    f0 = np.asarray(value_fn(xs), dtype=float)
    d2 = (np.asarray(value_fn(xs + h)) - 2.0 * f0 + np.asarray(value_fn(xs - h))) / h**2
    d2b = (np.asarray(value_fn(xs + 2 * h)) - 2.0 * f0 + np.asarray(value_fn(xs - 2 * h))) / (2 * h) ** 2
    d2r = (4.0 * d2 - d2b) / 3.0
    res = -0.5 * d2r + potential_fn(xs) * f0 - energy * f0
    scale = np.abs(0.5 * d2r) + np.abs(potential_fn(xs) * f0) + abs(energy) * np.abs(f0)
    return float(np.max(np.abs(res) / np.maximum(np.max(scale), 1e-300)))


def suite_seeds() -> list[Check]:
    checks = []
    xs = np.geomspace(1e-3, 8.0, 2000)
    v0 = lambda t: 0.5 * t * t
    for parity, eps, nu in _SEED_SAMPLES:
        seed = make_seed(eps, parity, nu)
        tag = f"{parity.value} eps={eps}" + (f" nu={nu}" if nu is not None else "")
        res = _schrodinger_residual(seed.value_fn, v0, float(eps), xs)
        checks.append(_check(f"seed schrodinger residual {tag}", res, 1e-8))
        ric = max(abs(riccati_residual(seed, x)) for x in np.linspace(0.1, 6.0, 25))
        checks.append(_check(f"seed riccati residual {tag}", ric, 1e-8))
        if parity is not Parity.GENERAL:
            sym = -1.0 if parity is Parity.ODD else 1.0
            pts = np.linspace(0.3, 5.0, 9)
            par = np.max(np.abs(seed.value_fn(-pts) - sym * seed.value_fn(pts)))
            checks.append(_check(f"seed parity {tag}", par, 1e-12))
    for kind in (EigenKind.PHYSICAL, EigenKind.NPE):
        for n in (0, 1, 3):
            eig = h0_eigenfunction(n, kind)
            res = _schrodinger_residual(eig.value_fn, v0, eig.energy, xs)
            checks.append(_check(f"eigenfunction residual {kind.value} n={n}", res, 1e-8))
            norm = numverify.quadrature(lambda t: eig.value_fn(t) ** 2, 0.0, 12.0)
            checks.append(_check(f"eigenfunction norm {kind.value} n={n}", abs(norm - 1.0), 1e-6))
    funcs = [h0_eigenfunction(n, EigenKind.PHYSICAL) for n in range(6)]
    worst = 0.0
    for m in range(6):
        for n in range(m):
            ip = numverify.quadrature(
                lambda t, fm=funcs[m], fn=funcs[n]: fm.value_fn(t) * fn.value_fn(t), 0.0, 12.0
            )
            worst = max(worst, abs(ip))
    checks.append(_check("eigenfunction orthogonality m,n<=5", worst, 1e-6))
    return checks


# ---------------------------------------------------------------------------
# susy suite
# ---------------------------------------------------------------------------

_CASE_SAMPLES = (
    (TransformationCase.ODD1, 0.25, None),
    (TransformationCase.EVEN1, 0.25, None),
    (TransformationCase.ODD_ODD, 0.375, 0.125),
    (TransformationCase.EVEN_EVEN, 0.375, 0.125),
    (TransformationCase.ODD_EVEN, 3.0, 2.6),
    (TransformationCase.EVEN_ODD, 0.3, 0.1),
)

# Which base family lands on physical states of the partner.
_PSI_PHYSICAL = {
    TransformationCase.ODD1: True,
    TransformationCase.ODD_ODD: True,
    TransformationCase.ODD_EVEN: True,
    TransformationCase.EVEN_ODD: True,
    TransformationCase.EVEN1: False,
    TransformationCase.EVEN_EVEN: False,
}

_EXPECTED_MISSING = {
    TransformationCase.ODD1: {"eps1": EigenKind.NPE},
    TransformationCase.EVEN1: {"eps1": EigenKind.NPE},
    TransformationCase.ODD_ODD: {"eps1": EigenKind.NPE, "eps2": EigenKind.NPE},
    TransformationCase.EVEN_EVEN: {"eps1": EigenKind.NPE, "eps2": EigenKind.NPE},
    TransformationCase.ODD_EVEN: {"eps1": EigenKind.NPE, "eps2": EigenKind.PHYSICAL},
    TransformationCase.EVEN_ODD: {"eps1": EigenKind.PHYSICAL, "eps2": EigenKind.NPE},
}


def _build(case, eps1, eps2):
    seeds_ = susy.make_case_seeds(case, eps1, eps2)
    if case.order == 1:
        return susy.first_order_partner(seeds_[0]), None
    return susy.second_order_partner(*seeds_)


def suite_susy() -> list[Check]:
    checks = []
    xs_w = np.linspace(0.05, 8.0, 400)
    for case, e1, e2 in _CASE_SAMPLES:
        partner, wron = _build(case, e1, e2)
        tag = f"{case.value}({e1}" + (f",{e2})" if e2 is not None else ")")
        if wron is not None:
            direct = wron.direct_fn(xs_w)
            fact = wron.full_fn(xs_w)
            rel = np.max(np.abs(direct - fact) / np.max(np.abs(direct)))
            checks.append(_check(f"wronskian factorization {tag}", rel, 1e-9))

        miscount = 0
        xs_r = np.linspace(0.25, 8.0, 800)
        worst_res = 0.0
        for n in range(3):
            for kind in (EigenKind.PHYSICAL, EigenKind.NPE):
                eig = h0_eigenfunction(n, kind)
                mapped = susy.map_eigenfunction(partner, eig)
                expect_physical = (kind is EigenKind.PHYSICAL) == _PSI_PHYSICAL[case]
                if (mapped.classification is EigenKind.PHYSICAL) != expect_physical:
                    miscount += 1
                if mapped.classification is EigenKind.PHYSICAL:
                    worst_res = max(
                        worst_res,
                        _schrodinger_residual(mapped.value_fn, partner.full_eval_fn,
                                              eig.energy, xs_r),
                    )
        checks.append(_check(f"classification table {tag}", miscount, 0))
        checks.append(_check(f"intertwining residual {tag}", worst_res, 1e-6))

        wrong = 0
        for which, expect in _EXPECTED_MISSING[case].items():
            state = susy.missing_state(partner, which)
            if state.classification is not expect:
                wrong += 1
        checks.append(_check(f"missing-state classification {tag}", wrong, 0))

    # first-order factorization identity A A+ psi_n = (E_n - eps) psi_n
    seed = make_seed(0.25, Parity.ODD)
    worst = 0.0
    for n in range(4):
        eig = h0_eigenfunction(n, EigenKind.PHYSICAL)

        def a_plus(x, _eig=eig):
            return (seed.log_deriv_fn(x) * _eig.value_fn(x) - _eig.derivative_fn(x)) / math.sqrt(2.0)

        for x in np.linspace(0.3, 6.0, 40):
            lhs = (numverify.fd_derivative(a_plus, float(x), 1)
                   + seed.log_deriv_fn(x) * a_plus(x)) / math.sqrt(2.0)
            rhs = (eig.energy - 0.25) * eig.value_fn(x)
            worst = max(worst, abs(lhs - rhs) / (abs(rhs) + 1.0))
    checks.append(_check("factorization identity AA+ (Odd1 eps=1/4)", worst, 1e-6))
    return checks


# ---------------------------------------------------------------------------
# spectra suite
# ---------------------------------------------------------------------------

def solve_levels(potential_fn, k: int, grid: GridSpec | None = None) -> np.ndarray:
    grid = grid or GridSpec(12.0, 4000)
    return numverify.solve_dirichlet(potential_fn, grid, k, extrapolate=True).eigenvalues


_SPECTRUM_CASES = (
    (TransformationCase.ODD1, 0.25, None, 4),
    (TransformationCase.EVEN1, 0.25, None, 4),
    (TransformationCase.ODD_ODD, 0.375, 0.125, 3),
    (TransformationCase.EVEN_EVEN, 0.375, 0.125, 3),
    (TransformationCase.ODD_EVEN, 3.0, 2.6, 5),
    (TransformationCase.EVEN_ODD, 0.3, 0.1, 4),
    (TransformationCase.ODD1, 1.5, None, 3),
    (TransformationCase.EVEN1, 0.5, None, 3),
    (TransformationCase.ODD_ODD, 3.5, 1.5, 3),
    (TransformationCase.ODD_EVEN, 3.5, 3.0, 5),
    (TransformationCase.EVEN_ODD, 2.0, 1.5, 5),
)


def suite_spectra() -> list[Check]:
    checks = []
    base = solve_levels(lambda x: 0.5 * x * x, 3)
    dev = np.max(np.abs(base - np.array([1.5, 3.5, 5.5])))
    checks.append(_check("base spectrum 2n+3/2", dev, 1e-4,
                         detail=f"levels {base.tolist()}"))
    for case, e1, e2, k in _SPECTRUM_CASES:
        partner = susy.build_partner(case, e1, e2)
        predicted = susy.predict_spectrum(case, e1, e2, n_max=k + 3).all_levels()[:k]
        solved = solve_levels(partner.full_eval_fn, k)
        dev = float(np.max(np.abs(solved - np.array(predicted))))
        tag = f"{case.value}({e1}" + (f",{e2})" if e2 is not None else ")")
        checks.append(_check(f"spectrum vs prediction {tag}", dev, 1e-3,
                             detail=f"predicted {predicted}, solved {solved.tolist()}"))
    return checks


# ---------------------------------------------------------------------------
# piv suite
# ---------------------------------------------------------------------------

def _consistency_sweep(order: int, parity: Parity, index: int, eps_values) -> float:
    worst = 0.0
    xs = np.linspace(0.2, 5.0, 40)
    for eps in eps_values:
        seed = make_seed(eps, parity)
        states = (pha_piv.extremal_states_first(seed) if order == 1
                  else pha_piv.extremal_states_second(seed))
        state = states[index - 1]
        via_state = pha_piv.piv_from_state(state)
        closed = pha_piv.closed_form_g(order, parity, index, eps)
        va = np.asarray(via_state.g_fn(xs), dtype=float)
        vb = np.asarray(closed.g_fn(xs), dtype=float)
        sup = np.max(np.abs(vb[np.isfinite(vb)]))
        ok = np.isfinite(va) & np.isfinite(vb) & (np.abs(vb) > 1e-6 * sup) & (np.abs(vb) < 1e8)
        worst = max(worst, float(np.max(np.abs((va[ok] - vb[ok]) / vb[ok]))))
    return worst


def _annihilation_residual(seed_parity: Parity, eps: float) -> float:
    seed = make_seed(eps, seed_parity)
    state = pha_piv.extremal_states_first(seed)[0]
    piv = pha_piv.piv_from_state(state)
    worst = 0.0
    for x in np.linspace(0.3, 4.0, 25):
        phi = state.value_fn(x)
        dphi = numverify.fd_derivative(state.value_fn, float(x), 1)
        f = x + float(piv.g_fn(x))
        res = dphi + f * phi
        worst = max(worst, abs(res) / (abs(dphi) + abs(f * phi) + 1e-300))
    return worst


def suite_piv() -> list[Check]:
    checks = [_compare_cell(cell) for cell in REFERENCE_PIV_CELLS]

    for cell in REFERENCE_PIV_CELLS:
        if cell.kind == "zero":
            continue
        piv = pha_piv.closed_form_g(cell.order, cell.parity, cell.index, cell.epsilon)
        # Transcendental cells involve exponentially degenerate
        # cancellations whose smooth evaluation error outgrows the
        # residual target past x ~ 3.5 (same window as the comparison).
        xs = np.linspace(0.2, 3.5, 60) if cell.kind == "transcendental" else None
        res = _max_masked_residual(piv, xs)
        checks.append(_check(
            f"piv-residual o{cell.order} {cell.parity.value} g{cell.index} eps={cell.epsilon}",
            res, 1e-6))

    undet_ok = 0
    for order, parity, index, eps in UNDETERMINED_PIV_CELLS:
        try:
            pha_piv.closed_form_g(order, parity, index, eps)
        except pha_piv.UndeterminedSolutionError:
            undet_ok += 1
    checks.append(_check("undetermined cells signalled",
                         len(UNDETERMINED_PIV_CELLS) - undet_ok, 0))

    odd_eps = np.linspace(-3.31, 1.37, 20)
    even_eps = np.linspace(-3.27, 0.41, 20)
    for order in (1, 2):
        for parity, sweep in ((Parity.ODD, odd_eps), (Parity.EVEN, even_eps)):
            for index in (1, 2, 3):
                worst = _consistency_sweep(order, parity, index, sweep)
                checks.append(_check(
                    f"state/closed-form consistency o{order} {parity.value} g{index}",
                    worst, 1e-9))

    ann = max(_annihilation_residual(Parity.ODD, 0.25),
              _annihilation_residual(Parity.EVEN, -0.7),
              _annihilation_residual(Parity.ODD, -1.6))
    checks.append(_check("lowering-operator annihilation of phi_1", ann, 1e-8))

    # (a, b) bookkeeping: exact rational identity under permutation
    mism = 0
    half = Fraction(1, 2)
    for k in range(20):
        eps = Fraction(k, 7) - 2
        for order in (1, 2):
            closed = {
                1: [(-eps + half, -2 * (eps + half) ** 2),
                    (-eps - Fraction(5, 2), -2 * (eps - half) ** 2),
                    (2 * eps - 1, Fraction(-2))],
                2: [(-eps + Fraction(5, 2), -2 * (eps + half) ** 2),
                    (-eps - Fraction(7, 2), -2 * (eps - Fraction(3, 2)) ** 2),
                    (2 * (eps - 1), Fraction(-8))],
            }[order]
            for index in (1, 2, 3):
                a, b = pha_piv.piv_parameters(order, index, eps)
                if (a, b) != closed[index - 1]:
                    mism += 1
    checks.append(_check("piv (a,b) exact permutation identity", mism, 0))

    # potential reconstruction from g1 vs the first-order partner
    for eps in (0.25, 1.0, 1.5):
        seed = make_seed(eps, Parity.ODD)
        partner = susy.first_order_partner(seed)
        piv = pha_piv.closed_form_g(1, Parity.ODD, 1, eps)
        recon = pha_piv.reconstruct_potential_from_g(piv, eps)
        xs = np.linspace(0.2, 5.0, 60)
        shift = recon.potential_fn(2.0) - partner.full_eval_fn(2.0)
        dev = float(np.max(np.abs(recon.potential_fn(xs) - partner.full_eval_fn(xs) - shift)))
        checks.append(_check(f"potential reconstruction odd eps={eps}", dev, 1e-6,
                             detail=f"constant offset {shift:+.3e}"))
    return checks


# ---------------------------------------------------------------------------
# helpers shared with the CLI
# ---------------------------------------------------------------------------

def spectrum_states(case: TransformationCase, eps1, eps2, count: int):
    """Partner potential plus its lowest ``count`` physical states."""
    partner = susy.build_partner(case, eps1, eps2)
    prediction = susy.predict_spectrum(case, eps1, eps2, n_max=count + 2)
    entries = []
    for energy, label in prediction.kept_levels:
        kind = EigenKind.PHYSICAL if label.startswith("E_") else EigenKind.NPE
        n = int(label.split("_")[1])
        entries.append((energy, "mapped", n, kind))
    for energy in prediction.created_levels:
        which = "eps1" if abs(energy - float(eps1)) < 1e-9 else "eps2"
        entries.append((energy, "missing", which, None))
    entries.sort(key=lambda item: item[0])
    states = []
    for energy, src, key, kind in entries[:count]:
        if src == "mapped":
            states.append(susy.map_eigenfunction(partner, h0_eigenfunction(key, kind)))
        else:
            states.append(susy.missing_state(partner, key))
    return partner, prediction, states


SUITE_NAMES = ("seeds", "susy", "piv", "spectra", "all")


def suite(name: str) -> list[Check]:
    if name == "seeds":
        return suite_seeds()
    if name == "susy":
        return suite_susy()
    if name == "piv":
        return suite_piv()
    if name == "spectra":
        return suite_spectra()
    if name == "all":
        return suite_seeds() + suite_susy() + suite_spectra() + suite_piv()
    raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
