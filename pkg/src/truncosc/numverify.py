"""Independent numerical oracles.

A finite-difference Dirichlet eigensolver on (0, L], an adaptive
quadrature and Richardson-extrapolated finite differences.  These are
the machinery every analytic construction in the package is checked
against, so they deliberately share no code with the closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

__all__ = [
    "GridSpec",
    "EigenResult",
    "ConvergenceError",
    "solve_dirichlet",
    "quadrature",
    "fd_derivative",
]


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid x_i = i*h, i = 1..N, h = L/(N+1), Dirichlet at 0 and L."""

    L: float = 12.0
    N: int = 4000

    def __post_init__(self):
        if self.N < 100:
            raise ValueError(f"GridSpec requires N >= 100, got {self.N}")
        if self.L < 8.0:
            raise ValueError(f"GridSpec requires L >= 8, got {self.L}")

    @property
    def h(self) -> float:
        return self.L / (self.N + 1)

    def points(self) -> np.ndarray:
        return self.h * np.arange(1, self.N + 1)


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: np.ndarray
    grid: GridSpec
    extrapolated: bool
    error_estimate: np.ndarray | None = None
    eigenvectors: np.ndarray | None = None  # shape (N, k), trapezoid-normalized


def _tridiag_eigen(potential_fn, grid: GridSpec, k: int, vectors: bool):
    h = grid.h
    x = grid.points()
    diag = 1.0 / h**2 + np.asarray(potential_fn(x), dtype=float)
    if not np.all(np.isfinite(diag)):
        bad = x[~np.isfinite(diag)][0]
        raise ValueError(f"potential is not finite on the grid interior (x={bad:.6g})")
    off = np.full(grid.N - 1, -0.5 / h**2)
    try:
        if vectors:
            vals, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, k - 1))
            norms = np.sqrt(np.trapezoid(vecs**2, dx=h, axis=0))
            return vals, vecs / norms
        vals = eigh_tridiagonal(
            diag, off, eigvals_only=True, select="i", select_range=(0, k - 1)
        )
        return vals, None
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ConvergenceError(
            f"tridiagonal eigensolve failed on N={grid.N}, L={grid.L}: {exc}"
        ) from exc


def solve_dirichlet(potential_fn, grid: GridSpec, k: int, *,
                    extrapolate: bool = True, eigenvectors: bool = False) -> EigenResult:
    """Lowest ``k`` Dirichlet eigenvalues of -1/2 d^2/dx^2 + V on (0, L).

    The symmetric tridiagonal discretization is solved by LAPACK's
    bisection/Sturm-sequence driver.  With ``extrapolate`` the solve is
    repeated on the doubled grid and Richardson-combined, which removes
    the leading O(h^2) error and yields an error estimate.
    """
    if k > 15:
        raise ValueError(f"solve_dirichlet supports k <= 15, got {k}")
    if not extrapolate:
        vals, vecs = _tridiag_eigen(potential_fn, grid, k, eigenvectors)
        return EigenResult(vals, grid, False, None, vecs)
    # Eigenvalues are Richardson-combined across (N, 2N); eigenvectors,
    # when requested, live on the requested grid.
    coarse, vecs = _tridiag_eigen(potential_fn, grid, k, eigenvectors)
    fine, _ = _tridiag_eigen(potential_fn, GridSpec(grid.L, 2 * grid.N), k, False)
    vals = (4.0 * fine - coarse) / 3.0
    est = np.abs(fine - coarse) / 3.0
    return EigenResult(vals, grid, True, est, vecs)


def quadrature(f, a: float, b: float, tol: float = 1e-10, max_depth: int = 48) -> float:
    """Adaptive composite Simpson rule to absolute tolerance ``tol``.

    ``f`` must accept an ndarray.  All panels of a refinement level are
    evaluated in one vectorized call; a panel is accepted once its local
    error estimate |S2 - S1|/15 meets its share of ``tol``.
    """
    if not b > a:
        raise ValueError("quadrature requires b > a")

    # Per-panel state: endpoints, cached f(lo), f(mid), f(hi), budget.
    lo = np.array([a])
    hi = np.array([b])
    nodes = np.array([a, 0.5 * (a + b), b])
    fv = np.asarray(f(nodes), dtype=float)
    f_lo, f_mid, f_hi = fv[:1], fv[1:2], fv[2:3]
    budget = np.array([tol])
    total = 0.0
    min_width = 1e-14 * (b - a)

    for _ in range(max_depth):
        width = hi - lo
        s_whole = width / 6.0 * (f_lo + 4.0 * f_mid + f_hi)
        mid = 0.5 * (lo + hi)
        q1 = 0.5 * (lo + mid)
        q3 = 0.5 * (mid + hi)
        qv = np.asarray(f(np.concatenate([q1, q3])), dtype=float)
        f_q1, f_q3 = qv[: len(q1)], qv[len(q1):]
        s_left = width / 12.0 * (f_lo + 4.0 * f_q1 + f_mid)
        s_right = width / 12.0 * (f_mid + 4.0 * f_q3 + f_hi)
        err = (s_left + s_right - s_whole) / 15.0
        done = (np.abs(err) <= budget) | (width < min_width)
        total += float(np.sum((s_left + s_right + err)[done]))
        if np.all(done):
            return total
        k = ~done
        lo, hi = (np.concatenate([lo[k], mid[k]]), np.concatenate([mid[k], hi[k]]))
        f_lo, f_mid, f_hi = (
            np.concatenate([f_lo[k], f_mid[k]]),
            np.concatenate([f_q1[k], f_q3[k]]),
            np.concatenate([f_mid[k], f_hi[k]]),
        )
        budget = np.concatenate([budget[k], budget[k]]) / 2.0
    raise ConvergenceError(
        f"quadrature did not converge after {max_depth} refinement levels"
    )


def fd_derivative(f, x: float, order: int = 1) -> float:
    """Central finite difference with one Richardson level.

    Shrinks the step near the left domain edge x=0; signals when no
    usable stencil remains.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    h = (1e-4 if order == 1 else 5e-3) * max(1.0, abs(x))
    if x - h <= 0.0:
        h = 0.5 * x
    if h <= 1e-12:
        raise ValueError(f"fd_derivative: stencil does not fit inside (0, inf) at x={x}")

    if order == 1:
        def diff(hh):
            return (f(x + hh) - f(x - hh)) / (2.0 * hh)
    else:
        fx = f(x)

        def diff(hh):
            return (f(x + hh) - 2.0 * fx + f(x - hh)) / hh**2

    return (4.0 * diff(h / 2.0) - diff(h)) / 3.0
