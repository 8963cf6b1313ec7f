"""Deterministic figure rendering from truncosc CSV files.

Three panel kinds:

    potential_eigenfunctions   V(x) with eigenfunction overlays
    piv_solution               a Painleve IV solution g(x)
    surface_eps_sweep          V(x; eps) surface from a directory of CSVs

The renderer plots file contents verbatim; the returned checksum is
computed from the exact arrays handed to matplotlib so a consumer can
prove nothing was recomputed or resampled.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .csvdata import CsvTable, SchemaError, load_table, values_checksum

__all__ = ["FigureSpec", "render", "load_spec"]

PANEL_KINDS = ("potential_eigenfunctions", "piv_solution", "surface_eps_sweep")

# Fixed output geometry keeps images reproducible.
_FIGSIZE = (7.0, 5.0)
_DPI = 110


@dataclass(frozen=True)
class FigureSpec:
    input_csv: str
    panel_kind: str
    output_image: str
    x_range: tuple | None = None
    y_range: tuple | None = None
    title: str = ""

    def __post_init__(self):
        if self.panel_kind not in PANEL_KINDS:
            raise SchemaError(f"unknown panel_kind {self.panel_kind!r}; "
                              f"choose from {PANEL_KINDS}")


def load_spec(path) -> FigureSpec:
    with open(path) as fh:
        raw = json.load(fh)
    return FigureSpec(
        input_csv=raw["input_csv"],
        panel_kind=raw["panel_kind"],
        output_image=raw["output_image"],
        x_range=tuple(raw["x_range"]) if raw.get("x_range") else None,
        y_range=tuple(raw["y_range"]) if raw.get("y_range") else None,
        title=raw.get("title", ""),
    )


def _new_axes():
    fig, ax = plt.subplots(figsize=_FIGSIZE, dpi=_DPI)
    return fig, ax


def _finish(fig, ax, spec: FigureSpec):
    if spec.x_range:
        ax.set_xlim(*spec.x_range)
    if spec.y_range:
        ax.set_ylim(*spec.y_range)
    if spec.title:
        ax.set_title(spec.title)
    fig.tight_layout()
    fig.savefig(spec.output_image, metadata=_strip_metadata(spec.output_image))
    plt.close(fig)


def _strip_metadata(path: str):
    # PNG writers may embed a Software tag; pin it so bytes stay stable.
    if str(path).lower().endswith(".png"):
        return {"Software": "truncosc-figures"}
    return None


def _render_potential(spec: FigureSpec) -> dict:
    table = load_table(spec.input_csv)
    table.require(["x", "V"])
    eigen = table.eigen_columns
    if not eigen:
        raise SchemaError(f"{spec.input_csv}: no eigenfunction columns (phi0, ...)")
    plotted = [table.column("x"), table.column("V")]
    fig, ax = _new_axes()
    ax.plot(plotted[0], plotted[1], color="black", lw=1.6, label="V(x)")
    for name in eigen:
        col = table.column(name)
        plotted.append(col)
        ax.plot(plotted[0], col, lw=1.1, label=name)
    ax.set_xlabel("x")
    ax.set_ylabel("V(x), eigenfunctions")
    ax.legend(loc="upper right", fontsize=8)
    if not spec.y_range:
        ax.set_ylim(-1.5, 12.0)
    _finish(fig, ax, spec)
    return {"checksum": values_checksum(plotted), "n_curves": 1 + len(eigen)}


def _render_piv(spec: FigureSpec) -> dict:
    table = load_table(spec.input_csv)
    table.require(["x", "g"])
    x = table.column("x")
    g = table.column("g")
    plotted = [x, g]
    fig, ax = _new_axes()
    ax.plot(x, g, lw=1.3, label="g(x)")
    if "residual" in table.columns:
        res = table.column("residual")
        plotted.append(res)
        finite = np.isfinite(res)
        if np.any(finite):
            ax2 = ax.twinx()
            ax2.semilogy(x[finite], np.abs(res[finite]), lw=0.7, color="gray",
                         label="|residual|")
            ax2.set_ylabel("|residual|")
    ax.set_xlabel("x")
    ax.set_ylabel("g(x)")
    ax.legend(loc="upper right", fontsize=8)
    _finish(fig, ax, spec)
    return {"checksum": values_checksum(plotted), "n_curves": len(plotted) - 1}


def _render_surface(spec: FigureSpec) -> dict:
    directory = Path(spec.input_csv)
    if not directory.is_dir():
        raise SchemaError(f"{directory}: surface panels need a directory of CSVs")
    tables: list[CsvTable] = []
    for path in sorted(directory.glob("*.csv")):
        table = load_table(path)
        table.require(["x", "V"])
        if "eps1" not in table.meta or table.meta["eps1"] == "":
            raise SchemaError(f"{path}: surface sweep needs eps1 metadata")
        tables.append(table)
    if len(tables) < 2:
        raise SchemaError(f"{directory}: need at least two CSVs for a sweep")
    tables.sort(key=lambda t: float(t.meta["eps1"]))
    eps = np.array([float(t.meta["eps1"]) for t in tables])
    x = tables[0].column("x")
    for t in tables[1:]:
        if t.column("x").shape != x.shape or not np.array_equal(t.column("x"), x):
            raise SchemaError(f"{t.path}: sweep files must share one x grid")
    V = np.vstack([t.column("V") for t in tables])
    plotted = [x, eps, V]

    fig = plt.figure(figsize=_FIGSIZE, dpi=_DPI)
    ax = fig.add_subplot(projection="3d")
    X, E = np.meshgrid(x, eps)
    Vc = np.clip(V, -5.0, 25.0)
    ax.plot_surface(X, E, Vc, cmap="viridis", linewidth=0, antialiased=False,
                    rcount=min(len(eps), 60), ccount=120)
    ax.set_xlabel("x")
    ax.set_ylabel("eps")
    ax.set_zlabel("V")
    if spec.title:
        ax.set_title(spec.title)
    fig.savefig(spec.output_image, metadata=_strip_metadata(spec.output_image))
    plt.close(fig)
    return {"checksum": values_checksum(plotted), "n_slices": len(tables)}


def render(spec: FigureSpec) -> dict:
    """Render one panel; returns the values checksum and curve counts."""
    if spec.panel_kind == "potential_eigenfunctions":
        out = _render_potential(spec)
    elif spec.panel_kind == "piv_solution":
        out = _render_piv(spec)
    else:
        out = _render_surface(spec)
    out["output_image"] = spec.output_image
    out["panel_kind"] = spec.panel_kind
    return out
