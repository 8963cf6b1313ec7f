"""Figure rendering for truncosc CSV output."""

from .csvdata import CsvTable, SchemaError, load_table, values_checksum
from .render import FigureSpec, load_spec, render

__all__ = ["CsvTable", "SchemaError", "load_table", "values_checksum",
           "FigureSpec", "load_spec", "render"]

__version__ = "0.1.0"
