"""Parsing of the truncosc CLI CSV contract.

Files start with a `# key=value ...` metadata line followed by a column
header and numeric rows; masked cells are empty fields.  Rendering never
recomputes physics, so a checksum over the parsed values is carried
along to prove the plotted arrays are exactly the file contents.
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = ["CsvTable", "SchemaError", "load_table", "values_checksum"]


class SchemaError(ValueError):
    pass


@dataclass(frozen=True)
class CsvTable:
    path: str
    meta: dict
    columns: dict  # name -> ndarray (nan marks masked cells)

    def require(self, names) -> None:
        missing = [n for n in names if n not in self.columns]
        if missing:
            raise SchemaError(f"{self.path}: missing column(s) {', '.join(missing)}")

    def column(self, name: str) -> np.ndarray:
        self.require([name])
        return self.columns[name]

    @property
    def eigen_columns(self) -> list[str]:
        return sorted((c for c in self.columns if c.startswith("phi")),
                      key=lambda c: int(c[3:]))


def _parse_meta(line: str, path: str) -> dict:
    if not line.startswith("#"):
        raise SchemaError(f"{path}: missing '# key=value' metadata line")
    meta = {}
    for token in line[1:].split():
        if "=" in token:
            key, _, value = token.partition("=")
            meta[key] = value
    return meta


def load_table(path) -> CsvTable:
    path = Path(path)
    with open(path) as fh:
        meta = _parse_meta(fh.readline().rstrip("\n"), str(path))
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: no column header") from None
        rows = list(reader)
    if not header or not rows:
        raise SchemaError(f"{path}: no data rows")
    cols = {name: np.full(len(rows), np.nan) for name in header}
    for i, row in enumerate(rows):
        if len(row) != len(header):
            raise SchemaError(f"{path}: row {i + 2} has {len(row)} fields, "
                              f"expected {len(header)}")
        for name, field in zip(header, row):
            if field != "":
                cols[name][i] = float(field)
    return CsvTable(str(path), meta, cols)


def values_checksum(arrays) -> str:
    """SHA-256 over the exact bytes of the plotted arrays (nan included)."""
    digest = hashlib.sha256()
    for arr in arrays:
        digest.update(np.ascontiguousarray(np.asarray(arr, dtype=np.float64)).tobytes())
    return digest.hexdigest()
