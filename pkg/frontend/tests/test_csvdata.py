"""CSV-contract parsing and checksums."""

import numpy as np
import pytest

from truncosc_figures import SchemaError, load_table, values_checksum


def test_parses_meta_and_columns(data_dir):
    table = load_table(data_dir / "oddeven.csv")
    assert table.meta["case"] == "OddEven"
    assert table.meta["eps1"] == "3.0"
    assert table.eigen_columns == ["phi0", "phi1", "phi2", "phi3"]
    assert len(table.column("x")) == 150


def test_masked_cells_become_nan(data_dir):
    table = load_table(data_dir / "piv.csv")
    res = table.column("residual")
    assert np.any(np.isnan(res))        # masked near the origin
    assert np.any(np.isfinite(res))


def test_missing_column_is_hard_error(data_dir):
    table = load_table(data_dir / "v0.csv")
    with pytest.raises(SchemaError, match="phi9"):
        table.require(["x", "phi9"])


def test_empty_csv_rejected(tmp_path):
    bad = tmp_path / "empty.csv"
    bad.write_text("")
    with pytest.raises(SchemaError):
        load_table(bad)


def test_headerless_csv_rejected(tmp_path):
    bad = tmp_path / "noheader.csv"
    bad.write_text("1.0,2.0\n")
    with pytest.raises(SchemaError):
        load_table(bad)


def test_checksum_is_deterministic(data_dir):
    t1 = load_table(data_dir / "odd1.csv")
    t2 = load_table(data_dir / "odd1.csv")
    c1 = values_checksum([t1.column("x"), t1.column("V")])
    c2 = values_checksum([t2.column("x"), t2.column("V")])
    assert c1 == c2
    c3 = values_checksum([t1.column("x"), t1.column("phi0")])
    assert c3 != c1
