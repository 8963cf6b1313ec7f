"""Session fixtures: generate CSV inputs through the primary CLI.

The figures package consumes truncosc exclusively through its command
line and file formats, so the fixtures shell out to `truncosc`.
"""

import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest


def run_cli(args, cwd=None):
    proc = subprocess.run([sys.executable, "-m", "truncosc.cli", *args],
                          capture_output=True, text=True, cwd=cwd)
    if proc.returncode != 0:
        raise RuntimeError(f"truncosc {' '.join(args)} failed "
                           f"({proc.returncode}): {proc.stderr}")
    return proc


PANELS = [
    ("v0", ["potential", "--case", "V0"]),
    ("odd1", ["potential", "--case", "Odd1", "--eps1", "0.25"]),
    ("even1", ["potential", "--case", "Even1", "--eps1", "0.25"]),
    ("oddodd", ["potential", "--case", "OddOdd", "--eps1", "0.375", "--eps2", "0.125"]),
    ("eveneven", ["potential", "--case", "EvenEven", "--eps1", "0.375", "--eps2", "0.125"]),
    ("oddeven", ["potential", "--case", "OddEven", "--eps1", "3.0", "--eps2", "2.6"]),
    ("evenodd", ["potential", "--case", "EvenOdd", "--eps1", "-1.25", "--eps2", "-1.75"]),
]


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("csv_inputs")
    for name, args in PANELS:
        run_cli(args + ["--grid-n", "150", "--out", str(root / f"{name}.csv")])
    run_cli(["piv", "--order", "1", "--parity", "Odd", "--index", "3",
             "--eps1", "1.5", "--grid-n", "150", "--out", str(root / "piv.csv")])

    # epsilon sweeps for the two surface panels (resolution kept small
    # for test speed; production figures use 60 samples)
    for label, case, eps_values in [
        ("sweep_odd", "Odd1", np.linspace(-2.0, 1.5, 8)),
        ("sweep_even", "Even1", np.linspace(-2.0, 0.5, 8)),
    ]:
        sub = root / label
        sub.mkdir()
        for i, eps in enumerate(eps_values):
            run_cli(["potential", "--case", case, "--eps1", repr(float(eps)),
                     "--grid-n", "120", "--out", str(sub / f"slice{i:02d}.csv")])
    return Path(root)
