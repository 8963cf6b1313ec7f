"""SUSY partners of the half-line harmonic oscillator and Painleve IV solutions."""

from . import cli, numverify, pha_piv, seeds, specfun, susy, verify

__all__ = ["specfun", "seeds", "susy", "pha_piv", "numverify", "verify", "cli"]

__version__ = "0.1.0"
