"""Localizable entanglement of qubit pairs in small pure-state registers."""

from ._core import (
    InputError,
    NumericalError,
    basis_state,
    branches,
    classical_correlation,
    concurrence,
    difference_study,
    evolve,
    ghz,
    haar_state,
    maximize,
    time_sweep,
)

__all__ = [
    "InputError",
    "NumericalError",
    "basis_state",
    "branches",
    "classical_correlation",
    "concurrence",
    "difference_study",
    "evolve",
    "ghz",
    "haar_state",
    "maximize",
    "time_sweep",
]
