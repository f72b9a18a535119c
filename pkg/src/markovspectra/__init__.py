"""Spectra of row-normalized random Markov matrices.

Library + CLI for sampling M = D X from i.i.d. nonnegative entries,
computing full eigenvalue/singular-value spectra with hand-built dense
kernels, checking the deterministic spectral inequalities the theory rests
on, and reproducing the limiting-law experiments at desk scale with seeded
Monte Carlo runs.
"""

__version__ = "0.1.0"

from . import checks, ensembles, experiments, kernels, linalg, measures
from .ensembles import EntryLaw, MarkovSample, parse_law
from .errors import (
    DimensionMismatchError,
    IterationLimitError,
    RankDeficiencyError,
    ReducibleMatrixError,
)
from .linalg import Spectrum, eigenvalues, singular_values
from .matrix import Matrix
from .rng import SeededStream

__all__ = [
    "__version__",
    "Matrix",
    "Spectrum",
    "SeededStream",
    "EntryLaw",
    "MarkovSample",
    "parse_law",
    "eigenvalues",
    "singular_values",
    "checks",
    "ensembles",
    "experiments",
    "kernels",
    "linalg",
    "measures",
    "IterationLimitError",
    "ReducibleMatrixError",
    "DimensionMismatchError",
    "RankDeficiencyError",
]
