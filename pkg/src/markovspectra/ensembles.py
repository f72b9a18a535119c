"""Sampling of i.i.d. nonnegative matrices and their row-normalized
Markov matrices.

The model: draw an n x n table X of i.i.d. nonnegative entries, let
rho_i be the i-th row sum, and set M[i, j] = X[i, j] / rho_i.  Rows whose
sum is exactly zero fall back to the canonical basis row e_i (and the
implicit diagonal scaling D[i, i] is 1 there).  With unit-rate exponential
entries the rows of M follow the flat Dirichlet law on the simplex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .matrix import Matrix
from .rng import SeededStream

__all__ = [
    "EntryLaw",
    "MarkovSample",
    "exponential",
    "bernoulli",
    "uniform",
    "heavy_tail",
    "shifted_uniform",
    "parse_law",
    "sample_array",
    "sample_entry",
    "sample_iid_matrix",
    "to_markov",
    "dirichlet_markov_sample",
    "mean_matrix",
]


@dataclass(frozen=True)
class EntryLaw:
    """Distribution of one matrix entry, supported on [0, inf).

    ``mean`` and ``variance`` are the analytic moments (``variance`` may be
    ``inf`` for heavy tails).  ``has_bounded_density`` marks absolutely
    continuous laws with bounded Lebesgue density.
    """

    family: str
    params: tuple[tuple[str, float], ...]
    mean: float
    variance: float
    has_bounded_density: bool

    def __post_init__(self):
        if self.mean <= 0:
            raise ValueError("entry law must have positive mean")
        if not (self.variance > 0):
            raise ValueError("entry law must have positive variance")

    @property
    def sigma(self) -> float:
        return math.sqrt(self.variance)

    @property
    def effective_radius(self) -> float:
        """sigma / mean: the bulk radius of sqrt(n)*M for this law."""
        return self.sigma / self.mean

    def param(self, name: str) -> float:
        return dict(self.params)[name]

    def spec(self) -> str:
        """Canonical config-string form, the inverse of :func:`parse_law`."""
        if not self.params:
            return self.family
        inner = ",".join(f"{k}={v:g}" for k, v in self.params)
        return f"{self.family}:{inner}"

    def __str__(self) -> str:
        return self.spec()


def exponential(rate: float = 1.0) -> EntryLaw:
    if rate <= 0:
        raise ValueError("exponential rate must be positive")
    return EntryLaw(
        family="exponential",
        params=(("rate", rate),),
        mean=1.0 / rate,
        variance=1.0 / rate**2,
        has_bounded_density=True,
    )


def bernoulli(p: float = 0.5) -> EntryLaw:
    if not 0.0 < p < 1.0:
        raise ValueError("bernoulli parameter must lie in (0, 1)")
    return EntryLaw(
        family="bernoulli",
        params=(("p", p),),
        mean=p,
        variance=p * (1.0 - p),
        has_bounded_density=False,
    )


def uniform() -> EntryLaw:
    return EntryLaw(
        family="uniform",
        params=(),
        mean=0.5,
        variance=1.0 / 12.0,
        has_bounded_density=True,
    )


def heavy_tail(beta: float = 0.75) -> EntryLaw:
    """X = U**(-beta) with U uniform on (0, 1); heavy tailed for 2*beta > 1."""
    if beta <= 0.5:
        raise ValueError("heavy_tail requires beta > 0.5")
    mean = 1.0 / (1.0 - beta) if beta < 1.0 else math.inf
    return EntryLaw(
        family="heavy_tail",
        params=(("beta", beta),),
        mean=mean,
        variance=math.inf,  # E[X^2] diverges whenever 2*beta >= 1
        has_bounded_density=beta < 1.0,
    )


def shifted_uniform(a: float = 0.5, b: float = 1.5) -> EntryLaw:
    if a < 0 or b <= a:
        raise ValueError("shifted_uniform requires 0 <= a < b")
    return EntryLaw(
        family="shifted_uniform",
        params=(("a", a), ("b", b)),
        mean=0.5 * (a + b),
        variance=(b - a) ** 2 / 12.0,
        has_bounded_density=True,
    )


_FAMILY_ALIASES = {
    "exponential": "exponential",
    "bernoulli": "bernoulli",
    "uniform": "uniform",
    "heavytail": "heavy_tail",
    "heavy_tail": "heavy_tail",
    "shifteduniform": "shifted_uniform",
    "shifted_uniform": "shifted_uniform",
}

_CONSTRUCTORS = {
    "exponential": exponential,
    "bernoulli": bernoulli,
    "uniform": uniform,
    "heavy_tail": heavy_tail,
    "shifted_uniform": shifted_uniform,
}


def parse_law(text: str) -> EntryLaw:
    """Parse config strings like ``"exponential:rate=1"`` or ``"uniform"``."""
    text = text.strip()
    name, _, rest = text.partition(":")
    family = _FAMILY_ALIASES.get(name.strip().lower())
    if family is None:
        raise ValueError(f"unknown entry law {name!r}")
    kwargs = {}
    if rest.strip():
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                raise ValueError(f"bad law parameter {item!r}, expected key=value")
            kwargs[key.strip()] = float(value)
    return _CONSTRUCTORS[family](**kwargs)


def _transform(law: EntryLaw, stream: SeededStream, count: int) -> np.ndarray:
    """Draw ``count`` values of the law from the stream (inverse CDF based)."""
    if law.family == "exponential":
        u = stream.uniform(count)
        return -np.log1p(-u) / law.param("rate")
    if law.family == "bernoulli":
        u = stream.uniform(count)
        return (u < law.param("p")).astype(np.float64)
    if law.family == "uniform":
        return stream.uniform(count)
    if law.family == "heavy_tail":
        u = stream.uniform_open(count)
        return u ** (-law.param("beta"))
    if law.family == "shifted_uniform":
        a, b = law.param("a"), law.param("b")
        return a + (b - a) * stream.uniform(count)
    raise ValueError(f"unknown entry law family {law.family!r}")


def sample_array(law: EntryLaw, stream: SeededStream, count: int) -> np.ndarray:
    """``count`` i.i.d. draws from the law as a flat array."""
    return _transform(law, stream, count)


def sample_entry(law: EntryLaw, stream: SeededStream) -> float:
    """One draw from the law, advancing the stream."""
    return float(_transform(law, stream, 1)[0])


def sample_iid_matrix(n: int, law: EntryLaw, stream: SeededStream) -> Matrix:
    """n x n matrix of independent draws, row-major in stream order."""
    if n < 1:
        raise ValueError("matrix order must be >= 1")
    values = _transform(law, stream, n * n)
    return Matrix(values.reshape(n, n))


@dataclass(frozen=True)
class MarkovSample:
    """A raw i.i.d. matrix together with its row-normalized Markov matrix."""

    x: Matrix
    m_matrix: Matrix
    row_sums: tuple[float, ...]
    fallback_rows: tuple[int, ...] = field(default=())

    @property
    def n(self) -> int:
        return self.x.rows

    def scaling_diagonal(self) -> np.ndarray:
        """Diagonal of D with M = D X; 1 on fallback rows."""
        diag = np.ones(self.n)
        sums = np.asarray(self.row_sums)
        ok = np.ones(self.n, dtype=bool)
        ok[list(self.fallback_rows)] = False
        diag[ok] = 1.0 / sums[ok]
        return diag


def to_markov(x: Matrix) -> MarkovSample:
    """Row-normalize a nonnegative square matrix; zero rows become e_i."""
    arr = x.data
    if x.rows != x.cols:
        raise ValueError("to_markov requires a square matrix")
    if x.is_complex or (arr < 0).any():
        raise ValueError("to_markov requires nonnegative real entries")
    sums = arr.sum(axis=1)
    fallback = np.flatnonzero(sums == 0.0)
    m = np.empty_like(arr)
    ok = sums > 0.0
    m[ok] = arr[ok] / sums[ok, None]
    for i in fallback:
        m[i] = 0.0
        m[i, i] = 1.0
    return MarkovSample(
        x=x,
        m_matrix=Matrix(m),
        row_sums=tuple(float(s) for s in sums),
        fallback_rows=tuple(int(i) for i in fallback),
    )


def dirichlet_markov_sample(n: int, stream: SeededStream) -> MarkovSample:
    """Markov sample with flat-Dirichlet rows (unit-rate exponential entries)."""
    return to_markov(sample_iid_matrix(n, exponential(1.0), stream))


def mean_matrix(n: int, law: EntryLaw) -> Matrix:
    """The constant matrix E[X]: every entry equals the law's mean."""
    if n < 1:
        raise ValueError("matrix order must be >= 1")
    if not math.isfinite(law.mean):
        raise ValueError("mean matrix undefined for laws with infinite mean")
    return Matrix(np.full((n, n), law.mean))
