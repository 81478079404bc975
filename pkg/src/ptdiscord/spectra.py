"""Spectrum-level quantities: negativity, sign counts and the simplex projection.

The projection finds the probability vector closest (in Euclidean norm) to a
unit-sum real vector. For a vector sorted in descending order the optimum
subtracts a common level ``tau`` from the leading ``n`` entries and zeroes
the rest, where ``n`` is the smallest cut with ``tau_n >= v[n+1]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch, TraceNotOne

DEFAULT_TOL = 1e-10
DEFAULT_TRACE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Real eigenvalues in descending order.

    Parameters
    ----------
    values : array_like
        Eigenvalues. They are sorted (stable, descending) on construction.
    tol : float
        Magnitude below which an entry is treated as zero when counting signs.
    """

    values: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        # stable descending sort: reverse of a stable ascending sort on -v
        v = v[np.argsort(-v, kind="stable")]
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size

    def __iter__(self):
        return iter(self.values)

    def __repr__(self):
        return f"Spectrum({np.array2string(self.values, precision=6)}, tol={self.tol:g})"

    @property
    def total(self) -> float:
        return float(self.values.sum())

    def is_distribution(self, trace_tol: float = DEFAULT_TRACE_TOL) -> bool:
        return bool(self.values[-1] >= -self.tol and abs(self.total - 1.0) <= trace_tol)


def as_spectrum(s, tol: float = DEFAULT_TOL) -> Spectrum:
    return s if isinstance(s, Spectrum) else Spectrum(s, tol)


@dataclass(frozen=True)
class NegativityStats:
    negativity: float
    n_plus: int
    n_minus: int


def negativity_stats(s) -> NegativityStats:
    """Negativity and the numbers of positive/negative eigenvalues.

    Entries within ``±s.tol`` of zero join neither count.
    """
    s = as_spectrum(s)
    v = s.values
    neg = v[v < -s.tol]
    return NegativityStats(negativity=float(-neg.sum()) if neg.size else 0.0,
                           n_plus=int(np.count_nonzero(v > s.tol)),
                           n_minus=int(neg.size))


def ratio_bound(stats: NegativityStats) -> float:
    """``N^2/N_+ + N^2/N_-``, with each term 0 when its count is 0."""
    n2 = stats.negativity ** 2
    out = 0.0
    if stats.n_plus:
        out += n2 / stats.n_plus
    if stats.n_minus:
        out += n2 / stats.n_minus
    return out


@dataclass(frozen=True, eq=False)
class SimplexProjection:
    """Closest probability vector to a unit-sum spectrum.

    ``projected[i] = input[i] - tau`` for the first ``cut_index`` entries and
    zero afterwards; ``bound_value`` is the squared distance between them.
    """

    projected: Spectrum
    cut_index: int
    tau: float
    bound_value: float


def simplex_project(s, trace_tol: float = DEFAULT_TRACE_TOL) -> SimplexProjection:
    s = as_spectrum(s)
    v = s.values
    total = v.sum()
    if abs(total - 1.0) > trace_tol:
        raise TraceNotOne("spectrum does not sum to 1", abs(total - 1.0))
    size = v.size
    csum = np.cumsum(v)
    counts = np.arange(1, size + 1)
    taus = (csum - 1.0) / counts
    nxt = np.append(v[1:], -np.inf)
    n = int(np.argmax(taus >= nxt)) + 1  # last entry is always True
    tau = float(taus[n - 1])
    projected = np.zeros(size)
    projected[:n] = v[:n] - tau
    if v[-1] >= -s.tol:
        # already a distribution within tolerance
        bound = 0.0
    else:
        bound = float(np.dot(v[n:], v[n:]) + n * tau * tau)
    return SimplexProjection(projected=Spectrum(projected, s.tol), cut_index=n,
                             tau=tau, bound_value=bound)


def spectrum_distance_sq(a, b) -> float:
    a, b = as_spectrum(a), as_spectrum(b)
    if len(a) != len(b):
        raise LengthMismatch(f"spectra have lengths {len(a)} and {len(b)}")
    d = a.values - b.values
    return float(np.dot(d, d))
