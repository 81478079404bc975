"""Dense bipartite matrix core.

Basis ordering: the composite index of ``|a>_A |b>_B`` is ``k = a*N + b``
with ``M = dim_a`` and ``N = dim_b``, i.e. the ordering of ``np.kron``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (DimensionMismatch, EigensolverFailure, NonOrthonormalBasis,
                     NotHermitian, NotPositive, NotUnitTrace, ValidationError)
from .spectra import Spectrum
from .tolerances import Tolerances, resolve


@dataclass(frozen=True)
class BipartiteDims:
    dim_a: int
    dim_b: int

    def __post_init__(self):
        for name in ("dim_a", "dim_b"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ValidationError(f"{name} must be a positive integer, got {v!r}")
            object.__setattr__(self, name, int(v))

    @property
    def total(self) -> int:
        return self.dim_a * self.dim_b

    def of(self, subsystem: str) -> int:
        return self.dim_a if _side(subsystem) == "A" else self.dim_b

    def as_tuple(self) -> tuple[int, int]:
        return (self.dim_a, self.dim_b)

    @classmethod
    def coerce(cls, dims) -> "BipartiteDims":
        if isinstance(dims, cls):
            return dims
        m, n = dims
        return cls(m, n)


def _side(subsystem: str) -> str:
    s = str(subsystem).upper()
    if s not in ("A", "B"):
        raise ValidationError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return s


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """Hermitian matrix with optional bipartite structure (no trace/PSD demands)."""

    entries: np.ndarray
    dims: BipartiteDims | None = None

    def __post_init__(self):
        object.__setattr__(self, "entries", _readonly(self.entries))
        if self.dims is not None:
            object.__setattr__(self, "dims", BipartiteDims.coerce(self.dims))

    @property
    def side(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class DensityMatrix(HermitianMatrix):
    """Validated state: Hermitian, unit trace, PSD, with its measured defects.

    Build through :func:`validate_density` rather than directly.
    """

    hermiticity_defect: float = 0.0
    min_eigenvalue: float = 0.0
    trace_defect: float = 0.0

    def __post_init__(self):
        super().__post_init__()
        if self.dims is None:
            raise ValidationError("a DensityMatrix needs bipartite dims")


@dataclass(frozen=True, eq=False)
class Measurement:
    """Orthonormal rank-1 projective basis on one subsystem.

    ``basis_vectors`` holds one vector per row.
    """

    basis_vectors: np.ndarray
    subsystem: str = "A"
    gram_defect: float = field(default=0.0, compare=False)

    def __post_init__(self):
        vecs = np.atleast_2d(np.array(self.basis_vectors, dtype=complex))
        if vecs.shape[0] != vecs.shape[1]:
            raise DimensionMismatch(
                f"need as many basis vectors as the dimension, got shape {vecs.shape}")
        vecs.flags.writeable = False
        object.__setattr__(self, "basis_vectors", vecs)
        object.__setattr__(self, "subsystem", _side(self.subsystem))
        gram = vecs.conj() @ vecs.T
        object.__setattr__(self, "gram_defect",
                           float(np.max(np.abs(gram - np.eye(vecs.shape[0])))))

    @property
    def dim(self) -> int:
        return self.basis_vectors.shape[0]

    @property
    def unitary(self) -> np.ndarray:
        """Matrix whose columns are the basis vectors."""
        return self.basis_vectors.T

    @classmethod
    def from_unitary(cls, u, subsystem: str = "A") -> "Measurement":
        return cls(np.asarray(u).T, subsystem)

    @classmethod
    def computational(cls, dim: int, subsystem: str = "A") -> "Measurement":
        return cls(np.eye(dim), subsystem)


def _entries(x) -> np.ndarray:
    return x.entries if isinstance(x, HermitianMatrix) else np.asarray(x)


def _dims_of(x, dims) -> BipartiteDims:
    if dims is not None:
        return BipartiteDims.coerce(dims)
    d = getattr(x, "dims", None)
    if d is None:
        raise ValidationError("bipartite dims are required")
    return d


def validate_density(raw, dims, tol: Tolerances | None = None) -> DensityMatrix:
    """Check a raw matrix and wrap it as a :class:`DensityMatrix`.

    The hermiticity defect is measured on ``raw``; the stored entries are the
    symmetrized ``(raw + raw^dagger)/2`` on which trace and positivity are checked.

    Raises
    ------
    DimensionMismatch
        If ``raw`` is not square with side ``M*N``.
    NotHermitian, NotUnitTrace, NotPositive
        With the offending defect attached as ``.defect``.
    """
    tol = resolve(tol)
    dims = BipartiteDims.coerce(dims)
    a = np.asarray(raw, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"matrix must be square, got shape {a.shape}")
    if a.shape[0] != dims.total:
        raise DimensionMismatch(
            f"matrix side {a.shape[0]} does not match dims {dims.as_tuple()} "
            f"(expected {dims.total})")
    if not np.all(np.isfinite(a)):
        raise ValidationError("matrix contains non-finite entries")
    herm = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if herm > tol.herm:
        raise NotHermitian("matrix is not Hermitian", herm)
    a = (a + a.conj().T) / 2
    trace_defect = abs(float(np.trace(a).real) - 1.0)
    if trace_defect > tol.trace:
        raise NotUnitTrace("trace differs from 1", trace_defect)
    lo = float(_eigvalsh(a)[0])
    if lo < -tol.psd:
        raise NotPositive("matrix has a negative eigenvalue", -lo)
    return DensityMatrix(a, dims, hermiticity_defect=herm, min_eigenvalue=lo,
                         trace_defect=trace_defect)


def partial_transpose(x, subsystem: str = "A", dims=None) -> HermitianMatrix:
    """Transpose the indices of one subsystem.

    For ``subsystem="A"``: ``out[(j,k),(i,l)] = in[(i,k),(j,l)]``. The map is a
    pure index permutation, so applying it twice returns the input exactly.
    """
    dims = _dims_of(x, dims)
    a = _entries(x)
    if a.shape != (dims.total, dims.total):
        raise DimensionMismatch(f"matrix shape {a.shape} does not match dims {dims.as_tuple()}")
    m, n = dims.as_tuple()
    t = a.reshape(m, n, m, n)
    axes = (2, 1, 0, 3) if _side(subsystem) == "A" else (0, 3, 2, 1)
    return HermitianMatrix(t.transpose(axes).reshape(dims.total, dims.total), dims)


def _eigvalsh(a: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.eigvalsh(a)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(f"eigensolver did not converge: {exc}") from exc


def spectrum(x, tol: float | None = None) -> Spectrum:
    """Eigenvalues of a Hermitian matrix, descending."""
    eig_tol = resolve(None).eig if tol is None else tol
    return Spectrum(_eigvalsh(_entries(x))[::-1], eig_tol)


def moments(x, n_max: int) -> np.ndarray:
    """``Tr(H^n)`` for ``n = 1..n_max`` by repeated multiplication."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    h = _entries(x)
    out = np.empty(n_max)
    out[0] = np.trace(h).real
    power = h
    for k in range(1, n_max):
        # Tr(P H) without forming the product
        out[k] = np.sum(power * h.T).real
        if k + 1 < n_max:
            power = power @ h
    return out


def hs_distance_sq(x, y) -> float:
    a, b = _entries(x), _entries(y)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    d = a - b
    return float(np.sum(d.real ** 2 + d.imag ** 2))


def trace_norm(x) -> float:
    return float(np.sum(np.linalg.svd(_entries(x), compute_uv=False)))


def _entropy_of_eigs(w: np.ndarray, eps: float) -> float:
    w = w[w > eps]
    return float(-np.sum(w * np.log2(w)))


def entropy(rho, tol: float | None = None) -> float:
    """Von Neumann entropy in bits; eigenvalues below the tolerance count as 0."""
    eps = resolve(None).eig if tol is None else tol
    return _entropy_of_eigs(_eigvalsh(_entries(rho)), eps)


def relative_entropy(rho, sigma, tol: Tolerances | None = None) -> float:
    """``S(rho||sigma)`` in bits, or ``inf`` if rho leaks outside sigma's support."""
    tol = resolve(tol)
    a, b = _entries(rho), _entries(sigma)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    try:
        w, v = np.linalg.eigh(b)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc
    keep = w > tol.eig
    kernel = v[:, ~keep]
    leak = float(np.trace(kernel.conj().T @ a @ kernel).real) if kernel.size else 0.0
    if leak > tol.support:
        return float("inf")
    vk = v[:, keep]
    log_sigma = (vk * np.log2(w[keep])) @ vk.conj().T
    cross = float(np.sum(a * log_sigma.T).real)
    return max(-entropy(a, tol.eig) - cross, 0.0)


def _check_basis(basis: Measurement, tol: Tolerances) -> None:
    if basis.gram_defect > tol.basis:
        raise NonOrthonormalBasis("measurement basis is not orthonormal", basis.gram_defect)


def _rotate(a: np.ndarray, dims: BipartiteDims, u: np.ndarray, side: str) -> np.ndarray:
    """``(U^dagger (x) I) a (U (x) I)`` for side A, mirrored for side B."""
    m, n = dims.as_tuple()
    t = a.reshape(m, n, m, n)
    if side == "A":
        t = np.einsum("ia,ajbk,bl->ijlk", u.conj().T, t, u, optimize=True)
    else:
        t = np.einsum("ia,xayb,bl->xiyl", u.conj().T, t, u, optimize=True)
    return t


def pinch(rho, basis: Measurement, subsystem: str | None = None,
          tol: Tolerances | None = None, dims=None):
    """Dephase one subsystem in ``basis``.

    Returns ``sum_i (P_i (x) I) rho (P_i (x) I)`` (or the B-side analogue).
    For a :class:`DensityMatrix` input the result is a :class:`DensityMatrix`.
    """
    tol = resolve(tol)
    side = _side(subsystem or basis.subsystem)
    dims = _dims_of(rho, dims)
    if basis.dim != dims.of(side):
        raise DimensionMismatch(
            f"basis dimension {basis.dim} does not match subsystem {side} ({dims.of(side)})")
    _check_basis(basis, tol)
    u = basis.unitary
    m, n = dims.as_tuple()
    t = _rotate(_entries(rho), dims, u, side)
    mask = np.eye(m if side == "A" else n, dtype=bool)
    if side == "A":
        t = t * mask[:, None, :, None]
    else:
        t = t * mask[None, :, None, :]
    out = _rotate(t.reshape(dims.total, dims.total), dims, u.conj().T, side)
    out = out.reshape(dims.total, dims.total)
    if isinstance(rho, DensityMatrix):
        out = (out + out.conj().T) / 2
        return DensityMatrix(out, dims, hermiticity_defect=0.0,
                             min_eigenvalue=float(_eigvalsh(out)[0]),
                             trace_defect=abs(float(np.trace(out).real) - 1.0))
    return HermitianMatrix(out, dims)


def tensor(x, y) -> np.ndarray:
    return np.kron(_entries(x), _entries(y))


def ket(index: int, dim: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def projector(vec: Sequence[complex]) -> np.ndarray:
    v = np.asarray(vec, dtype=complex)
    return np.outer(v, v.conj())
