"""Parameterized state families.

Every family returns a validated :class:`~ptdiscord.qmat.DensityMatrix`.
Seeded families draw from ``numpy.random.default_rng(seed)`` and are
reproducible bit for bit.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.stats import unitary_group

from .. import qmat
from ..errors import ParameterOutOfRange
from ..tolerances import Tolerances

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


class Family(str, enum.Enum):
    MAX_ENTANGLED = "max-entangled"
    WERNER = "werner"
    ISOTROPIC = "isotropic"
    BELL_DIAGONAL = "bell-diagonal"
    X_STATE = "x-state"
    RANDOM_GINIBRE = "random-ginibre"
    RANDOM_CQ = "random-cq"
    RANDOM_SEPARABLE = "random-separable"
    PRODUCT = "product"


@dataclass(frozen=True)
class StateSpec:
    """A family name plus its named parameters.

    >>> StateSpec("werner", {"p": 0.2})
    StateSpec(family=<Family.WERNER: 'werner'>, params={'p': 0.2})
    """

    family: Family
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "params", dict(self.params))

    def describe(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.family.value}({inner})"

    def to_dict(self) -> dict:
        return {"family": self.family.value, "params": _jsonable(self.params)}


def _jsonable(params: dict) -> dict:
    out = {}
    for k, v in params.items():
        if isinstance(v, complex):
            v = [v.real, v.imag]
        elif isinstance(v, tuple):
            v = list(v)
        out[k] = v
    return out


def _finish(mat: np.ndarray, dims, tol: Tolerances | None) -> qmat.DensityMatrix:
    return qmat.validate_density(mat, dims, tol)


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise ParameterOutOfRange(message)


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def _ginibre_dm(dim: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def _random_ket(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def _haar(dim: int, rng: np.random.Generator) -> np.ndarray:
    if dim == 1:
        return np.ones((1, 1), dtype=complex)
    return unitary_group.rvs(dim, random_state=rng)


def max_entangled_vector(d: int) -> np.ndarray:
    v = np.zeros(d * d, dtype=complex)
    v[np.arange(d) * (d + 1)] = 1.0 / np.sqrt(d)
    return v


def max_entangled(d: int = 2, tol=None) -> qmat.DensityMatrix:
    _check(int(d) == d and d >= 1, f"d must be a positive integer, got {d}")
    d = int(d)
    return _finish(qmat.projector(max_entangled_vector(d)), (d, d), tol)


def werner(p: float, tol=None) -> qmat.DensityMatrix:
    """``p |psi-><psi-| + (1-p) I/4`` on two qubits."""
    _check(0.0 <= p <= 1.0, f"Werner weight p must lie in [0, 1], got {p}")
    singlet = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
    return _finish(p * qmat.projector(singlet) + (1 - p) * np.eye(4) / 4, (2, 2), tol)


def isotropic(d: int, f: float, tol=None) -> qmat.DensityMatrix:
    """Isotropic state with fidelity ``f`` to the maximally entangled state."""
    _check(int(d) == d and d >= 2, f"d must be an integer >= 2, got {d}")
    _check(0.0 <= f <= 1.0, f"fidelity f must lie in [0, 1], got {f}")
    d = int(d)
    phi = qmat.projector(max_entangled_vector(d))
    rest = (np.eye(d * d) - phi) / (d * d - 1)
    return _finish(f * phi + (1 - f) * rest, (d, d), tol)


def bell_diagonal(c1: float, c2: float, c3: float, tol=None) -> qmat.DensityMatrix:
    """``(I + sum_i c_i sigma_i (x) sigma_i) / 4``."""
    weights = np.array([1 - c1 - c2 - c3, 1 - c1 + c2 + c3,
                        1 + c1 - c2 + c3, 1 + c1 + c2 - c3]) / 4
    _check(np.all(weights >= -1e-12),
           f"Bell-diagonal correlations ({c1}, {c2}, {c3}) give a non-PSD matrix "
           f"(Bell weights {np.round(weights, 6).tolist()})")
    mat = np.eye(4, dtype=complex)
    for c, s in zip((c1, c2, c3), PAULI):
        mat = mat + c * np.kron(s, s)
    return _finish(mat / 4, (2, 2), tol)


def x_state(a: float, b: float, c: float, d: float, z: complex, w: complex,
            tol=None) -> qmat.DensityMatrix:
    """Two-qubit X-state: diagonal ``(a, b, c, d)``, ``rho[0,3] = z``, ``rho[1,2] = w``."""
    diag = np.array([a, b, c, d], dtype=float)
    _check(np.all(diag >= 0), f"X-state diagonal must be nonnegative, got {diag.tolist()}")
    _check(abs(diag.sum() - 1) <= 1e-12, f"X-state diagonal must sum to 1, got {diag.sum()}")
    _check(abs(z) ** 2 <= a * d + 1e-15, f"|z|^2 <= a*d violated: |z|={abs(z)}")
    _check(abs(w) ** 2 <= b * c + 1e-15, f"|w|^2 <= b*c violated: |w|={abs(w)}")
    mat = np.diag(diag).astype(complex)
    mat[0, 3], mat[3, 0] = z, np.conj(z)
    mat[1, 2], mat[2, 1] = w, np.conj(w)
    return _finish(mat, (2, 2), tol)


def random_ginibre(dims=(2, 2), rank: int | None = None, seed=None,
                   tol=None) -> qmat.DensityMatrix:
    dims = qmat.BipartiteDims.coerce(dims)
    rank = dims.total if rank is None else int(rank)
    _check(1 <= rank <= dims.total, f"rank must lie in [1, {dims.total}], got {rank}")
    return _finish(_ginibre_dm(dims.total, rank, _rng(seed)), dims, tol)


def random_cq(dims=(2, 2), k: int | None = None, seed=None, tol=None) -> qmat.DensityMatrix:
    """``sum_i f_i |u_i><u_i| (x) rho_i`` with a Haar-random basis ``{u_i}`` on A."""
    dims = qmat.BipartiteDims.coerce(dims)
    m, n = dims.as_tuple()
    k = m if k is None else int(k)
    _check(1 <= k <= m, f"k must lie in [1, {m}], got {k}")
    rng = _rng(seed)
    u = _haar(m, rng)
    f = rng.dirichlet(np.ones(k))
    mat = np.zeros((dims.total, dims.total), dtype=complex)
    for i in range(k):
        rho_b = _ginibre_dm(n, int(rng.integers(1, n + 1)), rng)
        mat += f[i] * np.kron(qmat.projector(u[:, i]), rho_b)
    return _finish(mat, dims, tol)


def random_separable(dims=(2, 2), k: int = 4, seed=None, tol=None) -> qmat.DensityMatrix:
    """Convex mixture of ``k`` random pure product states."""
    dims = qmat.BipartiteDims.coerce(dims)
    _check(int(k) == k and k >= 1, f"k must be a positive integer, got {k}")
    rng = _rng(seed)
    f = rng.dirichlet(np.ones(int(k)))
    mat = np.zeros((dims.total, dims.total), dtype=complex)
    for i in range(int(k)):
        v = np.kron(_random_ket(dims.dim_a, rng), _random_ket(dims.dim_b, rng))
        mat += f[i] * qmat.projector(v)
    return _finish(mat, dims, tol)


def product(dims=(2, 2), seed=None, tol=None) -> qmat.DensityMatrix:
    """``rho_A (x) rho_B`` with full-rank Ginibre factors."""
    dims = qmat.BipartiteDims.coerce(dims)
    rng = _rng(seed)
    mat = np.kron(_ginibre_dm(dims.dim_a, dims.dim_a, rng),
                  _ginibre_dm(dims.dim_b, dims.dim_b, rng))
    return _finish(mat, dims, tol)


def _dims_param(p: dict):
    dims = p.get("dims", (2, 2))
    if isinstance(dims, str):
        dims = tuple(int(x) for x in dims.replace("x", ",").split(","))
    return tuple(dims)


def _complex_param(v) -> complex:
    if isinstance(v, (list, tuple)):
        return complex(v[0], v[1])
    return complex(v)


def make_state(spec: StateSpec, tol: Tolerances | None = None) -> qmat.DensityMatrix:
    p = spec.params
    fam = spec.family
    try:
        if fam is Family.MAX_ENTANGLED:
            return max_entangled(p.get("d", 2), tol)
        if fam is Family.WERNER:
            return werner(float(p["p"]), tol)
        if fam is Family.ISOTROPIC:
            return isotropic(p.get("d", 2), float(p["f"]), tol)
        if fam is Family.BELL_DIAGONAL:
            return bell_diagonal(float(p["c1"]), float(p["c2"]), float(p["c3"]), tol)
        if fam is Family.X_STATE:
            return x_state(float(p["a"]), float(p["b"]), float(p["c"]), float(p["d"]),
                           _complex_param(p["z"]), _complex_param(p["w"]), tol)
        if fam is Family.RANDOM_GINIBRE:
            return random_ginibre(_dims_param(p), p.get("rank"), p.get("seed"), tol)
        if fam is Family.RANDOM_CQ:
            return random_cq(_dims_param(p), p.get("k"), p.get("seed"), tol)
        if fam is Family.RANDOM_SEPARABLE:
            return random_separable(_dims_param(p), p.get("k", 4), p.get("seed"), tol)
        if fam is Family.PRODUCT:
            return product(_dims_param(p), p.get("seed"), tol)
    except KeyError as exc:
        raise ParameterOutOfRange(f"{fam.value} needs parameter {exc.args[0]!r}") from None
    raise ParameterOutOfRange(f"unsupported family {fam!r}")  # pragma: no cover
