"""Projection onto the probability simplex by enumerating support patterns.

For each candidate support ``S`` the equality-constrained minimizer is
``q_S = v_S - t`` with ``t = (sum(v_S) - 1)/|S|`` and ``q = 0`` off ``S``.
The optimum over the simplex is the best feasible pattern. This does not
sort the input and shares no code with the cut-index formula it checks.
"""

from __future__ import annotations

import functools

import numpy as np
from scipy.optimize import minimize

from ..errors import TraceNotOne

EXHAUSTIVE_MAX = 12


@functools.lru_cache(maxsize=None)
def _masks(length: int) -> np.ndarray:
    codes = np.arange(1, 2 ** length)
    return ((codes[:, None] >> np.arange(length)) & 1).astype(bool)


def _exhaustive(v: np.ndarray) -> tuple[np.ndarray, float]:
    masks = _masks(v.size)
    sizes = masks.sum(axis=1)
    t = (masks @ v - 1.0) / sizes
    q = np.where(masks, v[None, :] - t[:, None], 0.0)
    feasible = np.all(q >= -1e-15, axis=1)
    dist = np.sum((v[None, :] - q) ** 2, axis=1)
    dist[~feasible] = np.inf
    best = int(np.argmin(dist))
    return np.clip(q[best], 0.0, None), float(dist[best])


def _slsqp(v: np.ndarray) -> tuple[np.ndarray, float]:
    x0 = np.full(v.size, 1.0 / v.size)
    res = minimize(lambda q: float(np.sum((v - q) ** 2)), x0,
                   jac=lambda q: 2 * (q - v), method="SLSQP",
                   bounds=[(0.0, None)] * v.size,
                   constraints=[{"type": "eq", "fun": lambda q: q.sum() - 1.0,
                                 "jac": lambda q: np.ones_like(q)}],
                   options={"ftol": 1e-15, "maxiter": 1000})
    q = np.clip(res.x, 0.0, None)
    return q, float(np.sum((v - q) ** 2))


def simplex_qp_oracle(v, trace_tol: float = 1e-8) -> tuple[np.ndarray, float]:
    """Return ``(projection, distance_sq)`` for a unit-sum vector ``v``."""
    v = np.asarray(v, dtype=float).ravel()
    if abs(v.sum() - 1.0) > trace_tol:
        raise TraceNotOne("vector does not sum to 1", abs(v.sum() - 1.0))
    if v.size <= EXHAUSTIVE_MAX:
        return _exhaustive(v)
    return _slsqp(v)
