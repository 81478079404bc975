"""Brute-force optimization over rank-1 projective measurements on one side.

* :func:`gqd_oracle` minimizes ``||rho - pinch_A(rho)||_2^2`` over bases on A,
  which equals the geometric discord (distance to classical-quantum states).
* :func:`deficit_oracle` minimizes ``S(pinch_B(rho)) - S(rho)`` in bits, which
  equals the relative entropy to the dephased state.

A qubit side is searched exhaustively on a Bloch-angle grid followed by local
refinement. Larger sides use multi-start descent over ``U0 @ G(params)``
where ``G`` is a product of two-level (Givens) rotations and ``U0`` is a
Haar-random start. Every returned value is attained by an explicit basis, so
it upper-bounds the true minimum.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
from scipy.optimize import minimize
from scipy.stats import unitary_group

from .. import qmat
from ..qmat import Measurement


@dataclass(frozen=True)
class OracleOptions:
    """Search settings.

    ``grid`` is the (polar, azimuthal) resolution of the qubit grid and
    ``refine_levels`` the number of zoomed sub-grids around the best points.
    ``restarts`` counts random starts on sides of dimension 3 or more.
    """

    restarts: int = 32
    grid: tuple[int, int] = (64, 128)
    refine_levels: int = 2
    refine_candidates: int = 4
    tol: float = 1e-10
    seed: int = 0
    maxiter: int = 500

    def with_(self, **changes) -> "OracleOptions":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


@dataclass(frozen=True, eq=False)
class OracleResult:
    value: float
    argmin: object
    restarts_used: int
    converged: bool
    spread: float

    def to_dict(self) -> dict:
        arg = self.argmin
        if isinstance(arg, Measurement):
            arg = {"subsystem": arg.subsystem,
                   "basis_vectors": [[[float(z.real), float(z.imag)] for z in row]
                                     for row in arg.basis_vectors]}
        elif not isinstance(arg, (str, dict, type(None))):
            arg = str(arg)
        return {"value": self.value, "argmin": arg, "restarts_used": self.restarts_used,
                "converged": self.converged, "spread": self.spread}


# -- objectives -------------------------------------------------------------

def _blocks(t: np.ndarray, v: np.ndarray, side: str) -> np.ndarray:
    """Diagonal blocks ``<u_i| rho |u_i>`` for a batch of unitaries ``v`` (g, d, d)."""
    if side == "A":
        return np.einsum("gai,ajbk,gbi->gijk", v.conj(), t, v, optimize=True)
    return np.einsum("gai,xayb,gbi->gixy", v.conj(), t, v, optimize=True)


def _hs_objective(rho) -> Callable[[np.ndarray], np.ndarray]:
    a = rho.entries
    m, n = rho.dims.as_tuple()
    t = a.reshape(m, n, m, n)
    total = float(np.sum(np.abs(a) ** 2))

    def f(v):
        b = _blocks(t, v, "A")
        return total - np.sum(np.abs(b) ** 2, axis=(1, 2, 3))
    return f


def _entropy_objective(rho, side: str, eps: float = 1e-14) -> Callable[[np.ndarray], np.ndarray]:
    m, n = rho.dims.as_tuple()
    t = rho.entries.reshape(m, n, m, n)
    base = qmat.entropy(rho)

    def f(v):
        b = _blocks(t, v, side)
        b = (b + np.swapaxes(b, -1, -2).conj()) / 2
        w = np.linalg.eigvalsh(b).reshape(b.shape[0], -1)
        safe = np.where(w > eps, w, 1.0)
        h = -np.sum(np.where(w > eps, w * np.log2(safe), 0.0), axis=1)
        return h - base
    return f


# -- qubit side: Bloch grid ---------------------------------------------------

def _bloch_unitaries(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    e = np.exp(1j * phi)
    v = np.empty(theta.shape + (2, 2), dtype=complex)
    v[..., 0, 0] = c
    v[..., 1, 0] = e * s
    v[..., 0, 1] = -s / e
    v[..., 1, 1] = c
    return v


def _bloch_angles(u: np.ndarray) -> tuple[float, float]:
    u0 = u[:, 0]
    theta = 2 * math.acos(min(1.0, abs(u0[0])))
    phi = float(np.angle(u0[1]) - np.angle(u0[0])) if abs(u0[1]) > 1e-15 else 0.0
    return theta, phi


def _eval_angles(f, pts: np.ndarray) -> np.ndarray:
    return f(_bloch_unitaries(pts[:, 0], pts[:, 1]))


def _sweep_improves(f_scalar, x: np.ndarray, fx: float, tol: float, step: float = 1e-5) -> bool:
    for i, sgn in itertools.product(range(x.size), (1.0, -1.0)):
        y = x.copy()
        y[i] += sgn * step
        if f_scalar(y) < fx - tol:
            return True
    return False


def _optimize_qubit(f, opts: OracleOptions, warm: np.ndarray | None):
    nt, nphi = opts.grid
    theta = np.linspace(0.0, math.pi, nt)
    phi = np.linspace(0.0, 2 * math.pi, nphi, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    pts = np.column_stack([tt.ravel(), pp.ravel()])
    vals = _eval_angles(f, pts)
    order = np.argsort(vals, kind="stable")[: opts.refine_candidates]
    starts = [pts[i] for i in order]
    if warm is not None:
        starts.append(np.array(_bloch_angles(warm)))

    def scalar(x):
        return float(_eval_angles(f, np.asarray(x, dtype=float)[None, :])[0])

    step_t, step_p = math.pi / (nt - 1), 2 * math.pi / nphi
    finals = []
    for x0 in starts:
        x = np.array(x0, dtype=float)
        ht, hp = step_t, step_p
        for _ in range(opts.refine_levels):
            lt = np.linspace(x[0] - ht, x[0] + ht, 17)
            lp = np.linspace(x[1] - hp, x[1] + hp, 17)
            gt, gp = np.meshgrid(lt, lp, indexing="ij")
            sub = np.column_stack([gt.ravel(), gp.ravel()])
            sv = _eval_angles(f, sub)
            x = sub[int(np.argmin(sv))]
            ht, hp = ht / 8, hp / 8
        res = minimize(scalar, x, method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": opts.tol * 1e-2,
                                "maxiter": opts.maxiter})
        xb = res.x if res.fun <= scalar(x) else x
        fb = scalar(xb)
        finals.append((fb, xb, not _sweep_improves(scalar, xb, fb, opts.tol)))
    best = min(range(len(finals)), key=lambda i: (finals[i][0], i))
    fb, xb, conv = finals[best]
    u = _bloch_unitaries(np.array([xb[0]]), np.array([xb[1]]))[0]
    spread = max(v[0] for v in finals) - min(v[0] for v in finals)
    return fb, u, len(finals), conv, spread


# -- general side: Givens products --------------------------------------------

def _givens_product(params: np.ndarray, d: int) -> np.ndarray:
    u = np.eye(d, dtype=complex)
    for idx, (j, k) in enumerate(itertools.combinations(range(d), 2)):
        th, ph = params[2 * idx], params[2 * idx + 1]
        c, s = math.cos(th), math.sin(th)
        e = complex(math.cos(ph), math.sin(ph))
        g = np.eye(d, dtype=complex)
        g[j, j], g[j, k], g[k, j], g[k, k] = c, -e * s, s / e, c
        u = u @ g
    return u


def _optimize_general(f, d: int, opts: OracleOptions, warm: np.ndarray | None):
    rng = np.random.default_rng(opts.seed)
    n_par = d * (d - 1)
    starts = [unitary_group.rvs(d, random_state=rng) for _ in range(opts.restarts)]
    if warm is not None:
        starts.append(np.asarray(warm, dtype=complex))
    finals = []
    for u0 in starts:
        def scalar(x, u0=u0):
            return float(f((u0 @ _givens_product(x, d))[None])[0])
        x0 = np.zeros(n_par)
        res = minimize(scalar, x0, method="BFGS",
                       options={"gtol": 1e-9, "maxiter": opts.maxiter})
        xb = res.x if res.fun <= scalar(x0) else x0
        fb = scalar(xb)
        conv = not _sweep_improves(scalar, xb, fb, opts.tol)
        finals.append((fb, u0 @ _givens_product(xb, d), conv))
    best = min(range(len(finals)), key=lambda i: (finals[i][0], i))
    fb, u, conv = finals[best]
    spread = max(v[0] for v in finals) - min(v[0] for v in finals)
    return fb, u, len(finals), conv, spread


def _optimize(f, d: int, side: str, opts: OracleOptions, warm_start: Measurement | None):
    warm = None if warm_start is None else warm_start.unitary
    if d == 1:
        u = np.ones((1, 1), dtype=complex)
        return OracleResult(float(f(u[None])[0]), Measurement.from_unitary(u, side), 1, True, 0.0)
    if d == 2:
        fb, u, used, conv, spread = _optimize_qubit(f, opts, warm)
    else:
        fb, u, used, conv, spread = _optimize_general(f, d, opts, warm)
    return OracleResult(max(fb, 0.0), Measurement.from_unitary(u, side), used, conv, spread)


def gqd_oracle(rho, opts: OracleOptions | None = None,
               warm_start: Measurement | None = None) -> OracleResult:
    """Geometric discord ``min ||rho - pinch_A(rho)||_2^2`` by measurement search on A."""
    opts = opts or OracleOptions()
    return _optimize(_hs_objective(rho), rho.dims.dim_a, "A", opts, warm_start)


def deficit_oracle(rho, opts: OracleOptions | None = None, subsystem: str = "B",
                   warm_start: Measurement | None = None) -> OracleResult:
    """One-way deficit in bits: ``min S(pinch(rho)) - S(rho)`` over bases on ``subsystem``."""
    opts = opts or OracleOptions()
    side = subsystem.upper()
    return _optimize(_entropy_objective(rho, side), rho.dims.of(side), side, opts, warm_start)


def pinch_distance(rho, basis: Measurement) -> float:
    """HS distance from ``rho`` to its pinching in ``basis`` (on the basis' side)."""
    return qmat.hs_distance_sq(rho, qmat.pinch(rho, basis))
