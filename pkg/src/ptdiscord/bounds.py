"""Analytic lower bounds from spectra of a state and its partial transpose.

Discord side (distance to classical-quantum states):

* ``l_ppt``: squared distance from the PT spectrum to the probability simplex.
* ``l_ppt_prime``: the cheaper ``N^2/N_+ + N^2/N_-`` relaxation of ``l_ppt``.
* ``l_sipt``: ``|lam - lam'|^2 / 4 + dist^2(mean(lam, lam'), simplex)``.

Entanglement side reuses ``l_ppt`` (separable states are PPT too). The
relative-entropy quantities follow from Pinsker's inequality and are in bits.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from . import qmat
from .spectra import (Spectrum, SimplexProjection, negativity_stats, ratio_bound,
                      simplex_project, spectrum_distance_sq)
from .tolerances import Tolerances, resolve

PINSKER = 1.0 / (2.0 * math.log(2.0))


@dataclass(frozen=True)
class SpectraPair:
    """Sorted spectra of a state and of its partial transpose."""

    state: Spectrum
    transposed: Spectrum

    @classmethod
    def of(cls, rho, tol: Tolerances | None = None) -> "SpectraPair":
        tol = resolve(tol)
        return cls(qmat.spectrum(rho, tol.eig),
                   qmat.spectrum(qmat.partial_transpose(rho, "A"), tol.eig))

    def mean(self) -> Spectrum:
        return Spectrum((self.state.values + self.transposed.values) / 2, self.state.tol)


def _pair(rho, tol) -> SpectraPair:
    return rho if isinstance(rho, SpectraPair) else SpectraPair.of(rho, tol)


def l_ppt(rho, tol: Tolerances | None = None) -> float:
    return simplex_project(_pair(rho, tol).transposed).bound_value


def l_ppt_prime(rho, tol: Tolerances | None = None) -> float:
    return ratio_bound(negativity_stats(_pair(rho, tol).transposed))


def sipt_projection(rho, tol: Tolerances | None = None) -> SimplexProjection:
    """Simplex projection of the mean of the two spectra (the candidate ``lambda_SIPT``)."""
    return simplex_project(_pair(rho, tol).mean())


def l_sipt(rho, tol: Tolerances | None = None) -> float:
    pair = _pair(rho, tol)
    gap = spectrum_distance_sq(pair.state, pair.transposed)
    return gap / 4.0 + simplex_project(pair.mean()).bound_value


@dataclass(frozen=True)
class DiscordBounds:
    l_ppt: float
    l_ppt_prime: float
    l_sipt: float
    combined: float
    deficit_bound_bits: float

    def to_dict(self) -> dict:
        return asdict(self)


def discord_bounds(rho, tol: Tolerances | None = None) -> DiscordBounds:
    """All discord lower bounds of one state.

    ``combined`` lower-bounds the geometric discord and
    ``deficit_bound_bits = combined / (2 ln 2)`` the one-way deficit.
    """
    pair = _pair(rho, tol)
    a, a_prime, s = l_ppt(pair), l_ppt_prime(pair), l_sipt(pair)
    comb = max(a, s)
    return DiscordBounds(a, a_prime, s, comb, comb * PINSKER)


@dataclass(frozen=True)
class EntanglementBounds:
    e_hs_lemma: float
    e_hs_ratio: float
    e_hs_floor: float
    e_hs_literature: float
    e_re_bound_bits: float

    @property
    def tighter(self) -> str:
        """Which of ``e_hs_floor`` and ``e_hs_literature`` is larger."""
        if self.e_hs_floor > self.e_hs_literature:
            return "floor"
        if self.e_hs_floor < self.e_hs_literature:
            return "literature"
        return "equal"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["tighter"] = self.tighter
        return d


def literature_bound(negativity: float, dims) -> float:
    """``N^2 / min((M-1)^2, (N-1)^2)``; zero when a factor is one-dimensional."""
    dims = qmat.BipartiteDims.coerce(dims)
    denom = min((dims.dim_a - 1) ** 2, (dims.dim_b - 1) ** 2)
    return negativity ** 2 / denom if denom else 0.0


def entanglement_bounds(rho, tol: Tolerances | None = None) -> EntanglementBounds:
    pair = SpectraPair.of(rho, tol)
    stats = negativity_stats(pair.transposed)
    lemma = l_ppt(pair)
    floor = 4.0 * stats.negativity ** 2 / rho.dims.total
    return EntanglementBounds(
        e_hs_lemma=lemma,
        e_hs_ratio=ratio_bound(stats),
        e_hs_floor=floor,
        e_hs_literature=literature_bound(stats.negativity, rho.dims),
        e_re_bound_bits=lemma * PINSKER,
    )
