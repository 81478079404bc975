"""PPT and spectrum-invariance (SIPT) tests.

A discord-free (classical-quantum) state keeps its spectrum under partial
transposition, so any change of spectrum certifies discord. A negative
eigenvalue of the partial transpose certifies entanglement.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import qmat
from .spectra import negativity_stats
from .tolerances import Tolerances, resolve


class Verdict(str, enum.Enum):
    VIOLATED = "Violated"
    SATISFIED = "Satisfied"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class CriterionVerdict:
    verdict: Verdict
    witness_value: float
    threshold: float
    detail: str = ""

    @property
    def violated(self) -> bool:
        return self.verdict is Verdict.VIOLATED

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.value, "witness_value": self.witness_value,
                "threshold": self.threshold, "detail": self.detail}

    @classmethod
    def from_dict(cls, d: dict) -> "CriterionVerdict":
        return cls(Verdict(d["verdict"]), float(d["witness_value"]),
                   float(d["threshold"]), d.get("detail", ""))


def moment_limit(composite_dim: int, rule: str = "newton") -> int:
    """Highest moment order needed to decide spectral equality.

    ``"newton"`` gives ``MN`` (power sums up to the matrix size fix the
    spectrum); ``"conservative"`` adds two extra moments, ``MN + 2``.
    """
    if rule == "newton":
        return composite_dim
    if rule == "conservative":
        return composite_dim + 2
    raise ValueError(f"unknown moment rule {rule!r}")


def ppt_test(rho, tol: Tolerances | None = None) -> CriterionVerdict:
    tol = resolve(tol)
    pt_spec = qmat.spectrum(qmat.partial_transpose(rho, "A"), tol.eig)
    lo = float(pt_spec.values[-1])
    stats = negativity_stats(pt_spec)
    verdict = Verdict.VIOLATED if lo < -tol.psd else Verdict.SATISFIED
    return CriterionVerdict(verdict, stats.negativity, tol.psd,
                            f"negativity; min PT eigenvalue {lo:.6g}")


def sipt_witness(rho, tol: Tolerances | None = None) -> float:
    """Squared distance between the sorted spectra of rho and its partial transpose."""
    tol = resolve(tol)
    d = (qmat.spectrum(rho, tol.eig).values
         - qmat.spectrum(qmat.partial_transpose(rho, "A"), tol.eig).values)
    return float(np.dot(d, d))


def sipt_test(rho, tol: Tolerances | None = None) -> CriterionVerdict:
    """Spectrum invariance under partial transposition.

    ``Violated`` proves discord. ``Satisfied`` does not rule it out: some
    discordant X-states keep their spectrum.
    """
    tol = resolve(tol)
    w = sipt_witness(rho, tol)
    thr = tol.sipt_threshold(rho.dims.total)
    verdict = Verdict.VIOLATED if w > thr else Verdict.SATISFIED
    return CriterionVerdict(verdict, w, thr, "squared L2 gap of sorted spectra")


def moment_gaps(rho, n_limit: int) -> np.ndarray:
    """``|Tr(rho^n) - Tr((rho^TA)^n)|`` for ``n = 1..n_limit``."""
    a = qmat.moments(rho, n_limit)
    b = qmat.moments(qmat.partial_transpose(rho, "A"), n_limit)
    return np.abs(a - b)


def sipt_moment_test(rho, n_limit: int | None = None,
                     tol: Tolerances | None = None) -> CriterionVerdict:
    """SIPT via moments, starting at the third (orders 1 and 2 always agree).

    With ``n_limit`` below ``MN`` an all-clear is reported as ``Inconclusive``
    since lower moments alone do not pin down the spectrum.
    """
    tol = resolve(tol)
    mn = rho.dims.total
    if n_limit is None:
        n_limit = moment_limit(mn)
    if n_limit < 3:
        raise ValueError("n_limit must be at least 3")
    gaps = moment_gaps(rho, n_limit)
    for order in range(3, n_limit + 1):
        gap = float(gaps[order - 1])
        thr = tol.moment_threshold(order)
        if gap > thr:
            return CriterionVerdict(Verdict.VIOLATED, gap, thr,
                                    f"moment gap at n={order}")
    worst = int(np.argmax(gaps[2:])) + 3
    verdict = Verdict.SATISFIED if n_limit >= mn else Verdict.INCONCLUSIVE
    return CriterionVerdict(verdict, float(gaps[worst - 1]),
                            tol.moment_threshold(worst),
                            f"largest moment gap at n={worst} (checked n<={n_limit})")
