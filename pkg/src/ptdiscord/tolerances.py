"""Numerical tolerance profiles.

The active default profile is chosen by the ``PTDISCORD_TOL_PROFILE``
environment variable (``default``, ``strict`` or ``loose``).
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

ENV_PROFILE = "PTDISCORD_TOL_PROFILE"


@dataclass(frozen=True)
class Tolerances:
    herm: float = 1e-9
    trace: float = 1e-9
    psd: float = 1e-8
    eig: float = 1e-10
    basis: float = 1e-9
    support: float = 1e-10
    # per unit of composite dimension MN
    sipt: float = 1e-10
    # per moment order n
    moment: float = 1e-9

    def sipt_threshold(self, composite_dim: int) -> float:
        return self.sipt * composite_dim

    def moment_threshold(self, order: int) -> float:
        return self.moment * order

    def replace(self, **changes) -> "Tolerances":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


PROFILES = {
    "default": Tolerances(),
    "strict": Tolerances(herm=1e-11, trace=1e-11, psd=1e-10, eig=1e-12,
                         basis=1e-11, support=1e-12, sipt=1e-12, moment=1e-11),
    "loose": Tolerances(herm=1e-7, trace=1e-7, psd=1e-6, eig=1e-8,
                        basis=1e-7, support=1e-8, sipt=1e-8, moment=1e-7),
}


def default_tolerances() -> Tolerances:
    name = os.environ.get(ENV_PROFILE, "default").strip().lower() or "default"
    try:
        return PROFILES[name]
    except KeyError:
        raise ValueError(
            f"unknown tolerance profile {name!r} in {ENV_PROFILE}; "
            f"expected one of {sorted(PROFILES)}") from None


def resolve(tol: Tolerances | None) -> Tolerances:
    return default_tolerances() if tol is None else tol
