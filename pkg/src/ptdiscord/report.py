"""Per-state correlation report."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from . import __version__
from .bounds import (DiscordBounds, EntanglementBounds, SpectraPair, discord_bounds,
                     entanglement_bounds)
from .criteria import CriterionVerdict, ppt_test, sipt_moment_test, sipt_test
from .spectra import NegativityStats, negativity_stats
from .tolerances import Tolerances, resolve


@dataclass
class CorrelationReport:
    state_id: str
    dims: tuple[int, int]
    criteria: dict[str, CriterionVerdict]
    negativity: NegativityStats
    discord_bounds: DiscordBounds
    entanglement_bounds: EntanglementBounds
    tolerances: dict
    oracles: dict[str, dict] = field(default_factory=dict)
    version: str = __version__

    def to_dict(self) -> dict:
        return {
            "state_id": self.state_id,
            "dims": list(self.dims),
            "criteria": {k: v.to_dict() for k, v in self.criteria.items()},
            "negativity": asdict(self.negativity),
            "discord_bounds": self.discord_bounds.to_dict(),
            "entanglement_bounds": self.entanglement_bounds.to_dict(),
            "oracles": self.oracles,
            "tolerances": self.tolerances,
            "version": self.version,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CorrelationReport":
        ent = dict(d["entanglement_bounds"])
        ent.pop("tighter", None)
        return cls(
            state_id=d["state_id"],
            dims=tuple(d["dims"]),
            criteria={k: CriterionVerdict.from_dict(v) for k, v in d["criteria"].items()},
            negativity=NegativityStats(**d["negativity"]),
            discord_bounds=DiscordBounds(**d["discord_bounds"]),
            entanglement_bounds=EntanglementBounds(**ent),
            tolerances=dict(d["tolerances"]),
            oracles=dict(d.get("oracles", {})),
            version=d.get("version", __version__),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CorrelationReport":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = [f"state      {self.state_id}",
                 f"dims       {self.dims[0]} x {self.dims[1]}"]
        for name, v in self.criteria.items():
            lines.append(f"{name:<10} {v.verdict.value:<12} witness {v.witness_value:.10g}"
                         f"  ({v.detail})")
        ns = self.negativity
        lines.append(f"negativity {ns.negativity:.10g}  N+ {ns.n_plus}  N- {ns.n_minus}")
        lines.append("discord bounds")
        for k, v in self.discord_bounds.to_dict().items():
            lines.append(f"  {k:<20} {v:.10g}")
        lines.append("entanglement bounds")
        for k, v in self.entanglement_bounds.to_dict().items():
            lines.append(f"  {k:<20} {v if isinstance(v, str) else format(v, '.10g')}")
        for name, res in self.oracles.items():
            lines.append(f"oracle {name:<8} {res['value']:.10g}  converged={res['converged']}"
                         f"  spread={res['spread']:.3g}  restarts={res['restarts_used']}")
        lines.append(f"version    {self.version}")
        return "\n".join(lines)


def analyze_state(rho, state_id: str = "state", tol: Tolerances | None = None,
                  n_limit: int | None = None) -> CorrelationReport:
    tol = resolve(tol)
    pair = SpectraPair.of(rho, tol)
    return CorrelationReport(
        state_id=state_id,
        dims=rho.dims.as_tuple(),
        criteria={"ppt": ppt_test(rho, tol), "sipt": sipt_test(rho, tol),
                  "sipt_moment": sipt_moment_test(rho, n_limit, tol)},
        negativity=negativity_stats(pair.transposed),
        discord_bounds=discord_bounds(pair),
        entanglement_bounds=entanglement_bounds(rho, tol),
        tolerances=tol.to_dict(),
    )
