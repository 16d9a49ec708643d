"""Additive invariants of one cohomology group, with stable JSON output."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class GroupReport:
    theory: str
    n: int
    degree: int
    twist: str | None
    field: str
    mode: str = "symbolic"
    w_rank: int = 0
    gw_rank: int = 0
    z_rank: int = 0
    torsion_rank: int = 0
    two_torsion: list[int] = field(default_factory=list)
    invariant_factors: list[int] = field(default_factory=list)
    basis: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "theory": self.theory,
            "n": self.n,
            "degree": self.degree,
            "twist": self.twist,
            "field": self.field,
            "mode": self.mode,
            "w_rank": self.w_rank,
            "gw_rank": self.gw_rank,
            "z_rank": self.z_rank,
            "torsion_rank": self.torsion_rank,
            "two_torsion": list(self.two_torsion),
            "invariant_factors": list(self.invariant_factors),
            "basis": list(self.basis),
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)

    def summary(self) -> str:
        """Group shape such as ``GW^1``, ``W^2 + (Z/2)^2`` or ``0``."""
        parts = []
        if self.theory in ("witt", "icoh") and self.w_rank:
            parts.append(f"W^{self.w_rank}")
        if self.gw_rank:
            parts.append(f"GW^{self.gw_rank}")
        if self.z_rank:
            parts.append(f"Z^{self.z_rank}")
        for d in self.two_torsion:
            parts.append(f"Z/{d}")
        if self.torsion_rank and self.theory in ("icoh", "ch"):
            parts.append(f"(Z/2)^{self.torsion_rank}")
        return " + ".join(parts) if parts else "0"

    def to_text(self) -> str:
        twist = f" twist={self.twist}" if self.twist else ""
        head = f"{self.theory} n={self.n} degree={self.degree}{twist} field={self.field} [{self.mode}]: {self.summary()}"
        lines = [head]
        lines.extend(f"  {b}" for b in self.basis)
        lines.extend(f"  note: {note}" for note in self.notes)
        return "\n".join(lines)
