"""Machine-readable pass/fail records."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Certificate:
    check: str
    verdict: bool
    degree: int | None = None
    rank: int | None = None
    target: int | None = None
    witnesses: list[str] = field(default_factory=list)
    seed: int | None = None
    elapsed_ms: float = 0.0
    details: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.verdict

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "verdict": "pass" if self.verdict else "fail",
            "degree": self.degree,
            "rank": self.rank,
            "target": self.target,
            "witnesses": list(self.witnesses),
            "seed": self.seed,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "details": self.details,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Certificate":
        return cls(
            check=d["check"],
            verdict=d["verdict"] == "pass",
            degree=d.get("degree"),
            rank=d.get("rank"),
            target=d.get("target"),
            witnesses=list(d.get("witnesses", [])),
            seed=d.get("seed"),
            elapsed_ms=d.get("elapsed_ms", 0.0),
            details=d.get("details", {}),
        )

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = [f"check: {self.check}", f"verdict: {'pass' if self.verdict else 'fail'}"]
        for key in ("degree", "rank", "target", "seed"):
            value = getattr(self, key)
            if value is not None:
                lines.append(f"{key}: {value}")
        for w in self.witnesses:
            lines.append(f"witness: {w}")
        for key, value in self.details.items():
            lines.append(f"{key}: {value}")
        lines.append(f"elapsed_ms: {self.elapsed_ms:.3f}")
        return "\n".join(lines)
