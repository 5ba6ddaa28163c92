"""Three-valued answers shared by the ideal and property layers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

HOLDS, FAILS, UNKNOWN = "Holds", "Fails", "Unknown"


@dataclass(frozen=True)
class PropertyVerdict:
    """Holds(evidence) | Fails(witness) | Unknown(reason).

    A Fails witness is a structured counterexample whose certificates replay
    through :mod:`contentlab.verify`.  Holds over sampled inputs is evidence,
    not proof, and says so in ``evidence``.
    """

    status: str
    evidence: tuple = ()
    witness: Optional[dict] = None
    reason: Optional[str] = None

    @classmethod
    def holds(cls, *evidence: Any) -> "PropertyVerdict":
        return cls(HOLDS, evidence=tuple(evidence))

    @classmethod
    def fails(cls, witness: dict, *evidence: Any) -> "PropertyVerdict":
        return cls(FAILS, evidence=tuple(evidence), witness=witness)

    @classmethod
    def unknown(cls, reason: str, *evidence: Any) -> "PropertyVerdict":
        return cls(UNKNOWN, evidence=tuple(evidence), reason=reason)

    @property
    def ok(self) -> bool:
        return self.status == HOLDS

    @property
    def failed(self) -> bool:
        return self.status == FAILS
