from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = ["CoeffGroup", "Z", "Zmod"]


@dataclass(frozen=True)
class CoeffGroup:
    """The integers (``modulus == 0``) or the cyclic group ``Z/modulus``."""

    modulus: int = 0

    def __post_init__(self):
        if self.modulus < 0 or self.modulus == 1:
            raise ValueError(f"invalid modulus {self.modulus}")

    @classmethod
    def parse(cls, text: str) -> "CoeffGroup":
        t = text.strip().replace(" ", "")
        if t in ("Z", "ZZ"):
            return cls(0)
        m = re.fullmatch(r"(?:Z/|Z_|F_|F|GF\(?)(\d+)\)?", t)
        if not m:
            raise ValueError(f"cannot parse coefficient group {text!r}")
        return cls(int(m.group(1)))

    @property
    def is_finite(self) -> bool:
        return self.modulus != 0

    @property
    def order(self) -> int | None:
        return self.modulus or None

    def reduce(self, x: int) -> int:
        return x % self.modulus if self.modulus else int(x)

    def elements(self) -> range:
        if not self.modulus:
            raise ValueError("Z is infinite")
        return range(self.modulus)

    def __str__(self) -> str:
        return f"Z/{self.modulus}" if self.modulus else "Z"


Z = CoeffGroup(0)


def Zmod(m: int) -> CoeffGroup:
    return CoeffGroup(m)
