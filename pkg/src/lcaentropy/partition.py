"""Base partitions for entropy joins.

Two variants: the m-atom partition by the symbol at coordinate 0
("zero-time"), and the m^(b-a+1)-atom partition into cylinders on a
coordinate window [a, b].
"""

from __future__ import annotations

from dataclasses import dataclass

from .rule import LocalRule

ZERO_TIME = "zero-time"
WINDOW = "window"


@dataclass(frozen=True)
class PartitionSpec:
    kind: str
    a: int = 0
    b: int = 0

    def __post_init__(self):
        if self.kind not in (ZERO_TIME, WINDOW):
            raise ValueError(f"unknown partition kind {self.kind!r}")
        if self.kind == WINDOW and self.a > self.b:
            raise ValueError(f"window requires a <= b, got [{self.a}, {self.b}]")

    @classmethod
    def zero_time(cls) -> "PartitionSpec":
        return cls(ZERO_TIME, 0, 0)

    @classmethod
    def window(cls, a: int, b: int) -> "PartitionSpec":
        return cls(WINDOW, a, b)

    @property
    def bounds(self) -> tuple[int, int]:
        """Coordinate window [lo, hi] the partition reads."""
        if self.kind == ZERO_TIME:
            return (0, 0)
        return (self.a, self.b)

    @property
    def width(self) -> int:
        lo, hi = self.bounds
        return hi - lo + 1

    def atom_count(self, m: int) -> int:
        return m**self.width

    def describe(self) -> str:
        if self.kind == ZERO_TIME:
            return "zero-time"
        return f"window[{self.a},{self.b}]"

    @classmethod
    def parse(cls, text: str) -> "PartitionSpec":
        """Parse 'zero-time' or 'window:a,b' (CLI syntax)."""
        if text == ZERO_TIME:
            return cls.zero_time()
        if text.startswith("window:"):
            parts = text[len("window:") :].split(",")
            if len(parts) != 2:
                raise ValueError(f"expected window:a,b, got {text!r}")
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise ValueError(f"window bounds must be integers in {text!r}") from None
            return cls.window(a, b)
        raise ValueError(f"unknown partition {text!r}")


def default_base(rule: LocalRule) -> PartitionSpec:
    """Default base partition: the window [-l, r-1] of size l+r.

    Its n-fold joins are exactly the cylinder partitions of the dependency
    window, so the difference estimator of the join-entropy sequence is
    constant for bipermutative rules.  Degenerates to zero-time when
    l + r = 0 (no window to take).
    """
    if rule.span == 0:
        return PartitionSpec.zero_time()
    return PartitionSpec.window(-rule.l, rule.r - 1)
