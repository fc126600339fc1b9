"""Values in [0, +inf] with the conventions 0*inf = 0 and log 0 = -inf."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class ExtendedNonneg:
    """A nonnegative extended real: a finite float or positive infinity."""

    value: float

    def __post_init__(self):
        if math.isnan(self.value) or self.value < 0.0:
            raise ValueError(f"extended nonnegative value must be >= 0, got {self.value}")

    @classmethod
    def infinity(cls) -> "ExtendedNonneg":
        return cls(math.inf)

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.value)

    def __float__(self) -> float:
        return self.value

    def __add__(self, other: "ExtendedNonneg | float") -> "ExtendedNonneg":
        return ExtendedNonneg(self.value + _val(other))

    def __mul__(self, other: "ExtendedNonneg | float") -> "ExtendedNonneg":
        a, b = self.value, _val(other)
        if 0.0 in (a, b):
            return ExtendedNonneg(0.0)
        return ExtendedNonneg(a * b)

    __radd__ = __add__
    __rmul__ = __mul__

    def log(self) -> float:
        """log with log 0 = -inf and log inf = inf."""
        if self.value == 0.0:
            return -math.inf
        return math.log(self.value)


def _val(x) -> float:
    v = float(x)
    if math.isnan(v) or v < 0.0:
        raise ValueError(f"expected a nonnegative value, got {x}")
    return v
