"""Exact half-integer arithmetic.

Every exponent in this package (segment endpoints, grid offsets, grading
degrees) lives in (1/2)Z.  A ``HalfInt`` stores twice its value as a plain
``int``, so all arithmetic and comparisons are exact; the parity of the
stored integer distinguishes integers from strict half-integers.

Wire form is ``"k"`` for integers and ``"k/2"`` with odd ``k`` for strict
half-integers, e.g. ``"-3/2"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_WIRE_RE = re.compile(r"^[+-]?\d+(/2)?$")


@dataclass(frozen=True, slots=True, order=True)
class HalfInt:
    twice: int

    @staticmethod
    def of(x: "HalfInt | int") -> "HalfInt":
        if isinstance(x, HalfInt):
            return x
        if isinstance(x, int):
            return HalfInt(2 * x)
        raise TypeError(f"cannot coerce {x!r} to HalfInt")

    @staticmethod
    def parse(text: str) -> "HalfInt":
        """Parse the wire form "k" or "k/2" (odd k)."""
        if not isinstance(text, str) or not _WIRE_RE.match(text):
            raise ValueError(f"malformed half-integer {text!r}")
        if text.endswith("/2"):
            k = int(text[:-2])
            if k % 2 == 0:
                raise ValueError(f"malformed half-integer {text!r}: even numerator")
            return HalfInt(k)
        return HalfInt(2 * int(text))

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def frac(self) -> "HalfInt":
        """Grid offset in {0, 1/2}: the class of self modulo Z."""
        return HalfInt(self.twice % 2)

    def __add__(self, other: "HalfInt | int") -> "HalfInt":
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other: "HalfInt | int") -> "HalfInt":
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __rsub__(self, other: "HalfInt | int") -> "HalfInt":
        return HalfInt(HalfInt.of(other).twice - self.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __int__(self) -> int:
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({str(self)})"


ZERO = HalfInt(0)
HALF = HalfInt(1)
ONE = HalfInt(2)


def hi(x: "HalfInt | int") -> HalfInt:
    """Shorthand coercion used throughout the package."""
    return HalfInt.of(x)
