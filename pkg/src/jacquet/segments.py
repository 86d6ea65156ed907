"""Segments of cuspidal twists and their elementary operations.

A segment ``[nu^a rho, nu^b rho]`` is a cuspidal label together with two
half-integer bounds differing by an integer.  The value with b = a - 1 is
the first-class empty segment; it prints as ``1`` and vanishes inside
monomials, which lets summation bounds in the comultiplication formulas be
implemented literally with no special cases.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SegmentError
from .scalars import CuspidalGLLabel, HalfInt

__all__ = [
    "Segment",
    "segment_dual",
    "segment_e",
    "segment_is_strongly_positive",
]


@dataclass(frozen=True, slots=True)
class Segment:
    rho: CuspidalGLLabel
    a: HalfInt
    b: HalfInt

    def __post_init__(self):
        a = self.a if isinstance(self.a, HalfInt) else HalfInt(self.a)
        b = self.b if isinstance(self.b, HalfInt) else HalfInt(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        diff = b.twice - a.twice
        if diff % 2 != 0:
            raise SegmentError(
                f"segment bounds {a} and {b} differ by a non-integer"
            )
        if diff < -2:
            raise SegmentError(f"segment bounds {a} > {b} + 1")

    @classmethod
    def empty(cls, rho: CuspidalGLLabel, a: "HalfInt | int" = 0) -> "Segment":
        a = HalfInt(a)
        return cls(rho, a, a - 1)

    @property
    def is_empty(self) -> bool:
        return self.b.twice == self.a.twice - 2

    @property
    def length(self) -> int:
        """Number of cuspidal twists in the segment (0 when empty)."""
        if self.is_empty:
            return 0
        return (self.b.twice - self.a.twice) // 2 + 1

    @property
    def rank(self) -> int:
        """GL rank of the associated essentially square-integrable class."""
        return self.length * self.rho.dim

    def dual(self) -> "Segment":
        """Conjugate dual: negate and swap the bounds, dualize the label."""
        return Segment(self.rho.dual(), -self.b, -self.a)

    def center(self) -> HalfInt:
        """The exponent center (a + b) / 2 of a nonempty segment.

        Always exactly representable: the bounds share parity, so a + b is
        an integer.
        """
        if self.is_empty:
            raise SegmentError("the empty segment has no exponent center")
        return HalfInt.from_twice((self.a.twice + self.b.twice) // 2)

    def is_strongly_positive(self) -> bool:
        if self.is_empty:
            raise SegmentError("the empty segment is neither positive nor not")
        return self.a > 0

    def exponents(self):
        """Iterate the exponents a, a+1, ..., b."""
        t = self.a.twice
        while t <= self.b.twice:
            yield HalfInt.from_twice(t)
            t += 2

    def exponent_sum(self) -> HalfInt:
        """Sum of all exponents in the segment; 0 for the empty segment."""
        return HalfInt.from_twice(self.length * (self.a.twice + self.b.twice) // 2)

    def sort_key(self):
        return (self.rho.name, self.a.twice, self.b.twice)

    def __str__(self):
        if self.is_empty:
            return "1"
        return f"d({self.a},{self.b}@{self.rho.name})"

    def __repr__(self):
        return f"Segment({self})"


def segment_dual(s: Segment) -> Segment:
    return s.dual()


def segment_e(s: Segment) -> HalfInt:
    return s.center()


def segment_is_strongly_positive(s: Segment) -> bool:
    return s.is_strongly_positive()
