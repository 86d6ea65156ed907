"""Exact scalars and opaque label types.

Every exponent in this package lives in (1/2)Z and is stored as a doubled
integer, so arithmetic and comparisons are exact and canonical forms of
monomials are stable.  Cuspidal representations are opaque labels: the only
facts the calculus ever consults are a label's name, its GL rank, whether it
is conjugate self-dual, and (for the anchor labels of the bigger group) the
declared reducibility points and twist-fixedness.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import LabelConflictError, UnknownLabelError

__all__ = [
    "HalfInt",
    "HALF",
    "halfint_ceil",
    "CuspidalGLLabel",
    "GUCuspidalLabel",
    "TwistTag",
    "TRIVIAL_TWIST",
    "twist_merge",
    "LabelRegistry",
    "DUAL_MARKER",
]


class HalfInt:
    """An exact half-integer, stored as twice its value.

    ``HalfInt(3)`` is the integer 3; use ``HalfInt.from_twice(1)`` or
    ``HalfInt("1/2")`` for one half.  Addition, subtraction, negation and
    comparisons are exact and never round.  Equality with plain ints is
    supported for convenience, but hashes are not aligned with int hashes,
    so HalfInt and int must not be mixed as keys of one dict.
    """

    __slots__ = ("twice",)

    def __init__(self, value: "int | str | HalfInt" = 0):
        if isinstance(value, HalfInt):
            self.twice = value.twice
        elif isinstance(value, int):
            self.twice = 2 * value
        elif isinstance(value, str):
            self.twice = _parse_twice(value)
        else:
            raise TypeError(f"cannot build a HalfInt from {value!r}")

    @classmethod
    def from_twice(cls, twice: int) -> "HalfInt":
        if not isinstance(twice, int):
            raise TypeError("from_twice expects an int")
        out = cls.__new__(cls)
        out.twice = twice
        return out

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def ceil(self) -> int:
        """Smallest integer not smaller than the value."""
        return (self.twice + 1) // 2

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return HalfInt.from_twice(self.twice + o.twice)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return HalfInt.from_twice(self.twice - o.twice)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return HalfInt.from_twice(o.twice - self.twice)

    def __neg__(self):
        return HalfInt.from_twice(-self.twice)

    def __mul__(self, other):
        if isinstance(other, int):
            return HalfInt.from_twice(self.twice * other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.twice == o.twice

    def __lt__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.twice < o.twice

    def __le__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.twice <= o.twice

    def __gt__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.twice > o.twice

    def __ge__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.twice >= o.twice

    def __hash__(self):
        return hash(self.twice)

    def __bool__(self):
        return self.twice != 0

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self):
        return f"HalfInt({str(self)!r})"


def _coerce(x) -> "HalfInt | None":
    if isinstance(x, HalfInt):
        return x
    if isinstance(x, int):
        return HalfInt(x)
    return None


def _parse_twice(text: str) -> int:
    s = text.strip()
    neg = False
    while s.startswith("-"):
        neg = not neg
        s = s[1:].strip()
    if "/" in s:
        num, _, den = s.partition("/")
        if den.strip() != "2" or not num.strip().isdigit():
            raise ValueError(f"not a half-integer literal: {text!r}")
        t = int(num)
    elif s.isdigit():
        t = 2 * int(s)
    else:
        raise ValueError(f"not a half-integer literal: {text!r}")
    return -t if neg else t


HALF = HalfInt.from_twice(1)


def halfint_ceil(x: "HalfInt | int") -> int:
    """Least integer >= x."""
    return HalfInt(x).ceil() if not isinstance(x, HalfInt) else x.ceil()


# Suffix used to derive the name of the conjugate-dual partner of a label
# that is not conjugate self-dual.
DUAL_MARKER = "~"


@dataclass(frozen=True, slots=True, eq=False)
class CuspidalGLLabel:
    """Opaque label for an irreducible cuspidal representation of a GL group.

    Equality and hashing go by name only; the registry is responsible for
    rejecting one name with two different attribute sets.
    """

    name: str
    dim: int = 1
    conj_self_dual: bool = True
    dual_name: str = ""

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"label {self.name!r}: dim must be >= 1")
        if not self.dual_name:
            partner = self.name if self.conj_self_dual else self.name + DUAL_MARKER
            object.__setattr__(self, "dual_name", partner)

    def dual(self) -> "CuspidalGLLabel":
        """The conjugate-dual label; an involution."""
        if self.conj_self_dual:
            return self
        return CuspidalGLLabel(self.dual_name, self.dim, False, dual_name=self.name)

    def __eq__(self, other):
        if isinstance(other, CuspidalGLLabel):
            return self.name == other.name
        return NotImplemented

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"CuspidalGLLabel({self.name!r}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class GUCuspidalLabel:
    """Opaque label for a cuspidal anchor representation of the bigger group.

    ``reducibility`` declares, per GL label, the non-negative half-integral
    point where the corresponding one-segment induction reduces; these are
    input data, never computed.  ``twist_fixed`` lists the GL labels whose
    central-character twist is declared to fix this anchor, which lets the
    engine erase the corresponding twist tags at canonicalization.
    """

    name: str
    rank: int = 0
    reducibility: Mapping[CuspidalGLLabel, HalfInt] = None  # type: ignore[assignment]
    twist_fixed: frozenset = frozenset()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError(f"label {self.name!r}: rank must be >= 0")
        red = {}
        for rho, val in (self.reducibility or {}).items():
            v = HalfInt(val)
            if v < 0:
                raise ValueError(
                    f"label {self.name!r}: reducibility at {rho.name!r} must be >= 0"
                )
            red[rho] = v
        object.__setattr__(self, "reducibility", red)
        object.__setattr__(self, "twist_fixed", frozenset(self.twist_fixed))

    def __eq__(self, other):
        if isinstance(other, GUCuspidalLabel):
            return self.name == other.name
        return NotImplemented

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"GUCuspidalLabel({self.name!r}, rank={self.rank})"


@dataclass(frozen=True, slots=True, eq=False)
class TwistTag:
    """Formal product of central-character twists, as a free abelian group element.

    Entries are (label name, exponent, accumulated nu-exponent sum); the
    nu sum is carried for display only and does not enter equality.  The
    trivial tag is the empty tuple.
    """

    entries: tuple = ()

    def __post_init__(self):
        merged: dict = {}
        for name, exp, nu in self.entries:
            old_exp, old_nu = merged.get(name, (0, HalfInt(0)))
            merged[name] = (old_exp + int(exp), old_nu + HalfInt(nu))
        out = tuple(
            (name, exp, nu)
            for name, (exp, nu) in sorted(merged.items())
            if exp != 0
        )
        object.__setattr__(self, "entries", out)

    @classmethod
    def omega(cls, label: "CuspidalGLLabel | str", nu: HalfInt = HalfInt(0)) -> "TwistTag":
        """The single twist contributed by one GL factor with the given label."""
        name = label.name if isinstance(label, CuspidalGLLabel) else label
        return cls(((name, 1, HalfInt(nu)),))

    @property
    def is_trivial(self) -> bool:
        return not self.entries

    def merge(self, other: "TwistTag") -> "TwistTag":
        if self.is_trivial:
            return other
        if other.is_trivial:
            return self
        return TwistTag(self.entries + other.entries)

    def inverse(self) -> "TwistTag":
        return TwistTag(tuple((n, -e, -nu) for n, e, nu in self.entries))

    def without(self, names) -> "TwistTag":
        """Erase the entries keyed by any of the given label names."""
        if self.is_trivial:
            return self
        kept = tuple(e for e in self.entries if e[0] not in names)
        return self if len(kept) == len(self.entries) else TwistTag(kept)

    def _key(self):
        return tuple((n, e) for n, e, _ in self.entries)

    def __eq__(self, other):
        if isinstance(other, TwistTag):
            return self._key() == other._key()
        return NotImplemented

    def __hash__(self):
        return hash(self._key())

    def __str__(self):
        if self.is_trivial:
            return ""
        parts = []
        for name, exp, _ in self.entries:
            parts.append(f"w_{name}" if exp == 1 else f"w_{name}^{exp}")
        return " ".join(parts)

    def __repr__(self):
        return f"TwistTag({self.entries!r})"


TRIVIAL_TWIST = TwistTag()


def twist_merge(t1: TwistTag, t2: TwistTag) -> TwistTag:
    """Componentwise sum of twist exponents; zero entries are pruned."""
    return t1.merge(t2)


class LabelRegistry:
    """Append-only name table for cuspidal labels.

    Redeclaring a name with identical attributes is a no-op returning the
    existing label; redeclaring with different attributes raises, since
    silent attribute drift would corrupt canonical forms.  Reads are
    lock-free; writes are serialized.
    """

    def __init__(self):
        self._gl: dict = {}
        self._gu: dict = {}
        self._lock = threading.Lock()

    def declare_gl(self, name: str, dim: int = 1, conj_self_dual: bool = True,
                   dual_name: str = "") -> CuspidalGLLabel:
        label = CuspidalGLLabel(name, dim, conj_self_dual, dual_name)
        with self._lock:
            existing = self._gl.get(name)
            if existing is not None:
                if (existing.dim, existing.conj_self_dual, existing.dual_name) != (
                    label.dim, label.conj_self_dual, label.dual_name
                ):
                    raise LabelConflictError(
                        f"GL label {name!r} redeclared with different attributes"
                    )
                return existing
            self._gl[name] = label
            if not label.conj_self_dual and label.dual_name not in self._gl:
                self._gl[label.dual_name] = label.dual()
        return label

    def declare_gu(self, name: str, rank: int = 0,
                   reducibility: "Mapping[CuspidalGLLabel, HalfInt] | None" = None,
                   twist_fixed: Iterable = ()) -> GUCuspidalLabel:
        label = GUCuspidalLabel(name, rank, reducibility or {}, frozenset(twist_fixed))
        with self._lock:
            existing = self._gu.get(name)
            if existing is not None:
                if (existing.rank, existing.reducibility, existing.twist_fixed) != (
                    label.rank, label.reducibility, label.twist_fixed
                ):
                    raise LabelConflictError(
                        f"GU label {name!r} redeclared with different attributes"
                    )
                return existing
            self._gu[name] = label
        return label

    def gl(self, name: str) -> CuspidalGLLabel:
        try:
            return self._gl[name]
        except KeyError:
            raise UnknownLabelError(f"unknown GL label {name!r}") from None

    def gu(self, name: str) -> GUCuspidalLabel:
        try:
            return self._gu[name]
        except KeyError:
            raise UnknownLabelError(f"unknown GU label {name!r}") from None

    def gl_names(self):
        return sorted(self._gl)

    def gu_names(self):
        return sorted(self._gu)
