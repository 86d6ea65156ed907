"""Classification data for strongly positive classes.

A strongly positive class is parametrized, per conjugate-self-dual GL
label with declared reducibility point a > 0, by an increasing sequence of
ceil(a) exponents.  This module enumerates and validates such data, builds
the canonical inducing class each datum determines, and computes the
multiplicity diagnostics that certify the parametrization at desk scale
(the leading term of the shape-matched Jacquet module must occur exactly
once).

Two conventions for the exponent sequences are supported.  The permissive
default requires b_i congruent to a mod 1 with -1 < b_1 < ... < b_k, where
the lowest admissible value of b_i encodes an empty segment; the strict
variant additionally forces every segment nonempty.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    InvalidDatumError,
    TwistFixednessWarning,
    UndeclaredReducibilityError,
)
from .grothendieck import GLMonomial, GUClass, TensorTerm, factor_to_obj
from .scalars import (
    CuspidalGLLabel,
    GUCuspidalLabel,
    HalfInt,
    TRIVIAL_TWIST,
    halfint_ceil,
)
from .segments import Segment
from .structure import GroupMode, ParabolicShape, jacquet_by_shape

__all__ = [
    "JordSequence",
    "LJDatum",
    "LJValidation",
    "SPConditions",
    "SPEntry",
    "enumerate_jord",
    "build_inducing_rep",
    "check_inducing_constraints",
    "sp_necessary_conditions",
    "leading_term_multiplicity",
    "enumerate_sp",
    "validate_lj",
    "lj_to_obj",
    "lj_from_obj",
]


@dataclass(frozen=True, slots=True)
class JordSequence:
    """One label's exponent sequence.  Construction is permissive; use
    ``validate_lj`` to check the classification conditions."""

    rho: CuspidalGLLabel
    a: HalfInt
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", HalfInt(self.a))
        object.__setattr__(self, "b", tuple(HalfInt(x) for x in self.b))

    @property
    def k(self) -> int:
        return len(self.b)

    def is_fully_empty(self) -> bool:
        """True for a well-formed sequence whose every slot carries the
        empty-segment encoding b_i = a - k + i - 1 (in particular for a
        label with k = 0).  Malformed sequences are never considered empty,
        so they still reach the validator."""
        if self.k != halfint_ceil(self.a):
            return False
        return all(
            bj == self.a - self.k + i - 1
            for i, bj in enumerate(self.b, start=1)
        )

    def segments(self) -> list:
        """The inducing segments [a - k + j, b_j], empty ones dropped."""
        out = []
        for j, bj in enumerate(self.b, start=1):
            seg = Segment(self.rho, self.a - self.k + j, bj)
            if not seg.is_empty:
                out.append(seg)
        return out

    def __str__(self):
        seq = ", ".join(str(x) for x in self.b)
        return f"{self.rho.name}: a={self.a}, b=({seq})"


@dataclass(frozen=True, slots=True)
class LJDatum:
    """A full classification datum: one sequence per label, over one anchor.

    Sequences that are fully empty-encoded are dropped at construction: a
    label whose every slot holds the empty encoding contributes nothing to
    the inducing class, and the classification identifies such a sequence
    with the label being absent (otherwise the parametrization could not be
    injective: all-empty data over different labels induce the same bare
    anchor).
    """

    jord: tuple
    sigma: GUCuspidalLabel

    def __post_init__(self):
        kept = tuple(j for j in self.jord if not j.is_fully_empty())
        object.__setattr__(self, "jord", kept)

    def __str__(self):
        if not self.jord:
            return f"[] |x| {self.sigma.name}"
        body = "; ".join(str(j) for j in self.jord)
        return f"[{body}] |x| {self.sigma.name}"


@dataclass(frozen=True)
class LJValidation:
    """Per-condition outcome of ``validate_lj``."""

    checks: tuple  # of (condition, ok, message)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    @property
    def first_violation(self):
        for cond, ok, message in self.checks:
            if not ok:
                return cond, message
        return None

    def to_obj(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [
                {"condition": c, "ok": ok, "message": m} for c, ok, m in self.checks
            ],
        }


def _grid(a: HalfInt, max_b: HalfInt) -> list:
    """The admissible exponent values a - ceil(a), a - ceil(a) + 1, ..., <= max_b."""
    lo = a - halfint_ceil(a)
    out = []
    t = lo.twice
    while t <= max_b.twice:
        out.append(HalfInt.from_twice(t))
        t += 2
    return out


def enumerate_jord(rho: CuspidalGLLabel, a: "HalfInt | int",
                   max_b: "HalfInt | int", strict: bool = False) -> list:
    """All exponent sequences for one label, in lexicographic order.

    a = 0 contributes the single empty sequence.
    """
    a = HalfInt(a)
    max_b = HalfInt(max_b)
    if a < 0:
        raise InvalidDatumError(f"reducibility point must be >= 0, got {a}")
    k = halfint_ceil(a)
    if k == 0:
        return [JordSequence(rho, a, ())]
    out = []
    for combo in itertools.combinations(_grid(a, max_b), k):
        if strict and any(bj < a - k + j for j, bj in enumerate(combo, start=1)):
            continue
        out.append(JordSequence(rho, a, combo))
    return out


def validate_lj(datum: LJDatum, strict: bool = False) -> LJValidation:
    """Check the classification conditions, reporting each clause."""
    checks = []

    names = [j.rho.name for j in datum.jord]
    msgs = []
    if len(set(names)) != len(names):
        msgs.append("labels are not mutually distinct")
    for j in datum.jord:
        if not j.rho.conj_self_dual:
            msgs.append(f"label {j.rho.name!r} is not conjugate self-dual")
        declared = datum.sigma.reducibility.get(j.rho)
        if declared is None:
            msgs.append(
                f"no reducibility declared for {j.rho.name!r} on {datum.sigma.name!r}"
            )
        elif declared != j.a:
            msgs.append(
                f"datum uses a={j.a} for {j.rho.name!r} but {datum.sigma.name!r} "
                f"declares {declared}"
            )
        elif not declared > 0:
            msgs.append(
                f"label {j.rho.name!r} has reducibility 0 and must be omitted"
            )
    checks.append(("i", not msgs, "; ".join(msgs) or "labels admissible"))

    msgs = []
    for j in datum.jord:
        if j.k != halfint_ceil(j.a):
            msgs.append(
                f"{j.rho.name!r}: sequence length {j.k} != ceil({j.a}) = "
                f"{halfint_ceil(j.a)}"
            )
    checks.append(("ii", not msgs, "; ".join(msgs) or "sequence lengths match"))

    msgs = []
    for j in datum.jord:
        for bj in j.b:
            if not (bj - j.a).is_integer():
                msgs.append(f"{j.rho.name!r}: {bj} - {j.a} is not an integer")
        if any(x >= y for x, y in zip(j.b, j.b[1:])):
            msgs.append(f"{j.rho.name!r}: exponents not strictly increasing")
        if j.b and not j.b[0] > -1:
            msgs.append(f"{j.rho.name!r}: first exponent {j.b[0]} is not > -1")
        if strict:
            for idx, bj in enumerate(j.b, start=1):
                if bj < j.a - j.k + idx:
                    msgs.append(
                        f"{j.rho.name!r}: exponent {bj} below the strict floor "
                        f"{j.a - j.k + idx}"
                    )
    checks.append(("iii", not msgs, "; ".join(msgs) or "exponent sequences valid"))

    return LJValidation(tuple(checks))


def build_inducing_rep(datum: LJDatum, strict: bool = False) -> GUClass:
    """The canonical inducing class of a valid datum, with trivial twist.

    Warns when a contributing label lacks declared twist-fixedness, which
    the necessary conditions require for a strongly positive subclass to
    exist at all.
    """
    report = validate_lj(datum, strict)
    if not report.ok:
        cond, message = report.first_violation
        raise InvalidDatumError(f"condition ({cond}) fails: {message}")
    segments = []
    for j in datum.jord:
        segs = j.segments()
        if segs and j.rho not in datum.sigma.twist_fixed:
            warnings.warn(
                f"label {j.rho.name!r} is not declared twist-fixed on "
                f"{datum.sigma.name!r}",
                TwistFixednessWarning,
                stacklevel=2,
            )
        segments.extend(segs)
    return GUClass(segments, datum.sigma, TRIVIAL_TWIST)


def check_inducing_constraints(segments: Sequence[Segment], a: "HalfInt | int") -> bool:
    """Constraints on the inducing segments of one label: starts must form
    a-k+1, ..., a; ends strictly increase; k <= ceil(a); all strongly
    positive.  ``segments`` must be sorted by start ascending."""
    a = HalfInt(a)
    k = len(segments)
    if k == 0:
        return True
    if k > halfint_ceil(a):
        return False
    for idx, seg in enumerate(segments, start=1):
        if seg.is_empty or not seg.is_strongly_positive():
            return False
        if seg.a != a - k + idx:
            return False
    ends = [seg.b for seg in segments]
    return all(x < y for x, y in zip(ends, ends[1:]))


@dataclass(frozen=True)
class SPConditions:
    """Necessary conditions for a cuspidal pair to carry strongly positive data."""

    rho: CuspidalGLLabel
    sigma: GUCuspidalLabel
    conj_self_dual: bool
    twist_fixed: bool
    reducibility: "HalfInt | None"

    @property
    def sp_possible(self) -> bool:
        return self.conj_self_dual and self.twist_fixed

    def to_obj(self) -> dict:
        return {
            "rho": self.rho.name,
            "sigma": self.sigma.name,
            "conj_self_dual": self.conj_self_dual,
            "twist_fixed": self.twist_fixed,
            "reducibility": None if self.reducibility is None else str(self.reducibility),
            "sp_possible": self.sp_possible,
        }


def sp_necessary_conditions(rho: CuspidalGLLabel, sigma: GUCuspidalLabel) -> SPConditions:
    return SPConditions(
        rho,
        sigma,
        conj_self_dual=rho.conj_self_dual,
        twist_fixed=rho in sigma.twist_fixed,
        reducibility=sigma.reducibility.get(rho),
    )


def leading_term_multiplicity(datum: LJDatum, mode: GroupMode = GroupMode.GU,
                              strict: bool = False) -> int:
    """Coefficient of the leading tensor term in the shape-matched Jacquet
    module of the inducing class.  The value 1 is the uniqueness signature
    of a valid datum.  Invalid data are rejected before any computation."""
    rep = build_inducing_rep(datum, strict)
    shape = ParabolicShape(tuple(seg.rank for seg in rep.segments))
    target = TensorTerm(
        tuple(GLMonomial((seg,)) for seg in rep.segments)
        + (GUClass((), datum.sigma, TRIVIAL_TWIST),)
    )
    return jacquet_by_shape(rep, shape, mode).coefficient(target)


@dataclass(frozen=True)
class SPEntry:
    """One enumerated datum with its inducing class and diagnostics."""

    datum: LJDatum
    inducing: GUClass
    constraints_ok: bool
    leading_multiplicity: int

    def to_obj(self) -> dict:
        return {
            "datum": lj_to_obj(self.datum),
            "inducing": factor_to_obj(self.inducing),
            "diagnostics": {
                "constraints_ok": self.constraints_ok,
                "leading_multiplicity": self.leading_multiplicity,
            },
        }


def _per_label_bounds(labels: Sequence[CuspidalGLLabel], max_b) -> list:
    if isinstance(max_b, (HalfInt, int)):
        return [HalfInt(max_b)] * len(labels)
    bounds = [HalfInt(x) for x in max_b]
    if len(bounds) != len(labels):
        raise InvalidDatumError("one max_b bound per label is required")
    return bounds


def enumerate_sp(labels: Sequence[CuspidalGLLabel], sigma: GUCuspidalLabel,
                 max_b="5", mode: GroupMode = GroupMode.GU,
                 strict: bool = False) -> list:
    """Enumerate all data over the given labels up to the exponent bound.

    ``max_b`` may be a single bound or one bound per label.  Labels with
    reducibility 0 contribute nothing.  Output order is the lexicographic
    product order and is deterministic.
    """
    bounds = _per_label_bounds(labels, max_b)
    per_label = []
    for rho, bound in zip(labels, bounds):
        a = sigma.reducibility.get(rho)
        if a is None:
            raise UndeclaredReducibilityError(
                f"no reducibility declared for {rho.name!r} on {sigma.name!r}"
            )
        conditions = sp_necessary_conditions(rho, sigma)
        if not conditions.sp_possible:
            raise InvalidDatumError(
                f"label {rho.name!r} fails the necessary conditions "
                f"(conj_self_dual={conditions.conj_self_dual}, "
                f"twist_fixed={conditions.twist_fixed})"
            )
        per_label.append(enumerate_jord(rho, a, bound, strict))
    entries = []
    for combo in itertools.product(*per_label):
        datum = LJDatum(combo, sigma)
        rep = build_inducing_rep(datum, strict)
        ok = all(
            check_inducing_constraints(j.segments(), j.a) for j in datum.jord
        )
        mult = leading_term_multiplicity(datum, mode, strict)
        entries.append(SPEntry(datum, rep, ok, mult))
    return entries


# ---------------------------------------------------------------------------
# JSON form of a datum: {"sigma": name, "jord": [{"rho": name, "a": "p/2",
# "b": ["q/2", ...]}]}

def lj_to_obj(datum: LJDatum) -> dict:
    return {
        "sigma": datum.sigma.name,
        "jord": [
            {"rho": j.rho.name, "a": str(j.a), "b": [str(x) for x in j.b]}
            for j in datum.jord
        ],
    }


def lj_from_obj(obj: dict, gl_resolver, gu_resolver) -> LJDatum:
    """Rebuild a datum from its JSON form, resolving names via callables."""
    sigma = gu_resolver(obj["sigma"])
    jord = tuple(
        JordSequence(
            gl_resolver(entry["rho"]),
            HalfInt(entry["a"]),
            tuple(HalfInt(x) for x in entry["b"]),
        )
        for entry in obj.get("jord", ())
    )
    return LJDatum(jord, sigma)
