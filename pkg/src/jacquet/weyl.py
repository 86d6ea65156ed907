"""Signed-permutation Weyl combinatorics for the rank-n similitude groups.

The relevant Weyl group is the hyperoctahedral group S_n x {+-1}^n.  An
element is stored as a permutation of {1..n} plus a sign vector indexed by
source position; its window form is w(j) = signs[j] * perm[j], extended to
negative letters by w(-j) = -w(j).

Lengths are computed on the restricted root system: positive roots are
e_i - e_j and e_i + e_j - e_0 for i < j, and 2e_i - e_0, where e_0 is the
similitude coordinate.  A sign flip at slot i acts as e_i -> e_0 - e_i and
e_0 is otherwise inert, so the simple roots e_i - e_{i+1} and 2e_n - e_0
behave exactly as in type C_n.

``p_rep`` / ``q_rep`` build the closed-form minimal double-coset
representatives from their defining piecewise branches, and
``brute_force_coset_reps`` is the independent exhaustive oracle they are
checked against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    BruteForceBoundError,
    InvalidParamsError,
    LeviActionError,
    NonBijectionError,
)

__all__ = [
    "SignedPermutation",
    "GeomParams",
    "LeviBlock",
    "p_rep",
    "q_rep",
    "enumerate_geom_params",
    "brute_force_coset_reps",
    "levi_action",
    "simple_roots",
    "positive_roots",
    "length",
    "simple_reflection",
    "all_elements",
]


class SignedPermutation:
    """An element of S_n x {+-1}^n."""

    __slots__ = ("perm", "signs", "window")

    def __init__(self, perm, signs=None):
        perm = tuple(int(p) for p in perm)
        n = len(perm)
        if sorted(perm) != list(range(1, n + 1)):
            raise InvalidParamsError(f"not a bijection of 1..{n}: {perm}")
        if signs is None:
            signs = (1,) * n
        signs = tuple(int(s) for s in signs)
        if len(signs) != n or any(s not in (1, -1) for s in signs):
            raise InvalidParamsError(f"invalid sign vector {signs}")
        self.perm = perm
        self.signs = signs
        self.window = tuple(s * p for s, p in zip(signs, perm))

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_window(cls, window) -> "SignedPermutation":
        window = tuple(window)
        return cls([abs(v) for v in window], [1 if v > 0 else -1 for v in window])

    @property
    def n(self) -> int:
        return len(self.window)

    def __call__(self, j: int) -> int:
        """Image of a signed letter; w(-j) = -w(j)."""
        if j > 0:
            return self.window[j - 1]
        return -self.window[-j - 1]

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        """Composition: (self * other)(j) = self(other(j))."""
        if not isinstance(other, SignedPermutation):
            return NotImplemented
        return SignedPermutation.from_window(self(v) for v in other.window)

    def inverse(self) -> "SignedPermutation":
        out = [0] * self.n
        for j, v in enumerate(self.window, start=1):
            if v > 0:
                out[v - 1] = j
            else:
                out[-v - 1] = -j
        return SignedPermutation.from_window(out)

    def is_identity(self) -> bool:
        return self.window == tuple(range(1, self.n + 1))

    def cycles(self) -> str:
        """Cycle form of the underlying unsigned permutation; 'id' if trivial."""
        seen = [False] * self.n
        parts = []
        for start in range(1, self.n + 1):
            if seen[start - 1]:
                continue
            cyc = [start]
            seen[start - 1] = True
            j = self.perm[start - 1]
            while j != start:
                cyc.append(j)
                seen[j - 1] = True
                j = self.perm[j - 1]
            if len(cyc) > 1:
                parts.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(parts) if parts else "id"

    def __eq__(self, other):
        if isinstance(other, SignedPermutation):
            return self.window == other.window
        return NotImplemented

    def __hash__(self):
        return hash(self.window)

    def __repr__(self):
        return f"SignedPermutation[{' '.join(map(str, self.window))}]"


@lru_cache(maxsize=None)
def positive_roots(n: int) -> tuple:
    """Roots as (e_0 coefficient, coefficient vector on e_1..e_n)."""
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            vec = [0] * n
            vec[i], vec[j] = 1, -1
            roots.append((0, tuple(vec)))
            vec = [0] * n
            vec[i], vec[j] = 1, 1
            roots.append((-1, tuple(vec)))
    for i in range(n):
        vec = [0] * n
        vec[i] = 2
        roots.append((-1, tuple(vec)))
    return tuple(roots)


@lru_cache(maxsize=None)
def simple_roots(n: int) -> tuple:
    """e_i - e_{i+1} for i < n, then 2e_n - e_0."""
    out = []
    for i in range(n - 1):
        vec = [0] * n
        vec[i], vec[i + 1] = 1, -1
        out.append((0, tuple(vec)))
    vec = [0] * n
    vec[n - 1] = 2
    out.append((-1, tuple(vec)))
    return tuple(out)


def root_image(w: SignedPermutation, root: tuple) -> tuple:
    """Apply e_j -> e_{|w(j)|} (sign +) or e_0 - e_{|w(j)|} (sign -)."""
    c0, coeffs = root
    out = [0] * len(coeffs)
    for idx, c in enumerate(coeffs):
        if c == 0:
            continue
        v = w.window[idx]
        if v > 0:
            out[v - 1] += c
        else:
            out[-v - 1] -= c
            c0 += c
    return (c0, tuple(out))


def _root_is_negative(root: tuple) -> bool:
    c0, coeffs = root
    if c0 == 1:
        return True
    if c0 == -1:
        return False
    for c in coeffs:
        if c != 0:
            return c < 0
    return False


def length(w: SignedPermutation) -> int:
    """Number of positive restricted roots sent to negative ones."""
    return sum(1 for r in positive_roots(w.n) if _root_is_negative(root_image(w, r)))


def simple_reflection(n: int, i: int) -> SignedPermutation:
    """s_i swaps slots i, i+1 for i < n; s_n flips the sign at slot n."""
    if not 1 <= i <= n:
        raise InvalidParamsError(f"no simple reflection {i} in rank {n}")
    if i < n:
        perm = list(range(1, n + 1))
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
        return SignedPermutation(perm)
    signs = [1] * n
    signs[-1] = -1
    return SignedPermutation(range(1, n + 1), signs)


def all_elements(n: int):
    """Iterate the full group, 2^n n! elements."""
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            yield SignedPermutation(perm, signs)


@dataclass(frozen=True, slots=True)
class GeomParams:
    """Admissible (d, k) for a pair of maximal parabolic indices (i1, i2)."""

    n: int
    i1: int
    i2: int
    d: int
    k: int

    def __post_init__(self):
        n, i1, i2, d, k = self.n, self.i1, self.i2, self.d, self.k
        if not (1 <= i1 <= n and 1 <= i2 <= n):
            raise InvalidParamsError(f"need 1 <= i1, i2 <= n, got {self}")
        if not 0 <= d <= min(i1, i2):
            raise InvalidParamsError(f"d out of range in {self}")
        if not max(0, (i1 + i2 - n) - d) <= k <= min(i1, i2) - d:
            raise InvalidParamsError(f"k out of range in {self}")

    @property
    def block_sizes(self) -> tuple:
        """Sizes (k, i2-d-k, d, i1-d-k, n-i1-i2+d+k) of the source blocks."""
        n, i1, i2, d, k = self.n, self.i1, self.i2, self.d, self.k
        return (k, i2 - d - k, d, i1 - d - k, n - i1 - i2 + d + k)


def p_rep(params: GeomParams) -> SignedPermutation:
    """The piecewise permutation, built branch by branch.

    The five branches must assemble a bijection; if they ever do not, the
    offending parameters are reported instead of being silently repaired.
    """
    n, i1, i2, d, k = params.n, params.i1, params.i2, params.d, params.k
    img = []
    for j in range(1, n + 1):
        if j <= k:
            v = j
        elif j <= i2 - d:
            v = j + i1 - k
        elif j <= i2:
            v = (i1 + i2 - d + 1) - j
        elif j <= i1 + i2 - d - k:
            v = j - i2 + k
        else:
            v = j
        img.append(v)
    if sorted(img) != list(range(1, n + 1)):
        raise NonBijectionError(
            f"piecewise branches do not assemble a bijection for {params}: {img}"
        )
    return SignedPermutation(img)


def q_rep(params: GeomParams) -> SignedPermutation:
    """p_rep with sign vector (+1^(i2-d), -1^d, +1^(n-i2))."""
    p = p_rep(params)
    n, i2, d = params.n, params.i2, params.d
    signs = (1,) * (i2 - d) + (-1,) * d + (1,) * (n - i2)
    return SignedPermutation(p.perm, signs)


def enumerate_geom_params(n: int, i1: int, i2: int) -> list:
    """All admissible (d, k) in lexicographic order; never empty."""
    if not (1 <= i1 <= n and 1 <= i2 <= n):
        raise InvalidParamsError(f"need 1 <= i1, i2 <= n, got n={n}, i1={i1}, i2={i2}")
    out = []
    for d in range(0, min(i1, i2) + 1):
        lo = max(0, (i1 + i2 - n) - d)
        hi = min(i1, i2) - d
        for k in range(lo, hi + 1):
            out.append(GeomParams(n, i1, i2, d, k))
    return out


def _parabolic_subgroup(n: int, omit: int) -> frozenset:
    """Subgroup generated by all simple reflections except the omitted one."""
    gens = [simple_reflection(n, i) for i in range(1, n + 1) if i != omit]
    seen = {SignedPermutation.identity(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = g * s
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return frozenset(seen)


def brute_force_coset_reps(n: int, i1: int, i2: int, *, max_n: int = 4) -> frozenset:
    """Minimal-length double-coset representatives, by exhaustive search.

    The left parabolic omits the i1-th simple reflection, the right one the
    i2-th.  Raises if the minimum within some coset is not unique, which
    would falsify minimality of the returned representatives.
    """
    if n > max_n:
        raise BruteForceBoundError(
            f"exhaustive search over rank {n} exceeds the bound {max_n}"
        )
    if not (1 <= i1 <= n and 1 <= i2 <= n):
        raise InvalidParamsError(f"need 1 <= i1, i2 <= n, got n={n}, i1={i1}, i2={i2}")
    left = _parabolic_subgroup(n, i1)
    right = _parabolic_subgroup(n, i2)
    everyone = sorted(all_elements(n), key=lambda w: (length(w), w.window))
    seen: set = set()
    reps = []
    for g in everyone:
        if g in seen:
            continue
        orbit = {u * g * v for u in left for v in right}
        seen |= orbit
        ranked = sorted(orbit, key=lambda w: (length(w), w.window))
        best = ranked[0]
        if len(ranked) > 1 and length(ranked[1]) == length(best):
            raise BruteForceBoundError(
                f"non-unique minimal length in a double coset at n={n}, "
                f"i1={i1}, i2={i2}"
            )
        reps.append(best)
    return frozenset(reps)


@dataclass(frozen=True, slots=True)
class LeviBlock:
    """One GL block of a Levi tuple, with dual/twist marks."""

    label: str
    size: int
    dual: bool = False
    twisted: bool = False

    def flipped(self, with_twist: bool) -> "LeviBlock":
        return LeviBlock(
            self.label,
            self.size,
            not self.dual,
            (not self.twisted) if with_twist else self.twisted,
        )

    def __str__(self):
        marks = ""
        if self.dual:
            marks += "^"
        if self.twisted:
            marks += "*"
        return f"{self.label}{marks}"


def levi_action(w: SignedPermutation, blocks, anchor: str = "h", mode="GU"):
    """Conjugate a block tuple by ``w``.

    ``blocks`` are the GL blocks in source order; the anchor occupies the
    trailing slots and must be fixed pointwise.  Each block must map to a
    contiguous run of slots with a uniform sign: ascending for sign +,
    descending (the transpose reversal) for sign -, which toggles the dual
    mark and, in GU mode, the twist mark (U mode never marks a twist).
    Returns the blocks in target order plus the anchor.
    """
    gu_twist = str(getattr(mode, "value", mode)).upper() != "U"
    blocks = tuple(blocks)
    if any(b.size < 1 for b in blocks):
        raise LeviActionError("GL blocks must have positive size")
    m = sum(b.size for b in blocks)
    if m > w.n:
        raise LeviActionError(f"blocks of total size {m} do not fit in rank {w.n}")
    for j in range(m + 1, w.n + 1):
        if w(j) != j:
            raise LeviActionError(f"anchor slot {j} is not fixed by {w!r}")
    placed = []
    pos = 1
    for block in blocks:
        imgs = [w(j) for j in range(pos, pos + block.size)]
        pos += block.size
        negative = imgs[0] < 0
        if any((v < 0) != negative for v in imgs):
            raise LeviActionError(f"block {block.label!r} maps with mixed signs")
        vals = [-v for v in imgs] if negative else imgs
        step = -1 if negative else 1
        expected = list(range(vals[0], vals[0] + step * len(vals), step))
        if vals != expected:
            raise LeviActionError(
                f"block {block.label!r} does not map to a contiguous run"
            )
        start = min(vals)
        placed.append((start, block.flipped(gu_twist) if negative else block))
    placed.sort(key=lambda t: t[0])
    return tuple(b for _, b in placed), anchor
