"""The expression mini-language and its printers.

Grammar (whitespace insignificant)::

    expr    := glpart ("|x|" IDENT)?
    glpart  := "1" | delta ("x" delta)*
    delta   := "d(" num "," num "@" IDENT ")"
    num     := INT | INT "/" "2" | "-" num

``d(1/2,5/2@rho) |x| sigma`` is a one-segment class over the anchor
``sigma``.  Empty segments cannot be written as deltas (b must be >= a);
the unit glpart is the literal ``1``.  For multiplicity targets the
top-level separator ``(x)`` joins tensor factors::

    target  := glpart ("(x)" glpart)* ("|x|" IDENT)?

Errors carry line and column.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import ExpressionError, SegmentError, UnknownLabelError
from .grothendieck import GLMonomial, GUClass, TensorTerm
from .scalars import GUCuspidalLabel, HalfInt, TRIVIAL_TWIST
from .segments import Segment
from .structure import GroupMode

__all__ = ["Expression", "parse_expression", "parse_tensor_target",
           "format_expression"]


@dataclass(frozen=True)
class Expression:
    """Parsed form of one expression: segment literals plus optional anchor."""

    gl_part: tuple
    gu_anchor: Optional[GUCuspidalLabel]
    mode: GroupMode = field(default=GroupMode.GU, compare=False)

    def gu_class(self) -> GUClass:
        if self.gu_anchor is None:
            raise ExpressionError("expression has no |x| anchor")
        return GUClass(self.gl_part, self.gu_anchor, TRIVIAL_TWIST)

    def gl_monomial(self) -> GLMonomial:
        return GLMonomial(self.gl_part)


_PUNCT = ("|x|", "(x)", "(", ")", ",", "@", "/", "-")


def _tokenize(text: str):
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        matched = None
        for punct in _PUNCT:
            if text.startswith(punct, i):
                matched = punct
                break
        if matched:
            tokens.append((matched, matched, line, col))
            i += len(matched)
            col += len(matched)
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("INT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] in "_~"):
                j += 1
            tokens.append(("IDENT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ExpressionError(f"unexpected character {ch!r}", line, col)
    tokens.append(("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str, gl_resolver: Callable, gu_resolver: Callable):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.gl_resolver = gl_resolver
        self.gu_resolver = gu_resolver

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.next()
        if tok[0] != kind:
            raise ExpressionError(
                f"expected {kind!r} but found {tok[1] or 'end of input'!r}",
                tok[2], tok[3],
            )
        return tok

    def num(self) -> HalfInt:
        tok = self.peek()
        if tok[0] == "-":
            self.next()
            return -self.num()
        intpart = self.expect("INT")
        value = HalfInt(int(intpart[1]))
        if self.peek()[0] == "/":
            self.next()
            den = self.expect("INT")
            if den[1] != "2":
                raise ExpressionError(
                    f"only halves are allowed, found denominator {den[1]}",
                    den[2], den[3],
                )
            value = HalfInt.from_twice(int(intpart[1]))
        return value

    def delta(self) -> Segment:
        head = self.expect("IDENT")
        if head[1] != "d":
            raise ExpressionError(
                f"expected a segment 'd(...)' but found {head[1]!r}",
                head[2], head[3],
            )
        self.expect("(")
        a = self.num()
        self.expect(",")
        b = self.num()
        self.expect("@")
        name = self.expect("IDENT")
        self.expect(")")
        try:
            rho = self.gl_resolver(name[1])
        except UnknownLabelError as exc:
            raise ExpressionError(str(exc), name[2], name[3]) from None
        if b < a:
            raise ExpressionError(
                f"segment bounds {a} > {b}; the unit is written '1'",
                head[2], head[3],
            )
        try:
            return Segment(rho, a, b)
        except SegmentError as exc:
            raise ExpressionError(str(exc), head[2], head[3]) from None

    def glpart(self) -> tuple:
        tok = self.peek()
        if tok[0] == "INT":
            if tok[1] != "1":
                raise ExpressionError(
                    f"the only numeric glpart is the unit '1', found {tok[1]!r}",
                    tok[2], tok[3],
                )
            self.next()
            return ()
        segments = [self.delta()]
        while self.peek()[0] == "IDENT" and self.peek()[1] == "x":
            self.next()
            segments.append(self.delta())
        return tuple(segments)

    def anchor(self) -> Optional[GUCuspidalLabel]:
        if self.peek()[0] != "|x|":
            return None
        self.next()
        name = self.expect("IDENT")
        try:
            return self.gu_resolver(name[1])
        except UnknownLabelError as exc:
            raise ExpressionError(str(exc), name[2], name[3]) from None

    def finish(self):
        tok = self.peek()
        if tok[0] != "EOF":
            raise ExpressionError(
                f"unexpected trailing input {tok[1]!r}", tok[2], tok[3]
            )


def parse_expression(text: str, gl_resolver: Callable, gu_resolver: Callable,
                     mode: GroupMode = GroupMode.GU) -> Expression:
    """Parse ``glpart ("|x|" IDENT)?`` resolving labels via the callables."""
    p = _Parser(text, gl_resolver, gu_resolver)
    segments = p.glpart()
    anchor = p.anchor()
    p.finish()
    return Expression(segments, anchor, mode)


def parse_tensor_target(text: str, gl_resolver: Callable, gu_resolver: Callable):
    """Parse a multiplicity target: glparts joined by ``(x)``, the last one
    optionally anchored.  Returns (list of segment tuples, anchor or None)."""
    p = _Parser(text, gl_resolver, gu_resolver)
    parts = [p.glpart()]
    while p.peek()[0] == "(x)":
        p.next()
        parts.append(p.glpart())
    anchor = p.anchor()
    p.finish()
    return parts, anchor


def target_term(parts, anchor, sigma_default=None) -> TensorTerm:
    """Assemble the parsed target factors into a tensor term."""
    factors = [GLMonomial(part) for part in parts]
    if anchor is not None:
        last = factors.pop()
        factors.append(GUClass(last.segments, anchor, TRIVIAL_TWIST))
    return TensorTerm(factors)


def format_expression(expr: Expression) -> str:
    head = " x ".join(str(s) for s in expr.gl_part) if expr.gl_part else "1"
    if expr.gu_anchor is None:
        return head
    return f"{head} |x| {expr.gu_anchor.name}"
