"""Parsers and renderers for vertex matrices and Laurent expressions.

Vertex files follow the PALP layout: a header line ``r c`` followed by ``r``
rows of ``c`` integers. With ``c == 4`` rows are points, with ``r == 4``
columns are points; a square 4x4 block is read as rows unless transposed.

Laurent expressions are sums of monomials in ``t1..t4``::

    t1*t4/t3 + t2*t4/t1 + 1/(t1*t4) + t1^-3*t2^-2

After a ``/`` every further factor of the term belongs to the denominator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import DomainError
from .period import Support
from .polytope import LatticePolytope


class MalformedHeader(DomainError):
    pass


class DimensionNotFour(DomainError):
    pass


class LaurentSyntaxError(DomainError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class DuplicateMonomial(DomainError):
    pass


class VariableIndexOutOfRange(DomainError):
    pass


NVARS = 4


@dataclass(frozen=True)
class VertexBlock:
    rows: int
    cols: int
    matrix: tuple[tuple[int, ...], ...]
    line: int  # 1-based line number of the header

    def points(self, transpose: bool = False) -> list[tuple[int, ...]]:
        if self.cols == NVARS and not transpose:
            return [tuple(r) for r in self.matrix]
        if self.rows == NVARS:
            return [tuple(col) for col in zip(*self.matrix)]
        if transpose and self.cols == NVARS:
            raise DimensionNotFour(f"cannot read {self.rows}x{self.cols} block column-wise")
        raise DimensionNotFour(f"block {self.rows}x{self.cols} has no dimension equal to 4")


def _header(tokens: list[str], lineno: int) -> tuple[int, int]:
    try:
        r, c = int(tokens[0]), int(tokens[1])
    except (IndexError, ValueError):
        raise MalformedHeader(f"line {lineno}: expected header 'rows cols'") from None
    if r <= 0 or c <= 0:
        raise MalformedHeader(f"line {lineno}: header counts must be positive")
    return r, c


def parse_vertex_blocks(text: str) -> list[VertexBlock]:
    """All consecutive ``r c`` blocks in a text; header trailing words are ignored."""
    lines = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, t) for i, t in lines if t and not t[0].startswith("#")]
    blocks = []
    pos = 0
    while pos < len(lines):
        lineno, tokens = lines[pos]
        r, c = _header(tokens, lineno)
        body = lines[pos + 1 : pos + 1 + r]
        if len(body) != r:
            raise MalformedHeader(f"line {lineno}: header announces {r} rows, found {len(body)}")
        rows = []
        for bl, bt in body:
            if len(bt) != c:
                raise MalformedHeader(f"line {bl}: expected {c} integers, found {len(bt)}")
            try:
                rows.append(tuple(int(x) for x in bt))
            except ValueError:
                raise MalformedHeader(f"line {bl}: non-integer entry") from None
        blocks.append(VertexBlock(r, c, tuple(rows), lineno))
        pos += 1 + r
    if not blocks:
        raise MalformedHeader("no vertex block found")
    return blocks


def parse_vertex_matrix(text: str, transpose: bool = False) -> LatticePolytope:
    """The polytope of the first block in ``text``."""
    block = parse_vertex_blocks(text)[0]
    return LatticePolytope(block.points(transpose))


def render_vertex_matrix(p: LatticePolytope) -> str:
    lines = [f"{len(p.vertices)} {NVARS}"]
    lines += [" ".join(str(x) for x in v) for v in p.vertices]
    return "\n".join(lines) + "\n"


_TOKEN = re.compile(r"\s*(?:(?P<var>t(?P<idx>\d+))|(?P<num>\d+)|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            pos += len(text[pos:]) - len(text[pos:].lstrip())
            raise LaurentSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        if m.group("var"):
            out.append(("var", int(m.group("idx")), start))
        elif m.group("num"):
            out.append(("num", int(m.group("num")), start))
        else:
            out.append(("op", m.group("op"), start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _LaurentParser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise LaurentSyntaxError(f"expected {op!r}", pos)

    def expression(self):
        terms = [self.term()]
        while self.peek()[0] == "op" and self.peek()[1] == "+":
            self.take()
            terms.append(self.term())
        kind, val, pos = self.peek()
        if kind != "end":
            raise LaurentSyntaxError(f"unexpected {val!r}", pos)
        return terms

    def term(self):
        exps = [0] * NVARS
        kind, val, pos = self.peek()
        if kind == "num":
            if val != 1:
                raise LaurentSyntaxError("only the coefficient 1 is allowed", pos)
            self.take()
            started = True
        elif kind == "var" or (kind == "op" and val == "("):
            self.group(exps, 1)
            started = True
        else:
            raise LaurentSyntaxError("expected a monomial", pos)
        sign = 1
        while started:
            kind, val, pos = self.peek()
            if kind == "op" and val == "/":
                if sign == -1:
                    raise LaurentSyntaxError("only one '/' per term", pos)
                self.take()
                sign = -1
                self.group(exps, -1)
            elif kind == "op" and val == "*":
                self.take()
                self.group(exps, sign)
            elif kind == "var" or (kind == "op" and val == "("):
                self.group(exps, sign)
            else:
                break
        return tuple(exps)

    def group(self, exps, sign):
        kind, val, pos = self.peek()
        if kind == "op" and val == "(":
            self.take()
            self.factor(exps, sign)
            while True:
                kind, val, pos = self.peek()
                if kind == "op" and val == "*":
                    self.take()
                    self.factor(exps, sign)
                elif kind == "var":
                    self.factor(exps, sign)
                else:
                    break
            self.expect_op(")")
        else:
            self.factor(exps, sign)

    def factor(self, exps, sign):
        kind, val, pos = self.take()
        if kind != "var":
            raise LaurentSyntaxError("expected a variable t1..t4", pos)
        if not 1 <= val <= NVARS:
            raise VariableIndexOutOfRange(f"variable t{val} at position {pos}; indices run 1..{NVARS}")
        e = 1
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            neg = False
            kind, v, p = self.peek()
            if kind == "op" and v in "+-":
                neg = v == "-"
                self.take()
            kind, v, p = self.take()
            if kind != "num":
                raise LaurentSyntaxError("expected an integer exponent", p)
            e = -v if neg else v
            if self.peek()[0] == "op" and self.peek()[1] == "^":
                raise LaurentSyntaxError("stacked exponent", self.peek()[2])
        exps[val - 1] += sign * e


def parse_monomials(text: str) -> list[tuple[int, ...]]:
    """Exponent vectors of all terms, constant term included, duplicates rejected."""
    terms = _LaurentParser(text).expression()
    seen = set()
    for t in terms:
        if t in seen:
            raise DuplicateMonomial(f"monomial {t} appears twice")
        seen.add(t)
    return terms


def parse_laurent(text: str) -> Support:
    """Support of a Laurent polynomial; a constant term is dropped (its coefficient is fixed to 1)."""
    return Support([t for t in parse_monomials(text) if any(t)])


def render_monomial(e) -> str:
    num = [f"t{i + 1}" + (f"^{x}" if x != 1 else "") for i, x in enumerate(e) if x > 0]
    den = [f"t{i + 1}" + (f"^{-x}" if x != -1 else "") for i, x in enumerate(e) if x < 0]
    head = "*".join(num) if num else "1"
    if not den:
        return head
    tail = den[0] if len(den) == 1 else "(" + "*".join(den) + ")"
    return f"{head}/{tail}"


def render_laurent(s: Support) -> str:
    return " + ".join(render_monomial(m) for m in s.monomials)
