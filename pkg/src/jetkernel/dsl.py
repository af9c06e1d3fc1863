"""Text syntax for operators.

Grammar (whitespace is ignored)::

    expr      := ['-'] term (('+' | '-') term)*
    term      := factor ('*' factor)*
    factor    := primary ('^' int)*
    primary   := rational | var | hasse | classical | '(' expr ')' | '-' primary
    rational  := int ['/' int]
    var       := 'x' int                    multiplication by x_k
    hasse     := 'h(' int ',' int ')'       h(k, m) = divided power d^m/dx_k^m / m!
    classical := 'd(' int ')'               d/dx_k, characteristic 0 only

``*`` is composition of operators, so ``h(1,1)*x1`` is ``x1*h(1,1) + 1``.

A ``.dop`` file holds one matrix row per line with entries separated by
``;``; lines ``@nvars <n>`` and ``@field <Q|GF(p)>`` set the ambient ring and
``#`` starts a comment.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Sequence

from .algebra import multiindex as mi
from .algebra.fields import QQ, Field, parse_field
from .algebra.poly import Poly, format_monomial
from .operators.core import (MatrixOperator, ScalarOperator, classical_to_hasse,
                             compose_scalar)


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        super().__init__(f"{message} at position {pos}" + (f" in {text!r}" if text else ""))
        self.pos = pos
        self.text = text


_TOKEN = re.compile(r"\s*(?:(\d+)|(x)(\d+)|(h)\(|(d)\(|([-+*^(),/]))")


class _Parser:
    def __init__(self, text: str, nvars: int, field: Field):
        self.text = text
        self.nvars = nvars
        self.field = field
        self.tokens = self._lex(text)
        self.i = 0

    def _lex(self, text):
        out = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
            start = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
            if m.group(1):
                out.append(("int", int(m.group(1)), start))
            elif m.group(2):
                out.append(("var", int(m.group(3)), start))
            elif m.group(4):
                out.append(("h", None, start))
            elif m.group(5):
                out.append(("d", None, start))
            else:
                out.append((m.group(6), None, start))
            pos = m.end()
        out.append(("end", None, len(text)))
        return out

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[0])
            raise ParseError(f"expected {want}, found {got}", self.text, tok[2])
        self.i += 1
        return tok

    def fail(self, msg):
        raise ParseError(msg, self.text, self.peek()[2])

    # grammar ------------------------------------------------------------
    def parse(self) -> ScalarOperator:
        op = self.expr()
        self.take("end")
        return op

    def expr(self) -> ScalarOperator:
        if self.peek()[0] == "-":
            self.take()
            acc = -self.term()
        else:
            acc = self.term()
        while self.peek()[0] in ("+", "-"):
            sign = self.take()[0]
            t = self.term()
            acc = acc + t if sign == "+" else acc - t
        return acc

    def term(self) -> ScalarOperator:
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = compose_scalar(acc, self.factor())
        return acc

    def factor(self) -> ScalarOperator:
        base = self.primary()
        while self.peek()[0] == "^":
            self.take()
            k = self.take("int")[1]
            out = ScalarOperator.identity(self.nvars, self.field)
            for _ in range(k):
                out = compose_scalar(out, base)
            base = out
        return base

    def _varindex(self, k, pos):
        if not 1 <= k <= self.nvars:
            raise ParseError(f"variable index {k} out of range 1..{self.nvars}", self.text, pos)
        return k - 1

    def primary(self) -> ScalarOperator:
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            num = val
            if self.peek()[0] == "/":
                self.take()
                den = self.take("int")[1]
                if den == 0:
                    raise ParseError("zero denominator", self.text, pos)
                value = Fraction(num, den)
            else:
                value = Fraction(num)
            try:
                c = self.field(value)
            except ZeroDivisionError as exc:
                raise ParseError(str(exc), self.text, pos) from None
            return ScalarOperator.multiplication(Poly.constant(c, self.nvars, self.field))
        if kind == "var":
            self.take()
            k = self._varindex(val, pos)
            return ScalarOperator.multiplication(Poly.variable(k, self.nvars, self.field))
        if kind == "h":
            self.take()
            k = self._varindex(self.take("int")[1], pos)
            self.take(",")
            m = self.take("int")[1]
            self.take(")")
            return ScalarOperator.hasse(mi.unit_index(self.nvars, k, m), self.nvars, self.field)
        if kind == "d":
            self.take()
            k = self._varindex(self.take("int")[1], pos)
            self.take(")")
            if self.field.characteristic:
                raise ParseError(
                    f"classical derivative d({k + 1}) is not allowed over {self.field.name}; "
                    "use h(k,m)", self.text, pos)
            I = mi.unit_index(self.nvars, k)
            return classical_to_hasse({I: Poly.one(self.nvars, self.field)},
                                      self.nvars, self.field)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "-":
            self.take()
            return -self.primary()
        self.fail("expected a number, x<k>, h(k,m), d(k) or '('")


def parse_scalar_operator(text: str, nvars: int, field: Field = QQ) -> ScalarOperator:
    return _Parser(text, nvars, field).parse()


def parse_operator(text, nvars: int, field: Field = QQ) -> MatrixOperator:
    """Parse one expression (rank 1) or a grid of expressions.

    ``text`` may be a string, a sequence of row strings separated by ``;``,
    or a nested list of entry strings.
    """
    if isinstance(text, str):
        rows = [ln for ln in text.strip().splitlines() if ln.strip()] or ["0"]
        grid = [[e for e in row.split(";")] for row in rows]
    else:
        grid = [row.split(";") if isinstance(row, str) else list(row) for row in text]
    r = len(grid)
    if any(len(row) != r for row in grid):
        raise ParseError(f"operator grid is not square ({r} rows)")
    return MatrixOperator([[parse_scalar_operator(e, nvars, field) for e in row]
                           for row in grid])


def format_hasse(I) -> str:
    return "*".join(f"h({k + 1},{e})" for k, e in enumerate(I) if e)


def format_scalar_operator(op: ScalarOperator) -> str:
    if not op.terms:
        return "0"
    chunks: List[str] = []
    for I in sorted(op.terms, key=mi.graded_key, reverse=True):
        hpart = format_hasse(I)
        for J, c in reversed(op.terms[I].monomials()):
            if op.field.characteristic:
                neg, mag = False, str(c)
            else:
                neg, mag = c < 0, str(abs(c))
            factors = [f for f in (format_monomial(J), hpart) if f]
            if mag != "1" or not factors:
                factors.insert(0, mag)
            body = "*".join(factors)
            if not chunks:
                chunks.append(("-" if neg else "") + body)
            else:
                chunks.append((" - " if neg else " + ") + body)
    return "".join(chunks)


def format_operator(D: MatrixOperator) -> str:
    """Rows on separate lines, entries separated by '; '."""
    return "\n".join("; ".join(format_scalar_operator(e) for e in row) for row in D.entries)


def operator_grid(D: MatrixOperator) -> List[List[str]]:
    return [[format_scalar_operator(e) for e in row] for row in D.entries]


def parse_dop(text: str, nvars: int | None = None, field: Field | None = None) -> MatrixOperator:
    """Parse a ``.dop`` document (see module docstring)."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("@"):
            key, _, value = line[1:].partition(" ")
            key, value = key.strip().lower(), value.strip()
            if key == "nvars":
                nvars = int(value) if nvars is None else nvars
            elif key == "field":
                field = parse_field(value) if field is None else field
            else:
                raise ParseError(f"unknown directive @{key}")
            continue
        rows.append(line)
    if not rows:
        raise ParseError("no operator rows in document")
    if nvars is None:
        nvars = max(_infer_nvars(rows), default=1)
    return parse_operator(rows, nvars, field or QQ)


def format_dop(D: MatrixOperator) -> str:
    return f"@nvars {D.nvars}\n@field {D.field.name}\n{format_operator(D)}\n"


def _infer_nvars(rows: Sequence[str]) -> List[int]:
    text = " ".join(rows)
    out = [int(k) for k in re.findall(r"x(\d+)", text)]
    out += [int(k) for k in re.findall(r"[hd]\(\s*(\d+)", text)]
    return out
