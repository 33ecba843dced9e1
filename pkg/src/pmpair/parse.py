"""Text formats: algebra definition files and element expressions.

An algebra file looks like::

    algebra sl2
    basis e h f
    bracket [e,f] = h
    bracket [h,e] = 2e
    bracket [h,f] = -2f
    grade e = (1)

Unspecified brackets are zero.  Coefficients are integers or ``p/q``.
Expressions add products of symbols: ``f*e^2 - 2*h + 1/3 e``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .lie import Grading, LieAlgebra, LieAlgebraError, check_axioms
from .uea import NCPoly


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.message = message
        self.line = line
        self.column = column


class AxiomError(ParseError):
    """The declared brackets violate antisymmetry or the Jacobi identity."""


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<sym>[A-Za-z_][A-Za-z_0-9']*)|(?P<op>[-+*^()])|(?P<bad>\S))")


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(text: str, line: int | None, offset: int) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        kind = m.lastgroup
        col = offset + m.start(kind) + 1
        if kind == "bad":
            ch = m.group("bad")
            if ch == ".":
                raise ParseError("decimal coefficients are not allowed; write p/q", line, col)
            raise ParseError(f"unexpected character {ch!r}", line, col)
        toks.append(_Tok(kind, m.group(kind), col))
        pos = m.end()
    return toks


class _ExprParser:
    """Recursive descent over +, -, *, ^, parentheses, with a number directly
    before a symbol or parenthesis read as a coefficient."""

    def __init__(self, L: LieAlgebra, text: str, line: int | None = None, offset: int = 0):
        self.L = L
        self.line = line
        self.toks = _tokenize(text, line, offset)
        self.i = 0
        self.end_col = offset + len(text) + 1

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self) -> _Tok:
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of expression", self.line, self.end_col)
        self.i += 1
        return t

    def parse(self) -> NCPoly:
        if not self.toks:
            raise ParseError("empty expression", self.line, self.end_col)
        p = self.expr()
        t = self.peek()
        if t is not None:
            raise ParseError(f"unexpected {t.text!r}", self.line, t.col)
        return p

    def expr(self) -> NCPoly:
        sign = 1
        t = self.peek()
        if t is not None and t.text in "+-" and t.kind == "op":
            self.take()
            sign = -1 if t.text == "-" else 1
        p = sign * self.term()
        while (t := self.peek()) is not None and t.kind == "op" and t.text in "+-":
            self.take()
            q = self.term()
            p = p + q if t.text == "+" else p - q
        return p

    def term(self) -> NCPoly:
        p = self.factor()
        while True:
            t = self.peek()
            if t is not None and t.kind == "op" and t.text == "*":
                self.take()
                p = p * self.factor()
            else:
                return p

    def factor(self) -> NCPoly:
        t = self.peek()
        if t is not None and t.kind == "num":
            self.take()
            c = Fraction(t.text)
            nxt = self.peek()
            if nxt is not None and (nxt.kind == "sym" or nxt.text == "("):
                return c * self.factor()
            base = NCPoly.unit(self.L) * c
        else:
            base = self.atom()
        t = self.peek()
        if t is not None and t.kind == "op" and t.text == "^":
            self.take()
            e = self.take()
            if e.kind != "num" or "/" in e.text:
                raise ParseError("exponent must be a nonnegative integer", self.line, e.col)
            base = base ** int(e.text)
        return base

    def atom(self) -> NCPoly:
        t = self.take()
        if t.kind == "sym":
            if t.text not in self.L.names:
                raise ParseError(f"unknown symbol {t.text!r}", self.line, t.col)
            return NCPoly.word(self.L, [t.text])
        if t.text == "(":
            p = self.expr()
            close = self.take()
            if close.text != ")":
                raise ParseError("expected ')'", self.line, close.col)
            return p
        raise ParseError(f"unexpected {t.text!r}", self.line, t.col)


def parse_expression(L: LieAlgebra, text: str, line: int | None = None, offset: int = 0) -> NCPoly:
    return _ExprParser(L, text, line, offset).parse()


def parse_vector(L: LieAlgebra, text: str, line: int | None = None, offset: int = 0) -> tuple[Fraction, ...]:
    """A linear combination of basis symbols such as ``2e - 1/3h + f``."""
    p = parse_expression(L, text, line, offset)
    if p.degree > 1 or () in p.terms:
        raise ParseError(f"{text.strip()!r} is not a linear combination of basis symbols", line, offset + 1)
    out = [Fraction(0)] * L.dim
    for w, c in p.terms.items():
        out[w[0]] += c
    return tuple(out)


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside parentheses and braces."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


@dataclass
class AlgebraFile:
    algebra: LieAlgebra
    grading: Grading | None
    bracket_lines: dict[tuple[str, str], int]


_BRACKET = re.compile(r"bracket\s*\[\s*([^,\]\s]+)\s*,\s*([^\]\s]+)\s*\]\s*=(.*)$")
_GRADE = re.compile(r"grade\s+(\S+)\s*=\s*\(([^)]*)\)\s*$")


def parse_algebra(text: str) -> AlgebraFile:
    """Parse an algebra file and run the axiom check on it."""
    name = None
    names: tuple[str, ...] | None = None
    brackets: dict[tuple[str, str], tuple] = {}
    bracket_lines: dict[tuple[str, str], int] = {}
    grades: dict[str, tuple[int, ...]] = {}
    grade_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        keyword = stripped.split()[0]
        if keyword == "algebra":
            if name is not None:
                raise ParseError("duplicate 'algebra' line", lineno, indent + 1)
            rest = stripped[len("algebra"):].strip()
            if not rest:
                raise ParseError("missing algebra name", lineno, len(line) + 1)
            name = rest
        elif keyword == "basis":
            if name is None:
                raise ParseError("'algebra <name>' must come first", lineno, indent + 1)
            if names is not None:
                raise ParseError("duplicate 'basis' line", lineno, indent + 1)
            syms = stripped.split()[1:]
            if not syms:
                raise ParseError("empty basis", lineno, len(line) + 1)
            for s in syms:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9']*", s):
                    raise ParseError(f"invalid basis symbol {s!r}", lineno, line.index(s) + 1)
            if len(set(syms)) != len(syms):
                raise ParseError("repeated basis symbol", lineno, indent + 1)
            names = tuple(syms)
        elif keyword.startswith("bracket"):
            if names is None:
                raise ParseError("'basis' must come before brackets", lineno, indent + 1)
            m = _BRACKET.match(stripped)
            if m is None:
                raise ParseError("expected 'bracket [a,b] = combination'", lineno, indent + 1)
            a, b, rhs = m.group(1), m.group(2), m.group(3)
            for s, g in ((a, 1), (b, 2)):
                if s not in names:
                    raise ParseError(f"unknown symbol {s!r}", lineno, indent + m.start(g) + 1)
            if (a, b) in brackets:
                raise ParseError(f"bracket [{a},{b}] given twice", lineno, indent + 1)
            placeholder = LieAlgebra.from_brackets(names, {})
            brackets[(a, b)] = parse_vector(placeholder, rhs, lineno, indent + m.start(3))
            bracket_lines[(a, b)] = lineno
        elif keyword == "grade":
            if names is None:
                raise ParseError("'basis' must come before grades", lineno, indent + 1)
            m = _GRADE.match(stripped)
            if m is None:
                raise ParseError("expected 'grade sym = (c1,...,cn)'", lineno, indent + 1)
            sym = m.group(1)
            if sym not in names:
                raise ParseError(f"unknown symbol {sym!r}", lineno, indent + m.start(1) + 1)
            try:
                deg = tuple(int(c) for c in m.group(2).split(","))
            except ValueError:
                raise ParseError("grades are tuples of integers", lineno, indent + m.start(2) + 1) from None
            grades[sym] = deg
            grade_line = lineno
        else:
            raise ParseError(f"unknown keyword {keyword!r}", lineno, indent + 1)
    if name is None or names is None:
        raise ParseError("an algebra file needs 'algebra' and 'basis' lines")
    try:
        L = LieAlgebra.from_brackets(names, brackets, name=name)
    except LieAlgebraError as exc:
        raise ParseError(str(exc)) from None
    cert = check_axioms(L)
    if not cert.verdict:
        raise AxiomError(_axiom_message(cert.witnesses, names, bracket_lines), _first_line(cert.witnesses, names, bracket_lines))
    grading = None
    if grades:
        if set(grades) != set(names):
            missing = [s for s in names if s not in grades]
            raise ParseError(f"grades missing for {', '.join(missing)}", grade_line)
        ranks = {len(g) for g in grades.values()}
        if len(ranks) != 1:
            raise ParseError("grades have different lengths", grade_line)
        grading = Grading(ranks.pop(), tuple(grades[s] for s in names))
        gcert = grading.check(L)
        if not gcert.verdict:
            raise ParseError("grading does not respect brackets: " + "; ".join(gcert.witnesses), grade_line)
    return AlgebraFile(L, grading, bracket_lines)


def _witness_symbols(witness: str, names) -> list[str]:
    m = re.search(r"\(([\d,\s]+)\)", witness)
    if not m:
        return []
    return [names[int(k) - 1] for k in m.group(1).split(",")]


def _lines_for(syms, bracket_lines) -> list[int]:
    return sorted({ln for (a, b), ln in bracket_lines.items() if a in syms or b in syms})


def _first_line(witnesses, names, bracket_lines) -> int | None:
    lines = _lines_for(_witness_symbols(witnesses[0], names), bracket_lines) if witnesses else []
    return lines[0] if lines else None


def _axiom_message(witnesses, names, bracket_lines) -> str:
    parts = []
    for w in witnesses[:5]:
        syms = _witness_symbols(w, names)
        lines = _lines_for(syms, bracket_lines)
        where = f" (brackets on lines {', '.join(map(str, lines))})" if lines else ""
        parts.append(f"{w} on {', '.join(syms)}{where}")
    return "axioms fail: " + "; ".join(parts)
