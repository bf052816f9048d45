"""Expression front-end: tokenizer, recursive-descent parser and printer.

Grammar (whitespace insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | factor
    factor := base ('^' int)?
    base   := number ['i'] | 'i' | 'z' | 'exp' '(' expr ')' | '(' expr ')'

Numbers are integers or finite decimals and are read exactly.  The parsed
tree is lowered to the tightest exact type: :class:`Poly`, then
:class:`RatFunc`, then :class:`ExpPoly`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import GaussianRational, Poly, RatFunc, Z, as_ratfunc
from .errors import (
    NonPolynomialDenominator,
    NonPolynomialExponent,
    NonzeroConstantExponent,
    ParseError,
)
from .expoly import ExpPoly, ExpTerm, as_exppoly

__all__ = ["parse", "parse_ast", "lower", "to_text", "format_poly", "format_ratfunc", "format_exppoly"]

_UNICODE = {"−": "-", "·": "*", "×": "*", "∗": "*"}


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, ID, OP, END
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = _UNICODE.get(text[i], text[i])
        if ch == "\n":
            line, col = line + 1, 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        start_col = col
        if ch.isdigit() or (ch == "." and i + 1 < len(text) and text[i + 1].isdigit()):
            j = i
            while j < len(text) and (text[j].isdigit() or text[j] == "."):
                j += 1
            lit = text[i:j]
            if lit.count(".") > 1:
                raise ParseError(f"malformed number {lit!r}", line, start_col)
            tokens.append(Token("NUM", lit, line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and text[j].isalpha():
                j += 1
            word = text[i:j]
            if word not in ("z", "i", "exp"):
                raise ParseError(f"unknown identifier {word!r}", line, start_col)
            tokens.append(Token("ID", word, line, start_col))
            col += j - i
            i = j
            continue
        if ch in "+-*/^()":
            tokens.append(Token("OP", ch, line, start_col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {text[i]!r}", line, start_col)
    tokens.append(Token("END", "", line, col))
    return tokens


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: GaussianRational
    pos: tuple[int, int]


@dataclass(frozen=True)
class Var:
    pos: tuple[int, int]


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    pos: tuple[int, int]


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    pos: tuple[int, int]


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    pos: tuple[int, int]


@dataclass(frozen=True)
class Exp:
    arg: "Node"
    pos: tuple[int, int]


Node = Union[Num, Var, Neg, BinOp, Pow, Exp]


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.k = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.k]

    def advance(self) -> Token:
        t = self.tokens[self.k]
        self.k += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.tok
        if t.text != text or t.kind == "END":
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.line, t.col)
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "END":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.line, self.tok.col)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind == "OP" and self.tok.text in "+-":
            t = self.advance()
            node = BinOp(t.text, node, self.term(), (t.line, t.col))
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.tok.kind == "OP" and self.tok.text in "*/":
            t = self.advance()
            node = BinOp(t.text, node, self.unary(), (t.line, t.col))
        return node

    def unary(self) -> Node:
        if self.tok.kind == "OP" and self.tok.text in "+-":
            t = self.advance()
            operand = self.unary()
            return operand if t.text == "+" else Neg(operand, (t.line, t.col))
        return self.factor()

    def factor(self) -> Node:
        node = self.base()
        if self.tok.kind == "OP" and self.tok.text == "^":
            t = self.advance()
            n = self.tok
            if n.kind != "NUM" or not n.text.isdigit():
                raise ParseError("exponent must be a nonnegative integer", n.line, n.col)
            self.advance()
            node = Pow(node, int(n.text), (t.line, t.col))
        return node

    def base(self) -> Node:
        t = self.tok
        if t.kind == "NUM":
            self.advance()
            value = Fraction(t.text)
            if self.tok.kind == "ID" and self.tok.text == "i":
                self.advance()
                return Num(GaussianRational(0, value), (t.line, t.col))
            return Num(GaussianRational(value), (t.line, t.col))
        if t.kind == "ID":
            self.advance()
            if t.text == "i":
                return Num(GaussianRational(0, 1), (t.line, t.col))
            if t.text == "z":
                return Var((t.line, t.col))
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Exp(arg, (t.line, t.col))
        if t.kind == "OP" and t.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.line, t.col)


def parse_ast(text: str) -> Node:
    return _Parser(text).parse()


def lower(node: Node) -> ExpPoly:
    """Evaluate an AST exactly into an ExpPoly."""
    if isinstance(node, Num):
        return as_exppoly(node.value)
    if isinstance(node, Var):
        return as_exppoly(Z)
    if isinstance(node, Neg):
        return -lower(node.operand)
    if isinstance(node, Pow):
        return lower(node.base) ** node.exponent
    if isinstance(node, Exp):
        arg = lower(node.arg)
        line, col = node.arg.pos
        if not arg.is_ratfunc() or not arg.as_ratfunc().is_polynomial():
            raise NonPolynomialExponent(f"exp argument must be a polynomial in z (line {line}, col {col})")
        q = arg.as_ratfunc().num
        if q.constant_term():
            raise NonzeroConstantExponent(
                f"exp argument {format_poly(q)} has nonzero constant term (line {line}, col {col})"
            )
        return ExpPoly.exp(q)
    left, right = lower(node.left), lower(node.right)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if len(right) != 1:
        line, col = node.pos
        raise NonPolynomialDenominator(
            f"denominator must be a single term c(z)*exp(q(z)) (line {line}, col {col})"
        )
    (t,) = right.terms
    return left * ExpPoly([ExpTerm(t.coeff.inverse(), -t.exponent)])


def parse(text: str):
    """Parse ``text`` and return the tightest of Poly, RatFunc or ExpPoly."""
    value = lower(parse_ast(text))
    if value.is_ratfunc():
        rf = value.as_ratfunc()
        return rf.num if rf.is_polynomial() else rf
    return value


# -- printing ----------------------------------------------------------------


def _fmt_fraction(x: Fraction) -> str:
    return str(x)


def format_scalar(c: GaussianRational, *, wrap: bool = False) -> str:
    if c.is_real():
        s = _fmt_fraction(c.re)
        return f"({s})" if wrap and (c.re < 0 or c.re.denominator != 1) else s
    if not c.re:
        s = f"{_fmt_fraction(c.im)}*i"
    else:
        sign = "+" if c.im > 0 else "-"
        s = f"{_fmt_fraction(c.re)}{sign}{_fmt_fraction(abs(c.im))}*i"
    return f"({s})"


def _monomial(k: int) -> str:
    return "" if k == 0 else ("z" if k == 1 else f"z^{k}")


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        mono = _monomial(k)
        neg = c.is_real() and c.re < 0
        mag = -c if neg else c
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{format_scalar(mag)}*{mono}"
        else:
            body = format_scalar(mag)
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


def format_ratfunc(r: RatFunc) -> str:
    if r.is_polynomial():
        return format_poly(r.num)
    return f"({format_poly(r.num)})/({format_poly(r.den)})"


def format_exppoly(f: ExpPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for t in f.terms:
        if t.exponent.is_zero():
            body, neg = format_ratfunc(t.coeff), False
            if t.coeff.is_constant() and t.coeff.num.lead().is_real() and t.coeff.num.lead().re < 0:
                body, neg = format_ratfunc(-t.coeff), True
            elif not t.coeff.is_constant():
                body = f"({body})"
        else:
            c = t.coeff
            neg = c.is_constant() and c.num.lead().is_real() and c.num.lead().re < 0
            if neg:
                c = -c
            e = f"exp({format_poly(t.exponent)})"
            if c == 1:
                body = e
            elif c.is_constant():
                body = f"{format_scalar(c.num.lead())}*{e}"
            else:
                body = f"({format_ratfunc(c)})*{e}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


def to_text(x) -> str:
    if isinstance(x, ExpPoly):
        return format_exppoly(x)
    if isinstance(x, RatFunc):
        return format_ratfunc(x)
    if isinstance(x, Poly):
        return format_poly(x)
    if isinstance(x, GaussianRational):
        return format_scalar(x)
    return format_ratfunc(as_ratfunc(x))
