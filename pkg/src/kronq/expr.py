"""A small expression language over the quantum torus.

Grammar (multiplication is noncommutative and left-associative)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := 'X[' int ']' | 'z[' nat ']' | 's[' nat ']' | 'Z'
            | 'q^{' int '/2}' | nat | '(' expr ')'
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .bases import cheb_elem
from .cluster import xdelta, xvar_rec
from .qlaurent import LaurentQ
from .qtorus import TorusElem


class ExprSyntaxError(ValueError):
    def __init__(self, msg: str, offset: int):
        super().__init__(f"{msg} at offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class QPow:
    half_exp: int  # q^{half_exp/2}


@dataclass(frozen=True)
class XVar:
    m: int


@dataclass(frozen=True)
class Cheb:
    kind: str  # 'z' or 's'
    n: int


@dataclass(frozen=True)
class Delta:
    pass


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


Expr = Union[Num, QPow, XVar, Cheb, Delta, BinOp, Pow]

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<qpow>q\^\{\s*(?P<qk>-?\d+)\s*/\s*2\s*\})
  | (?P<idx>(?P<head>[Xzs])\[\s*(?P<iv>-?\d+)\s*\])
  | (?P<nat>\d+)
  | (?P<op>[-+*^()Z])
    """,
    re.VERBOSE,
)


def _tokenize(src: str):
    pos = 0
    out = []
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ExprSyntaxError(f"unexpected character {src[pos]!r}", len(src[:pos].encode()))
        if not m.group("ws"):
            out.append((m, pos))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    def _peek_op(self):
        if self.i < len(self.toks):
            m, _ = self.toks[self.i]
            return m.group("op")
        return None

    def _byte(self, pos: int) -> int:
        return len(self.src[:pos].encode())

    def _pos(self) -> int:
        """Byte offset of the next token (or of the end of input)."""
        return self._byte(self.toks[self.i][1]) if self.i < len(self.toks) else len(self.src.encode())

    def parse(self) -> Expr:
        e = self.expr()
        if self.i != len(self.toks):
            raise ExprSyntaxError("unexpected trailing input", self._pos())
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self._peek_op() in ("+", "-"):
            op = self._peek_op()
            self.i += 1
            left = BinOp(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.factor()
        while self._peek_op() == "*":
            self.i += 1
            left = BinOp("*", left, self.factor())
        return left

    def factor(self) -> Expr:
        base = self.atom()
        if self._peek_op() == "^":
            self.i += 1
            if self.i >= len(self.toks) or not self.toks[self.i][0].group("nat"):
                raise ExprSyntaxError("expected a nonnegative integer exponent", self._pos())
            n = int(self.toks[self.i][0].group("nat"))
            self.i += 1
            return Pow(base, n)
        return base

    def atom(self) -> Expr:
        if self.i >= len(self.toks):
            raise ExprSyntaxError("unexpected end of input", self._pos())
        m, pos = self.toks[self.i]
        self.i += 1
        if m.group("qpow"):
            return QPow(int(m.group("qk")))
        if m.group("idx"):
            head, val = m.group("head"), int(m.group("iv"))
            if head == "X":
                return XVar(val)
            if val < 0:
                raise ExprSyntaxError(f"{head}[n] needs n >= 0", self._byte(pos))
            return Cheb(head, val)
        if m.group("nat"):
            return Num(int(m.group("nat")))
        op = m.group("op")
        if op == "Z":
            return Delta()
        if op == "(":
            e = self.expr()
            if self._peek_op() != ")":
                raise ExprSyntaxError("expected ')'", self._pos())
            self.i += 1
            return e
        raise ExprSyntaxError(f"unexpected {op!r}", self._byte(pos))


def parse_expr(src: str) -> Expr:
    return _Parser(src).parse()


def to_source(e: Expr) -> str:
    """Canonical text for ``e``; ``parse_expr(to_source(e)) == e``."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, QPow):
        return f"q^{{{e.half_exp}/2}}"
    if isinstance(e, XVar):
        return f"X[{e.m}]"
    if isinstance(e, Cheb):
        return f"{e.kind}[{e.n}]"
    if isinstance(e, Delta):
        return "Z"
    if isinstance(e, Pow):
        return f"({to_source(e.base)})^{e.exp}"
    if isinstance(e, BinOp):
        return f"({to_source(e.left)} {e.op} {to_source(e.right)})"
    raise TypeError(e)


def eval_expr(e: Expr) -> TorusElem:
    if isinstance(e, Num):
        return TorusElem.scalar(e.value)
    if isinstance(e, QPow):
        return TorusElem.scalar(LaurentQ.v(e.half_exp))
    if isinstance(e, XVar):
        return xvar_rec(e.m)
    if isinstance(e, Cheb):
        return cheb_elem("first" if e.kind == "z" else "second", e.n)
    if isinstance(e, Delta):
        return xdelta()
    if isinstance(e, Pow):
        return eval_expr(e.base) ** e.exp
    if isinstance(e, BinOp):
        left, right = eval_expr(e.left), eval_expr(e.right)
        if e.op == "+":
            return left + right
        if e.op == "-":
            return left - right
        return left * right
    raise TypeError(e)


def evaluate(src: str) -> TorusElem:
    return eval_expr(parse_expr(src))
