"""Subtraction-free rational expressions and their max/min-plus evaluation.

Grammar (whitespace ignored)::

    expr   := term ('+' term)*
    term   := power (('*' | '/') power)*
    power  := atom ('^' int)*
    atom   := int | ident | '(' expr ')'
    ident  := x<digits>_<digits> | x<d><d> | x<d>

A two-index name x<a><b> or x<a>_<b> is the variable at node (a, b); a
single-digit name x<i> is the i-th variable of a flat (rank-n) point.

Used to ship displayed rational maps as text fixtures that act as an oracle
independent of the matrix pipeline.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional, Sequence, Tuple, Union

from .errors import ExprSyntaxError, NegativeLiteral, UnboundVariable

__all__ = [
    "Var",
    "Lit",
    "Sum",
    "Prod",
    "Quot",
    "Pow",
    "SfExpr",
    "parse_sfexpr",
    "trop_eval",
    "trop_eval_point",
    "load_map_fixture",
]


@dataclass(frozen=True)
class Var:
    a: int
    b: Optional[int] = None


@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Sum:
    terms: Tuple["SfExpr", ...]


@dataclass(frozen=True)
class Prod:
    factors: Tuple["SfExpr", ...]


@dataclass(frozen=True)
class Quot:
    num: "SfExpr"
    den: "SfExpr"


@dataclass(frozen=True)
class Pow:
    base: "SfExpr"
    exp: int


SfExpr = Union[Var, Lit, Sum, Prod, Quot, Pow]

_TOKEN = re.compile(
    r"\s*(?:(?P<ident>x(?:\d+_\d+|\d{1,2})(?![\d_]))|(?P<int>\d+)|(?P<op>[-+*/^()]))"
)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []  # (kind, value, char offset)
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                self.fail("unexpected character", len(text) - len(text[pos:].lstrip()))
            kind = m.lastgroup
            start = m.start(kind)
            self.tokens.append((kind, m.group(kind), start))
            pos = m.end()
        self.i = 0

    def offset(self, char_pos: int) -> int:
        return len(self.text[:char_pos].encode("utf-8"))

    def fail(self, msg: str, char_pos: int, cls=ExprSyntaxError):
        raise cls(msg, self.offset(char_pos))

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> SfExpr:
        if not self.tokens:
            self.fail("empty expression", 0)
        e = self.expr()
        kind, val, pos = self.peek()
        if kind is not None:
            self.fail(f"unexpected {val!r}", pos)
        return e

    def expr(self) -> SfExpr:
        terms = [self.term()]
        while self.peek()[1] == "+":
            self.take()
            terms.append(self.term())
        kind, val, pos = self.peek()
        if val == "-":
            self.fail("subtraction is not allowed", pos)
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> SfExpr:
        node = self.power()
        factors = [node]
        while self.peek()[1] in ("*", "/"):
            _, op, _ = self.take()
            rhs = self.power()
            if op == "*":
                factors.append(rhs)
            else:
                left = factors[0] if len(factors) == 1 else Prod(tuple(factors))
                factors = [Quot(left, rhs)]
        return factors[0] if len(factors) == 1 else Prod(tuple(factors))

    def power(self) -> SfExpr:
        node = self.atom()
        while self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                if val == "-":
                    self.fail("negative exponent", pos, NegativeLiteral)
                self.fail("exponent must be an integer", pos)
            node = Pow(node, int(val))
        return node

    def atom(self) -> SfExpr:
        kind, val, pos = self.take()
        if kind == "int":
            if int(val) < 1:
                self.fail("literal must be at least 1", pos, NegativeLiteral)
            return Lit(int(val))
        if kind == "ident":
            body = val[1:]
            if "_" in body:
                a, b = body.split("_")
            elif len(body) == 1:
                return Var(int(body))
            else:
                a, b = body[0], body[1]
            return Var(int(a), int(b))
        if val == "(":
            e = self.expr()
            kind2, val2, pos2 = self.take()
            if val2 != ")":
                self.fail("expected ')'", pos2)
            return e
        if val == "-":
            self.fail("negative literal or subtraction", pos, NegativeLiteral)
        if kind is None:
            self.fail("unexpected end of input", pos)
        self.fail(f"unexpected {val!r}", pos)


def parse_sfexpr(text: str) -> SfExpr:
    return _Parser(text).parse()


def trop_eval(
    e: SfExpr, v: Mapping[Tuple[int, int] | int, int] | Sequence[int], convention: str = "max"
) -> int:
    """Sum -> max (or min), product -> +, quotient -> -, literal -> 0.

    v maps nodes (a, b) to integers; single-index variables x<i> read v[i]
    from a mapping or the i-th entry (1-based) of a sequence.
    """
    if convention == "max":
        pick = max
    elif convention == "min":
        pick = min
    else:
        raise ValueError("convention must be 'max' or 'min'")

    def ev(x: SfExpr) -> int:
        if isinstance(x, Lit):
            return 0
        if isinstance(x, Var):
            try:
                if x.b is not None:
                    return int(v[(x.a, x.b)])
                if isinstance(v, Mapping):
                    return int(v[x.a])
                if not 1 <= x.a <= len(v):
                    raise KeyError(x.a)
                return int(v[x.a - 1])
            except (KeyError, TypeError):
                raise UnboundVariable(f"x{x.a}" if x.b is None else f"x{x.a}_{x.b}") from None
        if isinstance(x, Sum):
            return pick(ev(t) for t in x.terms)
        if isinstance(x, Prod):
            return sum(ev(t) for t in x.factors)
        if isinstance(x, Quot):
            return ev(x.num) - ev(x.den)
        if isinstance(x, Pow):
            return x.exp * ev(x.base)
        raise TypeError(f"not an expression node: {x!r}")

    return ev(e)


def trop_eval_point(exprs: Sequence[SfExpr], ctx, v: Sequence[int], convention: str = "max") -> list:
    """Evaluate a list of component expressions at a point in node order."""
    assign = {node: int(v[ctx.index(node)]) for node in ctx.active_nodes()}
    return [trop_eval(e, assign, convention) for e in exprs]


def load_map_fixture(path: str | Path) -> list:
    """One expression per non-comment line, in node order."""
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_sfexpr(line))
    return out
