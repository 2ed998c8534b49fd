"""A small recursive-descent parser for the ASCII notation used in tables.

Accepted syntax (whitespace is ignored)::

    3(t1 + 2t2) - x_2^2*x_3 + 8/3 x1x3^3
    2([x4,x2,x2] - [x4,x1,x3])
    z^2(2+z^2)/((1-z)^2(1-z^4))

Juxtaposition means multiplication, ``^`` and ``**`` are powers, ``[a,b,...]``
is a left-normed Lie word.  Parsing produces a tiny tuple AST which the
callers evaluate in whatever algebra they need.
"""

from __future__ import annotations

import re
from collections import Counter
from fractions import Fraction
from typing import Callable, Mapping

from .polyarith import NiceRational, Polynomial

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<sym>[A-Za-z])(?:_?\{?(?P<idx>\d+)\}?)?|(?P<op>\*\*|[-+*/^()\[\],=]))"
)


class ParseError(ValueError):
    pass


def tokenize(text: str) -> list[tuple]:
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} at {pos} in {text!r}")
        pos = m.end()
        if m.group("num") is not None:
            out.append(("num", int(m.group("num"))))
        elif m.group("sym") is not None:
            idx = m.group("idx")
            out.append(("sym", m.group("sym"), int(idx) if idx is not None else None))
        else:
            out.append(("op", m.group("op")))
    return out


class _Parser:
    def __init__(self, tokens: list[tuple], text: str):
        self.toks = tokens
        self.i = 0
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        t = self.peek()
        if t is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        self.i += 1
        return t

    def expect(self, op: str):
        t = self.take()
        if t != ("op", op):
            raise ParseError(f"expected {op!r}, got {t!r} in {self.text!r}")

    def at_op(self, *ops: str) -> bool:
        t = self.peek()
        return t is not None and t[0] == "op" and t[1] in ops

    def expr(self):
        sign = None
        if self.at_op("+", "-"):
            sign = self.take()[1]
        node = self.term()
        if sign == "-":
            node = ("neg", node)
        while self.at_op("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def _starts_primary(self) -> bool:
        t = self.peek()
        if t is None:
            return False
        return t[0] in ("num", "sym") or (t[0] == "op" and t[1] in ("(", "["))

    def term(self):
        node = self.power()
        while True:
            if self.at_op("*"):
                self.take()
                node = ("mul", node, self.power())
            elif self.at_op("/"):
                self.take()
                node = ("div", node, self.power())
            elif self._starts_primary():
                node = ("mul", node, self.power())
            else:
                return node

    def power(self):
        node = self.primary()
        if self.at_op("^", "**"):
            self.take()
            t = self.take()
            if t[0] != "num":
                raise ParseError(f"exponent must be a literal integer in {self.text!r}")
            node = ("pow", node, t[1])
        return node

    def primary(self):
        t = self.take()
        if t[0] == "num":
            return ("num", Fraction(t[1]))
        if t[0] == "sym":
            return ("sym", t[1], t[2])
        if t == ("op", "("):
            node = self.expr()
            self.expect(")")
            return node
        if t == ("op", "["):
            letters = []
            while True:
                s = self.take()
                if s[0] != "sym":
                    raise ParseError(f"Lie words contain variables only, got {s!r}")
                letters.append((s[1], s[2]))
                if self.at_op(","):
                    self.take()
                    continue
                self.expect("]")
                return ("bracket", tuple(letters))
        raise ParseError(f"unexpected token {t!r} in {self.text!r}")


def parse(text: str):
    p = _Parser(tokenize(text), text)
    node = p.expr()
    if p.peek() is not None:
        raise ParseError(f"trailing input {p.peek()!r} in {text!r}")
    return node


def parse_equation(text: str):
    """``lhs = rhs`` parsed as the AST of ``lhs - rhs``."""
    if text.count("=") != 1:
        raise ParseError(f"expected exactly one '=' in {text!r}")
    lhs, rhs = text.split("=")
    return ("sub", parse(lhs), parse(rhs))


def evaluate(node, leaf: Callable, divide: Callable | None = None):
    """Evaluate an AST with Python operators; ``leaf`` maps sym/bracket nodes to values."""
    kind = node[0]
    if kind == "num":
        return node[1]
    if kind in ("sym", "bracket"):
        return leaf(node)
    if kind == "neg":
        return -evaluate(node[1], leaf, divide)
    if kind == "pow":
        return evaluate(node[1], leaf, divide) ** node[2]
    a = evaluate(node[1], leaf, divide)
    b = evaluate(node[2], leaf, divide)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        if isinstance(a, Fraction) and not isinstance(b, Fraction):
            return b * a
        return a * b
    if kind == "div":
        if divide is not None:
            return divide(a, b)
        if isinstance(b, Fraction):
            if isinstance(a, Fraction):
                return a / b
            return a * (1 / b)
        raise ParseError("division by a non-scalar")
    raise ParseError(f"unknown node {kind!r}")


def indexed_resolver(letter: str = "x") -> Callable[[str, int | None], int]:
    """Resolver mapping ``x1``/``x_1`` to variable index 0 and so on."""
    def resolve(name: str, idx: int | None) -> int:
        if name != letter or idx is None or idx < 1:
            raise ParseError(f"unknown variable {name}{idx if idx is not None else ''}")
        return idx - 1
    return resolve


def table_resolver(table: Mapping[tuple[str, int | None], int]) -> Callable[[str, int | None], int]:
    def resolve(name: str, idx: int | None) -> int:
        try:
            return table[(name, idx)]
        except KeyError:
            raise ParseError(f"unknown variable {name}{idx if idx is not None else ''}") from None
    return resolve


TZ = table_resolver({("t", 1): 0, ("t", 2): 1, ("z", None): 2})
Z = table_resolver({("z", None): 0})


def parse_polynomial(text: str, arity: int, resolve: Callable | None = None) -> Polynomial:
    resolve = resolve or indexed_resolver("x")

    def leaf(node):
        if node[0] != "sym":
            raise ParseError("Lie words are not polynomials")
        i = resolve(node[1], node[2])
        if i >= arity:
            raise ParseError(f"variable {node[1]}{node[2]} outside a ring of arity {arity}")
        return Polynomial.var(i, arity)

    value = evaluate(parse(text), leaf)
    if isinstance(value, Fraction):
        return Polynomial.constant(value, arity)
    return value


class _Factored:
    """A nice rational together with its factorisation into ``(1 - m)`` terms, when known."""

    def __init__(self, nice: NiceRational, factors: Counter | None):
        self.nice = nice
        self.factors = factors

    @staticmethod
    def of(nice: NiceRational) -> "_Factored":
        factors = None
        if not nice.den:
            num = nice.num
            if num == 1:
                factors = Counter()
            elif len(num) == 2 and num.constant_term() == 1:
                (m, c), = [(m, c) for m, c in num.terms.items() if any(m)]
                if c == -1:
                    factors = Counter({m: 1})
        return _Factored(nice, factors)

    def _wrap(self, other) -> "_Factored":
        if isinstance(other, _Factored):
            return other
        return _Factored.of(NiceRational(Polynomial.constant(other, self.nice.arity)))

    def __add__(self, other):
        return _Factored.of(self.nice + self._wrap(other).nice)

    __radd__ = __add__

    def __sub__(self, other):
        return _Factored.of(self.nice - self._wrap(other).nice)

    def __rsub__(self, other):
        return _Factored.of(self._wrap(other).nice - self.nice)

    def __neg__(self):
        return _Factored(-self.nice, None)

    def __mul__(self, other):
        other = self._wrap(other)
        f = None
        if self.factors is not None and other.factors is not None:
            f = self.factors + other.factors
        return _Factored(self.nice * other.nice, f)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        f = None if self.factors is None else Counter({m: c * k for m, c in self.factors.items()})
        return _Factored(self.nice**k, f)


def parse_nice(text: str, arity: int, resolve: Callable | None = None) -> NiceRational:
    """Parse ``num/((1-m1)^k1 (1-m2) ...)`` sums into a :class:`NiceRational`."""
    resolve = resolve or indexed_resolver("x")

    def leaf(node):
        if node[0] != "sym":
            raise ParseError("Lie words are not rational functions")
        return _Factored.of(NiceRational(Polynomial.var(resolve(node[1], node[2]), arity)))

    def divide(a, b):
        if isinstance(b, Fraction):
            return a * _Factored.of(NiceRational(Polynomial.constant(1 / b, arity)))
        if b.factors is None:
            raise ParseError("denominators must be products of (1 - monomial) factors")
        a = a if isinstance(a, _Factored) else _Factored.of(NiceRational(Polynomial.constant(a, arity)))
        return _Factored(NiceRational(a.nice.num, a.nice.den_counter() + b.factors), None)

    value = evaluate(parse(text), leaf, divide)
    if isinstance(value, Fraction):
        return NiceRational(Polynomial.constant(value, arity))
    return value.nice
