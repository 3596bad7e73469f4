"""Rational tangles, their sums, and the unreduced Krebes fraction.

Expressions look like ``T(3)* + T(3)* + T(-3)*``: ``T(n)`` is the integer
tangle n/1, ``R(p/q)`` any rational tangle, ``*`` the star operation
p/q -> -q/p, and ``+`` the tangle sum.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable

from .manifold import PresentedManifold


class TangleParseError(ValueError):
    """Malformed tangle expression; ``code`` is a stable identifier."""

    def __init__(self, code: str, message: str, position: int | None = None):
        self.code = code
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{code}: {message}{where}")


@dataclass(frozen=True)
class RationalTangle:
    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if q < 0 or (q == 0 and p != 1) or gcd(p, q) != 1:
            raise ValueError(f"{p}/{q} is not a normalized tangle fraction")

    @classmethod
    def of(cls, p: int, q: int) -> RationalTangle:
        """Normalize signs so that q >= 0 (and 1/0 for the infinity tangle)."""
        if gcd(p, q) != 1:
            raise ValueError(f"{p}/{q} is not in lowest terms")
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        return cls(p, q)

    def __str__(self):
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class AlgebraicTangle:
    summands: tuple[RationalTangle, ...]

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))
        if not self.summands:
            raise ValueError("a tangle sum needs at least one summand")

    @classmethod
    def of(cls, *fractions: tuple[int, int]) -> AlgebraicTangle:
        return cls(tuple(RationalTangle.of(p, q) for p, q in fractions))

    def __str__(self):
        return " + ".join(f"R({t})" for t in self.summands)


@dataclass(frozen=True)
class KrebesFraction:
    """Numerator and denominator as added without cancelling common factors."""

    num: int
    den: int

    def __str__(self):
        return f"{self.num}/{self.den}"


def star(t: RationalTangle) -> RationalTangle:
    return RationalTangle.of(-t.q, t.p)


def krebes_fraction(T: AlgebraicTangle) -> KrebesFraction:
    def add(a, t):
        return (a[0] * t.q + t.p * a[1], a[1] * t.q)

    first, *rest = T.summands
    num, den = reduce(add, rest, (first.p, first.q))
    return KrebesFraction(num, den)


def gcd_invariant(T: AlgebraicTangle) -> int:
    f = krebes_fraction(T)
    return gcd(f.num, f.den)


def double_cover(T: AlgebraicTangle) -> PresentedManifold:
    """H_1 presentation of the double branched cover of the ball.

    Each summand p/q contributes a generator x_i with ``q x_i + p h = 0``,
    h being shared. The numerator closure kills ``alpha = x_1 + ... + x_k``
    and the denominator closure kills ``beta = h``.
    """
    k = len(T.summands)
    rels = []
    for i, t in enumerate(T.summands):
        row = [0] * (k + 1)
        row[i] = t.q
        row[k] = t.p
        rels.append(tuple(row))
    alpha = (1,) * k + (0,)
    beta = (0,) * k + (1,)
    return PresentedManifold(k + 1, tuple(rels), 1, {"alpha": alpha, "beta": beta})


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"T\(|R\(|-?\d+|\S")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    for m in _TOKEN.finditer(text):
        s = m.group()
        tokens.append(("int" if s[-1].isdigit() else s, s, m.start()))
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise TangleParseError("E_SYNTAX", f"expected {kind!r}, found {found}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> list[RationalTangle]:
        out = self.term()
        while self.peek()[0] == "+":
            self.take("+")
            out += self.term()
        return out

    def term(self) -> list[RationalTangle]:
        start = self.peek()[2]
        parts = self.atom()
        while self.peek()[0] == "*":
            pos = self.take("*")[2]
            if len(parts) != 1:
                raise TangleParseError(
                    "E_STAR_NONRATIONAL", f"star applied to a sum of {len(parts)} tangles", pos
                )
            parts = [star(parts[0])]
        if not parts:
            raise TangleParseError("E_SYNTAX", "empty tangle", start)
        return parts

    def atom(self) -> list[RationalTangle]:
        kind, _, pos = self.peek()
        if kind == "T(":
            self.take("T(")
            n = int(self.take("int")[1])
            self.take(")")
            return [RationalTangle(n, 1)]
        if kind == "R(":
            self.take("R(")
            p = int(self.take("int")[1])
            self.take("/")
            q = int(self.take("int")[1])
            self.take(")")
            try:
                return [RationalTangle.of(p, q)]
            except ValueError:
                raise TangleParseError("E_BAD_FRACTION", f"{p}/{q} is not in lowest terms", pos)
        if kind == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        found = "end of input" if kind == "end" else repr(self.peek()[1])
        raise TangleParseError("E_SYNTAX", f"expected a tangle, found {found}", pos)


def parse_tangle(text: str) -> AlgebraicTangle:
    parser = _Parser(text)
    summands = parser.expr()
    parser.take("end")
    return AlgebraicTangle(tuple(summands))


def format_tangle(T: AlgebraicTangle) -> str:
    """Inverse of :func:`parse_tangle` up to equality of summand lists."""
    return str(T)


def all_rationals(bound: int) -> Iterable[RationalTangle]:
    """Every normalized p/q with |p| <= bound and 0 <= q <= bound."""
    for q in range(bound + 1):
        for p in range(-bound, bound + 1):
            if gcd(p, q) == 1 and (q or p == 1):
                yield RationalTangle(p, q)
