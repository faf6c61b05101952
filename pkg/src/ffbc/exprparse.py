"""Recursive-descent parser for algebra expressions.

    elem   := term (("+"|"-") term)*
    term   := factor ("*" factor)*
    factor := "mu(" poly ")" | "mu*(" poly ")" | "e(" frac ")" | "(" elem ")"
            | rational | "z" ["^" int] | "u" ["^" int]
    frac   := poly "/" poly | "0"

Scalars are accepted anywhere a factor is, so ``(1/2)*e(0)``,
``z^1*e(1/T)`` and ``3*u^-1*mu(T)`` all parse.  Whitespace is ignored.
"""
from __future__ import annotations

from fractions import Fraction

from .carlitz import parse_torsion
from .errors import FFBCError, ParseError
from .ffpoly import GlobalConfig
from .hecke import AlgebraElem, e, mu, mu_star, mul, unit, zero
from .scalars import Cyclo, UScalar


class _Parser:
    def __init__(self, cfg: GlobalConfig, text: str):
        self.cfg = cfg
        self.text = text
        self.pos = 0

    # low level ------------------------------------------------------------

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip_ws()
        return self.text.startswith(s, self.pos)

    def eat(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str):
        if not self.eat(s):
            raise ParseError(f"expected {s!r}", self.pos, self.text)

    def error(self, msg):
        return ParseError(msg, self.pos, self.text)

    def balanced(self) -> str:
        """Consume text up to the ')' matching an already consumed '('."""
        depth, start = 1, self.pos
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in "([":
                depth += 1
            elif ch in ")]":
                depth -= 1
                if depth == 0:
                    inner = self.text[start:self.pos]
                    self.pos += 1
                    return inner
            self.pos += 1
        raise ParseError("unbalanced parenthesis", start, self.text)

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        try:
            return int(self.text[start:self.pos])
        except ValueError:
            raise ParseError("expected an integer", start, self.text) from None

    def exponent(self) -> int:
        if not self.eat("^"):
            return 1
        if self.eat("("):
            n = self.integer()
            self.expect(")")
            return n
        return self.integer()

    # grammar ----------------------------------------------------------------

    def elem(self) -> AlgebraElem:
        neg = self.eat("-")
        if not neg:
            self.eat("+")
        acc = self.term()
        if neg:
            acc = -acc
        while True:
            if self.eat("+"):
                acc = acc + self.term()
            elif self.eat("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> AlgebraElem:
        x = self.factor()
        while self.eat("*"):
            x = mul(x, self.factor())
        return x

    def factor(self) -> AlgebraElem:
        cfg = self.cfg
        self.skip_ws()
        start = self.pos
        if self.eat("mu*("):
            return mu_star(cfg, self._ideal(self.balanced(), start + 4))
        if self.eat("mu("):
            return mu(cfg, self._ideal(self.balanced(), start + 3))
        if self.eat("e("):
            inner = self.balanced()
            try:
                return e(cfg, parse_torsion(cfg, inner))
            except FFBCError as exc:
                raise ParseError(f"bad torsion point {inner!r}: {exc}", start, self.text) from None
        if self.eat("("):
            x = self.elem()
            self.expect(")")
            return x
        if self.eat("z"):
            k = self.exponent()
            return unit(cfg).scale(Cyclo.root(cfg.p, k))
        if self.eat("u"):
            k = self.exponent()
            return unit(cfg).scale(UScalar.mono(cfg.p, k))
        if self.pos < len(self.text) and self.text[self.pos].isdigit():
            n = self.integer()
            r = Fraction(n)
            if self.eat("/"):
                r /= self.integer()
            return unit(cfg).scale(r) if r else zero(cfg)
        if self.pos >= len(self.text):
            raise self.error("unexpected end of expression")
        # identifier-like junk: report the symbol
        end = self.pos
        while end < len(self.text) and (self.text[end].isalnum() or self.text[end] == "_"):
            end += 1
        sym = self.text[self.pos:end] or self.text[self.pos]
        raise ParseError(f"unknown symbol {sym!r}", self.pos, self.text)

    def _ideal(self, inner, start):
        cfg = self.cfg
        try:
            f = cfg.parse_poly(inner)
        except FFBCError as exc:
            raise ParseError(f"bad polynomial {inner!r}: {exc}", start, self.text) from None
        if not cfg.is_monic(f):
            raise ParseError(f"ideal argument {inner!r} is not monic", start, self.text)
        return f


def parse_expr(cfg: GlobalConfig, text: str) -> AlgebraElem:
    p = _Parser(cfg, text)
    if not text.strip():
        raise ParseError("empty expression", 0, text)
    x = p.elem()
    p.skip_ws()
    if p.pos != len(text):
        raise ParseError(f"unexpected {text[p.pos]!r}", p.pos, text)
    return x
