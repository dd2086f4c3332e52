"""Text syntax for Orlik-Solomon and Laurent elements.

Examples: ``w1 - w4``, ``2/r*w2^w3``, ``(w2-w3)*q1``, ``2/r*w2^w3 * q1^2 q2^1``.
``^`` between generators is the exterior product; ``^`` followed by an integer
is a power.  Juxtaposition multiplies.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .laurent import LaurentElement
from .orlik_solomon import OSAlgebra, OSElement
from .scalar import R, ScalarSyntaxError, is_zero

__all__ = ["parse_laurent", "parse_os"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([wq])(\d+)|(r)|([-+*/^()]))")


class _Value:
    """Laurent value during parsing: dict k -> OSElement."""

    def __init__(self, alg: OSAlgebra, N: int, comps=None):
        self.alg, self.N = alg, N
        self.comps = {k: v for k, v in (comps or {}).items() if v}

    @classmethod
    def scalar(cls, alg, N, c):
        return cls(alg, N, {(0,) * N: alg.one().scale(c)})

    def as_scalar(self):
        if not self.comps:
            return Fraction(0)
        if set(self.comps) != {(0,) * self.N}:
            return None
        x = self.comps[(0,) * self.N]
        if set(x.terms) != {()}:
            return None
        return x.terms[()]

    def is_generator_word(self):
        if set(self.comps) != {(0,) * self.N}:
            return False
        x = self.comps[(0,) * self.N]
        return len(x.terms) == 1 and next(iter(x.terms)) != () and next(iter(x.terms.values())) == 1

    def add(self, other, sign=1):
        out = dict(self.comps)
        for k, v in other.comps.items():
            v = v if sign > 0 else -v
            out[k] = out[k] + v if k in out else v
        return _Value(self.alg, self.N, out)

    def mul(self, other):
        out = {}
        for ka, a in self.comps.items():
            for kb, b in other.comps.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                p = self.alg.multiply(a, b)
                out[k] = out[k] + p if k in out else p
        return _Value(self.alg, self.N, out)


class _Parser:
    def __init__(self, alg: OSAlgebra, N: int, text: str):
        self.alg, self.N, self.text = alg, N, text
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            m = _TOKEN.match(text, pos)
            if not m:
                raise ScalarSyntaxError(f"unexpected character {text[pos]!r} in {text!r}")
            num, var, idx, rr, op = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif var is not None:
                self.tokens.append((var, int(idx)))
            elif rr is not None:
                self.tokens.append(("r", None))
            else:
                self.tokens.append(("op", op))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        if tok[0] is None:
            raise ScalarSyntaxError(f"unexpected end of {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> _Value:
        if not self.tokens:
            raise ScalarSyntaxError("empty expression")
        v = self.expr()
        if self.i != len(self.tokens):
            raise ScalarSyntaxError(f"trailing input in {self.text!r}")
        return v

    def expr(self):
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        v = self.term()
        if sign < 0:
            v = _Value(self.alg, self.N).add(v, -1)
        while self.peek() in (("op", "-"), ("op", "+")):
            op = self.take()[1]
            v = v.add(self.term(), 1 if op == "+" else -1)
        return v

    def term(self):
        v = self.power()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                v = v.mul(self.power())
            elif tok == ("op", "/"):
                self.take()
                d = self.power().as_scalar()
                if d is None:
                    raise ScalarSyntaxError(f"can only divide by scalars in {self.text!r}")
                if is_zero(d):
                    raise ZeroDivisionError(f"zero denominator in {self.text!r}")
                v = v.mul(_Value.scalar(self.alg, self.N, 1 / d))
            elif tok[0] in ("num", "r", "w", "q") or tok == ("op", "("):
                v = v.mul(self.power())
            else:
                return v

    def power(self):
        base = self.atom()
        while self.peek() == ("op", "^"):
            self.take()
            nxt = self.peek()
            if nxt[0] == "w":
                base = base.mul(self.atom())
                continue
            neg = False
            if nxt == ("op", "-"):
                self.take()
                neg = True
            kind, e = self.take()
            if kind != "num":
                raise ScalarSyntaxError(f"bad exponent in {self.text!r}")
            base = self._pow(base, -e if neg else e)
        return base

    def _pow(self, base: _Value, e: int) -> _Value:
        if e < 0:
            s = base.as_scalar()
            if s is not None:
                if is_zero(s):
                    raise ZeroDivisionError(f"zero denominator in {self.text!r}")
                return _Value.scalar(self.alg, self.N, 1 / s**-e)
            # q^-e: invert a pure q-monomial
            if len(base.comps) == 1:
                (k, x), = base.comps.items()
                if set(x.terms) == {()} and x.terms[()] == 1:
                    return _Value(self.alg, self.N, {tuple(-c * -e for c in k): self.alg.one()})
            raise ScalarSyntaxError(f"negative power of a non-invertible element in {self.text!r}")
        out = _Value.scalar(self.alg, self.N, Fraction(1))
        for _ in range(e):
            out = out.mul(base)
        return out

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return _Value.scalar(self.alg, self.N, Fraction(val))
        if kind == "r":
            return _Value.scalar(self.alg, self.N, R)
        if kind == "w":
            return _Value(self.alg, self.N, {(0,) * self.N: self.alg.gen(val)})
        if kind == "q":
            if not 1 <= val <= self.N:
                raise ScalarSyntaxError(f"q{val} outside q1..q{self.N}")
            k = [0] * self.N
            k[val - 1] = 1
            return _Value(self.alg, self.N, {tuple(k): self.alg.one()})
        if val == "(":
            v = self.expr()
            if self.take() != ("op", ")"):
                raise ScalarSyntaxError(f"missing ')' in {self.text!r}")
            return v
        if val == "-":
            return _Value(self.alg, self.N).add(self.power(), -1)
        raise ScalarSyntaxError(f"unexpected {val!r} in {self.text!r}")


def parse_laurent(alg: OSAlgebra, N: int, text: str) -> LaurentElement:
    v = _Parser(alg, N, text).parse()
    return LaurentElement(alg, N, v.comps)


def parse_os(alg: OSAlgebra, text: str) -> OSElement:
    v = _Parser(alg, 0, text).parse()
    return v.comps.get((), alg.zero())
