"""Exact scalars: rationals and rational functions in one indeterminate ``r``.

A scalar is either a :class:`fractions.Fraction` (the rational tag) or a
:class:`RatFunc` (the rational-function tag).  ``RatFunc`` values that turn out
to be constant collapse back to ``Fraction`` after every operation, so code can
use the ordinary arithmetic operators on mixed values.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from sympy import QQ
from sympy.polys.fields import field

__all__ = [
    "RatFunc",
    "Scalar",
    "ScalarSyntaxError",
    "R",
    "as_scalar",
    "format_scalar",
    "is_scalar",
    "is_zero",
    "scalar_degree",
    "scalar_is_positive_integer",
    "scalar_parse",
    "specialize",
]

_FIELD, _R_GEN = field("r", QQ)
_RING = _FIELD.ring


class ScalarSyntaxError(ValueError):
    pass


def _to_mpq(x: Fraction):
    return QQ(x.numerator, x.denominator)


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


class RatFunc:
    """Element of Q(r) with a monic denominator and gcd-free numerator."""

    __slots__ = ("_f",)

    def __init__(self, f):
        self._f = f

    @staticmethod
    def _make(f) -> "Scalar":
        num, den = f.numer, f.denom
        if num.is_ground and den.is_ground:
            if not num:
                return Fraction(0)
            return _to_fraction(num.LC) / _to_fraction(den.LC)
        lc = den.LC
        if lc != 1:
            num = num.quo_ground(lc)
            den = den.quo_ground(lc)
            f = _FIELD.raw_new(num, den)
        return RatFunc(f)

    @staticmethod
    def _lift(other):
        if isinstance(other, RatFunc):
            return other._f
        if isinstance(other, Fraction):
            return _FIELD(_to_mpq(other))
        if isinstance(other, int):
            return _FIELD(other)
        return None

    @property
    def numer(self):
        return self._f.numer

    @property
    def denom(self):
        return self._f.denom

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._make(self._f + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._make(self._f - o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._make(o - self._f)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._make(self._f * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero scalar")
        return self._make(self._f / o)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._make(o / self._f)

    def __neg__(self):
        return RatFunc(-self._f)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self._make(_FIELD.one / self._f ** (-k))
        return self._make(self._f**k)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self._f.numer == other._f.numer and self._f.denom == other._f.denom
        # canonical RatFunc values are never constant
        if isinstance(other, (Fraction, int)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self._f.numer, self._f.denom))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"RatFunc({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)

    def evaluate(self, value):
        """Substitute a number (Fraction, float or complex) for ``r``."""
        exact = isinstance(value, (int, Fraction))
        conv = _to_fraction if exact else (lambda c: float(_to_fraction(c)))

        def ev(p):
            return sum((conv(c) * value ** m[0] for m, c in p.terms()), Fraction(0) if exact else 0.0)

        return ev(self._f.numer) / ev(self._f.denom)


Scalar = Union[Fraction, RatFunc]

R = RatFunc(_R_GEN)


def is_scalar(x) -> bool:
    return isinstance(x, (Fraction, RatFunc))


def as_scalar(x) -> Scalar:
    if isinstance(x, (Fraction, RatFunc)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return scalar_parse(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a scalar")


def is_zero(x: Scalar) -> bool:
    return not isinstance(x, RatFunc) and x == 0


def scalar_degree(x: Scalar) -> int:
    """Total degree (deg num + deg den); 0 for rationals.  Used for pivoting."""
    if isinstance(x, RatFunc):
        return max(x.numer.degree(), 0) + x.denom.degree()
    return 0


def scalar_is_positive_integer(x: Scalar) -> bool:
    return isinstance(x, Fraction) and x.denominator == 1 and x.numerator >= 1


def specialize(x: Scalar, value: Fraction) -> Fraction:
    """Evaluate at ``r = value``; raises ZeroDivisionError at a pole."""
    if isinstance(x, RatFunc):
        return x.evaluate(Fraction(value))
    return x


# --- text format -----------------------------------------------------------

def _format_fraction(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _format_poly(p) -> str:
    out = []
    for (deg,), c in sorted(p.terms(), key=lambda t: -t[0][0]):
        c = _to_fraction(c)
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if deg == 0:
            body = _format_fraction(c)
        else:
            mono = "r" if deg == 1 else f"r^{deg}"
            if c == 1:
                body = mono
            elif c.denominator == 1:
                body = f"{c.numerator}*{mono}"
            else:
                body = f"{c.numerator}/{c.denominator}*{mono}"
        out.append((sign, body))
    if not out:
        return "0"
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += sign + body
    return text


def _poly_is_atom(p) -> bool:
    terms = p.terms()
    if len(terms) != 1:
        return False
    (deg,), c = terms[0]
    c = _to_fraction(c)
    return deg == 0 and c.denominator == 1 and c >= 0 or deg > 0 and c == 1


def format_scalar(x: Scalar) -> str:
    """Canonical text, e.g. ``-3/4``, ``2/r``, ``(2*r+1)/(r-3)``."""
    if isinstance(x, Fraction):
        return _format_fraction(x)
    if isinstance(x, int):
        return str(x)
    num, den = x.numer, x.denom
    if den.is_ground:
        return _format_poly(num)
    if num.is_ground:
        c = _to_fraction(num.LC)
        num_txt = _format_fraction(c) if c.denominator == 1 else f"({_format_fraction(c)})"
    else:
        num_txt = _format_poly(num)
        if not _poly_is_atom(num):
            num_txt = f"({num_txt})"
    den_txt = _format_poly(den)
    if not _poly_is_atom(den):
        den_txt = f"({den_txt})"
    return f"{num_txt}/{den_txt}"


_TOKEN = re.compile(r"\s*(?:(\d+)|(r)|([-+*/^()]))")


class _Parser:
    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        text = text.replace("**", "^")
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            m = _TOKEN.match(text, pos)
            if not m:
                raise ScalarSyntaxError(f"unexpected character {text[pos]!r} in {text!r}")
            num, var, op = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif var is not None:
                self.tokens.append(("r", None))
            else:
                self.tokens.append(("op", op))
            pos = m.end()
        self.i = 0
        self.text = text

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if tok[0] is None or (op is not None and tok != ("op", op)):
            raise ScalarSyntaxError(f"expected {op or 'token'} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ScalarSyntaxError("empty scalar")
        value = self.expr()
        if self.i != len(self.tokens):
            raise ScalarSyntaxError(f"trailing input in {self.text!r}")
        return value

    def expr(self):
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        value = self.term() * sign
        while self.peek() in (("op", "-"), ("op", "+")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.power()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                value = value * self.power()
            elif tok == ("op", "/"):
                self.take()
                rhs = self.power()
                if is_zero(rhs):
                    raise ZeroDivisionError(f"zero denominator in {self.text!r}")
                value = value / rhs
            elif tok[0] in ("r", "num") or tok == ("op", "("):
                # implicit multiplication: 2r, 2(r+1)
                value = value * self.power()
            else:
                return value

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            kind, k = self.take()
            if kind != "num":
                raise ScalarSyntaxError(f"exponent must be an integer in {self.text!r}")
            if neg:
                if is_zero(base):
                    raise ZeroDivisionError(f"zero denominator in {self.text!r}")
                return 1 / base**k
            return base**k
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return Fraction(val)
        if kind == "r":
            return R
        if val == "(":
            value = self.expr()
            self.take(")")
            return value
        if val == "-":
            return -self.power()
        raise ScalarSyntaxError(f"unexpected {val!r} in {self.text!r}")


def scalar_parse(text: str) -> Scalar:
    """Parse ``-3/4``, ``2r``, ``(2*r+1)/(r-3)``, ``1/r`` into canonical form."""
    if not isinstance(text, str):
        raise TypeError("scalar text must be a string")
    return _Parser(text).parse()
