"""Affine Orlik-Solomon algebra in the no-broken-circuit (NBC) basis."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from .arrangement import Arrangement
from .scalar import Scalar, as_scalar, format_scalar, is_zero

__all__ = ["OSAlgebra", "OSElement", "build_os", "os_multiply", "os_reduce", "sort_sign"]

Monomial = tuple[int, ...]


def sort_sign(word: Sequence[int]) -> tuple[int, Optional[Monomial]]:
    """Sort an exterior word; returns (sign, sorted tuple) or (0, None) on a repeat."""
    w = list(word)
    if len(set(w)) != len(w):
        return 0, None
    sign = 1
    # insertion sort counting transpositions
    for i in range(1, len(w)):
        j = i
        while j > 0 and w[j - 1] > w[j]:
            w[j - 1], w[j] = w[j], w[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(w)


class OSElement:
    """Sparse combination of NBC monomials ``w_{j1}^...^w_{jp}``."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "OSAlgebra", terms: Optional[Mapping[Monomial, Scalar]] = None):
        self.alg = alg
        self.terms: dict[Monomial, Scalar] = {m: c for m, c in (terms or {}).items() if not is_zero(c)}

    # construction helpers
    @classmethod
    def _raw(cls, alg, terms):
        obj = cls.__new__(cls)
        obj.alg = alg
        obj.terms = terms
        return obj

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set[int]:
        return {len(m) for m in self.terms}

    @property
    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop() if degs else 0

    def __add__(self, other: "OSElement") -> "OSElement":
        if not isinstance(other, OSElement):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, Fraction(0)) + c
            if is_zero(v):
                out.pop(m, None)
            else:
                out[m] = v
        return OSElement._raw(self.alg, out)

    def __neg__(self):
        return OSElement._raw(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "OSElement":
        c = as_scalar(c)
        if is_zero(c):
            return OSElement._raw(self.alg, {})
        return OSElement._raw(self.alg, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, OSElement):
            return self.alg.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, OSElement):
            return self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def vector(self, degree: int) -> list[Scalar]:
        """Coordinates in the degree-``degree`` NBC basis."""
        basis = self.alg.basis_index(degree)
        v = [Fraction(0)] * len(basis)
        for m, c in self.terms.items():
            if len(m) != degree:
                raise ValueError(f"element has a component outside degree {degree}")
            v[basis[m]] = c
        return v

    def __str__(self):
        return format_os(self)

    def __repr__(self):
        return f"OSElement({format_os(self)!r})"


def _monomial_text(m: Monomial) -> str:
    return "^".join(f"w{j}" for j in m) if m else "1"


def _is_negative(c: Scalar) -> bool:
    if isinstance(c, Fraction):
        return c < 0
    return c.numer.LC < 0


def _has_toplevel_sum(txt: str) -> bool:
    depth = 0
    for i, ch in enumerate(txt):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0:
            return True
    return False


def format_os(x: OSElement) -> str:
    """``2/r*w2^w3 - w1^w4``; terms in degree then lexicographic order."""
    if not x.terms:
        return "0"
    parts = []
    for m in sorted(x.terms, key=lambda t: (len(t), t)):
        c = x.terms[m]
        mono = _monomial_text(m)
        neg = _is_negative(c)
        if neg:
            c = -c
        if c == 1:
            body = mono
        else:
            txt = format_scalar(c)
            if _has_toplevel_sum(txt):
                txt = f"({txt})"
            body = txt if not m else f"{txt}*{mono}"
        parts.append(("-" if neg else "+", body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


class OSAlgebra:
    """NBC model of A^* for an affine arrangement, with hyperplane order 1 < ... < n."""

    def __init__(self, arr: Arrangement):
        self.arr = arr
        self.n = arr.n
        self._cache: dict[Monomial, dict[Monomial, Scalar]] = {}
        self._basis: list[list[Monomial]] = []
        top = 0
        for p in range(0, min(arr.ambient_dim, arr.n) + 1):
            level = [m for m in combinations(range(1, arr.n + 1), p) if self._is_nbc(m)]
            if not level and p > 0:
                break
            self._basis.append(level)
            top = p
        self.top_degree = top
        self._index = [{m: i for i, m in enumerate(level)} for level in self._basis]

    @cached_property
    def circuits(self) -> list[tuple[int, ...]]:
        """Minimal dependent sets of hyperplanes with a common point."""
        arr = self.arr
        out: list[tuple[int, ...]] = []
        for size in range(3, arr.ambient_dim + 2):
            for sub in combinations(range(1, arr.n + 1), size):
                if not arr.meets(sub) or arr.linear_rank(sub) != size - 1:
                    continue
                if any(set(c) <= set(sub) for c in out):
                    continue
                out.append(sub)
        return out

    @cached_property
    def broken_circuits(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        return [(c[1:], c) for c in self.circuits]

    def _independent_meeting(self, m: Monomial) -> bool:
        return self.arr.meets(m) and self.arr.linear_rank(m) == len(m)

    def _is_nbc(self, m: Monomial) -> bool:
        if not self._independent_meeting(m):
            return False
        s = set(m)
        return not any(set(b) <= s for b, _ in self.broken_circuits)

    # --- basis access
    def basis(self, degree: int) -> list[Monomial]:
        if degree < 0 or degree >= len(self._basis):
            return []
        return self._basis[degree]

    def basis_index(self, degree: int) -> dict[Monomial, int]:
        if degree < 0 or degree >= len(self._index):
            return {}
        return self._index[degree]

    def dims(self) -> list[int]:
        return [len(b) for b in self._basis]

    def dim(self, degree: int) -> int:
        return len(self.basis(degree))

    # --- elements
    def element(self, terms: Mapping[Monomial, Scalar] | None = None) -> OSElement:
        return OSElement(self, terms)

    def zero(self) -> OSElement:
        return OSElement(self)

    def one(self) -> OSElement:
        return OSElement(self, {(): Fraction(1)})

    def gen(self, j: int) -> OSElement:
        if not 1 <= j <= self.n:
            raise IndexError(f"generator index {j} outside 1..{self.n}")
        return OSElement(self, {(j,): Fraction(1)})

    def linear_form(self, w: Sequence) -> OSElement:
        """The degree-one element sum_j w_j w_j."""
        if len(w) != self.n:
            raise ValueError(f"weight row has length {len(w)}, expected {self.n}")
        return OSElement(self, {(j,): as_scalar(c) for j, c in enumerate(w, start=1)})

    def from_vector(self, degree: int, v: Sequence[Scalar]) -> OSElement:
        return OSElement(self, {m: c for m, c in zip(self.basis(degree), v)})

    # --- reduction
    def reduce_monomial(self, m: Monomial) -> dict[Monomial, Scalar]:
        """NBC normal form of a sorted monomial."""
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        out: dict[Monomial, Scalar] = {}
        if not self._independent_meeting(m):
            pass
        else:
            s = set(m)
            found = next(((b, c) for b, c in self.broken_circuits if set(b) <= s), None)
            if found is None:
                out = {m: Fraction(1)}
            else:
                b, circ = found
                rest = tuple(j for j in m if j not in b)
                sign, _ = sort_sign(b + rest)
                # e_b = sum_{i>=1} (-1)^{i+1} e_{circ minus circ[i]}
                for i in range(1, len(circ)):
                    sub = circ[:i] + circ[i + 1:]
                    s2, word = sort_sign(sub + rest)
                    if not s2:
                        continue
                    coeff = sign * s2 * (1 if i % 2 else -1)
                    for mm, c in self.reduce_monomial(word).items():
                        v = out.get(mm, Fraction(0)) + coeff * c
                        if is_zero(v):
                            out.pop(mm, None)
                        else:
                            out[mm] = v
        self._cache[m] = out
        return out

    def reduce_word(self, word: Sequence[int], coeff: Scalar = Fraction(1)) -> OSElement:
        for j in word:
            if not 1 <= j <= self.n:
                raise IndexError(f"generator index {j} outside 1..{self.n}")
        sign, m = sort_sign(word)
        if not sign:
            return self.zero()
        coeff = as_scalar(coeff) * sign
        return OSElement(self, {k: coeff * c for k, c in self.reduce_monomial(m).items()})

    def multiply(self, x: OSElement, y: OSElement) -> OSElement:
        out: dict[Monomial, Scalar] = {}
        for mx, cx in x.terms.items():
            for my, cy in y.terms.items():
                sign, m = sort_sign(mx + my)
                if not sign:
                    continue
                c = cx * cy
                if sign < 0:
                    c = -c
                for mm, cc in self.reduce_monomial(m).items():
                    v = out.get(mm, Fraction(0)) + c * cc
                    if is_zero(v):
                        out.pop(mm, None)
                    else:
                        out[mm] = v
        return OSElement._raw(self, out)

    def left_multiplication_matrix(
        self, x: OSElement, degree: int, x_degree: Optional[int] = None
    ) -> list[list[Scalar]]:
        """Matrix of y -> x*y from degree ``degree`` to degree + deg(x) (columns = source)."""
        src = self.basis(degree)
        tgt_deg = degree + (x.degree if x_degree is None else x_degree)
        tgt = self.basis_index(tgt_deg)
        M = [[Fraction(0)] * len(src) for _ in range(len(tgt))]
        for col, m in enumerate(src):
            prod = self.multiply(x, OSElement._raw(self, {m: Fraction(1)}))
            for mm, c in prod.terms.items():
                M[tgt[mm]][col] = c
        return M


def build_os(arr: Arrangement) -> OSAlgebra:
    return OSAlgebra(arr)


def os_reduce(alg: OSAlgebra, word: Sequence[int], sign: int = 1) -> OSElement:
    return alg.reduce_word(word, Fraction(sign))


def os_multiply(alg: OSAlgebra, x: OSElement, y: OSElement) -> OSElement:
    return alg.multiply(x, y)
