"""Weight matrices (exponents of a rank-N character) and finite windows in Z^N."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from .scalar import Scalar, as_scalar, format_scalar, is_zero, scalar_parse

__all__ = ["WeightMatrix", "WindowBox", "load_weight_matrix"]


@dataclass(frozen=True)
class WeightMatrix:
    """N x n matrix a; the character of component k has weights k.a."""

    rows: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        if not self.rows:
            raise ValueError("weight matrix needs at least one row")
        n = len(self.rows[0])
        if any(len(r) != n for r in self.rows):
            raise ValueError("weight matrix rows have different lengths")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "WeightMatrix":
        return cls(tuple(tuple(as_scalar(x) for x in row) for row in rows))

    @classmethod
    def zero(cls, N: int, n: int) -> "WeightMatrix":
        return cls(tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(N)))

    @property
    def N(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def row_action(self, k: Sequence[int]) -> tuple[Scalar, ...]:
        """The weight row k.a."""
        if len(k) != self.N:
            raise ValueError(f"index {tuple(k)} has length {len(k)}, expected {self.N}")
        out = []
        for j in range(self.n):
            s = Fraction(0)
            for ki, row in zip(k, self.rows):
                if ki and not is_zero(row[j]):
                    s = s + ki * row[j]
            out.append(s)
        return tuple(out)

    def scaled(self, c) -> "WeightMatrix":
        c = as_scalar(c)
        return WeightMatrix(tuple(tuple(c * x for x in row) for row in self.rows))

    def specialize(self, value) -> "WeightMatrix":
        from .scalar import specialize

        return WeightMatrix(tuple(tuple(specialize(x, value) for x in row) for row in self.rows))

    def to_lists(self) -> list[list[str]]:
        return [[format_scalar(x) for x in row] for row in self.rows]


def load_weight_matrix(source) -> WeightMatrix:
    """JSON list of rows of scalar strings, e.g. ``[["0","r","r","0","-2*r"], ...]``.

    A bare path is read from disk; a dict with a ``rows`` key is also accepted.
    """
    if isinstance(source, str) and not source.lstrip().startswith(("[", "{")):
        with open(source, encoding="utf-8") as fh:
            source = fh.read()
    if isinstance(source, str):
        source = json.loads(source)
    if isinstance(source, dict):
        source = source["rows"]
    return WeightMatrix(tuple(tuple(scalar_parse(str(x)) for x in row) for row in source))


@dataclass(frozen=True)
class WindowBox:
    """Integer box lo_i <= k_i <= hi_i containing the origin."""

    lo: tuple[int, ...]
    hi: tuple[int, ...]

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise ValueError("window bounds have different lengths")
        for a, b in zip(self.lo, self.hi):
            if not a <= 0 <= b:
                raise ValueError("window must contain the origin")

    @classmethod
    def radius(cls, N: int, R: int) -> "WindowBox":
        return cls((-R,) * N, (R,) * N)

    @property
    def N(self) -> int:
        return len(self.lo)

    def __contains__(self, k) -> bool:
        return len(k) == self.N and all(a <= x <= b for a, x, b in zip(self.lo, k, self.hi))

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(product(*(range(a, b + 1) for a, b in zip(self.lo, self.hi))))

    def __len__(self) -> int:
        size = 1
        for a, b in zip(self.lo, self.hi):
            size *= b - a + 1
        return size
