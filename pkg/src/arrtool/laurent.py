"""The Z^N-graded dga A_a = sum_k A^* q^k truncated to a window of k.

Component k carries the differential x -> (-k.a.omega) ^ x.  Following the
printed convention, the component with index k is written ``x * q1^k1 ... qN^kN``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .aomoto import CohomologyReport, aomoto_cohomology
from .orlik_solomon import OSAlgebra, OSElement, format_os
from .scalar import as_scalar
from .weights import WeightMatrix, WindowBox

__all__ = [
    "LaurentElement",
    "format_laurent",
    "laurent_cohomology",
    "laurent_d",
    "laurent_multiply",
]

Index = tuple[int, ...]


class LaurentElement:
    """Finitely supported map k -> OSElement.

    ``truncated`` records that a product produced components outside the
    window and those were dropped.
    """

    __slots__ = ("alg", "N", "components", "truncated")

    def __init__(
        self,
        alg: OSAlgebra,
        N: int,
        components: Optional[Mapping[Index, OSElement]] = None,
        truncated: bool = False,
    ):
        self.alg = alg
        self.N = N
        self.components: dict[Index, OSElement] = {}
        for k, x in (components or {}).items():
            k = tuple(k)
            if len(k) != N:
                raise ValueError(f"index {k} has length {len(k)}, expected {N}")
            if x:
                self.components[k] = x
        self.truncated = truncated

    @classmethod
    def single(cls, x: OSElement, k: Sequence[int]) -> "LaurentElement":
        return cls(x.alg, len(k), {tuple(k): x})

    @classmethod
    def unit(cls, alg: OSAlgebra, N: int) -> "LaurentElement":
        return cls(alg, N, {(0,) * N: alg.one()})

    def __bool__(self):
        return bool(self.components)

    def component(self, k: Sequence[int]) -> OSElement:
        return self.components.get(tuple(k), self.alg.zero())

    def support(self) -> list[Index]:
        return sorted(self.components)

    def degree(self) -> int:
        degs = set()
        for x in self.components.values():
            degs |= x.degrees()
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop() if degs else 0

    def __add__(self, other: "LaurentElement") -> "LaurentElement":
        out = dict(self.components)
        for k, x in other.components.items():
            out[k] = out[k] + x if k in out else x
        return LaurentElement(self.alg, self.N, out, self.truncated or other.truncated)

    def __neg__(self):
        return LaurentElement(self.alg, self.N, {k: -x for k, x in self.components.items()}, self.truncated)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LaurentElement":
        c = as_scalar(c)
        return LaurentElement(self.alg, self.N, {k: x.scale(c) for k, x in self.components.items()}, self.truncated)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if isinstance(other, LaurentElement):
            return self.N == other.N and self.components == other.components
        if isinstance(other, int) and other == 0:
            return not self.components
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted((k, hash(x)) for k, x in self.components.items())))

    def __str__(self):
        return format_laurent(self)

    def __repr__(self):
        return f"LaurentElement({format_laurent(self)!r})"


def _q_text(k: Index) -> str:
    return " ".join(f"q{i}^{e}" for i, e in enumerate(k, start=1) if e)


def format_laurent(x: LaurentElement) -> str:
    """``2/r*w2^w3 * q1^2 q2^1``; components in sorted index order."""
    if not x.components:
        return "0"
    parts = []
    for k in sorted(x.components):
        body = format_os(x.components[k])
        if not any(k):
            parts.append(body)
            continue
        if len(x.components[k].terms) > 1:
            body = f"({body})"
        parts.append(f"{body} * {_q_text(k)}")
    return " + ".join(parts)


def laurent_d(alg: OSAlgebra, a: WeightMatrix, x: LaurentElement) -> LaurentElement:
    """Apply (-k.a.omega) ^ . in every component k."""
    out = {}
    for k, comp in x.components.items():
        if not any(k):
            continue
        form = alg.linear_form([-c for c in a.row_action(k)])
        out[k] = alg.multiply(form, comp)
    return LaurentElement(alg, x.N, out, x.truncated)


def laurent_multiply(
    alg: OSAlgebra, x: LaurentElement, y: LaurentElement, window: Optional[WindowBox] = None
) -> LaurentElement:
    """Convolution product; components outside ``window`` are dropped and flagged."""
    if x.N != y.N:
        raise ValueError("factors live over different index lattices")
    out: dict[Index, OSElement] = {}
    truncated = x.truncated or y.truncated
    for kx, cx in x.components.items():
        for ky, cy in y.components.items():
            k = tuple(a + b for a, b in zip(kx, ky))
            if window is not None and k not in window:
                truncated = True
                continue
            prod = alg.multiply(cx, cy)
            if prod:
                out[k] = out[k] + prod if k in out else prod
    return LaurentElement(alg, x.N, out, truncated)


def laurent_cohomology(
    alg: OSAlgebra, a: WeightMatrix, window: WindowBox, degree: Optional[int] = None
) -> dict[Index, CohomologyReport]:
    """Per-component Aomoto cohomology at weights k.a for every k in the window.

    ``degree`` is accepted for interface symmetry; every report carries all
    degrees and callers read ``report.dims[degree]``.
    """
    cache: dict[tuple, CohomologyReport] = {}
    out = {}
    for k in window:
        w = a.row_action(k)
        if w not in cache:
            cache[w] = aomoto_cohomology(alg, w)
        out[k] = cache[w]
    return out
