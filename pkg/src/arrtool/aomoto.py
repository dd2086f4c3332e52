"""Aomoto complexes (A^*, -w.omega) and the dimension profile over a window of characters."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .arrangement import esv_check
from .orlik_solomon import OSAlgebra, OSElement
from .scalar import Scalar, as_scalar
from .weights import WeightMatrix, WindowBox

__all__ = [
    "CohomologyReport",
    "aomoto_cohomology",
    "aomoto_differential",
    "h1_completion_profile",
    "resonance_dim",
]


def aomoto_differential(alg: OSAlgebra, w: Sequence, degree: int) -> list[list[Scalar]]:
    """Matrix of x -> (-w.omega) ^ x from A^degree to A^(degree+1)."""
    if len(w) != alg.n:
        raise ValueError(f"weight row has length {len(w)}, expected {alg.n}")
    minus = alg.linear_form([-as_scalar(c) for c in w])
    return alg.left_multiplication_matrix(minus, degree, 1)


@dataclass
class CohomologyReport:
    weights: tuple[Scalar, ...]
    dims: list[int]
    cocycle_dims: list[int]
    coboundary_dims: list[int]
    representatives: dict[int, list[OSElement]]
    esv_valid: bool
    alg: OSAlgebra = field(repr=False)
    _coboundaries: dict[int, list[list[Scalar]]] = field(default_factory=dict, repr=False)

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * d for p, d in enumerate(self.dims))

    def coboundary_basis(self, degree: int) -> list[list[Scalar]]:
        return self._coboundaries.get(degree, [])

    def classify(self, x: OSElement, degree: int) -> Optional[list[Scalar]]:
        """Coordinates of the class of a cocycle in the representative basis.

        Returns None when ``x`` is not a cocycle of this complex.
        """
        v = x.vector(degree)
        if degree + 1 < len(self.alg.dims()):
            d = aomoto_differential(self.alg, self.weights, degree)
            if any(c != 0 for c in linalg.matvec(d, v)):
                return None
        reps = [r.vector(degree) for r in self.representatives.get(degree, [])]
        cols = reps + self.coboundary_basis(degree)
        if not cols:
            return []
        sol = linalg.solve(linalg.transpose(cols), v, len(cols))
        if sol is None:
            raise AssertionError("cocycle outside cocycles: inconsistent cohomology data")
        return sol[: len(reps)]


def aomoto_cohomology(alg: OSAlgebra, w: Sequence, with_esv: bool = True) -> CohomologyReport:
    """Dimensions and representatives of H^*(A^*, -w.omega).

    Representatives are returned in every degree: cocycle kernel vectors that
    extend the coboundaries, in NBC order (top degree: the first standard
    basis vectors outside the image).
    """
    w = tuple(as_scalar(c) for c in w)
    if len(w) != alg.n:
        raise ValueError(f"weight row has length {len(w)}, expected {alg.n}")
    dims_a = alg.dims()
    top = len(dims_a) - 1
    diffs = [aomoto_differential(alg, w, p) for p in range(top)]
    cocycles: list[list[list[Scalar]]] = []
    coboundaries: list[list[list[Scalar]]] = []
    for p in range(top + 1):
        if p < top:
            cocycles.append(linalg.nullspace(diffs[p], dims_a[p]))
        else:
            cocycles.append(linalg.nullspace([], dims_a[p]))
        if p == 0:
            coboundaries.append([])
        else:
            R, _ = linalg.rref(linalg.transpose(diffs[p - 1]), dims_a[p]) if dims_a[p - 1] else ([], [])
            coboundaries.append(R)
    reps: dict[int, list[OSElement]] = {}
    dims = []
    for p in range(top + 1):
        span = list(coboundaries[p])
        chosen = []
        current = len(span)
        for z in cocycles[p]:
            if linalg.rank(span + [z], dims_a[p]) > current:
                span.append(z)
                chosen.append(z)
                current += 1
        reps[p] = [alg.from_vector(p, z) for z in chosen]
        dims.append(len(chosen))
    valid = esv_check(alg.arr, w).valid if with_esv else True
    return CohomologyReport(
        weights=w,
        dims=dims,
        cocycle_dims=[len(z) for z in cocycles],
        coboundary_dims=[len(b) for b in coboundaries],
        representatives=reps,
        esv_valid=valid,
        alg=alg,
        _coboundaries={p: coboundaries[p] for p in range(top + 1)},
    )


def resonance_dim(alg: OSAlgebra, w: Sequence, degree: int) -> int:
    """dim H^degree(A^*, -w.omega)."""
    w = [as_scalar(c) for c in w]
    dims_a = alg.dims()
    if not 0 <= degree < len(dims_a):
        raise ValueError(f"degree {degree} outside 0..{len(dims_a) - 1}")
    out_rank = 0
    if degree + 1 < len(dims_a):
        out_rank = linalg.rank(aomoto_differential(alg, w, degree), dims_a[degree])
    in_rank = 0
    if degree > 0:
        in_rank = linalg.rank(aomoto_differential(alg, w, degree - 1), dims_a[degree - 1])
    return dims_a[degree] - out_rank - in_rank


def h1_completion_profile(
    alg: OSAlgebra, a: WeightMatrix, window: WindowBox
) -> dict[tuple[int, ...], tuple[int, int, bool]]:
    """For each k in the window: (dim H^1, dim H^2, ESV validity) at weights k.a."""
    if a.n != alg.n:
        raise ValueError(f"weight matrix has {a.n} columns, expected {alg.n}")
    if a.N != window.N:
        raise ValueError("window dimension differs from the number of weight rows")
    out = {}
    for k in window:
        w = a.row_action(k)
        h1 = resonance_dim(alg, w, 1) if alg.dim(1) else 0
        h2 = resonance_dim(alg, w, 2) if len(alg.dims()) > 2 else 0
        out[k] = (h1, h2, esv_check(alg.arr, w).valid)
    return out
