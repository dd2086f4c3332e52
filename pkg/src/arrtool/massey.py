"""Massey triple products of degree-one classes in H^*(A_a).

The triple product is taken modulo the whole span of products of degree-one
classes landing in the target component, i.e. modulo H^1 * H^1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .aomoto import CohomologyReport, aomoto_cohomology, aomoto_differential
from .laurent import LaurentElement, laurent_d, laurent_multiply
from .orlik_solomon import OSAlgebra, OSElement
from .scalar import Scalar, format_scalar
from .weights import WeightMatrix, WindowBox

__all__ = ["MasseyError", "MasseyResult", "massey_triple"]

Index = tuple[int, ...]


class MasseyError(ValueError):
    pass


@dataclass
class MasseyResult:
    defined: bool
    target: Index
    representative: Optional[LaurentElement]
    indeterminacy_basis: list[LaurentElement]
    nonzero_mod_indeterminacy: bool
    certificate: dict[str, LaurentElement] = field(default_factory=dict)
    pairs_examined: list[tuple[Index, Index]] = field(default_factory=list)
    obstruction: Optional[str] = None
    _quotient: list[list[Scalar]] = field(default_factory=list, repr=False)

    @property
    def indeterminacy_dim(self) -> int:
        return len(self.indeterminacy_basis)

    @property
    def verdict(self) -> str:
        if not self.defined:
            return "UNDEFINED"
        return "NONZERO" if self.nonzero_mod_indeterminacy else "ZERO"

    def equivalent(self, other: LaurentElement) -> bool:
        """Whether ``other`` lies in the same coset as the representative.

        The coset is taken modulo coboundaries and the indeterminacy span in
        the target component.
        """
        if not self.defined:
            raise MasseyError("Massey product is not defined")
        alg = self.representative.alg
        for k in other.components:
            if k != self.target:
                return False
        diff = other.component(self.target) - self.representative.component(self.target)
        return linalg.in_span(self._quotient, diff.vector(2))

    def to_dict(self) -> dict:
        from .laurent import format_laurent

        return {
            "verdict": self.verdict,
            "defined": self.defined,
            "target": list(self.target),
            "representative": format_laurent(self.representative) if self.representative is not None else None,
            "indeterminacy_dim": self.indeterminacy_dim,
            "indeterminacy_basis": [format_laurent(x) for x in self.indeterminacy_basis],
            "primitives": {k: format_laurent(v) for k, v in self.certificate.items()},
            "pairs_examined": [[list(a), list(b)] for a, b in self.pairs_examined],
            "obstruction": self.obstruction,
        }


def _single(x: LaurentElement, name: str) -> tuple[Index, OSElement]:
    if len(x.components) > 1:
        raise MasseyError(f"{name} must live in a single component")
    if not x.components:
        return (0,) * x.N, x.alg.zero()
    ((k, comp),) = x.components.items()
    if comp.degrees() != {1}:
        raise MasseyError(f"{name} must have form degree 1")
    return k, comp


def _add(k1: Index, k2: Index) -> Index:
    return tuple(a + b for a, b in zip(k1, k2))


def massey_triple(
    alg: OSAlgebra,
    a: WeightMatrix,
    x1: LaurentElement,
    x2: LaurentElement,
    x3: LaurentElement,
    window: WindowBox,
    *,
    zero_components: Optional[Sequence[Sequence[int]]] = None,
) -> MasseyResult:
    """Compute <[x1], [x2], [x3]> for closed degree-one x_i, each in one component.

    Primitives are minimal-support solutions in the NBC basis; ties are
    broken by the number of terms in the resulting representative.  The
    indeterminacy is spanned by products of degree-one cohomology bases at
    every pair of components (k, target - k) inside ``window``.
    ``zero_components`` supplies the components of elements given as 0.
    """
    parts = []
    for i, x in enumerate((x1, x2, x3), start=1):
        k, comp = _single(x, f"x{i}")
        if not x.components and zero_components is not None:
            k = tuple(zero_components[i - 1])
        parts.append((k, comp))
    (k1, c1), (k2, c2), (k3, c3) = parts
    N = a.N
    for i, (k, comp) in enumerate(parts, start=1):
        if laurent_d(alg, a, LaurentElement(alg, N, {k: comp})):
            raise MasseyError(f"x{i} is not closed")
    k12, k23 = _add(k1, k2), _add(k2, k3)
    target = _add(k12, k3)
    for k in (k1, k2, k3, k12, k23, target):
        if k not in window:
            raise MasseyError(f"window too small: component {k} lies outside it")

    def primitives(k: Index, rhs: OSElement) -> list[OSElement]:
        d = aomoto_differential(alg, a.row_action(k), 1)
        return [alg.from_vector(1, v) for v in linalg.min_support_solutions(d, rhs.vector(2), alg.dim(1))]

    p12 = alg.multiply(c1, c2)
    p23 = alg.multiply(c2, c3)
    cand12 = primitives(k12, p12)
    cand23 = primitives(k23, p23)
    if not cand12 or not cand23:
        which = "[x1][x2]" if not cand12 else "[x2][x3]"
        return MasseyResult(
            defined=False,
            target=target,
            representative=None,
            indeterminacy_basis=[],
            nonzero_mod_indeterminacy=False,
            obstruction=f"{which} is a nonzero class",
        )

    # among minimal-support primitives, keep the pair giving the sparsest representative
    best = None
    for i, r12 in enumerate(cand12):
        for j, r23 in enumerate(cand23):
            rep = alg.multiply(r12, c3) + alg.multiply(c1, r23)
            key = (len(rep.terms), i, j)
            if best is None or key < best[0]:
                best = (key, r12, r23, rep)
    _, r12, r23, rep = best
    rep_el = LaurentElement(alg, N, {target: rep})
    if laurent_d(alg, a, rep_el):
        raise AssertionError("Massey representative is not closed")

    # indeterminacy: products H^1_k * H^1_{target-k}
    reports: dict[tuple, CohomologyReport] = {}

    def h1(k: Index) -> list[OSElement]:
        w = a.row_action(k)
        if w not in reports:
            reports[w] = aomoto_cohomology(alg, w, with_esv=False)
        return reports[w].representatives.get(1, [])

    coboundaries = [list(v) for v in linalg.transpose(aomoto_differential(alg, a.row_action(target), 1))]
    span = [v for v in coboundaries if any(c != 0 for c in v)]
    base_rank = linalg.rank(span, alg.dim(2)) if span else 0
    indeterminacy: list[LaurentElement] = []
    pairs = []
    for k in window:
        kk = tuple(t - s for t, s in zip(target, k))
        if kk not in window or k > kk:
            continue
        left, right = h1(k), h1(kk)
        if not left or not right:
            continue
        pairs.append((k, kk))
        for u in left:
            for v in right:
                prod = alg.multiply(u, v)
                if not prod:
                    continue
                vec = prod.vector(2)
                if linalg.rank(span + [vec], alg.dim(2)) > base_rank + len(indeterminacy):
                    span.append(vec)
                    indeterminacy.append(LaurentElement(alg, N, {target: prod}))
    nonzero = not linalg.in_span(span, rep.vector(2))
    return MasseyResult(
        defined=True,
        target=target,
        representative=rep_el,
        indeterminacy_basis=indeterminacy,
        nonzero_mod_indeterminacy=nonzero,
        certificate={
            "r12": LaurentElement(alg, N, {k12: r12}),
            "r23": LaurentElement(alg, N, {k23: r23}),
        },
        pairs_examined=pairs,
        _quotient=span,
    )
