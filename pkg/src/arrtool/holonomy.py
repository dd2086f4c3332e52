"""Holonomy Lie algebra: free Lie algebra on H_1 modulo the quadratic relations
dual to the cup product, with graded dimensions in low degree.

Lie elements are handled inside the tensor algebra, where brackets are
commutators of words; this makes ranks exact and independent of any basis
choice for the free Lie algebra itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import linalg
from .scalar import format_scalar, is_zero

__all__ = [
    "HolonomyPresentation",
    "bracket",
    "hall_basis",
    "holonomy_presentation",
    "lcs_dims",
    "lcs_dims_bruteforce",
    "witt_dim",
]

MAX_DEGREE = 3

Tensor = dict[tuple[int, ...], Fraction]


@dataclass
class HolonomyPresentation:
    n: int
    relations: list[dict[tuple[int, int], Fraction]]  # sum c_ij x_i^x_j, i < j (0-based)
    cup_matrix: list[list[Fraction]]  # rows indexed by pairs (i < j), columns by the A^2 basis

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n)]

    @property
    def relation_dim(self) -> int:
        return len(self.relations)

    def relation_vectors(self) -> list[list[Fraction]]:
        return [[rel.get(p, Fraction(0)) for p in self.pairs] for rel in self.relations]

    def format_relation(self, rel) -> str:
        parts = []
        for (i, j), c in sorted(rel.items()):
            term = f"[x{i + 1},x{j + 1}]"
            if c == 1:
                parts.append(f"+ {term}")
            elif c == -1:
                parts.append(f"- {term}")
            elif c < 0:
                parts.append(f"- {format_scalar(-c)}*{term}")
            else:
                parts.append(f"+ {format_scalar(c)}*{term}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def holonomy_presentation(alg) -> HolonomyPresentation:
    """Relations = image of the dual of the cup map Lambda^2 A^1 -> A^2.

    Equivalently the annihilator of ker(cup); in coordinates it is the column
    space of the cup matrix, returned as a reduced row basis.
    """
    n = alg.dim(1) if len(alg.dims()) > 1 else 0
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    b2 = alg.dim(2) if len(alg.dims()) > 2 else 0
    cup = []
    for i, j in pairs:
        prod = alg.multiply(alg.gen(i + 1), alg.gen(j + 1))
        cup.append(prod.vector(2) if b2 else [])
    relations = []
    if b2 and pairs:
        red, piv = linalg.rref(linalg.transpose(cup, b2), len(pairs))
        for row in red[: len(piv)]:
            relations.append({p: c for p, c in zip(pairs, row) if not is_zero(c)})
    return HolonomyPresentation(n, relations, cup)


# --- tensor-algebra model -----------------------------------------------------

def _add(out: Tensor, w, c) -> None:
    v = out.get(w, Fraction(0)) + c
    if v:
        out[w] = v
    else:
        out.pop(w, None)


def bracket(a: Tensor, b: Tensor) -> Tensor:
    out: Tensor = {}
    for u, x in a.items():
        for v, y in b.items():
            _add(out, u + v, x * y)
            _add(out, v + u, -x * y)
    return out


def gen(i: int) -> Tensor:
    return {(i,): Fraction(1)}


def hall_basis(n: int, degree: int) -> list[tuple]:
    """Basic commutators of the given degree (nested tuples of generator indices).

    Degree 2: [x_j, x_i] with j > i.  Degree 3: [[x_j, x_i], x_k] with k >= i.
    """
    if degree == 1:
        return list(range(n))
    if degree == 2:
        return [(j, i) for i in range(n) for j in range(i + 1, n)]
    if degree == 3:
        return [((j, i), k) for (j, i) in hall_basis(n, 2) for k in range(i, n)]
    raise ValueError(f"degree {degree} not supported (max {MAX_DEGREE})")


def expand(h) -> Tensor:
    if isinstance(h, int):
        return gen(h)
    return bracket(expand(h[0]), expand(h[1]))


def _rank(tensors: list[Tensor]) -> int:
    rows = []
    index: dict[tuple, int] = {}
    for t in tensors:
        row = {}
        for w, c in t.items():
            row[index.setdefault(w, len(index))] = c
        rows.append(row)
    return linalg.sparse_rank(rows)


def witt_dim(n: int, d: int) -> int:
    """Necklace formula for the free Lie algebra on n generators."""
    def mobius(k: int) -> int:
        res, p, m = 1, 2, k
        while p * p <= m:
            if m % p == 0:
                m //= p
                if m % p == 0:
                    return 0
                res = -res
            p += 1
        return -res if m > 1 else res

    return sum(mobius(e) * n ** (d // e) for e in range(1, d + 1) if d % e == 0) // d


def relation_tensors(p: HolonomyPresentation) -> list[Tensor]:
    out = []
    for rel in p.relations:
        t: Tensor = {}
        for (i, j), c in rel.items():
            for w, v in bracket(gen(i), gen(j)).items():
                _add(t, w, c * v)
        out.append(t)
    return out


def lcs_dims(p: HolonomyPresentation, max_degree: int = MAX_DEGREE) -> list[int]:
    """dim h_d for d = 1..max_degree, as dim L_d - dim I_d with I_d = [I_{d-1}, V]."""
    if max_degree > MAX_DEGREE or max_degree < 1:
        raise ValueError(f"max_degree must be between 1 and {MAX_DEGREE}")
    n = p.n
    dims = []
    ideal = relation_tensors(p)
    for d in range(1, max_degree + 1):
        free = _rank([expand(h) for h in hall_basis(n, d)]) if n else 0
        if d == 1:
            dims.append(free)
            continue
        if d > 2:
            ideal = [bracket(t, gen(i)) for t in ideal for i in range(n)]
        dims.append(free - _rank(ideal))
    return dims


def lcs_dims_bruteforce(p: HolonomyPresentation, max_degree: int = MAX_DEGREE) -> list[int]:
    """Oracle: spans of all left-normed brackets, no Hall basis involved."""
    n = p.n
    dims = []
    rels = relation_tensors(p)
    for d in range(1, max_degree + 1):
        free = []
        for word in product(range(n), repeat=d):
            t = gen(word[0])
            for i in word[1:]:
                t = bracket(t, gen(i))
            if t:
                free.append(t)
        ideal = []
        if d >= 2:
            for r in rels:
                for word in product(range(n), repeat=d - 2):
                    t = r
                    for i in word:
                        t = bracket(t, gen(i))
                    if t:
                        ideal.append(t)
                    # brackets on the left as well
                    t = r
                    for i in word:
                        t = bracket(gen(i), t)
                    if t:
                        ideal.append(t)
        dims.append(_rank(free) - _rank(ideal))
    return dims
