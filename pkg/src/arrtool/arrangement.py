"""Affine hyperplane arrangements over Q: intersection lattice, dense flats, ESV test."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg
from .scalar import Scalar, as_scalar, format_scalar, scalar_is_positive_integer, scalar_parse

__all__ = [
    "Arrangement",
    "ArrangementError",
    "ESVReport",
    "Flat",
    "FlatLattice",
    "braid_arrangement",
    "dense_flats",
    "esv_check",
    "intersection_lattice",
    "load_arrangement",
]

INFINITY = 0


class ArrangementError(ValueError):
    pass


@dataclass(frozen=True)
class Arrangement:
    """Hyperplanes ``L_j(x) = coeffs_j . x + const_j = 0`` in C^ambient_dim, j = 1..n."""

    ambient_dim: int
    forms: tuple[tuple[tuple[Fraction, ...], Fraction], ...]

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise ArrangementError("ambient_dim must be at least 1")
        seen = []
        for j, (coeffs, const) in enumerate(self.forms, start=1):
            if len(coeffs) != self.ambient_dim:
                raise ArrangementError(f"form {j} has {len(coeffs)} coefficients, expected {self.ambient_dim}")
            if all(c == 0 for c in coeffs):
                raise ArrangementError(f"form {j} has zero linear part")
            v = _normalize(coeffs + (const,))
            if v in seen:
                raise ArrangementError(f"form {j} duplicates hyperplane {seen.index(v) + 1}")
            seen.append(v)

    @property
    def n(self) -> int:
        return len(self.forms)

    @cached_property
    def coned(self) -> tuple[tuple[Fraction, ...], ...]:
        """Homogenized vectors; index 0 is the hyperplane at infinity."""
        inf = tuple([Fraction(0)] * self.ambient_dim + [Fraction(1)])
        return (inf,) + tuple(tuple(c) + (k,) for c, k in self.forms)

    def linear_rank(self, idx: Iterable[int]) -> int:
        return _rank_of(tuple(self.forms[j - 1][0] for j in sorted(idx)), self.ambient_dim)

    def coned_rank(self, idx: Iterable[int]) -> int:
        return _rank_of(tuple(self.coned[j] for j in sorted(idx)), self.ambient_dim + 1)

    def meets(self, idx: Iterable[int]) -> bool:
        """True when the affine hyperplanes in ``idx`` have a common point."""
        idx = tuple(sorted(idx))
        return self.linear_rank(idx) == self.coned_rank(idx)

    def evaluate(self, j: int, point: Sequence) -> complex:
        coeffs, const = self.forms[j - 1]
        return sum(float(c) * z for c, z in zip(coeffs, point)) + float(const)

    def to_dict(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "forms": [
                {"coeffs": [format_scalar(c) for c in coeffs], "const": format_scalar(const)}
                for coeffs, const in self.forms
            ],
        }

    def relabel(self, perm: Sequence[int]) -> "Arrangement":
        """New arrangement whose hyperplane i is the old hyperplane perm[i-1]."""
        return Arrangement(self.ambient_dim, tuple(self.forms[p - 1] for p in perm))


def _normalize(v: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    lead = next(x for x in v if x != 0)
    return tuple(x / lead for x in v)


@lru_cache(maxsize=None)
def _rank_of(rows: tuple, ncols: int) -> int:
    return linalg.rank([list(r) for r in rows], ncols) if rows else 0


def _rational(x) -> Fraction:
    value = as_scalar(x) if not isinstance(x, str) else scalar_parse(x)
    if not isinstance(value, Fraction):
        raise ArrangementError(f"hyperplane coefficients must be rational, got {x!r}")
    return value


def load_arrangement(source) -> Arrangement:
    """Build an arrangement from file content (JSON text), a dict, or a path."""
    if isinstance(source, (bytes, str)) and not str(source).lstrip().startswith("{"):
        with open(source, encoding="utf-8") as fh:
            source = fh.read()
    if isinstance(source, (bytes, str)):
        try:
            source = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ArrangementError(f"malformed arrangement file: {exc}") from exc
    try:
        dim = int(source["ambient_dim"])
        forms = tuple(
            (tuple(_rational(c) for c in f["coeffs"]), _rational(f.get("const", "0")))
            for f in source["forms"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ArrangementError):
            raise
        raise ArrangementError(f"malformed arrangement file: {exc}") from exc
    return Arrangement(dim, forms)


def braid_arrangement() -> Arrangement:
    """Lines x, x-1, y-1, y, x-y in C^2 (numbered 1..5)."""
    F = Fraction
    return Arrangement(
        2,
        (
            ((F(1), F(0)), F(0)),
            ((F(1), F(0)), F(-1)),
            ((F(0), F(1)), F(-1)),
            ((F(0), F(1)), F(0)),
            ((F(1), F(-1)), F(0)),
        ),
    )


# --- lattice -----------------------------------------------------------------

@dataclass(frozen=True)
class Flat:
    hyperplanes: frozenset[int]
    rank: int
    moebius: int
    dense: bool = False

    def label(self) -> str:
        return "{" + ",".join(str(j) for j in sorted(self.hyperplanes)) + "}"


@dataclass
class FlatLattice:
    projective: bool
    ranks: list[list[Flat]]
    covers: dict[frozenset, list[frozenset]] = field(default_factory=dict)

    def flats(self) -> list[Flat]:
        return [f for level in self.ranks for f in level]

    def by_set(self) -> dict[frozenset, Flat]:
        return {f.hyperplanes: f for f in self.flats()}

    def whitney(self) -> list[int]:
        return [sum(abs(f.moebius) for f in level) for level in self.ranks]


def _closure(arr: Arrangement, idx: frozenset, projective: bool) -> frozenset:
    rk = arr.coned_rank(idx)
    pool = range(0, arr.n + 1) if projective else range(1, arr.n + 1)
    return frozenset(j for j in pool if j in idx or arr.coned_rank(idx | {j}) == rk)


def intersection_lattice(arr: Arrangement, projective: bool = False) -> FlatLattice:
    """All flats with ranks and Moebius values.

    Affine: nonempty intersections of the K_j.  Projective: intersections of
    the closures in P(V + C), including the hyperplane at infinity (index 0).
    """
    pool = list(range(0, arr.n + 1)) if projective else list(range(1, arr.n + 1))
    max_rank = arr.ambient_dim  # projective flats of coned rank l+1 are empty
    levels: list[set[frozenset]] = [{frozenset()}]
    for rk in range(1, max_rank + 1):
        nxt: set[frozenset] = set()
        for flat in levels[-1]:
            for j in pool:
                if j in flat:
                    continue
                cand = flat | {j}
                if not projective and not arr.meets(cand):
                    continue
                if arr.coned_rank(cand) != rk:
                    continue
                nxt.add(_closure(arr, cand, projective))
        if not nxt:
            break
        levels.append(nxt)

    ordered = [sorted(level, key=lambda s: sorted(s)) for level in levels]
    moebius: dict[frozenset, int] = {}
    for level in ordered:
        for flat in level:
            if not flat:
                moebius[flat] = 1
                continue
            moebius[flat] = -sum(m for z, m in moebius.items() if z < flat)
    covers: dict[frozenset, list[frozenset]] = {}
    for lo, hi in zip(ordered, ordered[1:]):
        for f in lo:
            covers[f] = [g for g in hi if f < g]
    ranks = [[Flat(f, rk, moebius[f]) for f in level] for rk, level in enumerate(ordered)]
    return FlatLattice(projective, ranks, covers)


def _circuits(arr: Arrangement, ground: Sequence[int]) -> list[tuple[int, ...]]:
    """Minimal dependent subsets of the coned vectors indexed by ``ground``."""
    out = []
    for size in range(2, len(ground) + 1):
        for sub in combinations(ground, size):
            if arr.coned_rank(sub) != size - 1:
                continue
            if any(set(c) <= set(sub) for c in out):
                continue
            out.append(sub)
    return out


def is_connected(arr: Arrangement, ground: Sequence[int]) -> bool:
    """Matroid connectivity of the coned vectors: elements joined when they share a circuit."""
    ground = list(ground)
    if len(ground) <= 1:
        return True
    parent = {g: g for g in ground}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in _circuits(arr, ground):
        root = find(c[0])
        for x in c[1:]:
            parent[find(x)] = root
    return len({find(g) for g in ground}) == 1


def dense_flats(arr: Arrangement) -> list[Flat]:
    """Projective flats (rank >= 1) whose containing subarrangement is irreducible."""
    lattice = intersection_lattice(arr, projective=True)
    out = []
    for f in lattice.flats():
        if f.rank == 0:
            continue
        if is_connected(arr, sorted(f.hyperplanes)):
            out.append(Flat(f.hyperplanes, f.rank, f.moebius, dense=True))
    return out


@dataclass
class ESVReport:
    valid: bool
    violations: list[tuple[Flat, Scalar]]

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "violations": [{"flat": f.label(), "sum": format_scalar(s)} for f, s in self.violations],
        }


def esv_check(arr: Arrangement, w: Sequence) -> ESVReport:
    """Flag dense flats S where the weight sum over hyperplanes containing S is a positive integer.

    The hyperplane at infinity carries ``a_0 = -(a_1 + ... + a_n)``.
    """
    if len(w) != arr.n:
        raise ArrangementError(f"weight row has length {len(w)}, expected {arr.n}")
    w = [as_scalar(x) for x in w]
    a = [-sum(w, Fraction(0))] + w
    violations = []
    for flat in _dense_cache(arr):
        total = sum((a[j] for j in sorted(flat.hyperplanes)), Fraction(0))
        if scalar_is_positive_integer(total):
            violations.append((flat, total))
    return ESVReport(not violations, violations)


@lru_cache(maxsize=64)
def _dense_cache(arr: Arrangement) -> tuple[Flat, ...]:
    return tuple(dense_flats(arr))
