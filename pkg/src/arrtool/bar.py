"""Reduced bar construction over a connected dga.

Letters are basis elements of R^+ (degree >= 1).  For a connected dga the
reduced-bar relations involving R^0 are vacuous, so the tensor model
``[r1|...|rs] q^m`` is the bar construction itself.  ``q^m`` is a grouplike
coefficient used by the Hopf structure for diagonal coactions: each letter
carries a character label in Z^N.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Iterable, Mapping, Optional, Sequence

from . import linalg
from .scalar import Scalar, as_scalar, is_zero

__all__ = [
    "BarElement",
    "BarTensor",
    "ConnectedDGA",
    "EMPages",
    "TruncationError",
    "bar_antipode",
    "bar_coproduct",
    "bar_counit",
    "bar_d",
    "bar_shuffle",
    "em_pages",
]

Letters = tuple[int, ...]
Index = tuple[int, ...]
Sparse = dict[int, Scalar]


class TruncationError(ValueError):
    pass


def _acc(out: dict, key, c) -> None:
    v = out.get(key, Fraction(0)) + c
    if is_zero(v):
        out.pop(key, None)
    else:
        out[key] = v


@dataclass
class ConnectedDGA:
    """Finite-dimensional connected cdga: basis of R^+ plus structure constants.

    ``degrees[i]`` is the degree of basis element i (>= 1).  ``diff[i]`` and
    ``mult[(i, j)]`` are sparse vectors over the same basis; a missing entry
    means zero.  ``labels[i]`` is the optional character of element i.
    """

    names: list[str]
    degrees: list[int]
    diff: dict[int, Sparse] = field(default_factory=dict)
    mult: dict[tuple[int, int], Sparse] = field(default_factory=dict)
    labels: Optional[list[Index]] = None

    def __post_init__(self):
        if any(d < 1 for d in self.degrees):
            raise ValueError("R^+ basis elements must have positive degree")

    @property
    def size(self) -> int:
        return len(self.degrees)

    @property
    def N(self) -> int:
        return len(self.labels[0]) if self.labels else 0

    def basis_in_degree(self, p: int) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d == p]

    def d(self, i: int) -> Sparse:
        return self.diff.get(i, {})

    def mul(self, i: int, j: int) -> Sparse:
        return self.mult.get((i, j), {})

    def has_zero_differential(self) -> bool:
        return not any(self.diff.values())

    def label(self, i: int) -> Index:
        if self.labels is None:
            raise ValueError("letters carry no character labels")
        return self.labels[i]

    def check(self) -> None:
        """Assert d^2 = 0, graded commutativity and the Leibniz rule on basis pairs."""
        def apply_d(v: Sparse) -> Sparse:
            out: Sparse = {}
            for i, c in v.items():
                for j, e in self.d(i).items():
                    _acc(out, j, c * e)
            return out

        def mul_vec(u: Sparse, v: Sparse) -> Sparse:
            out: Sparse = {}
            for i, a in u.items():
                for j, b in v.items():
                    for k, e in self.mul(i, j).items():
                        _acc(out, k, a * b * e)
            return out

        for i in range(self.size):
            assert not apply_d(self.d(i)), f"d^2 != 0 on {self.names[i]}"
        for i in range(self.size):
            for j in range(self.size):
                sign = (-1) ** (self.degrees[i] * self.degrees[j])
                ij, ji = self.mul(i, j), self.mul(j, i)
                assert ij == {k: sign * v for k, v in ji.items()}, "not graded commutative"
                lhs = apply_d(self.mul(i, j))
                rhs = mul_vec(self.d(i), {j: Fraction(1)})
                for k, v in mul_vec({i: Fraction(1)}, self.d(j)).items():
                    _acc(rhs, k, (-1) ** self.degrees[i] * v)
                assert lhs == rhs, "Leibniz rule fails"

    # --- constructors
    @classmethod
    def from_os(cls, alg, N: int = 0) -> "ConnectedDGA":
        """Untwisted Orlik-Solomon algebra (zero differential)."""
        names, degrees, keys = [], [], []
        for p in range(1, len(alg.dims())):
            for m in alg.basis(p):
                names.append("w" + "^w".join(map(str, m)))
                degrees.append(p)
                keys.append(m)
        index = {m: i for i, m in enumerate(keys)}
        mult = {}
        for i, mi in enumerate(keys):
            for j, mj in enumerate(keys):
                prod = alg.multiply(alg.element({mi: Fraction(1)}), alg.element({mj: Fraction(1)}))
                if prod:
                    mult[(i, j)] = {index[m]: c for m, c in prod.terms.items()}
        labels = [(0,) * N for _ in keys] if N else None
        return cls(names, degrees, {}, mult, labels)

    @classmethod
    def exterior(cls, n_gens: int, dgen: Mapping[int, Mapping[tuple[int, int], Scalar]]) -> "ConnectedDGA":
        """Exterior algebra on degree-one generators 0..n_gens-1 with d given on generators.

        ``dgen[g]`` maps pairs (a, b), a < b, to the coefficient of g_a g_b.
        """
        subsets = [s for p in range(1, n_gens + 1) for s in combinations(range(n_gens), p)]
        index = {s: i for i, s in enumerate(subsets)}

        def wedge(s: tuple, t: tuple) -> tuple[int, Optional[tuple]]:
            if set(s) & set(t):
                return 0, None
            word = list(s + t)
            sign = 1
            for i in range(len(word)):
                for j in range(i + 1, len(word)):
                    if word[i] > word[j]:
                        sign = -sign
            return sign, tuple(sorted(word))

        mult = {}
        for s in subsets:
            for t in subsets:
                sign, u = wedge(s, t)
                if sign:
                    mult[(index[s], index[t])] = {index[u]: Fraction(sign)}
        diff = {}
        for s in subsets:
            out: Sparse = {}
            for pos, g in enumerate(s):
                rest_before, rest_after = s[:pos], s[pos + 1:]
                for (a_, b_), c in dgen.get(g, {}).items():
                    sign1, u = wedge(rest_before, (a_, b_))
                    if not sign1:
                        continue
                    sign2, v = wedge(u, rest_after)
                    if not sign2:
                        continue
                    # Leibniz: sign (-1)^pos for passing d over the earlier letters
                    _acc(out, index[v], (-1) ** pos * sign1 * sign2 * as_scalar(c))
            if out:
                diff[index[s]] = out
        names = ["g" + "g".join(map(str, s)) for s in subsets]
        return cls(names, [len(s) for s in subsets], diff, mult)

    @classmethod
    def from_cohomology(cls, alg, a, window, max_degree: Optional[int] = None) -> "ConnectedDGA":
        """Cohomology of the Laurent-graded algebra over a window, with zero differential.

        Letters are cohomology representatives labelled by their component k.
        Products leaving the window are dropped.  H^0 must be one-dimensional
        (only the unit at k = 0).
        """
        from .aomoto import aomoto_cohomology

        top = len(alg.dims()) - 1 if max_degree is None else max_degree
        reports = {}
        names, degrees, labels, reps = [], [], [], []
        for k in window:
            rep = aomoto_cohomology(alg, a.row_action(k), with_esv=False)
            reports[k] = rep
            if rep.dims[0] and any(k):
                raise ValueError(f"H^0 is nonzero at component {k}: algebra is not connected")
            for p in range(1, top + 1):
                for x in rep.representatives.get(p, []):
                    names.append(f"[{x}]q{list(k)}")
                    degrees.append(p)
                    labels.append(tuple(k))
                    reps.append(x)
        where = {}
        for i, (k, p) in enumerate(zip(labels, degrees)):
            where.setdefault((k, p), []).append(i)
        mult = {}
        for i in range(len(reps)):
            for j in range(len(reps)):
                p = degrees[i] + degrees[j]
                if p > top:
                    continue
                k = tuple(x + y for x, y in zip(labels[i], labels[j]))
                if k not in window:
                    continue
                prod = alg.multiply(reps[i], reps[j])
                if not prod:
                    continue
                coords = reports[k].classify(prod, p)
                targets = where.get((k, p), [])
                vec = {t: c for t, c in zip(targets, coords) if not is_zero(c)}
                if vec:
                    mult[(i, j)] = vec
        return cls(names, degrees, {}, mult, labels)


class BarElement:
    """Combination of ``[r1|...|rs] q^m``; keys are (letters, m)."""

    __slots__ = ("dga", "terms", "s_max")

    def __init__(self, dga: ConnectedDGA, terms: Optional[Mapping] = None, s_max: int = 3):
        self.dga = dga
        self.s_max = s_max
        self.terms: dict[tuple[Letters, Index], Scalar] = {}
        for (letters, m), c in (terms or {}).items():
            if len(letters) > s_max:
                raise TruncationError(f"length {len(letters)} exceeds s_max={s_max}")
            if not is_zero(as_scalar(c)):
                self.terms[(tuple(letters), tuple(m))] = as_scalar(c)

    @classmethod
    def word(cls, dga: ConnectedDGA, letters: Sequence[int], m: Optional[Sequence[int]] = None,
             coeff=1, s_max: int = 3) -> "BarElement":
        m = tuple(m) if m is not None else (0,) * dga.N
        return cls(dga, {(tuple(letters), m): coeff}, s_max)

    @classmethod
    def unit(cls, dga: ConnectedDGA, s_max: int = 3) -> "BarElement":
        return cls.word(dga, (), None, 1, s_max)

    def _new(self, terms) -> "BarElement":
        obj = BarElement.__new__(BarElement)
        obj.dga, obj.s_max, obj.terms = self.dga, self.s_max, terms
        return obj

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, BarElement):
            return self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __add__(self, other: "BarElement") -> "BarElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return self._new(out)

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "BarElement":
        c = as_scalar(c)
        if is_zero(c):
            return self._new({})
        return self._new({k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, BarElement):
            return bar_shuffle(self, other)
        return self.scale(other)

    def length(self) -> int:
        return max((len(l) for l, _ in self.terms), default=0)

    def bar_degrees(self) -> set[int]:
        return {sum(self.dga.degrees[i] - 1 for i in letters) for letters, _ in self.terms}

    def __repr__(self):
        parts = []
        for (letters, m), c in sorted(self.terms.items(), key=lambda t: (len(t[0][0]), t[0])):
            body = "[" + "|".join(self.dga.names[i] for i in letters) + "]"
            if any(m):
                body += "q" + str(list(m))
            parts.append(f"{c}*{body}")
        return "BarElement(" + " + ".join(parts) + ")" if parts else "BarElement(0)"


def _shifted(dga: ConnectedDGA, i: int) -> int:
    return dga.degrees[i] - 1


def bar_d(x: BarElement) -> BarElement:
    """Bar differential: inner differential terms plus adjacent products, with J-signs.

    d[r1|...|rs] = sum_j (-1)^j [Jr1|...|Jr_{j-1}|dr_j|r_{j+1}|...]
                 + sum_{j<s} (-1)^(j+1) [Jr1|...|Jr_{j-1}|Jr_j r_{j+1}|r_{j+2}|...]
    where J r = (-1)^deg(r) r.
    """
    dga = x.dga
    out: dict = {}
    for (letters, m), c in x.terms.items():
        s = len(letters)
        jsign = 1  # product of J-signs of the letters before position j
        for j in range(1, s + 1):
            r = letters[j - 1]
            for e, v in dga.d(r).items():
                key = (letters[: j - 1] + (e,) + letters[j:], m)
                _acc(out, key, c * v * ((-1) ** j) * jsign)
            if j < s:
                sign = ((-1) ** (j + 1)) * jsign * ((-1) ** dga.degrees[r])
                for e, v in dga.mul(r, letters[j]).items():
                    key = (letters[: j - 1] + (e,) + letters[j + 1:], m)
                    _acc(out, key, c * v * sign)
            jsign *= (-1) ** dga.degrees[r]
    return x._new(out)


def _shuffles(p: int, q: int) -> Iterable[tuple[int, ...]]:
    """Positions (in the merged word) taken by the first factor's letters."""
    return combinations(range(p + q), p)


def _shuffle_words(dga: ConnectedDGA, u: Letters, v: Letters) -> Iterable[tuple[Letters, int]]:
    p, q = len(u), len(v)
    for pos in _shuffles(p, q):
        word = []
        iu = iv = 0
        sign = 1
        posset = set(pos)
        for t in range(p + q):
            if t in posset:
                # letter of u jumps over the letters of v already placed
                if _shifted(dga, u[iu]) % 2:
                    odd_v = sum(_shifted(dga, v[k]) for k in range(iv)) % 2
                    if odd_v:
                        sign = -sign
                word.append(u[iu])
                iu += 1
            else:
                word.append(v[iv])
                iv += 1
        yield tuple(word), sign


def bar_shuffle(x: BarElement, y: BarElement, s_max: Optional[int] = None) -> BarElement:
    """Signed shuffle product; coefficients multiply q^m q^m' = q^(m+m')."""
    dga = x.dga
    cap = x.s_max if s_max is None else s_max
    out: dict = {}
    for (u, m), a in x.terms.items():
        for (v, n), b in y.terms.items():
            if len(u) + len(v) > cap:
                raise TruncationError(f"shuffle of lengths {len(u)}+{len(v)} exceeds s_max={cap}")
            mn = tuple(i + j for i, j in zip(m, n))
            for word, sign in _shuffle_words(dga, u, v):
                _acc(out, (word, mn), sign * a * b)
    res = x._new(out)
    res.s_max = cap
    return res


def bar_counit(x: BarElement) -> Scalar:
    return sum((c for (letters, _), c in x.terms.items() if not letters), Fraction(0))


class BarTensor:
    """Element of B (x) B (x) ... as a dict from tuples of (letters, m) keys."""

    __slots__ = ("dga", "terms", "arity")

    def __init__(self, dga: ConnectedDGA, arity: int, terms: Optional[dict] = None):
        self.dga = dga
        self.arity = arity
        self.terms = {k: v for k, v in (terms or {}).items() if not is_zero(v)}

    def __eq__(self, other):
        return isinstance(other, BarTensor) and self.arity == other.arity and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return BarTensor(self.dga, self.arity, out)

    def __sub__(self, other):
        return self + BarTensor(self.dga, other.arity, {k: -c for k, c in other.terms.items()})

    def _deg(self, key) -> int:
        letters, _ = key
        return sum(_shifted(self.dga, i) for i in letters)

    def multiply(self, other: "BarTensor", s_max: int = 10) -> "BarTensor":
        """Componentwise shuffle with the Koszul sign of the tensor product."""
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        out: dict = {}
        for ka, a in self.terms.items():
            for kb, b in other.terms.items():
                sign = 1
                for i in range(self.arity):
                    for j in range(i):
                        # factor i of ka passes factor j of kb
                        if self._deg(ka[i]) % 2 and self._deg(kb[j]) % 2:
                            sign = -sign
                factors = []
                for fa, fb in zip(ka, kb):
                    prod = bar_shuffle(BarElement(self.dga, {fa: 1}, s_max), BarElement(self.dga, {fb: 1}, s_max), s_max)
                    factors.append(list(prod.terms.items()))
                for combo in product(*factors):
                    key = tuple(k for k, _ in combo)
                    c = sign * a * b
                    for _, v in combo:
                        c = c * v
                    _acc(out, key, c)
        return BarTensor(self.dga, self.arity, out)


def _label_sum(dga: ConnectedDGA, letters: Letters, m: Index) -> Index:
    out = list(m)
    for i in letters:
        for t, e in enumerate(dga.label(i)):
            out[t] += e
    return tuple(out)


def bar_coproduct(x: BarElement) -> BarTensor:
    """Deconcatenation twisted by the letter characters.

    D[r1|...|rs]q^m = sum_i [r1|...|ri] q^(m + sum_{l>i} k(r_l)) (x) [r_{i+1}|...|rs] q^m
    """
    dga = x.dga
    if dga.labels is None:
        raise ValueError("coproduct needs character labels on every letter")
    out: dict = {}
    for (letters, m), c in x.terms.items():
        for i in range(len(letters) + 1):
            left = (letters[:i], _label_sum(dga, letters[i:], m))
            right = (letters[i:], m)
            _acc(out, (left, right), c)
    return BarTensor(dga, 2, out)


def bar_antipode(x: BarElement) -> BarElement:
    """[r1|...|rs]q^m -> (-1)^s eps [rs|...|r1] q^(-m - sum k(r_i)).

    ``eps`` is the Koszul sign of reversing the shifted letters; it is +1 when
    all letters have degree one.
    """
    dga = x.dga
    if dga.labels is None:
        raise ValueError("antipode needs character labels on every letter")
    out: dict = {}
    for (letters, m), c in x.terms.items():
        s = len(letters)
        koszul = 1
        for i in range(s):
            for j in range(i + 1, s):
                if _shifted(dga, letters[i]) % 2 and _shifted(dga, letters[j]) % 2:
                    koszul = -koszul
        total = _label_sum(dga, letters, m)
        key = (tuple(reversed(letters)), tuple(-t for t in total))
        _acc(out, key, c * ((-1) ** s) * koszul)
    return x._new(out)


def coproduct_apply(t: BarTensor, position: int) -> BarTensor:
    """Apply the coproduct to one factor of a tensor (for coassociativity checks)."""
    out: dict = {}
    for key, c in t.terms.items():
        inner = bar_coproduct(BarElement(t.dga, {key[position]: 1}, 10))
        for (l, r), v in inner.terms.items():
            _acc(out, key[:position] + (l, r) + key[position + 1:], c * v)
    return BarTensor(t.dga, t.arity + 1, out)


def convolve_antipode(x: BarElement) -> BarElement:
    """m (S (x) I) D applied to x."""
    out = BarElement(x.dga, {}, 10)
    for (l, r), c in bar_coproduct(x).terms.items():
        left = bar_antipode(BarElement(x.dga, {l: 1}, 10))
        right = BarElement(x.dga, {r: 1}, 10)
        out = out + bar_shuffle(left, right, 10).scale(c)
    return out


# --- Eilenberg-Moore pages -------------------------------------------------

@dataclass
class EMPages:
    s_max: int
    e1: dict[tuple[int, int], int]
    e2: dict[tuple[int, int], int]

    def table(self, page: int) -> list[list[int]]:
        data = self.e1 if page == 1 else self.e2
        ts = sorted({t for _, t in data})
        return [[data.get((-s, t), 0) for s in range(self.s_max + 1)] for t in ts]


def _words(dga: ConnectedDGA, s: int, t: int) -> list[Letters]:
    """Bar words of length s whose letter degrees sum to t."""
    by_deg = {}
    for i, d in enumerate(dga.degrees):
        by_deg.setdefault(d, []).append(i)
    degs = sorted(by_deg)
    out = []

    def rec(prefix, remaining, left):
        if left == 0:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for d in degs:
            if d * 1 > remaining:
                break
            if remaining - d < left - 1:
                break
            for i in by_deg[d]:
                rec(prefix + [i], remaining - d, left - 1)

    rec([], t, s)
    return out


def d1_matrix(dga: ConnectedDGA, s: int, t: int) -> tuple[list[dict], list[Letters], list[Letters]]:
    """Sparse columns of d_1 : E_1^{-s,t} -> E_1^{-s+1,t} (product terms of the bar differential)."""
    src = _words(dga, s, t)
    tgt = _words(dga, s - 1, t) if s >= 1 else []
    index = {w: i for i, w in enumerate(tgt)}
    cols = []
    zero = (0,) * dga.N
    for w in src:
        img = bar_d(BarElement(dga, {(w, zero): 1}, max(s, 1)))
        col = {}
        for (letters, _), c in img.terms.items():
            col[index[letters]] = c
        cols.append(col)
    return cols, src, tgt


def em_pages(H: ConnectedDGA, s_max: int = 3) -> EMPages:
    """E_1 and E_2 dimensions of the bar-length spectral sequence of B(F, H, F).

    ``H`` must have zero differential (it plays the role of H^*(R)); d_1 is then
    the product part of the bar differential.  Bidegrees are (-s, t) with t the
    sum of letter degrees.  E_2 at length s_max uses d_1 from length s_max + 1.
    """
    if not H.has_zero_differential():
        raise ValueError("E_1 is built from an algebra with trivial differential")
    max_deg = max(H.degrees, default=0)
    e1: dict[tuple[int, int], int] = {(0, 0): 1}
    e2: dict[tuple[int, int], int] = {}
    ranks: dict[tuple[int, int], int] = {}
    for s in range(1, s_max + 2):
        for t in range(s, s * max_deg + 1):
            cols, src, _ = d1_matrix(H, s, t)
            if s <= s_max:
                e1[(-s, t)] = len(src)
            ranks[(s, t)] = linalg.sparse_rank(cols) if src else 0
    for (ms, t), dim in e1.items():
        s = -ms
        out_rank = ranks.get((s, t), 0) if s >= 1 else 0
        in_rank = ranks.get((s + 1, t), 0)
        e2[(ms, t)] = dim - out_rank - in_rank
    return EMPages(s_max, e1, e2)
