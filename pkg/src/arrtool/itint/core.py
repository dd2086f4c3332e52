"""Loops, monodromy and (twisted) iterated integrals in double precision."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from ..arrangement import Arrangement
from ..scalar import RatFunc
from . import kernels

MIN_DISTANCE = 1e-9
REFINE_RATIO = 0.5


class LoopError(ValueError):
    pass


def _numeric(x, r_value=None) -> complex:
    if isinstance(x, RatFunc):
        if r_value is None:
            raise ValueError("weights contain r; supply a numeric value for r")
        return complex(x.evaluate(r_value))
    return complex(x)


def numeric_weights(a, r_value=None) -> np.ndarray:
    """Weight matrix (WeightMatrix or nested rows) as a complex N x n array."""
    rows = a.rows if hasattr(a, "rows") else a
    return np.array([[_numeric(x, r_value) for x in row] for row in rows], dtype=np.complex128).reshape(len(rows), -1)


def _forms(arr: Arrangement) -> tuple[np.ndarray, np.ndarray]:
    C = np.array([[float(c) for c in coeffs] for coeffs, _ in arr.forms], dtype=np.complex128).reshape(arr.n, arr.ambient_dim)
    c0 = np.array([float(k) for _, k in arr.forms], dtype=np.complex128)
    return C, c0


@dataclass
class Loop:
    """Closed polyline base -> vertices[0] -> ... -> vertices[-1] -> base."""

    base: np.ndarray
    vertices: list[np.ndarray] = field(default_factory=list)
    samples: int = 32

    def __post_init__(self):
        self.base = np.asarray(self.base, dtype=np.complex128)
        self.vertices = [np.asarray(v, dtype=np.complex128) for v in self.vertices]

    def points(self) -> list[np.ndarray]:
        return [self.base] + self.vertices + [self.base]

    def segments(self):
        pts = self.points()
        return [(p, q) for p, q in zip(pts[:-1], pts[1:]) if not np.allclose(p, q, rtol=0, atol=0)]

    def reversed(self) -> "Loop":
        return Loop(self.base, list(reversed(self.vertices)), self.samples)

    def compose(self, other: "Loop") -> "Loop":
        """This loop followed by ``other`` (same base point)."""
        if not np.allclose(self.base, other.base):
            raise LoopError("loops have different base points")
        return Loop(self.base, self.vertices + [self.base] + other.vertices, self.samples)

    def with_samples(self, samples: int) -> "Loop":
        return Loop(self.base, self.vertices, samples)

    def to_dict(self) -> dict:
        pair = lambda v: [[float(z.real), float(z.imag)] for z in v]
        return {"base": pair(self.base), "vertices": [pair(v) for v in self.vertices], "samples": self.samples}

    def validate(self, arr: Arrangement) -> None:
        """Every segment keeps at least MIN_DISTANCE away from each hyperplane."""
        C, c0 = _forms(arr)
        for p, q in self.segments():
            alpha = C @ p + c0
            beta = C @ q + c0 - alpha
            for j in range(arr.n):
                a, b = alpha[j], beta[j]
                bb = (b * b.conjugate()).real
                t = 0.0 if bb == 0 else min(1.0, max(0.0, -(a * b.conjugate()).real / bb))
                if abs(a + b * t) <= MIN_DISTANCE:
                    raise LoopError(f"loop meets hyperplane {j + 1}")


def load_loop(source) -> Loop:
    """JSON with ``base`` and ``vertices`` as [re, im] pairs per coordinate, plus ``samples``."""
    if isinstance(source, str) and not source.lstrip().startswith("{"):
        with open(source, encoding="utf-8") as fh:
            source = fh.read()
    if isinstance(source, str):
        source = json.loads(source)
    cplx = lambda v: [complex(re, im) for re, im in v]
    return Loop(cplx(source["base"]), [cplx(v) for v in source.get("vertices", [])], int(source.get("samples", 32)))


def _distance(C, c0, norms, p, q) -> float:
    """Distance from the segment p -> q to the nearest hyperplane."""
    alpha = C @ p + c0
    beta = C @ q + c0 - alpha
    bb = (beta * beta.conjugate()).real
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(bb > 0, -(alpha * beta.conjugate()).real / np.where(bb > 0, bb, 1), 0.0)
    t = np.clip(t, 0.0, 1.0)
    return float(np.min(np.abs(alpha + beta * t) / norms)) if len(norms) else np.inf


def _segment_data(arr: Arrangement, loop: Loop, ratio: float = REFINE_RATIO):
    """Pullback data per piece; pieces are bisected until shorter than ratio x distance."""
    C, c0 = _forms(arr)
    norms = np.linalg.norm(C, axis=1)
    for p, q in loop.segments():
        stack = [(p, q, 0)]
        while stack:
            a, b, depth = stack.pop()
            if depth < 60 and np.linalg.norm(b - a) > ratio * _distance(C, c0, norms, a, b):
                m = 0.5 * (a + b)
                stack.append((m, b, depth + 1))
                stack.append((a, m, depth + 1))
                continue
            alpha = C @ a + c0
            yield alpha, C @ b + c0 - alpha


def _gauss(samples: int):
    nodes, weights = np.polynomial.legendre.leggauss(samples)
    return 0.5 * (nodes + 1.0), 0.5 * weights


def omega_integrals(arr: Arrangement, loop: Loop) -> np.ndarray:
    """Integrals of omega_1..omega_n along the loop (composite Gauss-Legendre)."""
    loop.validate(arr)
    nodes, weights = _gauss(loop.samples)
    total = np.zeros(arr.n, dtype=np.complex128)
    for alpha, beta in _segment_data(arr, loop):
        total += kernels.segment_omega(alpha, beta, nodes, weights)
    return total


def omega_integrals_exact(arr: Arrangement, loop: Loop) -> np.ndarray:
    """Segment-wise principal logarithms; reference values for the quadrature."""
    loop.validate(arr)
    total = np.zeros(arr.n, dtype=np.complex128)
    for alpha, beta in _segment_data(arr, loop):
        total += np.log((alpha + beta) / alpha) / kernels.TWO_PI_I
    return total


def monodromy(arr: Arrangement, a, loop: Loop, r_value=None) -> np.ndarray:
    """exp of the integral of a.omega^T: a point of (C*)^N."""
    A = numeric_weights(a, r_value)
    return np.exp(A @ omega_integrals(arr, loop))


@dataclass
class TwistedForm:
    """Degree-one OS element eta (coefficients on omega_1..omega_n) in component k."""

    eta: Sequence
    k: tuple[int, ...]

    @classmethod
    def from_os(cls, x, k, r_value=None) -> "TwistedForm":
        if x.terms and x.degree != 1:
            raise ValueError("twisted forms must have degree one")
        coeffs = [0j] * x.alg.arr.n
        for m, c in x.terms.items():
            coeffs[m[0] - 1] = _numeric(c, r_value)
        return cls(coeffs, tuple(k))


def iterated_integral(arr: Arrangement, a, forms: Sequence[TwistedForm], phi: Sequence[int],
                      loop: Loop, r_value=None) -> complex:
    """phi(rho(gamma)) times the iterated integral of the twisted forms.

    Form j is integrated as exp(-int_0^t k_j a omega^T) eta_j; the cascade
    F_0 = 1, F_j' = f_j F_{j-1} is integrated by RK4 with ``loop.samples``
    steps per segment.
    """
    loop.validate(arr)
    A = numeric_weights(a, r_value)
    N = A.shape[0]
    phi = np.asarray(phi if len(phi) else [0] * N, dtype=np.float64)
    rho = monodromy(arr, A, loop)
    scale = complex(np.prod(rho ** phi))
    r = len(forms)
    if r == 0:
        return scale
    twist = np.array([np.asarray(f.k, dtype=np.float64) @ A for f in forms], dtype=np.complex128).reshape(r, arr.n)
    eta = np.array([np.asarray(f.eta, dtype=np.complex128) for f in forms]).reshape(r, arr.n)
    y = np.zeros(r + 1, dtype=np.complex128)
    y[0] = 1.0
    prefix = np.zeros(arr.n, dtype=np.complex128)
    for alpha, beta in _segment_data(arr, loop):
        y = kernels.cascade_segment(alpha, beta, prefix, twist, eta, y, loop.samples)
        prefix = prefix + np.log((alpha + beta) / alpha) / kernels.TWO_PI_I
    return scale * complex(y[r])


DEFAULT_BASE = (complex(-1 / 3, 0.2), complex(-2 / 3, 0.1))


def _generic_point(dim: int, j: int) -> np.ndarray:
    # deterministic, irrational-looking offsets so different j give unrelated points
    g = (np.sqrt(5) - 1) / 2
    return np.array([complex(((i + 1) * g * (j + 2)) % 1 - 0.5, ((i + 2) * g * (j + 3)) % 1 - 0.5)
                     for i in range(dim)], dtype=np.complex128)


def standard_meridian(arr: Arrangement, j: int, radius: float = 0.05, base=None,
                      vertices: int = 64, samples: int = 32) -> Loop:
    """Small positively oriented circle around K_j joined to the base point by a straight tail."""
    if not 1 <= j <= arr.n:
        raise ValueError(f"hyperplane index {j} out of range 1..{arr.n}")
    if vertices < 64:
        raise ValueError("meridians use at least 64 vertices")
    C, c0 = _forms(arr)
    if base is None:
        base = DEFAULT_BASE if arr.ambient_dim == 2 else _generic_point(arr.ambient_dim, -1)
    base = np.asarray(base, dtype=np.complex128)
    c = C[j - 1]
    norm = np.linalg.norm(c)
    z0 = _generic_point(arr.ambient_dim, j)
    p = z0 - (c @ z0 + c0[j - 1]) / norm ** 2 * c.conjugate()
    u = c.conjugate() / norm
    # the whole disc of this radius around p must stay off the other hyperplanes
    for k in range(arr.n):
        if k != j - 1 and abs(C[k] @ p + c0[k]) <= radius * np.linalg.norm(C[k]) + MIN_DISTANCE:
            raise LoopError(f"radius {radius} too large: circle meets hyperplane {k + 1}")
    theta = 2 * np.pi * np.arange(vertices + 1) / vertices
    circle = [p + radius * np.exp(1j * t) * u for t in theta]
    loop = Loop(base, circle, samples)
    try:
        loop.validate(arr)
    except LoopError as exc:
        raise LoopError(f"meridian construction failed: {exc}") from None
    return loop
