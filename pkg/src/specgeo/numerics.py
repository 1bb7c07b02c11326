"""Deterministic numerical substrate: symmetric eigensolver, quadrature
rules, and a reproducible PRNG (SplitMix64-seeded xoshiro256**).

Everything downstream builds on these three primitives, so their behavior
is pinned: eigenpairs are returned in descending order with a fixed sign
convention, quadrature weights are the classical composite rules, and the
PRNG stream is bit-reproducible across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class NonSymmetric(ValueError):
    """Input matrix is not symmetric within tolerance."""


class NoConvergence(RuntimeError):
    """Eigensolver failed to converge."""


class BadNodeCount(ValueError):
    """Invalid node count for the requested quadrature rule."""


_SYM_TOL = 1e-12


@dataclass(frozen=True)
class SymEigen:
    """Eigendecomposition of a symmetric matrix.

    values are sorted descending; vectors[:, i] is the unit eigenvector for
    values[i], sign-fixed so its largest-magnitude entry is nonnegative.
    """

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.T


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def sym_eigen(matrix: np.ndarray, top_k: int | None = None) -> SymEigen:
    """Eigendecomposition of a symmetric real matrix, descending order.

    Backed by LAPACK's symmetric solver (via numpy); the public contract is
    the ordering, the deterministic sign convention, and a reconstruction
    residual below 1e-10 * ||M||_F.

    Raises NonSymmetric if ||M - M^T||_F > 1e-12 * ||M||_F, and
    NoConvergence if the underlying iteration fails.
    """
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NonSymmetric(f"expected a square matrix, got shape {m.shape}")
    scale = np.linalg.norm(m)
    if np.linalg.norm(m - m.T) > _SYM_TOL * max(scale, 1.0):
        raise NonSymmetric("matrix is not symmetric within 1e-12 relative")
    sym = 0.5 * (m + m.T)
    try:
        values, vectors = np.linalg.eigh(sym)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(str(exc)) from exc
    values = values[::-1]
    vectors = _fix_signs(np.ascontiguousarray(vectors[:, ::-1]))
    if top_k is not None:
        if not 1 <= top_k <= m.shape[0]:
            raise ValueError(f"top_k={top_k} out of range for n={m.shape[0]}")
        values = values[:top_k]
        vectors = vectors[:, :top_k]
    return SymEigen(values=values, vectors=vectors)


@dataclass(frozen=True)
class QuadratureGrid:
    """Nodes and positive weights discretizing a closed interval.

    Sum of weights equals the interval length, so constants integrate
    exactly.
    """

    nodes: np.ndarray
    weights: np.ndarray
    domain: tuple[float, float]

    def integrate(self, values: np.ndarray) -> float:
        return float(np.dot(self.weights, values))


def make_grid(domain: tuple[float, float], n_nodes: int, rule: str = "simpson") -> QuadratureGrid:
    """Composite trapezoid or Simpson rule on [a, b].

    Simpson requires an odd node count (even number of panels).
    """
    a, b = float(domain[0]), float(domain[1])
    if not b > a:
        raise ValueError(f"empty domain [{a}, {b}]")
    if n_nodes < 3:
        raise BadNodeCount("need at least 3 nodes")
    if rule == "simpson" and n_nodes % 2 == 0:
        raise BadNodeCount("simpson rule needs an odd node count")
    nodes = np.linspace(a, b, n_nodes)
    h = (b - a) / (n_nodes - 1)
    if rule == "trapezoid":
        w = np.full(n_nodes, h)
        w[0] = w[-1] = h / 2.0
    elif rule == "simpson":
        w = np.ones(n_nodes)
        w[1:-1:2] = 4.0
        w[2:-1:2] = 2.0
        w *= h / 3.0
    else:
        raise ValueError(f"unknown rule {rule!r}")
    return QuadratureGrid(nodes=nodes, weights=w, domain=(a, b))


def make_composite_grid(
    domain: tuple[float, float],
    n_nodes: int,
    breakpoints: list[float] | np.ndarray = (),
) -> QuadratureGrid:
    """Simpson rule whose nodes include the given interior breakpoints.

    Each segment between consecutive breakpoints gets its own composite
    Simpson sub-rule at roughly uniform density, so integrands that are
    smooth between breakpoints (e.g. piecewise polynomials from compactly
    supported kernels) are integrated at full order.
    """
    a, b = float(domain[0]), float(domain[1])
    pts = sorted({a, b, *(float(p) for p in breakpoints if a < p < b)})
    h_target = (b - a) / max(n_nodes - 1, 2)
    all_nodes: list[np.ndarray] = []
    all_weights: list[np.ndarray] = []
    for lo, hi in zip(pts[:-1], pts[1:]):
        panels = max(2, 2 * math.ceil((hi - lo) / h_target / 2))
        sub = make_grid((lo, hi), panels + 1, "simpson")
        all_nodes.append(sub.nodes)
        all_weights.append(sub.weights)
    nodes = np.concatenate(all_nodes)
    weights = np.concatenate(all_weights)
    # merge duplicated segment endpoints
    keep = np.concatenate([[True], np.diff(nodes) > 0])
    merged_w = np.zeros(keep.sum())
    np.add.at(merged_w, np.cumsum(keep) - 1, weights)
    return QuadratureGrid(nodes=nodes[keep], weights=merged_w, domain=(a, b))


_MASK64 = 0xFFFFFFFFFFFFFFFF


def _splitmix64(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


@dataclass
class Rng:
    """xoshiro256** generator seeded through SplitMix64.

    The stream is fully specified so fixtures are portable:

    - state: four 64-bit words produced by four successive SplitMix64 steps
      from the seed;
    - uniform(): next 64-bit output, top 53 bits scaled to [0, 1);
    - gaussian(): Box-Muller cosine branch, consuming exactly two uniforms
      u1, u2 in order: sqrt(-2 ln(1 - u1)) * cos(2 pi u2).
    """

    seed: int
    _s: list[int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        sm = self.seed & _MASK64
        s = []
        for _ in range(4):
            sm, out = _splitmix64(sm)
            s.append(out)
        self._s = s

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (_rotl((s1 * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def gaussian(self) -> float:
        u1 = self.uniform()
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log(1.0 - u1)) * math.cos(2.0 * math.pi * u2)

    def uniforms(self, n: int) -> np.ndarray:
        """Block of n uniforms from the sequential stream."""
        s0, s1, s2, s3 = self._s
        out = np.empty(n)
        for i in range(n):
            result = (_rotl((s1 * 5) & _MASK64, 7) * 9) & _MASK64
            t = (s1 << 17) & _MASK64
            s2 ^= s0
            s3 ^= s1
            s1 ^= s2
            s0 ^= s3
            s2 ^= t
            s3 = _rotl(s3, 45)
            out[i] = (result >> 11) * 2.0**-53
        self._s = [s0, s1, s2, s3]
        return out

    def gaussians(self, n: int) -> np.ndarray:
        u = self.uniforms(2 * n)
        return np.sqrt(-2.0 * np.log(1.0 - u[0::2])) * np.cos(2.0 * np.pi * u[1::2])


def rng_new(seed: int) -> Rng:
    return Rng(seed=seed)


def derive_seed(seed: int, index: int) -> int:
    """Per-shard seed: one SplitMix64 output from (seed + index)."""
    _, out = _splitmix64((seed + index) & _MASK64)
    return out
