"""Finite nonparametric mixtures: component distributions with exact
densities and CDFs, labeled sampling, and the worked-example presets.

Components are 1-D: gaussian(mu, sigma), triangular(mu) with density
(1 - |x - mu|)+ , uniform(a, b), and composite (a weighted mixture used
as a single, possibly bimodal, component). Unbounded supports are
truncated at mu +- 8 sigma for quadrature purposes; the lost mass is
below 1e-14.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .kernels import Kernel, box_kernel, gaussian_kernel, linear_kernel
from .numerics import Rng


class BadParameter(ValueError):
    """Preset or component parameter outside its valid range."""


_SQRT2 = math.sqrt(2.0)


def _norm_cdf(z: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.vectorize(math.erf)(z / _SQRT2))


@dataclass(frozen=True)
class Component:
    """One mixture component; family in {gaussian, triangular, uniform,
    composite}."""

    family: str
    mu: float = 0.0
    sigma: float = 1.0
    a: float = 0.0
    b: float = 1.0
    parts: tuple["Component", ...] = ()
    part_weights: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.family == "gaussian" and self.sigma <= 0:
            raise BadParameter("sigma must be positive")
        if self.family == "uniform" and not self.b > self.a:
            raise BadParameter("uniform needs b > a")
        if self.family == "composite":
            if not self.parts or len(self.parts) != len(self.part_weights):
                raise BadParameter("composite needs matching parts and weights")
            if abs(sum(self.part_weights) - 1.0) > 1e-12:
                raise BadParameter("composite weights must sum to 1")
        elif self.family not in ("gaussian", "triangular", "uniform"):
            raise BadParameter(f"unknown component family {self.family!r}")

    @property
    def support(self) -> tuple[float, float]:
        if self.family == "gaussian":
            return (self.mu - 8.0 * self.sigma, self.mu + 8.0 * self.sigma)
        if self.family == "triangular":
            return (self.mu - 1.0, self.mu + 1.0)
        if self.family == "uniform":
            return (self.a, self.b)
        los, his = zip(*(p.support for p in self.parts))
        return (min(los), max(his))

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Density kink locations (used by kink-aware quadrature)."""
        if self.family == "triangular":
            return (self.mu - 1.0, self.mu, self.mu + 1.0)
        if self.family == "uniform":
            return (self.a, self.b)
        if self.family == "composite":
            return tuple(sorted({bp for p in self.parts for bp in p.breakpoints}))
        return ()

    def density(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.family == "gaussian":
            out = np.exp(-((x - self.mu) ** 2) / (2.0 * self.sigma**2)) / (
                math.sqrt(2.0 * math.pi) * self.sigma
            )
        elif self.family == "triangular":
            out = np.clip(1.0 - np.abs(x - self.mu), 0.0, None)
        elif self.family == "uniform":
            out = np.where((x >= self.a) & (x <= self.b), 1.0 / (self.b - self.a), 0.0)
        else:
            out = sum(w * p.density(x) for w, p in zip(self.part_weights, self.parts))
        return out if out.ndim else float(out)

    def cdf(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.family == "gaussian":
            out = _norm_cdf((x - self.mu) / self.sigma)
        elif self.family == "triangular":
            t = np.clip(x - self.mu, -1.0, 1.0)
            out = np.where(t <= 0.0, (t + 1.0) ** 2 / 2.0, 1.0 - (1.0 - t) ** 2 / 2.0)
        elif self.family == "uniform":
            out = np.clip((x - self.a) / (self.b - self.a), 0.0, 1.0)
        else:
            out = sum(w * p.cdf(x) for w, p in zip(self.part_weights, self.parts))
        return out if out.ndim else float(out)

    def sample(self, n: int, rng: Rng) -> np.ndarray:
        if self.family == "gaussian":
            return self.mu + self.sigma * rng.gaussians(n)
        if self.family == "triangular":
            # inverse CDF: piecewise square roots
            u = rng.uniforms(n)
            return self.mu + np.where(
                u < 0.5, np.sqrt(2.0 * u) - 1.0, 1.0 - np.sqrt(2.0 * (1.0 - u))
            )
        if self.family == "uniform":
            return self.a + (self.b - self.a) * rng.uniforms(n)
        u = rng.uniforms(n)
        edges = np.cumsum(self.part_weights)
        idx = np.searchsorted(edges, u, side="right").clip(0, len(self.parts) - 1)
        out = np.empty(n)
        for j, p in enumerate(self.parts):
            mask = idx == j
            if mask.any():
                out[mask] = p.sample(int(mask.sum()), rng)
        return out


def gaussian(mu: float, sigma: float = 1.0) -> Component:
    return Component(family="gaussian", mu=mu, sigma=sigma)


def triangular(mu: float) -> Component:
    return Component(family="triangular", mu=mu)


def uniform(a: float, b: float) -> Component:
    return Component(family="uniform", a=a, b=b)


def composite(parts: list[Component], weights: list[float]) -> Component:
    return Component(family="composite", parts=tuple(parts), part_weights=tuple(weights))


@dataclass(frozen=True)
class LabeledSample:
    x: float
    z: int


@dataclass(frozen=True)
class Mixture:
    """K weighted components; weights live in the open probability simplex."""

    components: tuple[Component, ...]
    weights: tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.components:
            raise BadParameter("need at least one component")
        w = self.weights or tuple(1.0 / len(self.components) for _ in self.components)
        object.__setattr__(self, "weights", w)
        if len(w) != len(self.components):
            raise BadParameter("weights/components length mismatch")
        if any(wi <= 0 for wi in w) or abs(sum(w) - 1.0) > 1e-12:
            raise BadParameter("weights must be strictly positive and sum to 1")

    @property
    def k(self) -> int:
        return len(self.components)

    @property
    def support(self) -> tuple[float, float]:
        los, his = zip(*(c.support for c in self.components))
        return (min(los), max(his))

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return tuple(sorted({bp for c in self.components for bp in c.breakpoints}))

    def density(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = sum(w * c.density(x) for w, c in zip(self.weights, self.components))
        return out if out.ndim else float(out)

    def cdf(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = sum(w * c.cdf(x) for w, c in zip(self.weights, self.components))
        return out if out.ndim else float(out)

    def sample(self, n: int, rng: Rng) -> list[LabeledSample]:
        """n i.i.d. labeled draws: label from the weights, then x from that
        component. Labels are 1-based."""
        if n < 1:
            raise BadParameter("n must be >= 1")
        xs, zs = self.sample_arrays(n, rng)
        return [LabeledSample(x=float(x), z=int(z)) for x, z in zip(xs, zs)]

    def sample_arrays(self, n: int, rng: Rng) -> tuple[np.ndarray, np.ndarray]:
        u = rng.uniforms(n)
        edges = np.cumsum(self.weights)
        labels = np.searchsorted(edges, u, side="right").clip(0, self.k - 1)
        xs = np.empty(n)
        for j, comp in enumerate(self.components):
            mask = labels == j
            if mask.any():
                xs[mask] = comp.sample(int(mask.sum()), rng)
        return xs, labels + 1


def mixture_density(mixture: Mixture, x):
    return mixture.density(x)


def sample(mixture: Mixture, n: int, rng: Rng) -> list[LabeledSample]:
    return mixture.sample(n, rng)


def preset(name: str, **params) -> tuple[Mixture, Kernel]:
    """Worked-example mixture/kernel pairs.

    - triangular_pair(mu, nu): T_0 and T_mu, equal weights, box kernel.
    - gaussian_pair(mu, nu): N(0,1) and N(mu,1), equal weights, gaussian
      kernel.
    - triangular_bad(mu): bimodal composite (T_0 + T_mu)/2 paired with
      T_{2 mu}, box kernel (nu = 0.05).
    - uniform_linear(delta): U(1,2) and U(2+delta,3+delta) with the linear
      kernel (similarity counterexample only).
    """
    if name == "triangular_pair":
        mu, nu = params["mu"], params["nu"]
        if not 0.0 < nu < 1.0:
            raise BadParameter("triangular_pair needs nu in (0, 1)")
        mix = Mixture(components=(triangular(0.0), triangular(mu)), weights=(0.5, 0.5))
        return mix, box_kernel(nu)
    if name == "gaussian_pair":
        mu, nu = params["mu"], params["nu"]
        if nu <= 0:
            raise BadParameter("gaussian_pair needs nu > 0")
        mix = Mixture(components=(gaussian(0.0), gaussian(mu)), weights=(0.5, 0.5))
        return mix, gaussian_kernel(nu)
    if name == "triangular_bad":
        mu = params["mu"]
        nu = params.get("nu", 0.05)
        if not 0.0 < nu < 1.0:
            raise BadParameter("triangular_bad needs nu in (0, 1)")
        bad = composite([triangular(0.0), triangular(mu)], [0.5, 0.5])
        mix = Mixture(components=(bad, triangular(2.0 * mu)), weights=(0.5, 0.5))
        return mix, box_kernel(nu)
    if name == "uniform_linear":
        delta = params["delta"]
        if delta < 0:
            raise BadParameter("uniform_linear needs delta >= 0")
        mix = Mixture(
            components=(uniform(1.0, 2.0), uniform(2.0 + delta, 3.0 + delta)),
            weights=(0.5, 0.5),
        )
        return mix, linear_kernel()
    raise BadParameter(f"unknown preset {name!r}")
