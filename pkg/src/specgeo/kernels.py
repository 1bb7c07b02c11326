"""Kernel functions with analytic metadata, kernel-matrix assembly, and a
positive-semidefiniteness probe.

Families:

- gaussian:    k(x,y) = exp(-|x-y|^2 / (2 nu^2)) / (sqrt(2 pi) nu)
- uniform_box: k(x,y) = 1{|x-y| <= nu} / (2 nu)   (compactly supported,
  not positive semidefinite; admitted for the worked examples)
- regularized: base kernel plus a constant offset >= 0
- linear:      k(x,y) = x * y, admitted only for the similarity
  counterexample on bounded-support uniforms; population operators
  reject it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import sym_eigen

GAUSSIAN = "gaussian"
UNIFORM_BOX = "uniform_box"
REGULARIZED = "regularized"
LINEAR = "linear"


@dataclass(frozen=True)
class Kernel:
    family: str
    nu: float = 1.0
    offset: float = 0.0
    base: "Kernel | None" = None

    def __post_init__(self) -> None:
        if self.family in (GAUSSIAN, UNIFORM_BOX) and self.nu <= 0:
            raise ValueError("bandwidth nu must be positive")
        if self.family == REGULARIZED:
            if self.base is None or self.offset < 0:
                raise ValueError("regularized kernel needs a base and offset >= 0")
        elif self.family not in (GAUSSIAN, UNIFORM_BOX, LINEAR):
            raise ValueError(f"unknown kernel family {self.family!r}")

    @property
    def bound(self) -> float:
        """Analytic sup of the kernel (b); inf for the linear kernel."""
        if self.family == GAUSSIAN:
            return 1.0 / (math.sqrt(2.0 * math.pi) * self.nu)
        if self.family == UNIFORM_BOX:
            return 1.0 / (2.0 * self.nu)
        if self.family == REGULARIZED:
            return self.base.bound + self.offset
        return math.inf

    @property
    def positive_definite(self) -> bool:
        if self.family == GAUSSIAN:
            return True
        if self.family == REGULARIZED:
            return self.base.positive_definite
        return False

    @property
    def reach(self) -> float:
        """Distance beyond which the kernel is (numerically) zero."""
        if self.family == GAUSSIAN:
            return 8.0 * self.nu
        if self.family == UNIFORM_BOX:
            return self.nu
        if self.family == REGULARIZED:
            return math.inf if self.offset > 0 else self.base.reach
        return math.inf


def gaussian_kernel(nu: float) -> Kernel:
    return Kernel(family=GAUSSIAN, nu=nu)


def box_kernel(nu: float) -> Kernel:
    return Kernel(family=UNIFORM_BOX, nu=nu)


def regularized(base: Kernel, offset: float) -> Kernel:
    return Kernel(family=REGULARIZED, nu=base.nu, offset=offset, base=base)


def linear_kernel() -> Kernel:
    return Kernel(family=LINEAR)


def kernel_eval(kernel: Kernel, x, y):
    """Evaluate k(x, y) elementwise; accepts scalars or arrays."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if kernel.family == GAUSSIAN:
        out = np.exp(-((x - y) ** 2) / (2.0 * kernel.nu**2)) / (
            math.sqrt(2.0 * math.pi) * kernel.nu
        )
    elif kernel.family == UNIFORM_BOX:
        out = (np.abs(x - y) <= kernel.nu) / (2.0 * kernel.nu)
    elif kernel.family == REGULARIZED:
        out = kernel_eval(kernel.base, x, y) + kernel.offset
    else:
        out = x * y
    return out if out.ndim else float(out)


def kernel_cross(kernel: Kernel, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Matrix k(x_i, y_j), without the 1/n scaling."""
    return kernel_eval(kernel, np.asarray(x)[:, None], np.asarray(y)[None, :])


def kernel_matrix(kernel: Kernel, points) -> np.ndarray:
    """A_ij = k(x_i, x_j) / n for 1-D points or 2-D rows.

    2-D inputs use the product form exp(-||x-x'||^2/(2 nu^2)) / (2 pi nu^2)
    (gaussian family only, optionally regularized).
    """
    pts = np.asarray(points, dtype=float)
    n = pts.shape[0]
    if n < 1:
        raise ValueError("need at least one point")
    if pts.ndim == 1:
        a = kernel_cross(kernel, pts, pts)
    else:
        sq = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=-1)
        base = kernel.base if kernel.family == REGULARIZED else kernel
        if base.family != GAUSSIAN:
            raise ValueError("multidimensional points need a gaussian kernel")
        d = pts.shape[1]
        norm = (2.0 * math.pi * base.nu**2) ** (d / 2.0)
        a = np.exp(-sq / (2.0 * base.nu**2)) / norm
        if kernel.family == REGULARIZED:
            a = a + kernel.offset
    return a / n


def psd_check(kernel: Kernel, sample_points, tolerance: float = 1e-10) -> tuple[bool, float]:
    """Check positive semidefiniteness of the kernel matrix on sample points.

    Returns (lambda_min >= -tolerance, lambda_min).
    """
    pts = np.asarray(sample_points, dtype=float)
    if pts.shape[0] < 2:
        raise ValueError("need at least two sample points")
    eig = sym_eigen(kernel_matrix(kernel, pts))
    lam_min = float(eig.values[-1])
    return lam_min >= -tolerance, lam_min
