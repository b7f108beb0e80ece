"""Finite-dimensional reproducing kernel models.

Four families, each presenting an n-dimensional coordinate space together
with a family of normalized kernel vectors indexed by a domain Omega:

- finite(n): Omega = {1, ..., n}, normalized kernels are the standard basis
  vectors.  Sup-type quantities over Omega are exact maxima over indices.
- hardy(degree, rho): polynomials of degree <= N on the disk of radius
  rho < 1; the kernel at lambda has coordinates (1, conj(lambda), ...,
  conj(lambda)^N) before normalization.
- bergman(degree, rho): same domain, coordinates sqrt(j+1) * conj(lambda)^j.
- fock(degree, radius): entire-function truncation on |lambda| <= R,
  coordinates conj(lambda)^j / sqrt(j!).

Continuous domains are sampled through nested polar grids; estimates built
on them are honest lower bounds for the suprema, never certificates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PointOutOfDomain

DEFAULT_DEGREE = 15
DEFAULT_RHO = 0.95
DEFAULT_FOCK_RADIUS = 3.0

# Base polar grid: 16 angles x 8 radii (plus the origin) at level 0,
# both counts doubling per level so grids are nested as point sets.
BASE_ANGLES = 16
BASE_RADII = 8


@dataclass(frozen=True)
class KernelModel:
    """One reproducing kernel model; construct via the factory functions."""

    kind: str  # "finite" | "hardy" | "bergman" | "fock"
    dimension: int  # coordinate dimension n
    degree: int | None = None  # truncation degree N (continuous kinds)
    radius: float | None = None  # domain radius (rho, or R for fock)

    @property
    def is_finite_kind(self) -> bool:
        return self.kind == "finite"

    def __str__(self) -> str:
        if self.kind == "finite":
            return f"finite:{self.dimension}"
        return f"{self.kind}:{self.degree}:{self.radius:g}"


@dataclass(frozen=True)
class OmegaGrid:
    """An ordered sample of the model domain at a given refinement level."""

    points: tuple
    level: int


def finite(n: int) -> KernelModel:
    """Coordinate model on C^n with standard basis kernels."""
    if int(n) < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    return KernelModel(kind="finite", dimension=int(n))


def _disk_model(kind: str, degree: int, radius: float) -> KernelModel:
    if int(degree) < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    if not (0.0 < float(radius)):
        raise ValueError(f"domain radius must be positive, got {radius}")
    return KernelModel(
        kind=kind, dimension=int(degree) + 1, degree=int(degree),
        radius=float(radius),
    )


def hardy(degree: int = DEFAULT_DEGREE, rho: float = DEFAULT_RHO) -> KernelModel:
    """Truncated Hardy-type model on the disk |lambda| <= rho < 1."""
    if not (0.0 < float(rho) < 1.0):
        raise ValueError(f"rho must lie in (0, 1), got {rho}")
    return _disk_model("hardy", degree, rho)


def bergman(degree: int = DEFAULT_DEGREE, rho: float = DEFAULT_RHO) -> KernelModel:
    """Truncated Bergman-type model on the disk |lambda| <= rho < 1."""
    if not (0.0 < float(rho) < 1.0):
        raise ValueError(f"rho must lie in (0, 1), got {rho}")
    return _disk_model("bergman", degree, rho)


def fock(degree: int = DEFAULT_DEGREE, radius: float = DEFAULT_FOCK_RADIUS) -> KernelModel:
    """Truncated Fock-type model on the disk |lambda| <= R."""
    return _disk_model("fock", degree, radius)


def _raw_kernel(model: KernelModel, lam: complex) -> np.ndarray:
    """Un-normalized kernel coordinates at lam (continuous kinds only)."""
    j = np.arange(model.dimension)
    lbar = np.conj(np.complex128(lam))
    pows = lbar**j
    if model.kind == "hardy":
        return pows
    if model.kind == "bergman":
        return np.sqrt(j + 1.0) * pows
    if model.kind == "fock":
        fact = np.array([math.sqrt(math.factorial(int(k))) for k in j])
        return pows / fact
    raise ValueError(f"unknown model kind {model.kind!r}")


def normalized_kernel(model: KernelModel, point) -> np.ndarray:
    """Unit-norm kernel vector at a domain point.

    For the finite kind, point is a 1-based index into {1, ..., n}; for the
    continuous kinds it is a complex number with |point| <= domain radius.
    Raises PointOutOfDomain otherwise.
    """
    if model.is_finite_kind:
        try:
            i = int(point)
        except (TypeError, ValueError) as exc:
            raise PointOutOfDomain(f"bad index {point!r}") from exc
        if i != point or not (1 <= i <= model.dimension):
            raise PointOutOfDomain(
                f"index {point!r} outside 1..{model.dimension}"
            )
        e = np.zeros(model.dimension, dtype=np.complex128)
        e[i - 1] = 1.0
        return e
    try:
        lam = np.complex128(point)
    except (TypeError, ValueError) as exc:
        raise PointOutOfDomain(f"bad point {point!r}") from exc
    if not np.isfinite(lam.real) or not np.isfinite(lam.imag):
        raise PointOutOfDomain(f"non-finite point {point!r}")
    if abs(lam) > model.radius * (1.0 + 1e-12):
        raise PointOutOfDomain(
            f"|{lam}| = {abs(lam):.6g} exceeds domain radius {model.radius:g}"
        )
    raw = _raw_kernel(model, lam)
    return raw / np.linalg.norm(raw)


def kernel_matrix(model: KernelModel, points) -> np.ndarray:
    """Normalized kernel vectors stacked as columns, one per point."""
    cols = [normalized_kernel(model, p) for p in points]
    return np.column_stack(cols)


def default_grid(model: KernelModel, level: int = 0) -> OmegaGrid:
    """Domain sample at a refinement level.

    Finite kind: all indices 1..n at every level.  Continuous kinds: the
    origin plus a polar mesh of (16 * 2^level) angles by (8 * 2^level) radii
    reaching the domain radius.  Grids are nested: every point of level L
    appears in level L+1.
    """
    if level < 0:
        raise ValueError(f"level must be >= 0, got {level}")
    if model.is_finite_kind:
        return OmegaGrid(points=tuple(range(1, model.dimension + 1)), level=level)
    n_ang = BASE_ANGLES * (2**level)
    n_rad = BASE_RADII * (2**level)
    pts = [complex(0.0, 0.0)]
    angles = 2.0 * np.pi * np.arange(n_ang) / n_ang
    for k in range(1, n_rad + 1):
        r = model.radius * (k / n_rad)
        for th in angles:
            pts.append(complex(r * np.cos(th), r * np.sin(th)))
    return OmegaGrid(points=tuple(pts), level=level)
