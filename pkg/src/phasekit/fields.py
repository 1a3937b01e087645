"""Vector-potential descriptors for the q*A term of the path phase.

Each field maps an ``(k, 2)`` array of points to the ``(k, 2)`` array of A at
those points and can veto paths that enter forbidden territory.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import as_point
from .errors import PathIntersectsSolenoidCore, ValidationError


class FieldSpec:
    """Base class. Fields combine with ``+``."""

    def vector_potential(self, points: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def check_path(self, vertices: np.ndarray) -> None:
        """Raise if any segment of the polyline is not admissible for this field."""

    def singular_points(self) -> np.ndarray:
        """Points where A blows up; quadrature panels are graded towards them."""
        return np.empty((0, 2))

    @property
    def is_null(self) -> bool:
        return False

    def __add__(self, other: "FieldSpec") -> "FieldSpec":
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return FieldSum((self, other))

    def describe(self) -> dict:
        return {"type": type(self).__name__}


@dataclass(frozen=True)
class NoField(FieldSpec):
    def vector_potential(self, points):
        return np.zeros_like(np.asarray(points, dtype=float))

    @property
    def is_null(self):
        return True


def segment_distances(vertices: np.ndarray, center: np.ndarray) -> np.ndarray:
    """Shortest distance from ``center`` to each segment of a polyline."""
    a = vertices[:-1]
    d = vertices[1:] - a
    rel = center - a
    dd = np.einsum("ij,ij->i", d, d)
    t = np.clip(np.einsum("ij,ij->i", rel, d) / dd, 0.0, 1.0)
    closest = a + t[:, None] * d
    return np.hypot(*(closest - center).T)


@dataclass(frozen=True, eq=False)
class IdealSolenoid(FieldSpec):
    """Infinitely long thin solenoid along z.

    Outside the core A is azimuthal with magnitude ``flux / (2 pi r)``, so the
    field B vanishes there while any loop around the axis picks up ``flux``.
    Positive flux circulates counter-clockwise.
    """

    center: np.ndarray
    flux: float
    core_radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center, "center"))
        flux = float(self.flux)
        if not math.isfinite(flux):
            raise ValidationError("flux", "must be finite")
        r = float(self.core_radius)
        if not math.isfinite(r) or r <= 0.0:
            raise ValidationError("core_radius", f"must be finite and > 0, got {r!r}")
        object.__setattr__(self, "flux", flux)
        object.__setattr__(self, "core_radius", r)

    def vector_potential(self, points):
        rel = np.asarray(points, dtype=float) - self.center
        r2 = np.einsum("...i,...i->...", rel, rel)
        scale = self.flux / (2.0 * math.pi * r2)
        return np.stack([-rel[..., 1] * scale, rel[..., 0] * scale], axis=-1)

    def singular_points(self):
        return self.center[None, :]

    def check_path(self, vertices):
        if vertices.shape[0] < 2:
            dist = float(np.hypot(*(vertices[0] - self.center)))
        else:
            dist = float(np.min(segment_distances(vertices, self.center)))
        if dist <= self.core_radius:
            raise PathIntersectsSolenoidCore(dist, self.core_radius)

    def describe(self):
        return {
            "type": "IdealSolenoid",
            "center": self.center.tolist(),
            "flux": self.flux,
            "core_radius": self.core_radius,
        }


@dataclass(frozen=True, eq=False)
class GradientField(FieldSpec):
    """Pure-gauge field A = grad(chi).

    ``potential`` and the optional ``gradient`` are called with arrays of shape
    ``(..., 2)``. Without an analytic gradient a fourth-order central
    difference is used.
    """

    potential: Callable[[np.ndarray], np.ndarray]
    gradient: Optional[Callable[[np.ndarray], np.ndarray]] = None
    fd_step: float = 1e-3

    def vector_potential(self, points):
        pts = np.asarray(points, dtype=float)
        if self.gradient is not None:
            return np.asarray(self.gradient(pts), dtype=float)
        out = np.empty_like(pts)
        for axis in range(2):
            h = self.fd_step
            e = np.zeros(2)
            e[axis] = h
            f = self.potential
            out[..., axis] = (
                8.0 * (f(pts + e) - f(pts - e)) - (f(pts + 2 * e) - f(pts - 2 * e))
            ) / (12.0 * h)
        return out


@dataclass(frozen=True, eq=False)
class FieldSum(FieldSpec):
    parts: tuple

    def vector_potential(self, points):
        total = np.zeros_like(np.asarray(points, dtype=float))
        for part in self.parts:
            total = total + part.vector_potential(points)
        return total

    def check_path(self, vertices):
        for part in self.parts:
            part.check_path(vertices)

    def singular_points(self):
        return np.vstack([part.singular_points() for part in self.parts])

    @property
    def is_null(self):
        return all(part.is_null for part in self.parts)

    def describe(self):
        return {"type": "FieldSum", "parts": [p.describe() for p in self.parts]}
