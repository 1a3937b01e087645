"""One-dimensional potentials for the bound-state solver."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError


class Potential1D:
    minimum: float = 0.0
    ceiling: float = math.inf

    def value(self, x, mass: float = 1.0):
        raise NotImplementedError

    def breakpoints(self) -> np.ndarray:
        """Abscissae where V is not smooth; quadrature splits there."""
        return np.empty(0)

    def describe(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Harmonic(Potential1D):
    """V = m omega^2 x^2 / 2, with m the particle mass."""

    omega: float

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ValidationError("omega", f"must be finite and > 0, got {self.omega!r}")

    def value(self, x, mass=1.0):
        return 0.5 * mass * self.omega**2 * np.square(x)

    def describe(self):
        return {"harmonic": {"omega": self.omega}}


@dataclass(frozen=True)
class LinearWell(Potential1D):
    """V = slope * |x|."""

    slope: float

    def __post_init__(self):
        if not (math.isfinite(self.slope) and self.slope > 0):
            raise ValidationError("slope", f"must be finite and > 0, got {self.slope!r}")

    def value(self, x, mass=1.0):
        return self.slope * np.abs(x)

    def breakpoints(self):
        return np.zeros(1)

    def describe(self):
        return {"linear-well": {"slope": self.slope}}


@dataclass(frozen=True)
class CoulombCircular(Potential1D):
    """Attractive Coulomb centre for circular orbits; the radial coordinate is r > 0."""

    minimum = -math.inf
    ceiling = 0.0

    def value(self, x, mass=1.0):
        raise ValidationError("potential", "CoulombCircular depends on charge; use the orbit solver")

    def describe(self):
        return {"coulomb-circular": {}}


@dataclass(frozen=True, eq=False)
class Tabulated(Potential1D):
    """Piecewise-linear interpolant through ``(x, V)`` samples."""

    x: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        x = np.array(self.x, dtype=float)
        v = np.array(self.v, dtype=float)
        if x.ndim != 1 or x.size < 3 or v.shape != x.shape:
            raise ValidationError("samples", "need at least 3 (x, V) pairs of equal length")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(v))):
            raise ValidationError("samples", "all values must be finite")
        if np.any(np.diff(x) <= 0):
            raise ValidationError("samples", "x must be strictly increasing")
        x.flags.writeable = False
        v.flags.writeable = False
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "v", v)

    @classmethod
    def from_function(cls, f, lo, hi, n):
        x = np.linspace(lo, hi, n)
        return cls(x, f(x))

    @property
    def minimum(self):
        return float(self.v.min())

    @property
    def ceiling(self):
        return float(min(self.v[0], self.v[-1]))

    def value(self, x, mass=1.0):
        return np.interp(x, self.x, self.v)

    def breakpoints(self):
        return self.x

    def describe(self):
        return {"tabulated": {"x": self.x.tolist(), "V": self.v.tolist()}}
