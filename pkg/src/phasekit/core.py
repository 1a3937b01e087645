"""Shared value types: model constants, planar paths, fringe patterns, quantization problems.

Everything here is immutable once built. Coordinates are planar; a 1-D
problem lives on the x axis.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from .errors import ValidationError


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise ValidationError(name, f"must be finite and > 0, got {value!r}")
    return value


def as_point(xy, name: str = "point") -> np.ndarray:
    """Coerce a 2-sequence into a read-only float point, rejecting non-finite input."""
    arr = np.array(xy, dtype=float).reshape(-1)
    if arr.shape != (2,):
        raise ValidationError(name, f"must have exactly 2 coordinates, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(name, "coordinates must be finite")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class ModelParams:
    """Constants entering every phase integral and quantization condition.

    ``kappa`` is the action scale of the amplitude rule. It is never fixed to
    hbar here; the fitting pipeline recovers it from fringes.
    """

    kappa: float = 1.0
    mass: float = 1.0
    charge: float = 1.0
    coulomb_constant: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kappa", _positive("kappa", self.kappa))
        object.__setattr__(self, "mass", _positive("mass", self.mass))
        object.__setattr__(
            self, "coulomb_constant", _positive("coulomb_constant", self.coulomb_constant)
        )
        charge = float(self.charge)
        if not math.isfinite(charge):
            raise ValidationError("charge", "must be finite")
        object.__setattr__(self, "charge", charge)

    def replace(self, **changes) -> "ModelParams":
        return ModelParams(**{**self.as_dict(), **changes})

    def as_dict(self) -> dict[str, float]:
        return {
            "kappa": self.kappa,
            "mass": self.mass,
            "charge": self.charge,
            "coulomb_constant": self.coulomb_constant,
        }


@dataclass(frozen=True, eq=False)
class Path:
    """Ordered planar polyline traversed at constant momentum magnitude.

    The momentum points along the local segment tangent. A single vertex is
    the degenerate zero-length path; otherwise every segment must have
    positive length.
    """

    vertices: np.ndarray
    momentum: float = 0.0

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim == 1 and v.size == 2:
            v = v.reshape(1, 2)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 1:
            raise ValidationError("vertices", f"need an (n >= 1, 2) array, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValidationError("vertices", "coordinates must be finite")
        if v.shape[0] > 1 and np.any(np.hypot(*np.diff(v, axis=0).T) == 0.0):
            raise ValidationError("vertices", "consecutive vertices must be distinct")
        p = float(self.momentum)
        if not math.isfinite(p) or p < 0.0:
            raise ValidationError("momentum", f"must be finite and >= 0, got {p!r}")
        v.flags.writeable = False
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "momentum", p)

    @property
    def start(self) -> np.ndarray:
        return self.vertices[0]

    @property
    def end(self) -> np.ndarray:
        return self.vertices[-1]

    @property
    def segments(self) -> int:
        return self.vertices.shape[0] - 1

    def final_tangent(self) -> np.ndarray:
        if self.segments == 0:
            raise ValidationError("path", "a single-vertex path has no tangent")
        d = self.vertices[-1] - self.vertices[-2]
        return d / math.hypot(*d)

    def with_end(self, end) -> "Path":
        """Copy of this path with the final vertex moved to ``end``."""
        v = self.vertices.copy()
        v[-1] = end
        return Path(v, self.momentum)

    def reversed(self) -> "Path":
        return Path(self.vertices[::-1].copy(), self.momentum)

    def then(self, other: "Path") -> "Path":
        """Concatenate ``other`` onto this path; its first vertex must equal our last."""
        if not np.array_equal(self.end, other.start):
            raise ValidationError("path", "concatenation point does not coincide")
        return Path(np.vstack([self.vertices, other.vertices[1:]]), self.momentum)


def arc_length(path: Path) -> float:
    """Sum of Euclidean segment lengths (0 for a single vertex)."""
    if path.segments == 0:
        return 0.0
    d = np.diff(path.vertices, axis=0)
    return float(np.sum(np.hypot(d[:, 0], d[:, 1])))


@dataclass(frozen=True, eq=False)
class FringePattern:
    """Sampled intensity over a screen coordinate plus what generated it."""

    screen_coords: np.ndarray
    intensities: np.ndarray
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        x = np.array(self.screen_coords, dtype=float)
        w = np.array(self.intensities, dtype=float)
        if x.ndim != 1 or w.shape != x.shape:
            raise ValidationError("intensities", "must match screen_coords in length")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(w))):
            raise ValidationError("intensities", "all values must be finite")
        if x.size > 1 and np.any(np.diff(x) <= 0.0):
            raise ValidationError("screen_coords", "must be strictly increasing")
        x.flags.writeable = False
        w.flags.writeable = False
        object.__setattr__(self, "screen_coords", x)
        object.__setattr__(self, "intensities", w)
        object.__setattr__(self, "metadata", dict(self.metadata))

    def __len__(self):
        return self.screen_coords.size


class Rule(enum.Enum):
    """Which Bohr-Sommerfeld condition fixes the action: 2*pi*kappa*(n + offset)."""

    INTEGER = "integer"
    HALF_INTEGER = "half-integer"

    @property
    def offset(self) -> float:
        return 0.0 if self is Rule.INTEGER else 0.5


@dataclass(frozen=True)
class QuantizationProblem:
    potential: Any
    rule: Rule = Rule.HALF_INTEGER
    level: int = 0

    def __post_init__(self):
        rule = Rule(self.rule)
        if isinstance(self.level, bool) or int(self.level) != self.level or self.level < 0:
            raise ValidationError("level", f"must be a nonnegative integer, got {self.level!r}")
        object.__setattr__(self, "rule", rule)
        object.__setattr__(self, "level", int(self.level))
