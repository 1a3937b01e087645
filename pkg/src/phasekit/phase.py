"""Path phases, unit amplitudes and their superposition.

A path of momentum magnitude p in a vector potential A carries the phase

    theta = (p * L + q * integral(A . dl)) / kappa

and the amplitude exp(i * theta). Amplitudes of alternative paths add;
the intensity is the squared modulus of the sum.
"""
from __future__ import annotations

import cmath
import math
from functools import lru_cache
from typing import Sequence

import numpy as np

from .core import ModelParams, Path, arc_length
from .errors import DivergentAverage, EmptyList, MismatchedEndpoints, ValidationError
from .fields import FieldSpec, NoField

QUADRATURE_ORDER = 16
DEFAULT_FD_STEP = 1e-4
ENDPOINT_TOL = 1e-9
DIVERGENCE_TOL = 1e-12
PANEL_RATIO = 1.0
MAX_PANELS = 4096


@lru_cache(maxsize=None)
def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [0, 1]."""
    t, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (t + 1.0), 0.5 * w


def _panels(a: np.ndarray, b: np.ndarray, singular: np.ndarray) -> list[tuple[float, float]]:
    """Split the chord a->b into parameter panels no longer than their distance to any singular point."""
    if singular.shape[0] == 0:
        return [(0.0, 1.0)]
    d = b - a
    length = math.hypot(*d)
    # foot of the perpendicular from each singular point, in chord parameter
    feet = [(float(np.dot(c - a, d)) / (length * length), c) for c in singular]

    def distance(t0, t1):
        best = math.inf
        for foot, c in feet:
            q = a + min(max(foot, t0), t1) * d
            best = min(best, math.hypot(q[0] - c[0], q[1] - c[1]))
        return best

    out = []
    stack = [(0.0, 1.0)]
    while stack:
        t0, t1 = stack.pop()
        if (t1 - t0) * length <= PANEL_RATIO * distance(t0, t1) or len(out) + len(stack) > MAX_PANELS:
            out.append((t0, t1))
        else:
            tm = 0.5 * (t0 + t1)
            stack.extend([(tm, t1), (t0, tm)])
    return out


def line_integral(field: FieldSpec, vertices: np.ndarray, order: int = QUADRATURE_ORDER) -> float:
    """Integral of A . dl along a polyline by composite Gauss-Legendre.

    Each segment is cut into panels whose length does not exceed their
    distance from the field's singular points, and every panel gets an
    ``order``-point rule.
    """
    if vertices.shape[0] < 2 or field.is_null:
        return 0.0
    t, w = gauss_legendre(order)
    singular = field.singular_points()
    total = 0.0
    for a, b in zip(vertices[:-1], vertices[1:]):
        panels = np.array(_panels(a, b, singular))
        t0, t1 = panels[:, 0], panels[:, 1]
        s = t0[:, None] + (t1 - t0)[:, None] * t[None, :]
        pts = a + s[..., None] * (b - a)
        A = field.vector_potential(pts)
        total += float(np.einsum("pkj,j,pk->", A, b - a, (t1 - t0)[:, None] * w[None, :]))
    return total


def action_phase(
    path: Path,
    field: FieldSpec | None = None,
    params: ModelParams | None = None,
    order: int = QUADRATURE_ORDER,
) -> float:
    """Phase (p * L + q * integral(A . dl)) / kappa accumulated along ``path``.

    Raises PathIntersectsSolenoidCore if the path enters a forbidden core.
    """
    field = field if field is not None else NoField()
    params = params if params is not None else ModelParams()
    field.check_path(path.vertices)
    kinetic = path.momentum * arc_length(path)
    magnetic = params.charge * line_integral(field, path.vertices, order) if params.charge else 0.0
    return (kinetic + magnetic) / params.kappa


def amplitude(path: Path, field: FieldSpec | None = None, params: ModelParams | None = None) -> complex:
    return cmath.exp(1j * action_phase(path, field, params))


def superpose(amplitudes: Sequence[complex]) -> complex:
    if len(amplitudes) == 0:
        raise EmptyList()
    total = 0j
    for a in amplitudes:
        total += a
    return total


def intensity(psi: complex) -> float:
    return psi.real * psi.real + psi.imag * psi.imag


def _check_common_endpoints(paths: Sequence[Path]) -> None:
    ref = paths[0]
    for i, path in enumerate(paths[1:], start=1):
        if np.max(np.abs(path.start - ref.start)) > ENDPOINT_TOL:
            raise MismatchedEndpoints(f"path {i} starts away from path 0")
        if np.max(np.abs(path.end - ref.end)) > ENDPOINT_TOL:
            raise MismatchedEndpoints(f"path {i} ends away from path 0")


def average_momentum(
    paths: Sequence[Path], field: FieldSpec | None = None, params: ModelParams | None = None
) -> np.ndarray:
    """Amplitude-weighted mean of the arrival momenta p * t_i.

    The weights are complex, so the result is a complex 2-vector; it is
    returned without projection onto the reals.
    """
    if len(paths) == 0:
        raise EmptyList("paths")
    _check_common_endpoints(paths)
    psis = np.array([amplitude(p, field, params) for p in paths])
    total = psis.sum()
    if abs(total) < DIVERGENCE_TOL:
        raise DivergentAverage(abs(total))
    momenta = np.array([p.momentum * p.final_tangent() for p in paths])
    return (momenta * psis[:, None]).sum(axis=0) / total


def verify_momentum_relation(
    path: Path,
    field: FieldSpec | None = None,
    params: ModelParams | None = None,
    step: float = DEFAULT_FD_STEP,
) -> float:
    """Max-norm residual of -i kappa grad(psi) against (p t + q A) psi at the path end.

    The gradient is a central difference obtained by moving the final vertex
    by +-step along each axis. For smooth fields the residual is O(step**2).
    """
    if not (math.isfinite(step) and step > 0):
        raise ValidationError("step", f"must be finite and > 0, got {step!r}")
    field = field if field is not None else NoField()
    params = params if params is not None else ModelParams()
    end = path.end
    psi = amplitude(path, field, params)
    expected = (path.momentum * path.final_tangent() + params.charge * field.vector_potential(end)) * psi
    residual = 0.0
    for axis in range(2):
        e = np.zeros(2)
        e[axis] = step
        plus = amplitude(path.with_end(end + e), field, params)
        minus = amplitude(path.with_end(end - e), field, params)
        lhs = -1j * params.kappa * (plus - minus) / (2.0 * step)
        residual = max(residual, abs(lhs - expected[axis]))
    return residual
