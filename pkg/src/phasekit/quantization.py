"""Bohr-Sommerfeld bound states.

A level n is the energy whose closed-orbit action equals 2*pi*kappa*(n + delta),
with delta = 1/2 for a 1-D well traversed out and back and delta = 0 for a
closed orbit. In one dimension the action is

    A(E) = 2 * integral_{x_L}^{x_R} sqrt(2 m (E - V(x))) dx

and the inverse-square-root behaviour of dA/dE at the turning points is
removed by integrating in theta with x = x_c + x_h sin(theta).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import ModelParams, QuantizationProblem, Rule
from .errors import (
    BracketNotFound,
    EnergyBelowMinimum,
    EnergyNotBracketed,
    InvalidCharge,
    NumericalError,
    ValidationError,
    ZeroActionTarget,
)
from .phase import gauss_legendre
from .potentials import CoulombCircular, Harmonic, LinearWell, Potential1D, Tabulated

THETA_NODES = 128
ENERGY_RTOL = 1e-12
CROSSCHECK_RTOL = 1e-10
BRACKET_SEED = 0.125
MAX_EXPANSIONS = 4000


@dataclass(frozen=True)
class EnergyLevel:
    n: int
    energy: float
    action: float
    radius: Optional[float] = None


def bisect(f: Callable[[float], float], lo: float, hi: float, rtol: float = ENERGY_RTOL) -> float:
    """Root of an increasing ``f`` with f(lo) < 0 <= f(hi).

    Stops when the bracket is narrower than ``rtol`` relative to its larger
    endpoint, or when the midpoint can no longer be represented between them.
    """
    for _ in range(2000):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi or hi - lo <= rtol * max(abs(lo), abs(hi)):
            return mid
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    raise NumericalError("bisection did not converge")


def turning_points(potential: Potential1D, E: float, mass: float = 1.0) -> tuple[float, float]:
    """Classical turning points (x_L, x_R) at energy E in the well around the minimum."""
    if isinstance(potential, CoulombCircular):
        raise ValidationError("potential", "a circular orbit has no 1-D turning points")
    if not E > potential.minimum:
        raise EnergyBelowMinimum(E, potential.minimum)
    if isinstance(potential, Harmonic):
        x = math.sqrt(2.0 * E / mass) / potential.omega
        return -x, x
    if isinstance(potential, LinearWell):
        x = E / potential.slope
        return -x, x
    if isinstance(potential, Tabulated):
        return _tabulated_turning_points(potential, E)
    raise ValidationError("potential", f"unsupported potential {type(potential).__name__}")


def _tabulated_turning_points(pot: Tabulated, E: float) -> tuple[float, float]:
    if not E < pot.ceiling:
        raise EnergyNotBracketed(E, pot.ceiling)
    x, v = pot.x, pot.v
    i0 = int(np.argmin(v))
    j = i0 - 1
    while v[j] < E:
        j -= 1
    k = i0 + 1
    while v[k] < E:
        k += 1
    # V is linear on each piece, so the crossing solves exactly
    x_left = x[j] + (E - v[j]) / (v[j + 1] - v[j]) * (x[j + 1] - x[j])
    x_right = x[k - 1] + (E - v[k - 1]) / (v[k] - v[k - 1]) * (x[k] - x[k - 1])
    return float(x_left), float(x_right)


def _circular_orbit_action(params: ModelParams, E: float) -> float:
    if params.charge == 0.0:
        raise InvalidCharge()
    if not E < 0.0:
        raise EnergyNotBracketed(E, 0.0)
    k_q2 = params.coulomb_constant * params.charge**2
    return 2.0 * math.pi * math.sqrt(params.mass * k_q2**2 / (-2.0 * E))


def action_integral(
    potential: Potential1D, params: ModelParams, E: float, nodes: int = THETA_NODES
) -> float:
    """Action over one full period of classical motion at energy E.

    Gauss-Legendre with ``nodes`` points in theta, applied separately between
    any kinks of V so each piece is smooth. For ``CoulombCircular`` this is
    2*pi*r*m*v of the circular orbit with energy E.
    """
    if isinstance(potential, CoulombCircular):
        return _circular_orbit_action(params, E)
    m = params.mass
    x_left, x_right = turning_points(potential, E, m)
    xc = 0.5 * (x_left + x_right)
    xh = 0.5 * (x_right - x_left)
    if xh == 0.0:
        return 0.0
    kinks = potential.breakpoints()
    kinks = kinks[(kinks > x_left) & (kinks < x_right)]
    cuts = np.concatenate(
        [[-0.5 * math.pi], np.arcsin(np.clip((kinks - xc) / xh, -1.0, 1.0)), [0.5 * math.pi]]
    )
    t, w = gauss_legendre(nodes)
    lo, hi = cuts[:-1], cuts[1:]
    theta = lo[:, None] + t[None, :] * (hi - lo)[:, None]
    weights = w[None, :] * (hi - lo)[:, None]
    x = xc + xh * np.sin(theta)
    kinetic = np.maximum(E - potential.value(x, m), 0.0)
    integrand = np.sqrt(2.0 * m * kinetic) * xh * np.cos(theta)
    return 2.0 * float(np.sum(integrand * weights))


def _target_action(problem: QuantizationProblem, params: ModelParams) -> float:
    if problem.rule is Rule.INTEGER and problem.level == 0:
        raise ZeroActionTarget()
    return 2.0 * math.pi * params.kappa * (problem.level + problem.rule.offset)


def quantize_level(
    problem: QuantizationProblem, params: ModelParams, nodes: int = THETA_NODES
) -> EnergyLevel:
    """Energy at which the orbit action hits 2*pi*kappa*(n + delta).

    The bracket grows geometrically upward from the potential minimum and is
    then bisected. A(E) increases with E in a single well, so the root is
    unique.
    """
    target = _target_action(problem, params)
    pot = problem.potential
    if isinstance(pot, CoulombCircular):
        E, r = _solve_circular_orbit(params, target)
        return EnergyLevel(problem.level, E, action_integral(pot, params, E), r)

    def excess(E):
        return action_integral(pot, params, E, nodes) - target

    vmin = pot.minimum
    lo = vmin
    step = BRACKET_SEED * params.kappa
    for _ in range(MAX_EXPANSIONS):
        hi = vmin + step
        if hi >= pot.ceiling:
            hi = float(np.nextafter(pot.ceiling, -np.inf))
            if not (hi > lo and excess(hi) >= 0.0):
                raise BracketNotFound(
                    f"action target {target!r} not reached below the potential ceiling {pot.ceiling!r}"
                )
            break
        if hi > vmin and excess(hi) >= 0.0:
            break
        lo = hi
        step *= 2.0
    else:
        raise BracketNotFound(f"action target {target!r} not bracketed")
    E = bisect(excess, lo, hi)
    return EnergyLevel(problem.level, E, action_integral(pot, params, E, nodes))


def _solve_circular_orbit(params: ModelParams, target: float) -> tuple[float, float]:
    """Energy and radius of the circular Coulomb orbit with action ``target``.

    Unknowns r and v satisfy m v^2 / r = k q^2 / r^2 (force balance) and
    2 pi r m v = target. Substituting v(r) from the first leaves a monotone
    equation in r, solved by bisection.
    """
    if params.charge == 0.0:
        raise InvalidCharge()
    m = params.mass
    k_q2 = params.coulomb_constant * params.charge**2

    def speed(r):
        return math.sqrt(k_q2 / (m * r))

    def excess(r):
        return 2.0 * math.pi * r * m * speed(r) - target

    lo, hi = 1.0, 1.0
    while excess(lo) >= 0.0:
        lo *= 0.5
    while excess(hi) < 0.0:
        hi *= 2.0
    r = bisect(excess, lo, hi, rtol=0.0)
    v = speed(r)
    return 0.5 * m * v * v - k_q2 / r, r


def hydrogen_closed_form(params: ModelParams, n: int) -> float:
    """E_n = -m k^2 q^4 / (2 kappa^2 n^2)."""
    return -params.mass * params.coulomb_constant**2 * params.charge**4 / (
        2.0 * params.kappa**2 * n**2
    )


def hydrogen_circular_levels(params: ModelParams, n_max: int) -> list[EnergyLevel]:
    """Circular-orbit levels n = 1..n_max under the integer rule.

    Each level comes from the numerical orbit solve and must agree with the
    closed form to 1e-10 relative, else NumericalError.
    """
    if params.charge == 0.0:
        raise InvalidCharge()
    if isinstance(n_max, bool) or int(n_max) != n_max or n_max < 1:
        raise ValidationError("n_max", f"must be an integer >= 1, got {n_max!r}")
    levels = []
    for n in range(1, int(n_max) + 1):
        target = 2.0 * math.pi * params.kappa * n
        E, r = _solve_circular_orbit(params, target)
        exact = hydrogen_closed_form(params, n)
        if abs(E - exact) > CROSSCHECK_RTOL * abs(exact):
            raise NumericalError(f"orbit solve for n={n} gave {E!r}, closed form {exact!r}")
        levels.append(EnergyLevel(n, E, target, r))
    return levels
