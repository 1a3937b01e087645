import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phasekit import GradientField, IdealSolenoid, NoField, PathIntersectsSolenoidCore, ValidationError
from phasekit.phase import line_integral

from oracles import polygon, subtended_angle_flux


def chi(p):
    x, y = p[..., 0], p[..., 1]
    return np.sin(x) * np.cos(2 * y) + 0.3 * x**2 * y


def grad_chi(p):
    x, y = p[..., 0], p[..., 1]
    return np.stack([np.cos(x) * np.cos(2 * y) + 0.6 * x * y, -2 * np.sin(x) * np.sin(2 * y) + 0.3 * x**2], axis=-1)


def test_solenoid_tangential_magnitude():
    sol = IdealSolenoid((1.0, -2.0), flux=3.0, core_radius=0.1)
    for r in (0.5, 1.0, 4.0):
        for ang in np.linspace(0, 2 * math.pi, 7):
            rel = r * np.array([math.cos(ang), math.sin(ang)])
            a = sol.vector_potential((sol.center + rel)[None, :])[0]
            assert np.hypot(*a) == pytest.approx(3.0 / (2 * math.pi * r), rel=1e-14)
            assert abs(a @ rel) < 1e-14
            # counter-clockwise for positive flux
            assert rel[0] * a[1] - rel[1] * a[0] > 0


def test_solenoid_rejects_bad_parameters():
    with pytest.raises(ValidationError):
        IdealSolenoid((0, 0), 1.0, 0.0)
    with pytest.raises(ValidationError):
        IdealSolenoid((0, float("inf")), 1.0, 0.1)


def test_solenoid_core_check():
    sol = IdealSolenoid((0, 0), 1.0, 0.2)
    sol.check_path(np.array([[-1.0, 0.5], [1.0, 0.5]]))
    with pytest.raises(PathIntersectsSolenoidCore):
        sol.check_path(np.array([[-1.0, 0.1], [1.0, 0.1]]))
    with pytest.raises(PathIntersectsSolenoidCore):
        sol.check_path(np.array([[0.0, 0.0]]))


def test_numeric_gradient_matches_analytic():
    pts = np.random.default_rng(3).uniform(-3, 3, (50, 2))
    numeric = GradientField(chi).vector_potential(pts)
    assert np.max(np.abs(numeric - grad_chi(pts))) < 1e-10


def test_no_field_is_zero():
    assert not NoField().vector_potential(np.ones((3, 2))).any()


def test_field_sum():
    sol = IdealSolenoid((0, 0), 2.0, 0.1)
    gauge = GradientField(chi, grad_chi)
    both = sol + gauge
    pts = np.array([[1.0, 2.0], [-0.5, 0.7]])
    assert np.allclose(both.vector_potential(pts), sol.vector_potential(pts) + grad_chi(pts), atol=1e-15)
    with pytest.raises(PathIntersectsSolenoidCore):
        both.check_path(np.array([[-1.0, 0.0], [1.0, 0.0]]))


loops = st.lists(
    st.tuples(st.floats(-4, 4), st.floats(-4, 4)), min_size=3, max_size=64, unique=True
)


@settings(max_examples=100, deadline=None)
@given(loops, st.booleans())
def test_gradient_field_loop_integral_vanishes(pts, analytic):
    v = np.array(pts + pts[:1])
    if np.any(np.hypot(*np.diff(v, axis=0).T) < 1e-6):
        return
    field = GradientField(chi, grad_chi if analytic else None)
    assert abs(line_integral(field, v)) < 1e-9


@pytest.mark.parametrize(
    "loop",
    [polygon(4, 1.5), polygon(64, 0.8), polygon(64, 1.0, jitter=0.4, seed=11)],
    ids=["square", "circle64", "irregular64"],
)
def test_solenoid_loop_equals_enclosed_flux(loop):
    sol = IdealSolenoid((0.05, -0.02), 2.5, 0.01)
    oracle = subtended_angle_flux(loop, sol.center, 2.5)
    assert oracle == pytest.approx(2.5, abs=1e-12)
    assert abs(line_integral(sol, loop) - 2.5) < 1e-9
