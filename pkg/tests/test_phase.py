import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phasekit import (
    DivergentAverage,
    EmptyList,
    GradientField,
    IdealSolenoid,
    MismatchedEndpoints,
    ModelParams,
    NoField,
    Path,
    PathIntersectsSolenoidCore,
    action_phase,
    amplitude,
    average_momentum,
    intensity,
    superpose,
    verify_momentum_relation,
)

from oracles import midpoint_flux, polygon, square, subtended_angle_flux

UNIT = ModelParams()


def test_phase_straight_path():
    path = Path([[0, 0], [1, 0]], 2 * math.pi)
    assert action_phase(path, NoField(), UNIT) == pytest.approx(2 * math.pi, abs=1e-15)


@pytest.mark.parametrize("field", [NoField(), IdealSolenoid((5, 5), 3.0, 0.1)])
def test_phase_single_vertex_is_zero(field):
    assert action_phase(Path([[0.0, 0.0]], 7.0), field, UNIT) == 0.0


def test_phase_square_loop_around_solenoid():
    loop = square(1.0)
    flux = 3.0
    # two independent oracles for the loop integral
    assert subtended_angle_flux(loop, np.zeros(2), flux) == pytest.approx(3.0, abs=1e-12)
    assert midpoint_flux(loop, np.zeros(2), flux) == pytest.approx(3.0, abs=1e-7)
    sol = IdealSolenoid((0, 0), flux, 0.1)
    assert action_phase(Path(loop, 0.0), sol, UNIT) == pytest.approx(3.0, abs=1e-10)


def test_phase_rejects_core_crossing():
    sol = IdealSolenoid((0, 0), 1.0, 0.25)
    with pytest.raises(PathIntersectsSolenoidCore):
        action_phase(Path([[-1, 0.2], [1, 0.2]], 1.0), sol, UNIT)


def test_phase_scales_with_kappa_and_charge():
    path = Path(polygon(8, 2.0)[:6], 1.5)
    sol = IdealSolenoid((0, 0), 1.7, 0.1)
    base = action_phase(path, sol, UNIT)
    assert action_phase(path, sol, UNIT.replace(kappa=2.0)) == pytest.approx(base / 2, rel=1e-14)
    flipped = action_phase(path, sol, UNIT.replace(charge=-1.0))
    kinetic = action_phase(path, NoField(), UNIT)
    assert flipped - kinetic == pytest.approx(-(base - kinetic), rel=1e-13)


@pytest.mark.parametrize(
    "phase, expected",
    [(0.0, 1 + 0j), (math.pi, -1 + 0j), (math.pi / 2, 1j)],
)
def test_amplitude_values(phase, expected):
    path = Path([[0, 0], [1, 0]], phase)
    psi = amplitude(path, NoField(), UNIT)
    assert abs(psi - expected) < 1e-12


def test_superpose_examples():
    assert superpose([1 + 0j, 1 + 0j]) == 2
    assert superpose([1 + 0j, -1 + 0j]) == 0
    assert superpose([1 + 0j, 1j]) == 1 + 1j
    with pytest.raises(EmptyList):
        superpose([])


def test_intensity_examples():
    assert intensity(2 + 0j) == 4
    assert intensity(0j) == 0
    assert intensity(1 + 1j) == 2


def test_average_momentum_single_path():
    path = Path([[0, 0], [3, 0]], 2.0)
    avg = average_momentum([path], NoField(), UNIT)
    assert avg[0] == 2 and avg[1] == 0
    assert avg.dtype.kind == "c"


def test_average_momentum_identical_paths():
    path = Path([[0, 0], [1, 1], [3, 1]], 1.3)
    one = average_momentum([path], NoField(), UNIT)
    two = average_momentum([path, path], NoField(), UNIT)
    assert np.allclose(one, two, rtol=0, atol=1e-15)


def test_average_momentum_two_paths_oracle():
    # both paths end at (1, 1); lengths 2 and 2 + sqrt(2)
    p1 = Path([[0, 0], [0, 1], [1, 1]], 1.0)
    p2 = Path([[0, 0], [1, -1], [1, 1]], 1.0)
    kappa = math.sqrt(2) / (math.pi / 2)
    params = ModelParams(kappa=kappa)
    psi1 = cmath.exp(1j * 2.0 / kappa)
    psi2 = cmath.exp(1j * (2.0 + math.sqrt(2)) / kappa)
    assert cmath.phase(psi2 / psi1) == pytest.approx(math.pi / 2)
    expected = np.array([psi1, psi2]) / (psi1 + psi2)
    got = average_momentum([p1, p2], NoField(), params)
    assert np.allclose(got, expected, rtol=0, atol=1e-12)
    assert abs(got[0].imag) > 0.1  # genuinely complex


def test_average_momentum_errors():
    p1 = Path([[0, 0], [1, 0]], 1.0)
    p2 = Path([[0, 0], [0, 1], [1, 0]], 1.0)
    # lengths 1 and 1 + sqrt(2): choose kappa so they are exactly out of phase
    params = ModelParams(kappa=math.sqrt(2) / math.pi)
    with pytest.raises(DivergentAverage):
        average_momentum([p1, p2], NoField(), params)
    with pytest.raises(MismatchedEndpoints):
        average_momentum([p1, Path([[0, 0], [2, 0]], 1.0)], NoField(), UNIT)
    with pytest.raises(EmptyList):
        average_momentum([], NoField(), UNIT)


def _quadratic_gauge():
    return GradientField(
        lambda p: 0.7 * p[..., 0] ** 2 + 0.4 * p[..., 0] * p[..., 1] - 0.9 * p[..., 1] ** 2,
        lambda p: np.stack(
            [1.4 * p[..., 0] + 0.4 * p[..., 1], 0.4 * p[..., 0] - 1.8 * p[..., 1]], axis=-1
        ),
    )


def test_momentum_relation_straight_path():
    path = Path([[0, 0], [2, 0]], 1.0)
    r1 = verify_momentum_relation(path, NoField(), UNIT, 1e-3)
    r2 = verify_momentum_relation(path, NoField(), UNIT, 5e-4)
    assert r1 < 1e-6
    # leading error p^3 h^2 / 6 for a linear phase
    assert r1 == pytest.approx(1e-6 / 6, rel=1e-3)
    assert r1 / r2 == pytest.approx(4.0, rel=0.01)


def test_momentum_relation_constant_psi():
    path = Path([[0, 0], [1, 1], [2, 0]], 0.0)
    assert verify_momentum_relation(path, NoField(), UNIT, 1e-3) < 1e-14


def test_momentum_relation_gradient_field_order():
    path = Path([[0, 0], [1.0, 0.5], [2.0, 0.2]], 1.2)
    ratio = verify_momentum_relation(path, _quadratic_gauge(), UNIT, 1e-2) / verify_momentum_relation(
        path, _quadratic_gauge(), UNIT, 5e-3
    )
    assert ratio == pytest.approx(4.0, rel=0.1)


def test_momentum_relation_default_step():
    path = Path([[0, 0], [1.0, 0.5], [2.0, 0.2]], 1.2)
    assert verify_momentum_relation(path, _quadratic_gauge(), UNIT) < 1e-6


# ---- properties -----------------------------------------------------------

coords = st.floats(-5, 5)
vertex_lists = st.lists(st.tuples(coords, coords), min_size=1, max_size=10, unique=True)


def _path_or_none(pts, p):
    v = np.array(pts)
    if v.shape[0] > 1 and np.any(np.hypot(*np.diff(v, axis=0).T) < 1e-9):
        return None
    return Path(v, p)


@settings(max_examples=150, deadline=None)
@given(vertex_lists, st.floats(0, 20), st.floats(0.1, 5))
def test_amplitude_unit_modulus(pts, p, kappa):
    path = _path_or_none(pts, p)
    if path is None:
        return
    field = _quadratic_gauge()
    assert abs(abs(amplitude(path, field, ModelParams(kappa=kappa))) - 1.0) < 1e-12


@settings(max_examples=300, deadline=None)
@given(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3))
def test_two_path_intensity_bounded(a, b):
    w = intensity(superpose([cmath.exp(1j * a), cmath.exp(1j * b)]))
    assert -1e-15 <= w <= 4 + 1e-12


@settings(max_examples=100, deadline=None)
@given(vertex_lists, vertex_lists, st.floats(0, 10))
def test_phase_additive_under_concatenation(first, second, p):
    a = _path_or_none(first, p)
    if a is None:
        return
    rest = [tuple(a.end)] + [q for q in second if q != tuple(a.end)]
    b = _path_or_none(rest, p)
    if b is None:
        return
    field = IdealSolenoid((20.0, 20.0), 1.3, 0.5) + _quadratic_gauge()
    whole = action_phase(a.then(b), field, UNIT)
    assert whole == pytest.approx(action_phase(a, field, UNIT) + action_phase(b, field, UNIT), abs=1e-10)


@settings(max_examples=100, deadline=None)
@given(vertex_lists, vertex_lists, st.floats(0.1, 10), st.floats(0.2, 3))
def test_gauge_invariance_of_intensity(mid1, mid2, p, kappa):
    start, end = (-6.0, 0.0), (6.0, 0.0)
    paths = []
    for mid in (mid1, mid2):
        path = _path_or_none([start] + [m for m in mid] + [end], p)
        if path is None:
            return
        paths.append(path)
    params = ModelParams(kappa=kappa)
    plain = intensity(superpose([amplitude(q, NoField(), params) for q in paths]))
    gauged = intensity(superpose([amplitude(q, _quadratic_gauge(), params) for q in paths]))
    assert abs(plain - gauged) < 1e-9


@pytest.mark.parametrize("seed", range(5))
def test_gradient_closed_loop_phase(seed):
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-3, 3, (rng.integers(3, 64), 2))
    loop = Path(np.vstack([pts, pts[:1]]), 0.0)
    assert abs(action_phase(loop, _quadratic_gauge(), UNIT)) < 1e-9


@pytest.mark.parametrize(
    "loop, winding",
    [
        (polygon(16, 1.0), 1),
        (polygon(16, 1.0)[::-1], -1),
        (np.vstack([polygon(16, 1.0), polygon(16, 1.0)[1:]]), 2),
        (square(0.5, center=(3.0, 0.0)), 0),
    ],
)
@pytest.mark.parametrize("q, kappa", [(1.0, 1.0), (-2.0, 0.7)])
def test_solenoid_closed_loop_winding(loop, winding, q, kappa):
    sol = IdealSolenoid((0.0, 0.0), 1.9, 0.2)
    phase = action_phase(Path(loop, 0.0), sol, ModelParams(kappa=kappa, charge=q))
    assert phase == pytest.approx(q * 1.9 / kappa * winding, abs=1e-9)
