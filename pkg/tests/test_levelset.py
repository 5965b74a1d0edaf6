import math

import numpy as np
import pytest

from morsekit import (
    Classification,
    ModeSpectrum,
    MorsePotential,
    ProductState,
    TwoModeSystem,
    analytic_mode,
    energy_expectation,
    full_ellipse_condition,
    level_set,
    wrap_angle,
)


def _system() -> TwoModeSystem:
    return TwoModeSystem(
        mode1=analytic_mode(MorsePotential(depth=10.0), 1),
        mode2=analytic_mode(MorsePotential(depth=12.0), 2),
    )


def _residual(sys, target, a1, a2):
    rhs = sys.max_energy - target
    return abs(sys.mode1.gap * a1 * a1 + sys.mode2.gap * a2 * a2 - rhs)


# ---------------------------------------------------------------------------
# geometry primitives


def test_wrap_angle_edges():
    assert wrap_angle(math.pi) == math.pi
    assert wrap_angle(-math.pi) == math.pi
    assert wrap_angle(3.0 * math.pi) == pytest.approx(math.pi, abs=1e-12)
    assert wrap_angle(2.0 * math.pi) == pytest.approx(0.0, abs=1e-12)
    assert wrap_angle(-1.5 * math.pi) == pytest.approx(0.5 * math.pi, abs=1e-12)


def test_product_state_wraps_and_exposes_weights():
    s = ProductState(theta1=3.0 * math.pi, theta2=-math.pi)
    assert s.theta1 == pytest.approx(math.pi, abs=1e-12)
    assert s.theta2 == math.pi
    a10, a11, a20, a21 = s.coefficients()
    assert a10 * a10 + a11 * a11 == pytest.approx(1.0, abs=1e-15)
    assert a20 * a20 + a21 * a21 == pytest.approx(1.0, abs=1e-15)


def test_mode_spectrum_invariants():
    with pytest.raises(ValueError):
        ModeSpectrum(e0=-1.0, e1=-2.0, dipole=0.0, label=1)
    with pytest.raises(ValueError):
        ModeSpectrum(e0=-2.0, e1=0.0, dipole=0.0, label=1)
    with pytest.raises(ValueError):
        ModeSpectrum(e0=-2.0, e1=-1.0, dipole=0.0, label=3)
    with pytest.raises(ValueError):
        TwoModeSystem(
            mode1=ModeSpectrum(-2.0, -1.0, 0.0, 1),
            mode2=ModeSpectrum(-2.0, -1.0, 0.0, 2),
            hbar=0.0,
        )


def test_analytic_mode_needs_two_levels():
    with pytest.raises(ValueError, match="need 2"):
        analytic_mode(MorsePotential(depth=3.0), 1)


def test_energy_expectation_frozen_value():
    s = ProductState(theta1=math.pi / 4.0, theta2=0.0)
    assert energy_expectation(_system(), s) == pytest.approx(-11.1567486, abs=1e-6)


def test_system_energy_range():
    sys = _system()
    assert sys.max_energy == pytest.approx(-2.8866536783, abs=1e-9)
    assert sys.min_energy == pytest.approx(-13.6288845594, abs=1e-9)


# ---------------------------------------------------------------------------
# level-set classification


def test_interior_target_is_a_full_ellipse_with_frozen_axes():
    curve = level_set(_system(), -4.0)
    assert curve.classification is Classification.FULL_ELLIPSE
    assert curve.semi_axis_1 == pytest.approx(0.4745303190730713, rel=1e-12)
    assert curve.semi_axis_2 == pytest.approx(0.4382052439703322, rel=1e-12)
    assert len(curve.samples) == 64


def test_low_target_clips_against_the_square():
    curve = level_set(_system(), -11.0)
    assert curve.classification is Classification.CLIPPED_ARCS
    assert curve.semi_axis_1 > 1.0 and curve.semi_axis_2 > 1.0
    assert curve.samples
    assert any(abs(a1) == 1.0 or abs(a2) == 1.0 for a1, a2 in curve.samples)


def test_boundary_targets():
    sys = _system()
    top = level_set(sys, sys.max_energy)
    assert top.classification is Classification.POINT
    assert top.samples == ((0.0, 0.0),)
    assert level_set(sys, sys.max_energy + 0.5).classification is Classification.EMPTY

    bottom = level_set(sys, sys.min_energy)
    assert bottom.classification is Classification.CLIPPED_ARCS
    assert sorted(bottom.samples) == [(-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)]
    below = level_set(sys, sys.min_energy - 0.5)
    assert below.classification is Classification.EMPTY
    assert below.samples == ()


def test_samples_sit_exactly_on_the_curve_inside_the_square():
    sys = _system()
    for target in np.linspace(sys.min_energy, sys.max_energy - 1e-6, 25):
        curve = level_set(sys, float(target))
        assert curve.samples, f"no samples at target {target}"
        for a1, a2 in curve.samples:
            assert abs(a1) <= 1.0 and abs(a2) <= 1.0
            assert _residual(sys, float(target), a1, a2) <= 1e-9


def test_classification_agrees_with_the_ellipse_condition():
    sys = _system()
    for target in np.linspace(sys.min_energy - 1.0, sys.max_energy + 1.0, 40):
        curve = level_set(sys, float(target))
        fits = full_ellipse_condition(sys, float(target))
        if curve.classification is Classification.FULL_ELLIPSE:
            assert fits
        if curve.classification is Classification.CLIPPED_ARCS:
            assert not fits


def test_curves_nest_with_target():
    sys = _system()
    lower = level_set(sys, -5.0)
    higher = level_set(sys, -4.0)
    assert lower.classification is Classification.FULL_ELLIPSE
    assert lower.semi_axis_1 > higher.semi_axis_1
    assert lower.semi_axis_2 > higher.semi_axis_2


def test_sample_budget_floor():
    with pytest.raises(ValueError):
        level_set(_system(), -4.0, n_samples=7)
