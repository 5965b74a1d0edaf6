import numpy as np
import pytest

from morsekit import (
    Grid,
    GridMismatch,
    GridWavefunction,
    MorsePotential,
    ShootingOptions,
    dipole_depth_sweep,
    fd_reference_states,
    find_bound_state,
    moment,
    normalize,
    transition_dipole,
)

# Closed-form magnitudes of the 0->1 dipole on the half-line's parent problem
# (generalized-Laguerre eigenfunctions integrated in closed form).  They are
# independent of every solver in this package, so agreement is a real check.
EXACT_DIPOLE_MAGNITUDE = {
    8.0: 0.250000000000,
    10.0: 0.245398335819,
    12.0: 0.237675818828,
    14.0: 0.229951357744,
}


def _normalized_profile(grid, center):
    xs = grid.xs()
    bump = np.exp(-((xs - center) ** 2)) * xs * (grid.x_max - xs)
    return normalize(GridWavefunction(grid=grid, values=bump))


def test_dipole_magnitudes_match_closed_form():
    for depth, exact in EXACT_DIPOLE_MAGNITUDE.items():
        p = MorsePotential(depth=depth)
        cache: dict = {}
        s0 = find_bound_state(p, 0, _scan_cache=cache)
        s1 = find_bound_state(p, 1, _scan_cache=cache)
        d = transition_dipole(s0, s1)
        assert abs(d.value) == pytest.approx(exact, abs=5e-6)
        assert d.quad_error < 1e-8
        assert d.depth == depth


def test_dipole_sign_is_reproducible(c10_states):
    first = transition_dipole(*c10_states)
    cache: dict = {}
    again = transition_dipole(
        find_bound_state(MorsePotential(depth=10.0), 0, _scan_cache=cache),
        find_bound_state(MorsePotential(depth=10.0), 1, _scan_cache=cache),
    )
    assert first.value < 0.0
    assert again.value == pytest.approx(first.value, abs=1e-9)


def test_dipole_requires_levels_zero_and_one(c10_states):
    s0, s1 = c10_states
    with pytest.raises(ValueError):
        transition_dipole(s1, s0)


def test_mismatched_grids_are_rejected():
    wa = _normalized_profile(Grid(0.0, 12.0, 1e-2), 2.0)
    wb = _normalized_profile(Grid(0.0, 10.0, 1e-2), 2.0)
    with pytest.raises(GridMismatch):
        moment(wa, wb, 1)


def test_moment_rejects_unnormalized_input():
    grid = Grid(0.0, 12.0, 1e-2)
    wa = _normalized_profile(grid, 2.0)
    raw = GridWavefunction(grid=grid, values=np.exp(-grid.xs()))
    with pytest.raises(ValueError, match="normalized"):
        moment(wa, raw, 1)
    with pytest.raises(ValueError):
        moment(wa, wa, -1)


def test_zeroth_moment_is_the_overlap(c10_states):
    s0, s1 = c10_states
    assert moment(s0.wavefunction, s0.wavefunction, 0) == pytest.approx(1.0, abs=1e-9)
    assert abs(moment(s0.wavefunction, s1.wavefunction, 0)) < 1e-4


def test_moment_is_symmetric(c10_states):
    s0, s1 = c10_states
    ab = moment(s0.wavefunction, s1.wavefunction, 1)
    ba = moment(s1.wavefunction, s0.wavefunction, 1)
    assert ab == pytest.approx(ba, abs=1e-14)


def test_mean_position_agrees_between_routes(c10_states):
    p = MorsePotential(depth=10.0)
    grid = c10_states[0].wavefunction.grid
    fd = fd_reference_states(p, grid, 2)
    for s, (_, w_fd) in zip(c10_states, fd):
        x_shoot = moment(s.wavefunction, s.wavefunction, 1)
        x_fd = moment(w_fd, w_fd, 1)
        assert abs(x_shoot - x_fd) < 1e-3


def test_sweep_marks_shallow_wells_and_keeps_going():
    entries = dipole_depth_sweep([3.0, 10.0], ShootingOptions(grid=Grid(0.0, 12.0, 2e-3)))
    shallow, deep = entries
    assert shallow.failure == "NoSuchBoundState"
    assert shallow.dipole is None and shallow.ground is None
    assert deep.failure is None
    assert abs(deep.dipole.value) == pytest.approx(
        EXACT_DIPOLE_MAGNITUDE[10.0], abs=5e-5
    )
