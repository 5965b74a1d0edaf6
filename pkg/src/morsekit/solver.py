"""Bound states of the 1-D Schrodinger equation in a Morse well.

Primary route: classical 4th-order Runge-Kutta shooting for
psi'' = (2 m / hbar^2) (V(x) - E) psi, launched from the left boundary with
psi(x_min) = 0 and a small positive slope.  Trial solutions diverge in the
forbidden region; eigenvalues are bracketed by counting sign changes over an
energy ladder and refined by bisecting on the sign of the terminal value.

Independent cross-check route: a symmetric tridiagonal finite-difference
Hamiltonian on the same grid, diagonalized by Sturm-sequence bisection.  The
two routes share nothing but the potential, which is the point.

Because the equation is linear, one RK4 step is a 2x2 matrix acting on
(psi, psi'); the matrix entries depend only on the step size and on
k = (2 m / hbar^2)(V - E) at the step start, midpoint, and end.  This lets the
energy-ladder scan run vectorized over trial energies while bisection uses a
plain scalar loop, with identical arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable

import numpy as np
from numpy.typing import NDArray

from .potential import MorsePotential, analytic_spectrum, evaluate_potential
from .quadrature import simpson

__all__ = [
    "Grid",
    "GridWavefunction",
    "BoundState",
    "ShootingOptions",
    "TrialIntegration",
    "NoSuchBoundState",
    "NoConvergence",
    "GridTooCoarse",
    "ZeroFunction",
    "integrate_trial",
    "find_bound_state",
    "all_bound_states",
    "domain_for_level",
    "normalize",
    "fd_reference_spectrum",
    "fd_reference_states",
]

# Divergence guard: once |psi| or |psi'| exceeds this, the trial solution is
# clamped to the diverging sign and integration stops early.
_CLAMP = 1e100

# Energy-ladder scan used for eigenvalue bracketing: 400 uniform steps from
# just above the well bottom to just below the dissociation threshold.
_SCAN_STEPS = 400
_SCAN_FLOOR_SHAVE = 1e-6
_SCAN_CEILING = -1e-6


class NoSuchBoundState(Exception):
    """The requested level does not exist on the integration domain."""


class NoConvergence(Exception):
    """Bisection exhausted its iteration budget."""


class GridTooCoarse(Exception):
    """The finite-difference Hamiltonian has too few negative eigenvalues."""


class ZeroFunction(Exception):
    """Cannot normalize a function whose samples are all (numerically) zero."""


@dataclass(frozen=True)
class Grid:
    """Uniform spatial grid on [x_min, x_max] with spacing h.

    x_max is snapped to x_min + (n_points - 1) * h so the grid is exactly
    uniform; n_points must come out to at least 16.
    """

    x_min: float
    x_max: float
    h: float
    n_points: int = field(init=False)

    def __post_init__(self) -> None:
        if self.x_min < 0.0:
            raise ValueError(f"x_min must be >= 0, got {self.x_min}")
        if not (self.h > 0.0):
            raise ValueError(f"grid spacing must be positive, got {self.h}")
        if not (self.x_max > self.x_min):
            raise ValueError(f"need x_max > x_min, got [{self.x_min}, {self.x_max}]")
        n = int(round((self.x_max - self.x_min) / self.h)) + 1
        if n < 16:
            raise ValueError(f"grid needs at least 16 points, got {n}")
        object.__setattr__(self, "n_points", n)
        object.__setattr__(self, "x_max", self.x_min + (n - 1) * self.h)

    def xs(self) -> NDArray[np.float64]:
        """Sample positions, length n_points."""
        return self.x_min + self.h * np.arange(self.n_points)

    def half_step_xs(self) -> NDArray[np.float64]:
        """Positions at half-step resolution (integrator stencil), length 2*n_points - 1."""
        return self.x_min + (self.h / 2.0) * np.arange(2 * self.n_points - 1)


def _default_grid() -> Grid:
    return Grid(x_min=0.0, x_max=12.0, h=1e-3)


@dataclass(frozen=True)
class GridWavefunction:
    """Real-valued function sampled on a grid.  Values are frozen after construction."""

    grid: Grid
    values: NDArray[np.float64]
    normalized: bool = False

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=np.float64, copy=True)
        if arr.ndim != 1 or arr.size != self.grid.n_points:
            raise ValueError(
                f"values must be 1-D with {self.grid.n_points} samples, got shape {arr.shape}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        if self.normalized:
            nrm = simpson(arr * arr, self.grid.h)
            if abs(nrm - 1.0) > 1e-6:
                raise ValueError(f"claimed normalized but Simpson norm^2 is {nrm!r}")


@dataclass(frozen=True)
class BoundState:
    """A converged eigenpair; the wavefunction is tail-cut, sign-fixed, and normalized."""

    n: int
    energy: float
    wavefunction: GridWavefunction
    potential: MorsePotential

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"level index must be >= 0, got {self.n}")
        if not (self.energy < 0.0):
            raise ValueError(f"bound energy must be negative, got {self.energy}")


@dataclass(frozen=True)
class ShootingOptions:
    """Solver knobs.

    tolerance is a bracket-width target scaled by max(1, |E|); slope_seed is
    the initial psi' at the left wall.  With adaptive_domain the grid for
    level n is extended to x0 + max(10, 8/kappa), where kappa is the decay
    rate sqrt(2 m |E_n|)/hbar taken from the closed-form energy estimate, so
    weakly bound levels get the room their tails need.
    """

    tolerance: float = 1e-9
    max_iterations: int = 200
    slope_seed: float = 1e-6
    grid: Grid = field(default_factory=_default_grid)
    adaptive_domain: bool = False

    def __post_init__(self) -> None:
        if not (self.tolerance > 0.0):
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.slope_seed == 0.0:
            raise ValueError("slope seed must be nonzero")


@dataclass(frozen=True)
class TrialIntegration:
    """Raw shooting output at one trial energy.

    node_count is the number of interior sign changes of the integrated
    samples; a clamped divergent tail keeps its sign, so it contributes at
    most the one genuine crossing that signals an eigenvalue has been passed.
    stop_index is the last genuinely integrated sample (clamp fill begins
    after it); terminal_value keeps the diverging sign when clamped.
    """

    samples: NDArray[np.float64]
    node_count: int
    terminal_value: float
    stop_index: int

    def __post_init__(self) -> None:
        arr = np.array(self.samples, dtype=np.float64, copy=True)
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)


def _rk4_step_coefficients(
    p: MorsePotential, energy: float, grid: Grid
) -> tuple[NDArray, NDArray, NDArray, NDArray]:
    """Per-step 2x2 propagator entries for RK4 on (psi, psi').

    For the linear system y' = A(x) y with A = [[0, 1], [k, 0]], the classical
    RK4 update is y_{i+1} = M_i y_i with, writing k1/k2/k3 for k at the step
    start/midpoint/end:

        m00 = 1 + h^2 (k1 + 2 k2)/6 + h^4 k1 k2 / 24
        m01 = h + h^3 k2 / 6
        m10 = h (k1 + 4 k2 + k3)/6 + h^3 (k1 k2 + k2 k3)/12
        m11 = 1 + h^2 (2 k2 + k3)/6 + h^4 k2 k3 / 24
    """
    g = 2.0 * p.mass / (p.hbar * p.hbar)
    k = g * (evaluate_potential(p, grid.half_step_xs()) - energy)
    k1 = k[0:-2:2]
    k2 = k[1::2]
    k3 = k[2::2]
    h = grid.h
    h2_6 = h * h / 6.0
    h4_24 = h ** 4 / 24.0
    k12 = k1 * k2
    k23 = k2 * k3
    m00 = 1.0 + h2_6 * (k1 + 2.0 * k2) + h4_24 * k12
    m01 = h + (h * h2_6) * k2
    m10 = (h / 6.0) * (k1 + 4.0 * k2 + k3) + (h ** 3 / 12.0) * (k12 + k23)
    m11 = 1.0 + h2_6 * (2.0 * k2 + k3) + h4_24 * k23
    return m00, m01, m10, m11


def integrate_trial(
    p: MorsePotential,
    energy: float,
    grid: Grid | None = None,
    slope_seed: float = 1e-6,
) -> TrialIntegration:
    """Shoot one trial solution from the left wall and record everything.

    psi(x_min) = 0, psi'(x_min) = slope_seed.  Requires energy < 0.  If the
    solution exceeds the divergence guard the remaining samples are clamped
    to the diverging sign and integration stops early.
    """
    if not (energy < 0.0):
        raise ValueError(f"trial energy must be negative, got {energy}")
    if grid is None:
        grid = _default_grid()
    m00, m01, m10, m11 = (m.tolist() for m in _rk4_step_coefficients(p, energy, grid))
    psi = 0.0
    dpsi = float(slope_seed)
    samples = [0.0]
    nodes = 0
    prev = 0
    stop = grid.n_points - 1
    clipped = False
    for a, b, c, d in zip(m00, m01, m10, m11):
        psi, dpsi = a * psi + b * dpsi, c * psi + d * dpsi
        samples.append(psi)
        s = 1 if psi > 0.0 else (-1 if psi < 0.0 else 0)
        if s and prev and s != prev:
            nodes += 1
        if s:
            prev = s
        if abs(psi) > _CLAMP or abs(dpsi) > _CLAMP:
            stop = len(samples) - 1
            clipped = True
            break
    if clipped:
        sign_src = psi if psi != 0.0 else dpsi
        fill = math.copysign(_CLAMP, sign_src)
        samples.extend([fill] * (grid.n_points - len(samples)))
    return TrialIntegration(
        samples=np.asarray(samples, dtype=np.float64),
        node_count=nodes,
        terminal_value=float(samples[-1]),
        stop_index=stop,
    )


def _propagate_scalar(
    p: MorsePotential, energy: float, grid: Grid, slope_seed: float
) -> tuple[int, float]:
    """Node count and terminal value only; the bisection hot path."""
    m00, m01, m10, m11 = (m.tolist() for m in _rk4_step_coefficients(p, energy, grid))
    psi = 0.0
    dpsi = float(slope_seed)
    nodes = 0
    prev = 0
    for a, b, c, d in zip(m00, m01, m10, m11):
        psi, dpsi = a * psi + b * dpsi, c * psi + d * dpsi
        if psi > 0.0:
            if prev < 0:
                nodes += 1
            prev = 1
        elif psi < 0.0:
            if prev > 0:
                nodes += 1
            prev = -1
        if psi > _CLAMP or psi < -_CLAMP or dpsi > _CLAMP or dpsi < -_CLAMP:
            sign_src = psi if psi != 0.0 else dpsi
            return nodes, math.copysign(_CLAMP, sign_src)
    return nodes, psi


def _propagate_batch(
    p: MorsePotential, energies: NDArray, grid: Grid, slope_seed: float
) -> tuple[NDArray, NDArray]:
    """Node counts and terminal values for a whole vector of trial energies.

    Columns that hit the divergence guard are clipped to +-_CLAMP; in the
    forbidden region the clipped pair keeps its sign, so node counts freeze
    exactly as in the scalar path.
    """
    e = np.asarray(energies, dtype=np.float64)
    g = 2.0 * p.mass / (p.hbar * p.hbar)
    gv = (g * evaluate_potential(p, grid.half_step_xs())).tolist()
    ge = g * e
    h = grid.h
    h2_6 = h * h / 6.0
    h4_24 = h ** 4 / 24.0
    h3_6 = h ** 3 / 6.0
    h_6 = h / 6.0
    h3_12 = h ** 3 / 12.0
    psi = np.zeros(e.shape)
    dpsi = np.full(e.shape, float(slope_seed))
    prev = np.zeros(e.shape, dtype=np.int8)
    nodes = np.zeros(e.shape, dtype=np.int64)
    for i in range(grid.n_points - 1):
        k1 = gv[2 * i] - ge
        k2 = gv[2 * i + 1] - ge
        k3 = gv[2 * i + 2] - ge
        k12 = k1 * k2
        k23 = k2 * k3
        m00 = 1.0 + h2_6 * (k1 + 2.0 * k2) + h4_24 * k12
        m01 = h + h3_6 * k2
        m10 = h_6 * (k1 + 4.0 * k2 + k3) + h3_12 * (k12 + k23)
        m11 = 1.0 + h2_6 * (2.0 * k2 + k3) + h4_24 * k23
        psi, dpsi = m00 * psi + m01 * dpsi, m10 * psi + m11 * dpsi
        np.clip(psi, -_CLAMP, _CLAMP, out=psi)
        np.clip(dpsi, -_CLAMP, _CLAMP, out=dpsi)
        s = (psi > 0.0).astype(np.int8) - (psi < 0.0).astype(np.int8)
        nodes += (s * prev) < 0
        np.copyto(prev, s, where=s != 0)
    return nodes, psi


@dataclass(frozen=True)
class _EnergyScan:
    energies: NDArray
    node_counts: NDArray
    terminals: NDArray


def _scan_ladder(p: MorsePotential, grid: Grid, options: ShootingOptions) -> _EnergyScan:
    floor = -p.depth * (1.0 - _SCAN_FLOOR_SHAVE)
    if floor >= _SCAN_CEILING:
        empty = np.array([])
        return _EnergyScan(empty, np.array([], dtype=np.int64), empty)
    ladder = np.linspace(floor, _SCAN_CEILING, _SCAN_STEPS + 1)
    nodes, terminals = _propagate_batch(p, ladder, grid, options.slope_seed)
    return _EnergyScan(ladder, nodes, terminals)


def _grid_for_state(p: MorsePotential, n: int, options: ShootingOptions) -> Grid:
    if not options.adaptive_domain:
        return options.grid
    levels = analytic_spectrum(p)
    if n >= len(levels):
        return options.grid
    kappa = math.sqrt(2.0 * p.mass * abs(levels[n])) / p.hbar
    if kappa == 0.0:
        return options.grid
    return Grid(options.grid.x_min, p.x0 + max(10.0, 8.0 / kappa), options.grid.h)


def domain_for_level(
    p: MorsePotential, n: int, options: ShootingOptions | None = None
) -> Grid:
    """Grid the adaptive-domain policy would pick for level n.

    Shallow levels leak far into the outer tail, so the domain stretches as
    the estimated decay length grows.  Falls back to the configured grid when
    the analytic estimate has no such level.  Useful for putting several
    levels of one well on a single common grid: take the domain of the
    highest level wanted.
    """
    if options is None:
        options = ShootingOptions()
    return _grid_for_state(p, n, replace(options, adaptive_domain=True))


def _tail_cut_index(samples: NDArray, stop_index: int) -> int:
    """Index of the last local minimum of |psi| before the terminal blow-up.

    Found by locating the final non-decreasing run of |psi|; if that run is
    not a material blow-up (less than a decade of growth) nothing is cut.
    """
    a = np.abs(samples[: stop_index + 1])
    if a.size < 3:
        return stop_index
    decreases = np.nonzero(np.diff(a) < 0.0)[0]
    if decreases.size == 0:
        return stop_index
    j = int(decreases[-1]) + 1
    if j >= stop_index or a[stop_index] <= 10.0 * a[j]:
        return stop_index
    return j


def _count_sign_changes(values: NDArray) -> int:
    v = np.asarray(values)
    s = np.sign(v[v != 0.0])
    if s.size < 2:
        return 0
    return int(np.count_nonzero(s[1:] != s[:-1]))


def _trim_boundary_zero(values: NDArray) -> NDArray:
    """Drop the trailing stretch that is numerically zero next to the peak.

    When the domain wall sits close to the outer turning point the converged
    trial already ends near zero and there is no blow-up to cut.  Rounding
    noise can then push the last few samples through zero; crossings in that
    tiny-amplitude stretch are wall artifacts, not interior nodes.
    """
    a = np.abs(values)
    if a.size == 0:
        return values
    peak = float(a.max())
    if peak == 0.0:
        return values
    keep = np.nonzero(a > 1e-6 * peak)[0]
    if keep.size == 0:
        return values[:0]
    return values[: int(keep[-1]) + 1]


def _first_peak_is_negative(values: NDArray) -> bool:
    """Sign convention test: the first interior magnitude peak should be positive."""
    a = np.abs(values)
    interior = (a[1:-1] >= a[:-2]) & (a[1:-1] > a[2:]) & (a[1:-1] > 0.0)
    idx = np.nonzero(interior)[0]
    peak = int(idx[0]) + 1 if idx.size else int(np.argmax(a))
    return bool(values[peak] < 0.0)


def normalize(w: GridWavefunction) -> GridWavefunction:
    """Scale to unit Simpson norm and fix the overall sign.

    The sign convention makes the first magnitude peak (scanning from x_min)
    positive, so repeated solves of the same state agree.  Raises
    ZeroFunction when every sample is numerically zero (max |psi| < 1e-300,
    or so small that the squared samples underflow).
    """
    v = w.values
    peak = float(np.max(np.abs(v)))
    if not np.isfinite(peak) or peak < 1e-300:
        raise ZeroFunction(f"max |psi| = {peak!r}; nothing to normalize")
    scaled = v / peak
    nrm2 = simpson(scaled * scaled, w.grid.h)
    if nrm2 <= 0.0:
        raise ZeroFunction("squared samples underflow to a zero norm")
    out = scaled / math.sqrt(nrm2)
    if _first_peak_is_negative(out):
        out = -out
    return GridWavefunction(grid=w.grid, values=out, normalized=True)


def find_bound_state(
    p: MorsePotential,
    n: int,
    options: ShootingOptions | None = None,
    *,
    _scan_cache: dict | None = None,
) -> BoundState:
    """Locate the n-th bound level by node-count bracketing plus sign bisection.

    The energy ladder scan gives a bracket in which the trial node count
    steps from n to n+1; inside it the terminal value changes sign exactly
    once, at the eigenvalue, and bisection on that sign converges to it.
    Raises NoSuchBoundState if the scan never reaches n+1 nodes and
    NoConvergence if the iteration budget runs out.
    """
    if n < 0:
        raise ValueError(f"level index must be >= 0, got {n}")
    if options is None:
        options = ShootingOptions()
    grid = _grid_for_state(p, n, options)
    if _scan_cache is not None and grid in _scan_cache:
        scan = _scan_cache[grid]
    else:
        scan = _scan_ladder(p, grid, options)
        if _scan_cache is not None:
            _scan_cache[grid] = scan
    counts = scan.node_counts
    if counts.size == 0 or counts[-1] < n + 1:
        raise NoSuchBoundState(
            f"well depth {p.depth}: no level n={n} on [{grid.x_min}, {grid.x_max}]"
        )
    k = int(np.argmax(counts >= n + 1))
    if k == 0:
        raise NoSuchBoundState(f"level n={n} fell below the scan floor; deepen the scan")
    lo = float(scan.energies[k - 1])
    hi = float(scan.energies[k])
    c_lo = int(counts[k - 1])
    c_hi = int(counts[k])
    t_lo = float(scan.terminals[k - 1])
    iterations = 0

    # Narrow multi-step cells until the bracket holds exactly the n -> n+1 jump.
    while c_lo < n or c_hi > n + 1:
        iterations += 1
        if iterations > options.max_iterations:
            raise NoConvergence(
                f"node bracketing for n={n} at depth {p.depth} did not isolate a level"
            )
        mid = 0.5 * (lo + hi)
        nodes_mid, t_mid = _propagate_scalar(p, mid, grid, options.slope_seed)
        if nodes_mid <= n:
            lo, c_lo, t_lo = mid, nodes_mid, t_mid
        else:
            hi, c_hi = mid, nodes_mid

    lo_positive = t_lo >= 0.0
    while hi - lo > options.tolerance * max(1.0, abs(0.5 * (lo + hi))):
        iterations += 1
        if iterations > options.max_iterations:
            raise NoConvergence(
                f"bisection for n={n} at depth {p.depth} stalled at width {hi - lo:.3e}"
            )
        mid = 0.5 * (lo + hi)
        _, t_mid = _propagate_scalar(p, mid, grid, options.slope_seed)
        if (t_mid >= 0.0) == lo_positive:
            lo = mid
        else:
            hi = mid

    energy = 0.5 * (lo + hi)
    trial = integrate_trial(p, energy, grid, options.slope_seed)
    cut = _tail_cut_index(trial.samples, trial.stop_index)
    values = trial.samples.copy()
    values[cut + 1 :] = 0.0
    wavefunction = normalize(GridWavefunction(grid=grid, values=values))
    interior_nodes = _count_sign_changes(_trim_boundary_zero(wavefunction.values[1:cut]))
    if interior_nodes != n:
        raise NoConvergence(
            f"converged energy {energy!r} has {interior_nodes} interior nodes, expected {n}"
        )
    return BoundState(n=n, energy=energy, wavefunction=wavefunction, potential=p)


def all_bound_states(
    p: MorsePotential, options: ShootingOptions | None = None
) -> list[BoundState]:
    """Every bound level the domain supports, ascending; stops at the first gap."""
    if options is None:
        options = ShootingOptions()
    cache: dict = {}
    states: list[BoundState] = []
    while True:
        try:
            states.append(
                find_bound_state(p, len(states), options, _scan_cache=cache)
            )
        except NoSuchBoundState:
            return states


# ---------------------------------------------------------------------------
# Independent finite-difference oracle


def _fd_diagonal(p: MorsePotential, grid: Grid) -> tuple[NDArray, float]:
    """Interior-point diagonal of the Dirichlet FD Hamiltonian and hop energy t."""
    t = p.hbar * p.hbar / (2.0 * p.mass * grid.h * grid.h)
    diag = 2.0 * t + evaluate_potential(p, grid.xs()[1:-1])
    return diag, t


def _sturm_counts(diag: NDArray, off_sq: float, sigmas: NDArray) -> NDArray:
    """Number of eigenvalues strictly below each shift, vectorized over shifts.

    Standard LDL^T pivot recurrence q_i = (d_i - sigma) - off^2 / q_{i-1};
    the count of negative pivots equals the count of eigenvalues below sigma.
    Near-zero pivots are replaced by -pivmin, as in the classic bisection codes.
    """
    sig = np.asarray(sigmas, dtype=np.float64)
    pivmin = max(off_sq, 1.0) * 1e-290
    d = diag.tolist()
    q = d[0] - sig
    count = (q < 0.0).astype(np.int64)
    for di in d[1:]:
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        q = (di - sig) - off_sq / q
        count += q < 0.0
    return count


def _tridiag_lowest_eigenvalues(
    diag: NDArray, off_sq: float, k: int, lo: float, hi: float
) -> list[float]:
    """The k lowest eigenvalues in (lo, hi) by ladder-refined Sturm bisection.

    Brackets are refined only far enough for inverse iteration to pick the
    right eigenvalue afterwards; the polish step supplies full precision.
    """
    probes = 63
    los = np.full(k, lo)
    his = np.full(k, hi)
    for _ in range(64):
        widths = his - los
        if np.all(widths <= 1e-8 * np.maximum(1.0, np.abs(los))):
            break
        sig = np.concatenate(
            [np.linspace(los[j], his[j], probes + 2)[1:-1] for j in range(k)]
        )
        counts = _sturm_counts(diag, off_sq, sig).reshape(k, probes)
        for j in range(k):
            cj = counts[j]
            grid_j = sig[j * probes : (j + 1) * probes]
            idx = int(np.searchsorted(cj, j + 1, side="left"))
            if idx == 0:
                his[j] = grid_j[0]
            elif idx == probes:
                los[j] = grid_j[-1]
            else:
                los[j] = grid_j[idx - 1]
                his[j] = grid_j[idx]
    return [float(0.5 * (a + b)) for a, b in zip(los, his)]


def _fd_eigenpairs(
    p: MorsePotential, grid: Grid, k: int
) -> list[tuple[float, NDArray]]:
    """The k lowest FD eigenpairs: Sturm brackets, then inverse iteration.

    Each eigenvector starts from a sine profile with the right nodal count,
    is orthogonalized against the lower states, and its Rayleigh quotient
    replaces the bracketed eigenvalue, giving the matrix eigenvalue to near
    machine precision (the bracket itself is only nanoelectronvolt-grade).
    """
    if k < 1:
        raise ValueError(f"need k >= 1 eigenvalues, got {k}")
    diag, t = _fd_diagonal(p, grid)
    off_sq = t * t
    negatives = int(_sturm_counts(diag, off_sq, np.array([0.0]))[0])
    if negatives < k:
        raise GridTooCoarse(
            f"FD Hamiltonian on [{grid.x_min}, {grid.x_max}] has {negatives} "
            f"negative eigenvalues, need {k}"
        )
    lo = min(float(diag.min()) - 2.0 * t, -p.depth) - 1.0
    bracketed = _tridiag_lowest_eigenvalues(diag, off_sq, k, lo, 0.0)
    m = diag.size
    pairs: list[tuple[float, NDArray]] = []
    basis: list[NDArray] = []
    for j, e in enumerate(bracketed):
        shift = e + 1e-9 * max(1.0, abs(e))
        v = np.sin(np.pi * (j + 1) * np.arange(1, m + 1) / (m + 1))
        v /= np.linalg.norm(v)
        for _ in range(3):
            v = _solve_tridiag_shifted(diag, -t, shift, v)
            for u in basis:
                v = v - (u @ v) * u
            v /= np.linalg.norm(v)
        basis.append(v)
        rayleigh = float(diag @ (v * v) - 2.0 * t * (v[1:] @ v[:-1]))
        pairs.append((rayleigh, v))
    return pairs


def fd_reference_spectrum(p: MorsePotential, grid: Grid, k: int) -> list[float]:
    """The k lowest eigenvalues of the FD Hamiltonian (Dirichlet ends).

    Matrix: diagonal 2t + V(x_i) on interior points, off-diagonal -t, with
    t = hbar^2 / (2 m h^2).  Eigenvalues are bracketed by Sturm-sequence
    bisection and polished by inverse iteration, so the returned values are
    the matrix eigenvalues essentially exactly; no shooting machinery is
    involved.  Raises GridTooCoarse when fewer than k eigenvalues lie below
    zero.
    """
    return [e for e, _ in _fd_eigenpairs(p, grid, k)]


def _solve_tridiag_shifted(
    diag: NDArray, off: float, shift: float, rhs: NDArray
) -> NDArray:
    """Solve (T - shift I) x = rhs for symmetric tridiagonal T, off-diagonal `off`.

    Gaussian elimination with partial pivoting (row swaps create one extra
    superdiagonal), safe for the indefinite shifts inverse iteration needs.
    """
    m = diag.size
    d = (diag - shift).tolist()
    du = [off] * (m - 1)
    dl = [off] * (m - 1)
    du2 = [0.0] * m
    b = rhs.tolist()
    for i in range(m - 1):
        if abs(d[i]) < abs(dl[i]):
            row_i = (d[i], du[i], du2[i])
            d[i], du[i] = dl[i], d[i + 1]
            du2[i] = du[i + 1] if i < m - 2 else 0.0
            dl[i], d[i + 1] = row_i[0], row_i[1]
            if i < m - 2:
                du[i + 1] = row_i[2]
            b[i], b[i + 1] = b[i + 1], b[i]
        if d[i] == 0.0:
            d[i] = 1e-300
        f = dl[i] / d[i]
        d[i + 1] -= f * du[i]
        if i < m - 2:
            du[i + 1] -= f * du2[i]
        b[i + 1] -= f * b[i]
    if d[m - 1] == 0.0:
        d[m - 1] = 1e-300
    x = [0.0] * m
    x[m - 1] = b[m - 1] / d[m - 1]
    if m >= 2:
        x[m - 2] = (b[m - 2] - du[m - 2] * x[m - 1]) / d[m - 2]
    for i in range(m - 3, -1, -1):
        x[i] = (b[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i]
    return np.asarray(x, dtype=np.float64)


def fd_reference_states(
    p: MorsePotential, grid: Grid, k: int
) -> list[tuple[float, GridWavefunction]]:
    """FD eigenpairs with the eigenvectors embedded on the full grid.

    The interior eigenvectors gain zero samples at both Dirichlet ends and
    are normalized with the same Simpson and sign conventions as the
    shooting route, so the two kinds of wavefunction compare directly.
    """
    out: list[tuple[float, GridWavefunction]] = []
    for e, v in _fd_eigenpairs(p, grid, k):
        values = np.zeros(grid.n_points)
        values[1:-1] = v
        out.append((e, normalize(GridWavefunction(grid=grid, values=values))))
    return out
