"""Constant-energy level sets for a pair of independent two-level modes.

Each mode is a Morse well restricted to its lowest two levels; a product
state assigns every mode one rotation angle, with ground/excited weights
cos^2 and sin^2.  Surfaces of constant energy expectation in the plane of
ground-state coefficients (a1, a2) are ellipses

    gap1 * a1^2 + gap2 * a2^2 = e1_top + e2_top - target,

possibly clipped by the physical square |a_i| <= 1.  This module classifies
those curves and samples them with exact residuals.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .potential import MorsePotential, analytic_spectrum

__all__ = [
    "Classification",
    "ModeSpectrum",
    "TwoModeSystem",
    "ProductState",
    "LevelSetCurve",
    "analytic_mode",
    "wrap_angle",
    "energy_expectation",
    "full_ellipse_condition",
    "level_set",
]


class Classification(enum.Enum):
    EMPTY = "Empty"
    POINT = "Point"
    FULL_ELLIPSE = "FullEllipse"
    CLIPPED_ARCS = "ClippedArcs"


@dataclass(frozen=True)
class ModeSpectrum:
    """The two working levels of one mode, plus its transition dipole.

    dipole is signed under the solver convention; a pure-geometry system
    built from closed-form energies may leave it at 0.0, which blocks pulse
    planning but nothing else.
    """

    e0: float
    e1: float
    dipole: float
    label: int

    def __post_init__(self) -> None:
        if not (self.e0 < self.e1 < 0.0):
            raise ValueError(
                f"need e0 < e1 < 0, got e0={self.e0}, e1={self.e1}"
            )
        if self.label not in (1, 2):
            raise ValueError(f"mode label must be 1 or 2, got {self.label}")

    @property
    def gap(self) -> float:
        return self.e1 - self.e0


@dataclass(frozen=True)
class TwoModeSystem:
    """Two independent modes; energies add, operators act factor by factor."""

    mode1: ModeSpectrum
    mode2: ModeSpectrum
    hbar: float = 1.0

    def __post_init__(self) -> None:
        if not (self.hbar > 0.0):
            raise ValueError(f"hbar must be positive, got {self.hbar}")
        for m in (self.mode1, self.mode2):
            if not (m.gap > 0.0):
                raise ValueError(f"mode {m.label} has a non-positive gap")

    @property
    def min_energy(self) -> float:
        return self.mode1.e0 + self.mode2.e0

    @property
    def max_energy(self) -> float:
        return self.mode1.e1 + self.mode2.e1


def analytic_mode(p: MorsePotential, label: int, dipole: float = 0.0) -> ModeSpectrum:
    """ModeSpectrum from the closed-form level formula; needs two bound levels."""
    levels = analytic_spectrum(p)
    if len(levels) < 2:
        raise ValueError(
            f"depth {p.depth} supports {len(levels)} bound level(s); need 2"
        )
    return ModeSpectrum(e0=levels[0], e1=levels[1], dipole=dipole, label=label)


def wrap_angle(theta: float) -> float:
    wrapped = math.fmod(theta, 2.0 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2.0 * math.pi
    elif wrapped > math.pi:
        wrapped -= 2.0 * math.pi
    return wrapped


@dataclass(frozen=True)
class ProductState:
    """One rotation angle per mode, wrapped into (-pi, pi].

    Coefficients are a_i0 = cos(theta_i) on the ground level and
    a_i1 = sin(theta_i) on the excited level, so normalization is automatic.
    """

    theta1: float
    theta2: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta1", wrap_angle(float(self.theta1)))
        object.__setattr__(self, "theta2", wrap_angle(float(self.theta2)))

    def coefficients(self) -> tuple[float, float, float, float]:
        """(a10, a11, a20, a21): ground/excited weights for both modes."""
        return (
            math.cos(self.theta1),
            math.sin(self.theta1),
            math.cos(self.theta2),
            math.sin(self.theta2),
        )


@dataclass(frozen=True)
class LevelSetCurve:
    """A classified constant-energy curve in the (a1, a2) plane.

    semi_axis_1/2 are None only when the target exceeds the maximum energy
    (the defining square root has no real value there).  samples are ordered
    by the ellipse parameter angle and restricted to the unit square.
    """

    target: float
    classification: Classification
    semi_axis_1: float | None
    semi_axis_2: float | None
    samples: tuple[tuple[float, float], ...]


def energy_expectation(sys: TwoModeSystem, s: ProductState) -> float:
    """Sum over modes of cos^2(theta) e0 + sin^2(theta) e1."""
    a10, a11, a20, a21 = s.coefficients()
    return (
        a10 * a10 * sys.mode1.e0
        + a11 * a11 * sys.mode1.e1
        + a20 * a20 * sys.mode2.e0
        + a21 * a21 * sys.mode2.e1
    )


def full_ellipse_condition(sys: TwoModeSystem, target: float) -> bool:
    """True iff the whole ellipse fits inside the unit square.

    Each inequality is exactly "one semi-axis <= 1": the curve stays within
    |a1| <= 1 iff mode1.e0 + mode2.e1 <= target, and within |a2| <= 1 iff
    mode1.e1 + mode2.e0 <= target.
    """
    return (
        sys.mode1.e0 + sys.mode2.e1 <= target
        and sys.mode1.e1 + sys.mode2.e0 <= target
    )


def _clip_unit(v: float) -> float:
    return 1.0 if v > 1.0 else (-1.0 if v < -1.0 else v)


def _ellipse_point(a1_axis: float, a2_axis: float, t: float) -> tuple[float, float]:
    return (_clip_unit(a1_axis * math.cos(t)), _clip_unit(a2_axis * math.sin(t)))


def _crossing_point(
    family: str, t: float, rhs: float, gap1: float, gap2: float
) -> tuple[float, float]:
    """Exact intersection of the ellipse with a square edge, built from the
    defining quadratic so the residual is zero by construction."""
    if family == "a1":
        a2 = math.sqrt((rhs - gap1) / gap2)
        return (
            math.copysign(1.0, math.cos(t)),
            _clip_unit(math.copysign(a2, math.sin(t))),
        )
    a1 = math.sqrt((rhs - gap2) / gap1)
    return (
        _clip_unit(math.copysign(a1, math.cos(t))),
        math.copysign(1.0, math.sin(t)),
    )


def _clipped_samples(
    axis1: float, axis2: float, rhs: float, gap1: float, gap2: float, n_samples: int
) -> tuple[tuple[float, float], ...]:
    """Sample the arcs of the ellipse that lie inside the unit square.

    Cut angles come from the edge crossings of each oversized axis; arcs
    between consecutive cuts are kept when their midpoints are inside the
    square, endpoints are emitted exactly, and the sample budget is split
    across arcs in proportion to parameter length.
    """
    cuts: list[tuple[float, str]] = []
    if axis1 > 1.0:
        a = math.acos(1.0 / axis1)
        for t in (a, math.pi - a, math.pi + a, 2.0 * math.pi - a):
            cuts.append((t, "a1"))
    if axis2 > 1.0:
        b = math.asin(1.0 / axis2)
        for t in (b, math.pi - b, math.pi + b, 2.0 * math.pi - b):
            cuts.append((t, "a2"))
    cuts.sort(key=lambda c: c[0])
    merged: list[tuple[float, str]] = []
    for t, fam in cuts:
        if merged and abs(t - merged[-1][0]) < 1e-9:
            continue
        merged.append((t, fam))
    if len(merged) > 1 and (merged[0][0] + 2.0 * math.pi) - merged[-1][0] < 1e-9:
        merged.pop()
    if not merged:
        # Both axes numerically inside the square: the intersection is the
        # whole curve (possible only within rounding of the full/clipped edge).
        ts = [j * 2.0 * math.pi / n_samples for j in range(n_samples)]
        return tuple(_ellipse_point(axis1, axis2, t) for t in ts)

    two_pi = 2.0 * math.pi
    arcs: list[tuple[float, float, str, str]] = []
    for i, (t_lo, fam_lo) in enumerate(merged):
        t_hi, fam_hi = merged[(i + 1) % len(merged)]
        if (i + 1) == len(merged):
            t_hi += two_pi
        t_mid = 0.5 * (t_lo + t_hi)
        inside = (
            abs(axis1 * math.cos(t_mid)) <= 1.0 + 1e-12
            and abs(axis2 * math.sin(t_mid)) <= 1.0 + 1e-12
        )
        if inside:
            arcs.append((t_lo, t_hi, fam_lo, fam_hi))
    if not arcs:
        return ()

    total = sum(t_hi - t_lo for t_lo, t_hi, _, _ in arcs)
    points: list[tuple[float, float]] = []
    budget = max(n_samples, 2 * len(arcs))
    for t_lo, t_hi, fam_lo, fam_hi in arcs:
        interior = max(0, round(budget * (t_hi - t_lo) / total) - 2)
        points.append(_crossing_point(fam_lo, t_lo, rhs, gap1, gap2))
        for j in range(1, interior + 1):
            t = t_lo + (t_hi - t_lo) * j / (interior + 1)
            points.append(_ellipse_point(axis1, axis2, t))
        points.append(_crossing_point(fam_hi, t_hi, rhs, gap1, gap2))
    return tuple(points)


def level_set(sys: TwoModeSystem, target: float, n_samples: int = 64) -> LevelSetCurve:
    """Classify and sample the constant-energy curve at the given target.

    Empty above the maximum reachable energy and below the minimum; a Point
    at the origin exactly at the maximum; a FullEllipse when both semi-axes
    fit in the unit square; ClippedArcs otherwise, with edge crossings
    emitted exactly.  Every sample satisfies the defining quadratic to
    machine precision and lies in the closed unit square.
    """
    if n_samples < 8:
        raise ValueError(f"need n_samples >= 8, got {n_samples}")
    rhs = sys.max_energy - target
    if rhs < 0.0:
        return LevelSetCurve(target, Classification.EMPTY, None, None, ())
    if rhs == 0.0:
        return LevelSetCurve(target, Classification.POINT, 0.0, 0.0, ((0.0, 0.0),))
    gap1 = sys.mode1.gap
    gap2 = sys.mode2.gap
    axis1 = math.sqrt(rhs / gap1)
    axis2 = math.sqrt(rhs / gap2)
    # Classify through the same energy inequalities as full_ellipse_condition,
    # so the two always agree even when a semi-axis sits within rounding of 1.
    if full_ellipse_condition(sys, target):
        ts = [j * 2.0 * math.pi / n_samples for j in range(n_samples)]
        samples = tuple(_ellipse_point(axis1, axis2, t) for t in ts)
        return LevelSetCurve(
            target, Classification.FULL_ELLIPSE, axis1, axis2, samples
        )
    if target < sys.min_energy:
        return LevelSetCurve(target, Classification.EMPTY, axis1, axis2, ())
    if target == sys.min_energy:
        corners = ((1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0))
        return LevelSetCurve(
            target, Classification.CLIPPED_ARCS, axis1, axis2, corners
        )
    samples = _clipped_samples(axis1, axis2, rhs, gap1, gap2, n_samples)
    return LevelSetCurve(target, Classification.CLIPPED_ARCS, axis1, axis2, samples)
