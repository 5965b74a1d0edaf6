"""Idealized pulse planning between two-mode product states.

Bound states here are real functions, so each mode's state lives on a circle
and every reachable transformation is a plain rotation of its angle.  A plan
is two rotation angles; the pulse translation assumes an ideal resonant
square pulse under the rotating-wave approximation, where driving one mode
at its level gap rotates that mode's angle at a rate set by dipole times
field amplitude (pulse area 2|delta| rotates the angle by |delta|).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .levelset import ProductState, TwoModeSystem, wrap_angle

__all__ = [
    "NotNormalized",
    "ZeroDipole",
    "RotationPlan",
    "Pulse",
    "PulsePlan",
    "rotation_matrix",
    "angles_of",
    "plan_rotation",
    "apply_rotation",
    "plan_pulses",
]

# Below this dipole magnitude a resonant pulse cannot realistically drive the
# transition, so planning refuses rather than emitting absurd durations.
_DIPOLE_FLOOR = 1e-6


class NotNormalized(Exception):
    """Coefficient pair does not lie on the unit circle."""


class ZeroDipole(Exception):
    """A required mode's transition dipole is too small to drive."""


def rotation_matrix(angle: float) -> tuple[tuple[float, float], tuple[float, float]]:
    """2x2 rotation acting on (ground, excited) coefficients."""
    c = math.cos(angle)
    s = math.sin(angle)
    return ((c, -s), (s, c))


@dataclass(frozen=True)
class RotationPlan:
    """Rotation angles for both modes, wrapped into (-pi, pi]; together they
    define the product transformation applied factor by factor."""

    delta1: float
    delta2: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "delta1", wrap_angle(float(self.delta1)))
        object.__setattr__(self, "delta2", wrap_angle(float(self.delta2)))

    def matrices(
        self,
    ) -> tuple[
        tuple[tuple[float, float], tuple[float, float]],
        tuple[tuple[float, float], tuple[float, float]],
    ]:
        return rotation_matrix(self.delta1), rotation_matrix(self.delta2)


@dataclass(frozen=True)
class Pulse:
    """One resonant square pulse: which mode it drives, at what carrier
    frequency, with what area, and how long it must last at the given field
    amplitude (duration = area / (|dipole| * amplitude))."""

    mode: int
    carrier: float
    area: float
    amplitude: float
    duration: float


@dataclass(frozen=True)
class PulsePlan:
    pulses: tuple[Pulse, ...]


def angles_of(a0: float, a1: float) -> float:
    """Angle of a normalized (ground, excited) coefficient pair, in (-pi, pi]."""
    if abs(a0 * a0 + a1 * a1 - 1.0) > 1e-9:
        raise NotNormalized(f"a0^2 + a1^2 = {a0 * a0 + a1 * a1!r}, expected 1")
    return math.atan2(a1, a0)


def plan_rotation(from_state: ProductState, to_state: ProductState) -> RotationPlan:
    """The rotation pair carrying from_state onto to_state."""
    return RotationPlan(
        delta1=to_state.theta1 - from_state.theta1,
        delta2=to_state.theta2 - from_state.theta2,
    )


def apply_rotation(rot: RotationPlan, s: ProductState) -> ProductState:
    """Advance both mode angles; coefficients transform by the 2x2 rotations."""
    return ProductState(theta1=s.theta1 + rot.delta1, theta2=s.theta2 + rot.delta2)


def plan_pulses(sys: TwoModeSystem, rot: RotationPlan, amplitude: float) -> PulsePlan:
    """Translate a rotation plan into one resonant pulse per moved mode.

    Pulses come out in mode order (they commute in this ideal model, acting
    on different factors).  Raises ZeroDipole when a mode that must move has
    |dipole| below the drivability floor; the fix is a deeper well, which
    gives the level pair a usable dipole.
    """
    if not (amplitude > 0.0):
        raise ValueError(f"field amplitude must be positive, got {amplitude}")
    pulses: list[Pulse] = []
    for mode, delta in ((sys.mode1, rot.delta1), (sys.mode2, rot.delta2)):
        if delta == 0.0:
            continue
        strength = abs(mode.dipole)
        if strength < _DIPOLE_FLOOR:
            raise ZeroDipole(
                f"mode {mode.label} has |dipole| = {strength:.3e}; the well is "
                f"too shallow to drive this transition (needs a deeper well)"
            )
        area = 2.0 * abs(delta)
        pulses.append(
            Pulse(
                mode=mode.label,
                carrier=mode.gap / sys.hbar,
                area=area,
                amplitude=amplitude,
                duration=area / (strength * amplitude),
            )
        )
    return PulsePlan(pulses=tuple(pulses))
