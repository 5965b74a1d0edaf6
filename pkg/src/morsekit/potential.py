"""Morse oscillator model.

The well is V(x) = depth * (exp(-2*alpha*(x - x0)) - 2*exp(-alpha*(x - x0))),
with minimum V(x0) = -depth and V -> 0 from below as x -> +inf.  Working
units keep mass and hbar explicit (defaults 1).

Two independent level formulas are provided for cross-checking numerics:

* the harmonic/anharmonic ladder (n + 1/2) * (1 - chi * (n + 1/2)) * hbar * omega
  measured from the bottom of the well, with omega = alpha * sqrt(2 * depth / mass)
  and chi = hbar * omega / (4 * depth);
* the closed-form bound spectrum -depth * (1 - (n + 1/2) / L)^2 measured from the
  dissociation threshold, with L = sqrt(2 * mass * depth) / (alpha * hbar).

The two agree identically (the anharmonic ladder is exact for this well), which
the test suite exploits as a self-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MorsePotential",
    "AnharmonicApprox",
    "evaluate_potential",
    "anharmonic_spectrum",
    "analytic_spectrum",
    "bound_state_count",
]


@dataclass(frozen=True)
class MorsePotential:
    """Parameters of a Morse well.

    depth > 0 is the dissociation energy, alpha > 0 the inverse range,
    x0 the equilibrium position; mass and hbar fix the unit system.
    """

    depth: float
    alpha: float = 2.0
    x0: float = 1.0
    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self) -> None:
        if not (self.depth > 0.0):
            raise ValueError(f"well depth must be positive, got {self.depth}")
        if not (self.alpha > 0.0):
            raise ValueError(f"inverse range alpha must be positive, got {self.alpha}")
        if not (self.mass > 0.0):
            raise ValueError(f"mass must be positive, got {self.mass}")
        if not (self.hbar > 0.0):
            raise ValueError(f"hbar must be positive, got {self.hbar}")

    @property
    def depth_parameter(self) -> float:
        """sqrt(2*mass*depth)/(alpha*hbar); counts how many half-integers fit below it."""
        return math.sqrt(2.0 * self.mass * self.depth) / (self.alpha * self.hbar)

    @property
    def harmonic_frequency(self) -> float:
        """Small-oscillation frequency at the well minimum."""
        return self.alpha * math.sqrt(2.0 * self.depth / self.mass)

    def __call__(self, x):
        return evaluate_potential(self, x)


def evaluate_potential(p: MorsePotential, x):
    """Evaluate V(x); accepts a scalar or an ndarray and matches the input shape."""
    u = np.exp(-p.alpha * (np.asarray(x, dtype=np.float64) - p.x0))
    v = p.depth * (u * u - 2.0 * u)
    if np.ndim(x) == 0:
        return float(v)
    return v


@dataclass(frozen=True)
class AnharmonicApprox:
    """Frequency and dimensionless anharmonicity of the level ladder."""

    omega: float
    chi: float

    @classmethod
    def from_potential(cls, p: MorsePotential) -> "AnharmonicApprox":
        omega = p.harmonic_frequency
        return cls(omega=omega, chi=p.hbar * omega / (4.0 * p.depth))


def anharmonic_spectrum(p: MorsePotential, n: int) -> float:
    """Level energy above the well bottom: (n + 1/2)(1 - chi (n + 1/2)) hbar omega."""
    if n < 0:
        raise ValueError(f"level index must be >= 0, got {n}")
    approx = AnharmonicApprox.from_potential(p)
    half = n + 0.5
    return half * (1.0 - approx.chi * half) * p.hbar * approx.omega


def bound_state_count(p: MorsePotential) -> int:
    """Number of bound levels: indices n with n + 1/2 strictly below the depth parameter.

    A level sitting exactly at the threshold (n + 1/2 equal to the depth
    parameter) has zero binding energy and is counted as unbound.
    """
    lam = p.depth_parameter
    if lam <= 0.5:
        return 0
    count = math.floor(lam - 0.5) + 1
    # floor arithmetic can overshoot at an exact threshold tie; walk back if so
    while count > 0 and not (count - 0.5 < lam):
        count -= 1
    return count


def analytic_spectrum(p: MorsePotential) -> list[float]:
    """All bound energies -depth*(1 - (n + 1/2)/L)^2, ascending; empty if none."""
    lam = p.depth_parameter
    return [
        -p.depth * (1.0 - (n + 0.5) / lam) ** 2
        for n in range(bound_state_count(p))
    ]
