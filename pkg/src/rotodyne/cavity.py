"""Lorentzian single-mode cavity density of states.

The field mode density seen by the emitter is an unnormalized Lorentzian
centered on the cavity frequency, with half width omega_c / Q:

    dos(w) = (omega_c/Q) / ((omega_c/Q)**2 + (w - omega_c)**2)   for w > 0,
    dos(w) = 0                                                   for w <= 0.

The peak value is Q / omega_c. No negative-frequency support: resonance
conditions that would sift a non-positive frequency contribute nothing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["CavitySpec", "dos", "dos_derivative"]


@dataclass(frozen=True)
class CavitySpec:
    """Cavity mode: center frequency (rad/s), quality factor, mode volume (m^3)."""

    omega_c: float
    q_factor: float
    volume: float

    def __post_init__(self) -> None:
        if not self.omega_c > 0.0:
            raise ValueError(f"omega_c must be positive, got {self.omega_c}")
        if not self.q_factor > 0.0:
            raise ValueError(f"q_factor must be positive, got {self.q_factor}")
        if not self.volume > 0.0:
            raise ValueError(f"volume must be positive, got {self.volume}")

    @property
    def linewidth(self) -> float:
        """Half width omega_c / Q, rad/s."""
        return self.omega_c / self.q_factor


def dos(cavity: CavitySpec, frequency):
    """Density-of-states weight at ``frequency`` (rad/s; scalar or array).

    Non-positive frequencies return exactly 0.
    """
    w = np.asarray(frequency, dtype=float)
    hw = cavity.linewidth
    value = hw / (hw * hw + (w - cavity.omega_c) ** 2)
    value = np.where(w > 0.0, value, 0.0)
    if np.ndim(frequency) == 0:
        return float(value)
    return value


def dos_derivative(cavity: CavitySpec, frequency):
    """Analytic d(dos)/dw at ``frequency`` (rad/s; scalar or array).

    The derivative is only defined on the physical domain: any
    non-positive frequency raises ValueError.
    """
    w = np.asarray(frequency, dtype=float)
    if np.any(w <= 0.0):
        raise ValueError("dos_derivative requires strictly positive frequency")
    hw = cavity.linewidth
    detuning = w - cavity.omega_c
    value = -2.0 * hw * detuning / (hw * hw + detuning ** 2) ** 2
    if np.ndim(frequency) == 0:
        return float(value)
    return value
