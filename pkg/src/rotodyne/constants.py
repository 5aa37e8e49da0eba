"""Physical constants used throughout the package (CODATA 2018, SI).

These are deliberately hard-coded rather than imported from scipy so that
every numerical result of the library is pinned to a fixed constants
vintage, independent of the installed scipy version. Values carry 15
significant digits and are not configurable at runtime.

Unit convention for the whole package: every frequency-like quantity
(atomic gap, rotation frequency, cavity frequency, linewidth) is an
angular frequency in rad/s. Quantities quoted in "Hz/MHz/GHz" by users
must be supplied as rad/s; the CLI help repeats this warning.
"""

from __future__ import annotations

__all__ = ["SPEED_OF_LIGHT", "HBAR", "VACUUM_PERMITTIVITY"]

# Speed of light in vacuum, m/s (exact by SI definition).
SPEED_OF_LIGHT: float = 299792458.0

# Reduced Planck constant, J*s (h = 6.62607015e-34 J*s exact; hbar = h/2pi).
HBAR: float = 1.05457181764616e-34

# Vacuum electric permittivity, F/m.
VACUUM_PERMITTIVITY: float = 8.8541878128e-12
