"""Exception types shared across modules.

Input/contract violations raise plain ValueError; anything that fails
while the numbers are being produced (integrator breakdown, quadrature
non-convergence, unresolvable eigenpaths, degenerate states) raises
NumericsError so the CLI can map it to its own exit code.
"""

from __future__ import annotations

__all__ = ["NumericsError"]


class NumericsError(RuntimeError):
    """A numerical procedure failed to produce a trustworthy result."""
