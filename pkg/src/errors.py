# src/errors.py
from __future__ import annotations

from typing import Optional, Tuple


class NumericalError(Exception):
    """Base class for failures of a numerical stage.

    The CLI maps every subclass to exit code 3 and prints `name` with the message.
    `index` holds the grid position the failure was detected at, when known.
    """

    def __init__(self, message: str, *, index: Optional[Tuple[int, ...]] = None):
        super().__init__(message)
        self.message = message
        self.index = index

    @property
    def name(self) -> str:
        return type(self).__name__

    def at_grid_point(self, position: int, delta_p: float) -> "NumericalError":
        self.index = (position,)
        self.message = f"grid point {position} (delta_p={delta_p:.12g}): {self.message}"
        self.args = (self.message,)
        return self

    def __str__(self) -> str:
        return self.message


class SingularSystem(NumericalError):
    """Coefficient matrix too ill-conditioned to solve (dark-state degeneracy)."""


class DegenerateMagnetic(NumericalError):
    """1 - kappa_m * beta_BB vanished."""


class PoleInSupport(NumericalError):
    """A singular velocity lies on the real axis inside the averaging window."""


class QuadratureNotConverged(NumericalError):
    pass


class BranchJump(NumericalError):
    """Refractive index jumped between neighbouring grid points."""


class GridTooCoarse(NumericalError):
    pass


class NoCrossoverInRange(NumericalError):
    pass


class NoRootInBracket(NumericalError):
    pass


class WindowTooNarrow(NumericalError):
    pass


class AliasingDetected(NumericalError):
    pass


class FlatTrace(NumericalError):
    pass
