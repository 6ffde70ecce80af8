"""
Exception hierarchy shared by the series, expansion, ion and oracle packages.

Library code raises these; the toolbox and the command-line layer catch them,
log them and turn them into check failures or exit codes.
"""
from typing import Any, Optional


class TFIonError(Exception):
    """Base class for every error raised by this project."""


class SeriesError(TFIonError):
    """Invalid truncated-series operation (tags, constant term, order)."""


class GridError(TFIonError):
    """Invalid grid function or evaluation point."""


class DomainError(TFIonError):
    """Argument outside the physical or mathematical domain."""


class ConvergenceError(TFIonError):
    """
    An iterative solver hit its iteration cap.

    Attributes:
        residual: Last change of the iterated quantity
        state: Last iterate, for inspection by the caller
    """

    def __init__(self, message: str, residual: float, state: Optional[Any] = None):
        super().__init__(message)
        self.residual = residual
        self.state = state


class OracleError(TFIonError):
    """Failure of the direct ODE solver."""


class NotAnIonError(OracleError):
    """
    The screening function never reached zero before the horizon.

    Attributes:
        slope: Initial slope a of the failed shot
        reason: "turned" when the slope changed sign, "horizon" when x_max was reached
    """

    def __init__(self, slope: float, reason: str):
        super().__init__(f"slope a={slope!r} gives no ion solution ({reason})")
        self.slope = slope
        self.reason = reason


class BracketError(OracleError):
    """A root-finding bracket could not be established."""
