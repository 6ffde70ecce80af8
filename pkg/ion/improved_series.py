"""
Ion quantities as functions of the e:p-ratio N.

The improved series are built on the fundamental function
c(N) = b^(-1/3) X^(-4/3) = sum_n c_n N^(n-2/3):

    X^-1(N) = (1-N)^(1/3) c(N)
    b(N)    = (1-N)^(4/3) c(N)
    B(N)    = sum_n c_n Bt(N; n+1/3, 7/3)
    a(N)    = c_0 [N^(-2/3) (1-N)^(7/3) + (7/3) Bt(N; 1/3, 7/3)]
              + sum_{n>=1} c_n (n-2/3) Bt(N; n-2/3, 10/3)

where Bt is the non-regularized incomplete Beta function. The Taylor method
sums the N-series of X^-1, b, B and a directly.
"""
import logging
import math
from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np
from scipy import integrate, special

from exceptions import DomainError, SeriesError
from expansion.k_elimination import BINDING, FUNDAMENTAL, INVERSE_RADIUS, IONIZATION, SLOPE
from series.power_series import TruncatedSeries

logger = logging.getLogger(__name__)

TAYLOR = "taylor"
IMPROVED = "improved"
METHODS = (TAYLOR, IMPROVED)

# Length unit a_B / (LENGTH_FACTOR Z^(1/3)); LENGTH_FACTOR = (128/(9 pi^2))^(1/3)
LENGTH_FACTOR = (128.0 / (9.0 * math.pi**2)) ** (1.0 / 3.0)
# Energy unit 2 Z Ry * LENGTH_FACTOR Z^(1/3) = ENERGY_FACTOR Z^(4/3) Ry
ENERGY_FACTOR = 2.0 * LENGTH_FACTOR
RYDBERG_EV = 13.605693122994


@dataclass(frozen=True)
class IonState:
    """
    Normalized quantities of one Thomas-Fermi ion.

    Attributes:
        N: e:p-ratio
        X: Ion radius (infinite for the neutral atom)
        b: Ionization potential
        B: Electronic binding energy per proton
        a: Initial slope of the screening function
        K: 2 / a^(3/2)
    """

    N: float
    X: float
    b: float
    B: float
    a: float
    K: float

    @property
    def inverse_radius(self) -> float:
        return 0.0 if math.isinf(self.X) else 1.0 / self.X

    def radius_residual(self) -> float:
        """|N - (1 - b X)|, with b X read as b / X^-1."""
        if math.isinf(self.X):
            return abs(self.N - 1.0) if self.b == 0.0 else math.inf
        return abs(self.N - (1.0 - self.b * self.X))

    def binding_residual(self) -> float:
        """|B - (3/7)(a - b(1-N))|."""
        return abs(self.B - 3.0 / 7.0 * (self.a - self.b * (1.0 - self.N)))


@dataclass(frozen=True)
class PhysicalState:
    """
    An ion state in physical units for nuclear charge Z.

    Attributes:
        Z: Number of protons
        radius_bohr: Ion radius in Bohr radii
        ionization_rydberg: Ionization potential in Rydberg
        binding_rydberg: Total electronic binding energy in Rydberg
    """

    Z: int
    radius_bohr: float
    ionization_rydberg: float
    binding_rydberg: float

    @property
    def ionization_ev(self) -> float:
        return self.ionization_rydberg * RYDBERG_EV

    @property
    def binding_ev(self) -> float:
        return self.binding_rydberg * RYDBERG_EV


def incomplete_beta(x: float, p: float, q: float, method: str = "special") -> float:
    """
    Euler's incomplete Beta function int_0^x t^(p-1) (1-t)^(q-1) dt, not regularized.

    Args:
        x: Upper limit in [0, 1]
        p: First shape parameter (> 0)
        q: Second shape parameter (> 0)
        method: "special" for scipy's regularized betainc times beta,
            "quad" for adaptive quadrature after t = u^(1/p)

    Returns:
        The value of the integral

    Raises:
        DomainError: If p or q is not positive or x is outside [0, 1]
    """
    if p <= 0.0 or q <= 0.0:
        raise DomainError(f"Beta parameters must be positive, got p={p}, q={q}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"Beta argument {x} outside [0, 1]")
    if x == 0.0:
        return 0.0
    if method == "special":
        return float(special.betainc(p, q, x) * special.beta(p, q))
    if method == "quad":
        # t = u^(1/p) turns t^(p-1) dt into du/p
        upper = x**p
        value, _ = integrate.quad(lambda u: (1.0 - u ** (1.0 / p)) ** (q - 1.0) / p,
                                  0.0, upper, epsabs=0.0, epsrel=1e-12, limit=200)
        return float(value)
    raise ValueError(f"unknown incomplete Beta method {method!r}")


def _check_fraction(N: float) -> None:
    if not 0.0 < N <= 1.0:
        raise DomainError(f"e:p-ratio N must lie in (0, 1], got {N}")


def _check_order(series: TruncatedSeries, order: Optional[int]) -> int:
    if order is None:
        return series.order
    if order < 0 or order > series.order:
        raise SeriesError(f"order {order} outside 0..{series.order}")
    return order


def eval_c(c_series: TruncatedSeries, N: float, order: Optional[int] = None) -> float:
    """
    The fundamental function c(N) = sum_{n<=order} c_n N^(n-2/3).

    Raises:
        DomainError: If N is outside (0, 1]
    """
    _check_fraction(N)
    return c_series.partial_sum(N, _check_order(c_series, order))


def improved_binding_terms(c_series: TruncatedSeries, N: float, order: Optional[int] = None) -> np.ndarray:
    """Terms c_n Bt(N; n+1/3, 7/3) of B(N), n = 0..order."""
    _check_fraction(N)
    order = _check_order(c_series, order)
    return np.array([c_series.coeffs[n] * incomplete_beta(N, n + 1.0 / 3.0, 7.0 / 3.0)
                     for n in range(order + 1)])


def improved_slope_terms(c_series: TruncatedSeries, N: float, order: Optional[int] = None) -> np.ndarray:
    """Terms of a(N) = int (1-N)^(7/3) dc, the n = 0 term integrated by parts."""
    _check_fraction(N)
    order = _check_order(c_series, order)
    c = c_series.coeffs
    terms = np.empty(order + 1)
    terms[0] = c[0] * (N ** (-2.0 / 3.0) * (1.0 - N) ** (7.0 / 3.0)
                       + 7.0 / 3.0 * incomplete_beta(N, 1.0 / 3.0, 7.0 / 3.0))
    for n in range(1, order + 1):
        terms[n] = c[n] * (n - 2.0 / 3.0) * incomplete_beta(N, n - 2.0 / 3.0, 10.0 / 3.0)
    return terms


def improved_binding(c_series: TruncatedSeries, N: float, order: Optional[int] = None) -> float:
    """B(N) = sum_n c_n Bt(N; n+1/3, 7/3)."""
    return float(np.sum(improved_binding_terms(c_series, N, order)))


def improved_slope(c_series: TruncatedSeries, N: float, order: Optional[int] = None) -> float:
    """a(N) as the sum of improved_slope_terms()."""
    return float(np.sum(improved_slope_terms(c_series, N, order)))


def neutral_slope_terms(c_series: TruncatedSeries, order: Optional[int] = None) -> np.ndarray:
    """
    Terms (7/3) c_n B(n+1/3, 7/3) of a(1) in the improved series.

    For n >= 1 they equal c_n (n-2/3) B(n-2/3, 10/3) by p B(p, q+1) = q B(p+1, q).
    """
    order = _check_order(c_series, order)
    n = np.arange(order + 1)
    return 7.0 / 3.0 * c_series.coeffs[:order + 1] * special.beta(n + 1.0 / 3.0, 7.0 / 3.0)


def taylor_slope_terms(a_series: TruncatedSeries, order: Optional[int] = None) -> np.ndarray:
    """Terms a_n of a(1) in the Taylor N-series."""
    order = _check_order(a_series, order)
    return a_series.coeffs[:order + 1].copy()


def _slope_to_K(a: float) -> float:
    return 2.0 / a**1.5 if a > 0.0 else math.nan


def eval_state(n_series: Mapping[str, TruncatedSeries], N: float,
               order: Optional[int] = None, method: str = IMPROVED) -> IonState:
    """
    Evaluate X, b, B, a and K at e:p-ratio N.

    Args:
        n_series: N-series keyed "c", "X^-1", "b", "B", "a"
        N: e:p-ratio in (0, 1]
        order: Truncation order; defaults to the full series
        method: "improved" (closed forms around c(N)) or "taylor" (partial sums)

    Returns:
        IonState; X is infinite when X^-1 is not positive

    Raises:
        DomainError: If N is outside (0, 1]
        ValueError: If the method is unknown
    """
    _check_fraction(N)
    if method == IMPROVED:
        c_series = n_series[FUNDAMENTAL]
        order = _check_order(c_series, order)
        c = eval_c(c_series, N, order)
        x_inv = (1.0 - N) ** (1.0 / 3.0) * c
        b = (1.0 - N) ** (4.0 / 3.0) * c
        big_b = improved_binding(c_series, N, order)
        a = improved_slope(c_series, N, order)
    elif method == TAYLOR:
        order = _check_order(n_series[INVERSE_RADIUS], order)
        x_inv = n_series[INVERSE_RADIUS].partial_sum(N, order)
        b = n_series[IONIZATION].partial_sum(N, order)
        big_b = n_series[BINDING].partial_sum(N, order)
        a = n_series[SLOPE].partial_sum(N, order)
    else:
        raise ValueError(f"unknown method {method!r}, expected one of {METHODS}")

    radius = 1.0 / x_inv if x_inv > 0.0 else math.inf
    logger.debug(f"{method} state at N={N} order={order}: X^-1={x_inv:.9f} b={b:.9f} a={a:.9f}")
    return IonState(N=N, X=radius, b=b, B=big_b, a=a, K=_slope_to_K(a))


def convert_units(state: IonState, Z: int) -> PhysicalState:
    """
    Physical units for nuclear charge Z.

    X is in a_B / (1.1295 Z^(1/3)), b in 2.2590 Z^(4/3) Ry and the total
    binding energy Z B in 2.2590 Z^(7/3) Ry.

    Raises:
        DomainError: If Z < 1
    """
    if Z < 1:
        raise DomainError(f"nuclear charge must be a positive integer, got {Z}")
    z_third = Z ** (1.0 / 3.0)
    return PhysicalState(
        Z=Z,
        radius_bohr=state.X / (LENGTH_FACTOR * z_third),
        ionization_rydberg=state.b * ENERGY_FACTOR * Z ** (4.0 / 3.0),
        binding_rydberg=state.B * ENERGY_FACTOR * Z ** (7.0 / 3.0),
    )
