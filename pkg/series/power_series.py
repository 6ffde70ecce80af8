import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from exceptions import SeriesError

logger = logging.getLogger(__name__)

K_SERIES = "K"
N_SERIES = "N"
VARIABLES = (K_SERIES, N_SERIES)

Exponent = Union[Fraction, int, float]


def as_fraction(value: Exponent) -> Fraction:
    """
    Convert an exponent to a Fraction.

    Floats are snapped to the nearest fraction with a small denominator, so
    -1/3 given as a float becomes Fraction(-1, 3).
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(value).limit_denominator(10**6)


def pow_coefficients(coeffs: np.ndarray, beta: Exponent) -> np.ndarray:
    """
    Coefficients of f**beta, with the series index on axis 0.

    Uses the recurrence g_0 = 1, g_n = (1/n) sum_{k=1..n} ((beta+1)k - n) f_k g_{n-k}
    on f/f_0, then multiplies by f_0**beta. Trailing axes are independent
    series (one per grid node in the K-expansion).

    Args:
        coeffs: Array of shape (M+1, ...) holding f_0..f_M
        beta: Real exponent

    Returns:
        Array of the same shape holding the coefficients of f**beta

    Raises:
        SeriesError: If a constant term is zero, or negative with a non-integer beta
    """
    f = np.asarray(coeffs, dtype=float)
    f0 = f[0]
    if np.any(f0 == 0.0):
        raise SeriesError("constant term is zero, the power series is undefined")
    b = float(beta)
    if not float(b).is_integer() and np.any(f0 < 0.0):
        raise SeriesError(f"negative constant term with non-integer exponent {b}")

    u = f / f0
    g = np.zeros_like(u)
    g[0] = 1.0
    for n in range(1, u.shape[0]):
        acc = np.zeros_like(u[0])
        for k in range(1, n + 1):
            acc = acc + ((b + 1.0) * k - n) * u[k] * g[n - k]
        g[n] = acc / n
    return g * np.power(f0, b)


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """
    A series sum_m coeffs[m] * v**(alpha + m), truncated at order M.

    Attributes:
        variable: "K" or "N"
        alpha: Rational leading exponent
        coeffs: Read-only float array of length M+1
    """

    variable: str
    alpha: Fraction
    coeffs: np.ndarray

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise SeriesError(f"unknown series variable {self.variable!r}")
        coeffs = np.array(self.coeffs, dtype=float).reshape(-1)
        if coeffs.size == 0:
            raise SeriesError("a series needs at least one coefficient")
        if not np.all(np.isfinite(coeffs)):
            raise SeriesError("series coefficients must be finite")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "alpha", as_fraction(self.alpha))

    @classmethod
    def from_coefficients(cls, variable: str, coeffs: Sequence[float],
                          alpha: Exponent = 0) -> "TruncatedSeries":
        return cls(variable, as_fraction(alpha), np.asarray(coeffs, dtype=float))

    @classmethod
    def unit(cls, variable: str, order: int, alpha: Exponent = 0) -> "TruncatedSeries":
        """The series 1 (times v**alpha) carried to the given order."""
        coeffs = np.zeros(order + 1)
        coeffs[0] = 1.0
        return cls(variable, as_fraction(alpha), coeffs)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def truncated(self, order: int) -> "TruncatedSeries":
        if order < 0 or order > self.order:
            raise SeriesError(f"cannot truncate order {self.order} series to {order}")
        return TruncatedSeries(self.variable, self.alpha, self.coeffs[:order + 1])

    def scaled(self, factor: float) -> "TruncatedSeries":
        return TruncatedSeries(self.variable, self.alpha, self.coeffs * factor)

    def partial_sum(self, v: float, m: int) -> float:
        """
        Sum of the terms k = 0..m at v.

        Raises:
            SeriesError: If m is outside 0..order
        """
        if m < 0 or m > self.order:
            raise SeriesError(f"partial sum order {m} outside 0..{self.order}")
        powers = np.array([float(v) ** float(self.alpha + k) for k in range(m + 1)])
        return float(np.dot(self.coeffs[:m + 1], powers))

    def evaluate(self, v: float) -> float:
        return self.partial_sum(v, self.order)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_mul(self, other)

    def __pow__(self, beta: Exponent) -> "TruncatedSeries":
        return series_pow(self, beta)

    def __repr__(self) -> str:
        body = ", ".join(f"{c:.6f}" for c in self.coeffs)
        return f"TruncatedSeries({self.variable}, alpha={self.alpha}, [{body}])"


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """
    Cauchy product of two series in the same variable.

    The result is truncated to the smaller order; leading exponents add.

    Raises:
        SeriesError: If the variable tags differ
    """
    if f.variable != g.variable:
        raise SeriesError(f"cannot multiply a {f.variable}-series by a {g.variable}-series")
    order = min(f.order, g.order)
    product = np.convolve(f.coeffs[:order + 1], g.coeffs[:order + 1])[:order + 1]
    return TruncatedSeries(f.variable, f.alpha + g.alpha, product)


def series_pow(f: TruncatedSeries, beta: Exponent) -> TruncatedSeries:
    """
    Raise a series to a real power, keeping its order.

    Beta 0 and 1 are returned exactly; other exponents go through
    pow_coefficients. The leading exponent is multiplied by beta.

    Raises:
        SeriesError: If the constant term is zero
    """
    beta_q = as_fraction(beta)
    if f.coeffs[0] == 0.0:
        raise SeriesError("constant term is zero, the power series is undefined")
    if beta_q == 0:
        return TruncatedSeries.unit(f.variable, f.order)
    if beta_q == 1:
        return f
    coeffs = pow_coefficients(f.coeffs, float(beta) if isinstance(beta, float) else float(beta_q))
    return TruncatedSeries(f.variable, f.alpha * beta_q, coeffs)
