"""
Elimination of the parameter K: K-series into N-series.

A quantity written in the first normalization as

    f = (K/2)^alpha (f_0 + f_1 K + f_2 K^2 + ...)

is re-expanded as f = N^alpha (ft_0 + ft_1 N + ...) using N = N_1 K (1 + h_1 K + ...).
The tableau G_{n,k} peels one power of K per row:

    G_{0,k} = f_k
    G_{n,k} = G_{n-1,k+1} - G_{n-1,0} h_{k+1}^(alpha+n-1)

with g_n = G_{n,0} and ft_n = g_n / (2^alpha N_1^(alpha+n)).
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple

import numpy as np

from exceptions import SeriesError
from expansion.tf_expansion import (A_X_INV, B_OVER_A, BIND_OVER_A, C_OVER_A, ELECTRONS,
                                    NamedKSeries)
from series.power_series import (K_SERIES, N_SERIES, Exponent, TruncatedSeries, as_fraction,
                                 series_pow)

logger = logging.getLogger(__name__)

MINUS_TWO_THIRDS = Fraction(-2, 3)

# N-series names, in the column order of the N coefficient table.
FUNDAMENTAL = "c"
INVERSE_RADIUS = "X^-1"
IONIZATION = "b"
BINDING = "B"
SLOPE = "a"
N_TABLE_COLUMNS = (FUNDAMENTAL, INVERSE_RADIUS, IONIZATION, BINDING, SLOPE)


@dataclass(frozen=True, eq=False)
class TransformTableau:
    """
    Rows G[n][k] of the elimination scheme.

    Attributes:
        alpha: Leading exponent of the quantity
        rows: Row n has one entry fewer than row n-1
    """

    alpha: Fraction
    rows: Tuple[np.ndarray, ...]

    @property
    def g(self) -> np.ndarray:
        return np.array([row[0] for row in self.rows])


@dataclass(frozen=True, eq=False)
class TransformMatrix:
    """
    Matrix T(alpha) with g_n = sum_m f_m T[m][n].

    Attributes:
        alpha: Leading exponent the matrix was built for
        entries: Upper triangular array with unit diagonal
    """

    alpha: Fraction
    entries: np.ndarray

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def apply(self, f: np.ndarray) -> np.ndarray:
        f = np.asarray(f, dtype=float)[:self.size]
        return f @ self.entries[:f.size, :f.size]


@dataclass(frozen=True)
class RecursionReport:
    """
    Deviations of the N-series coefficients from the three recursions.

    Attributes:
        deviations: Largest absolute deviation per relation
    """

    deviations: Dict[str, float]

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values())

    def passed(self, tol: float) -> bool:
        return self.max_deviation <= tol


def h_coefficients(n_series: TruncatedSeries) -> TruncatedSeries:
    """
    Normalize N(K) = N_1 K (1 + h_1 K + ...) and return (1, h_1, h_2, ...).

    Raises:
        SeriesError: If N_0 is not zero or N_1 is zero
    """
    coeffs = n_series.coeffs
    if coeffs.size < 2:
        raise SeriesError("N-series needs at least the linear coefficient")
    if coeffs[0] != 0.0:
        raise SeriesError(f"N-series must vanish at K=0, constant term is {coeffs[0]}")
    if coeffs[1] == 0.0:
        raise SeriesError("linear coefficient N_1 is zero, K cannot be eliminated")
    return TruncatedSeries(K_SERIES, 0, coeffs[1:] / coeffs[1])


def _strip_leading_zeros(f: np.ndarray, alpha: Fraction) -> Tuple[np.ndarray, Fraction]:
    # K^s = 2^s (K/2)^s, so each stripped zero doubles the rest and raises alpha by one
    leading = 0
    while leading < f.size and f[leading] == 0.0:
        leading += 1
    if leading == f.size:
        raise SeriesError("cannot eliminate K from an identically zero series")
    if leading:
        logger.debug(f"stripped {leading} leading zero(s), alpha {alpha} -> {alpha + leading}")
    return f[leading:] * 2.0**leading, alpha + leading


def build_tableau(f: np.ndarray, alpha: Exponent, h: TruncatedSeries,
                  length: Optional[int] = None) -> TransformTableau:
    """
    Run the G-scheme on coefficients f with the normalized N-series h.

    Args:
        f: K-coefficients f_0..f_M (f_0 != 0)
        alpha: Leading exponent of the first normalization
        h: Series (1, h_1, h_2, ...)
        length: Number of g_n to produce; defaults to as many as f and h allow

    Returns:
        TransformTableau whose first column is g_0..g_{length-1}
    """
    alpha = as_fraction(alpha)
    f = np.asarray(f, dtype=float)
    limit = min(f.size, h.order + 1)
    length = limit if length is None else min(length, limit)

    rows = [f[:length].copy()]
    for n in range(1, length):
        prev = rows[-1]
        h_pow = series_pow(h, alpha + n - 1).coeffs
        rows.append(prev[1:] - prev[0] * h_pow[1:prev.size])
    return TransformTableau(alpha, tuple(rows))


def _scale_to_n(g: np.ndarray, alpha: Fraction, n1: float) -> np.ndarray:
    n = np.arange(g.size)
    return g / (2.0 ** float(alpha) * n1 ** (float(alpha) + n))


def eliminate(f: TruncatedSeries, alpha: Exponent, n_series: TruncatedSeries) -> TruncatedSeries:
    """
    Convert the K-series of a quantity into its N-series.

    Leading zero coefficients are stripped first (each one raises alpha by 1).

    Args:
        f: K-series f_0 + f_1 K + ... in the second normalization
        alpha: Exponent of the (K/2)^alpha prefactor
        n_series: The N(K) series

    Returns:
        N-series with leading exponent alpha (after stripping)
    """
    coeffs, alpha_q = _strip_leading_zeros(f.coeffs, as_fraction(alpha))
    h = h_coefficients(n_series)
    tableau = build_tableau(coeffs, alpha_q, h)
    n_coeffs = _scale_to_n(tableau.g, alpha_q, float(n_series.coeffs[1]))
    logger.debug(f"eliminated K at alpha={alpha_q}: {np.round(n_coeffs, 6)}")
    return TruncatedSeries(N_SERIES, alpha_q, n_coeffs)


def transform_matrix(alpha: Exponent, n_series: TruncatedSeries,
                     order: Optional[int] = None) -> TransformMatrix:
    """
    Build T(alpha) by probing the scheme with unit seed vectors.

    Args:
        alpha: Leading exponent
        n_series: The N(K) series
        order: Largest index of the matrix (size order+1); defaults to the
            highest order the N-series supports

    Returns:
        TransformMatrix of size (order+1, order+1)
    """
    h = h_coefficients(n_series)
    size = h.order + 1 if order is None else order + 1
    if size > h.order + 1:
        raise SeriesError(f"N-series of order {n_series.order} supports at most order {h.order}")
    entries = np.zeros((size, size))
    for m in range(size):
        seed = np.zeros(size)
        seed[m] = 1.0
        tableau = build_tableau(seed, alpha, h, size)
        entries[m] = tableau.g
    return TransformMatrix(as_fraction(alpha), entries)


def eliminate_by_matrix(f: TruncatedSeries, alpha: Exponent, n_series: TruncatedSeries) -> TruncatedSeries:
    """Same result as eliminate(), through the matrix T(alpha)."""
    coeffs, alpha_q = _strip_leading_zeros(f.coeffs, as_fraction(alpha))
    order = min(coeffs.size - 1, n_series.order - 1)
    matrix = transform_matrix(alpha_q, n_series, order)
    g = matrix.apply(coeffs)
    return TruncatedSeries(N_SERIES, alpha_q, _scale_to_n(g, alpha_q, float(n_series.coeffs[1])))


def n_series_table(named: NamedKSeries) -> Dict[str, TruncatedSeries]:
    """
    The five N-series c, X^-1, b, B, a.

    Each quantity is a = (K/2)^(-2/3) times a K-series: c/a, (aX)^-1, b/a,
    B/a and the constant 1 respectively.
    """
    electrons = named[ELECTRONS]
    unit = TruncatedSeries.unit(K_SERIES, electrons.order)
    sources = {
        FUNDAMENTAL: named[C_OVER_A],
        INVERSE_RADIUS: named[A_X_INV],
        IONIZATION: named[B_OVER_A],
        BINDING: named[BIND_OVER_A],
        SLOPE: unit,
    }
    return {name: eliminate(source, MINUS_TWO_THIRDS, electrons) for name, source in sources.items()}


def check_recursions(table: Mapping[str, TruncatedSeries]) -> RecursionReport:
    """
    Check the coefficient recursions implied by N = 1 - bX, B = int b dN
    and B = (3/7)(a - b(1-N)):

        b_n = X_n - X_{n-1}
        B_n = b_n / (n + 1/3)
        a_n = (7/3) B_{n-1} + b_n - b_{n-1}
    """
    x_inv = table[INVERSE_RADIUS].coeffs
    b = table[IONIZATION].coeffs
    big_b = table[BINDING].coeffs
    a = table[SLOPE].coeffs
    size = min(x_inv.size, b.size, big_b.size, a.size)

    def shifted(c: np.ndarray) -> np.ndarray:
        return np.concatenate(([0.0], c[:size - 1]))

    n = np.arange(size)
    deviations = {
        "b_n = X_n - X_(n-1)": float(np.max(np.abs(b[:size] - (x_inv[:size] - shifted(x_inv))))),
        "B_n = b_n/(n+1/3)": float(np.max(np.abs(big_b[:size] - b[:size] / (n + 1.0 / 3.0)))),
        "a_n = 7B_(n-1)/3 + b_n - b_(n-1)": float(np.max(np.abs(
            a[:size] - (7.0 / 3.0 * shifted(big_b) + b[:size] - shifted(b))))),
    }
    for relation, deviation in deviations.items():
        logger.debug(f"recursion {relation}: max deviation {deviation:.3e}")
    return RecursionReport(deviations)
