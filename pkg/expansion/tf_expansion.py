"""
K-expansion of the second-normalized Thomas-Fermi equations.

With t = sqrt(1 - chi), eta = (psi/a)^2, xi = a x / (1 - chi) and K = 2/a^(3/2),
the coefficient functions of eta = sum K^m eta_m(t) and xi = sum K^m xi_m(t)
obey

    xi_m(t)     = (2/t^2) int_0^t t' eta_m^(-1/2)(t') dt'
    eta_{m+1}(t) = -2 int_0^t (1 - t'^2)^(3/2) xi_m^(-1/2)(t') dt'

where f_m^(beta) is coefficient m of the power series f^beta. At every grid
node the values (f_0(t_i), ..., f_m(t_i)) are a K-series with constant
term 1, so the powers are taken node by node.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, Tuple

import numpy as np

from exceptions import SeriesError
from series.grid_quadrature import (DEFAULT_GRID, GridFunction, cumulative_integral,
                                    uniform_nodes)
from series.power_series import K_SERIES, TruncatedSeries, pow_coefficients, series_mul, series_pow

logger = logging.getLogger(__name__)

DEFAULT_ORDER = 6

# Names of the K-series, in the column order of the coefficient table.
A_X = "aX"
A_X_INV = "(aX)^-1"
B_OVER_A_SQ = "(b/a)^2"
B_OVER_A = "b/a"
BIND_OVER_A = "B/a"
ELECTRONS = "N"
C_OVER_A = "c/a"
TABLE_COLUMNS = (A_X, A_X_INV, B_OVER_A_SQ, B_OVER_A, BIND_OVER_A, ELECTRONS)


@dataclass(frozen=True, eq=False)
class ExpansionSet:
    """
    Coefficient functions eta_0..eta_M and xi_0..xi_M on the t-grid.

    Attributes:
        order: Highest order M
        eta: Grid functions eta_m(t)
        xi: Grid functions xi_m(t)
    """

    order: int
    eta: Tuple[GridFunction, ...]
    xi: Tuple[GridFunction, ...]

    @property
    def n_grid(self) -> int:
        return self.eta[0].n_grid

    def endpoint_values(self) -> Tuple[np.ndarray, np.ndarray]:
        """(eta_m(1), xi_m(1)) for m = 0..M."""
        eta1 = np.array([f.values[-1] for f in self.eta])
        xi1 = np.array([f.values[-1] for f in self.xi])
        return eta1, xi1


def _xi_from(g: np.ndarray, t: np.ndarray) -> np.ndarray:
    # (2/t^2) int_0^t t' g dt'; the t -> 0 limit is g(0)
    running = cumulative_integral(GridFunction(t * g)).values
    out = np.empty_like(g)
    out[0] = g[0]
    out[1:] = 2.0 * running[1:] / t[1:] ** 2
    return out


def compute_expansion(order: int = DEFAULT_ORDER, n_grid: int = DEFAULT_GRID) -> ExpansionSet:
    """
    Iterate the coupled integral equations order by order.

    Args:
        order: Highest order M (>= 1)
        n_grid: Odd node count of the t-grid

    Returns:
        ExpansionSet with eta_0..eta_M and xi_0..xi_M

    Raises:
        SeriesError: If order < 1
    """
    if order < 1:
        raise SeriesError(f"expansion order must be >= 1, got {order}")
    t = uniform_nodes(n_grid)
    weight = (1.0 - t**2) ** 1.5

    eta = [np.ones(n_grid)]
    xi = [np.ones(n_grid)]
    for m in range(1, order + 1):
        xi_inv_sqrt = pow_coefficients(np.array(xi), -0.5)
        eta.append(-2.0 * cumulative_integral(GridFunction(weight * xi_inv_sqrt[m - 1])).values)
        eta_inv_sqrt = pow_coefficients(np.array(eta), -0.5)
        xi.append(_xi_from(eta_inv_sqrt[m], t))
        logger.debug(f"order {m}: eta_m(1)={eta[m][-1]:.9f} xi_m(1)={xi[m][-1]:.9f}")

    logger.info(f"K-expansion to order {order} on {n_grid} nodes done")
    return ExpansionSet(order,
                        tuple(GridFunction(v) for v in eta),
                        tuple(GridFunction(v) for v in xi))


class NamedKSeries:
    """
    The K-series read off the expansion at t = 1.

    Holds the six tabulated series (aX, (aX)^-1, (b/a)^2, b/a, B/a, N) and the
    auxiliary c/a = (b/a)^(-1/3) (aX)^(-4/3) used for the fundamental function.
    """

    def __init__(self, series: Dict[str, TruncatedSeries]):
        self._series = dict(series)

    def __getitem__(self, name: str) -> TruncatedSeries:
        return self._series[name]

    def __contains__(self, name: str) -> bool:
        return name in self._series

    def __iter__(self) -> Iterator[str]:
        return iter(self._series)

    def items(self):
        return self._series.items()

    @property
    def order(self) -> int:
        return self._series[ELECTRONS].order

    def constant_terms(self) -> Tuple[float, ...]:
        return tuple(float(self._series[name].coeffs[0]) for name in TABLE_COLUMNS)


def assemble_K_series(expansion: ExpansionSet) -> NamedKSeries:
    """
    Build the named K-series from the endpoint values of the expansion.

    aX and (b/a)^2 are xi(1) and eta(1); b/a and (aX)^-1 are their powers
    1/2 and -1; B/a = -(3/7)[eta(1) xi(1) - 1]; N = 1 - xi(1) eta(1)^(1/2).
    """
    eta1, xi1 = expansion.endpoint_values()
    a_x = TruncatedSeries(K_SERIES, 0, xi1)
    b_over_a_sq = TruncatedSeries(K_SERIES, 0, eta1)
    b_over_a = series_pow(b_over_a_sq, 0.5)
    a_x_inv = series_pow(a_x, -1)

    one = TruncatedSeries.unit(K_SERIES, expansion.order).coeffs
    bind_over_a = -(3.0 / 7.0) * (series_mul(b_over_a_sq, a_x).coeffs - one)
    electrons = -(series_mul(a_x, b_over_a).coeffs - one)
    c_over_a = series_mul(series_pow(b_over_a, -1 / 3), series_pow(a_x, -4 / 3))

    return NamedKSeries({
        A_X: a_x,
        A_X_INV: a_x_inv,
        B_OVER_A_SQ: b_over_a_sq,
        B_OVER_A: b_over_a,
        BIND_OVER_A: TruncatedSeries(K_SERIES, 0, bind_over_a),
        ELECTRONS: TruncatedSeries(K_SERIES, 0, electrons),
        C_OVER_A: c_over_a,
    })


def partial_sum(series: TruncatedSeries, v: float, m: int) -> float:
    """
    Partial sum S_m = sum_{k<=m} c_k v^(alpha+k).

    Raises:
        SeriesError: If m exceeds the series order
    """
    return series.partial_sum(v, m)
