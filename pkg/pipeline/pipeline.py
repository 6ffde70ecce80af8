import logging
from functools import cached_property
from typing import Dict, Optional

from expansion.k_elimination import MINUS_TWO_THIRDS, TransformMatrix, n_series_table, transform_matrix
from expansion.tf_expansion import (DEFAULT_ORDER, ELECTRONS, ExpansionSet, NamedKSeries,
                                    assemble_K_series, compute_expansion)
from ion.improved_series import IMPROVED, IonState, eval_state
from series.grid_quadrature import DEFAULT_GRID
from series.power_series import Exponent, TruncatedSeries

logger = logging.getLogger(__name__)


class Pipeline:
    """
    Owns one run of the series computation for a fixed order and grid.

    The expansion, the K-series and the N-series are computed lazily and
    cached, so every command and check on the same Pipeline shares a single
    run of the integral-equation iteration.

    Attributes:
        order (int): Order M of the K-series
        n_grid (int): Node count of the t-grid
    """

    def __init__(self, order: int = DEFAULT_ORDER, n_grid: int = DEFAULT_GRID):
        """
        Initialize a new Pipeline instance.

        Args:
            order: Order M of the K-series (the N-series get order M-1)
            n_grid: Odd node count of the t-grid
        """
        self.order = order
        self.n_grid = n_grid
        logger.debug(f"Pipeline created with order={order}, grid={n_grid}")

    @cached_property
    def expansion(self) -> ExpansionSet:
        return compute_expansion(self.order, self.n_grid)

    @cached_property
    def k_series(self) -> NamedKSeries:
        return assemble_K_series(self.expansion)

    @cached_property
    def n_series(self) -> Dict[str, TruncatedSeries]:
        table = n_series_table(self.k_series)
        logger.info(f"N-series of order {self.order - 1} ready")
        return table

    def t_matrix(self, alpha: Exponent = MINUS_TWO_THIRDS) -> TransformMatrix:
        """
        The transformation matrix T(alpha) for the current N(K) series.

        Args:
            alpha: Leading exponent, -2/3 by default

        Returns:
            TransformMatrix of size M x M
        """
        return transform_matrix(alpha, self.k_series[ELECTRONS])

    def state(self, N: float, order: Optional[int] = None, method: str = IMPROVED) -> IonState:
        """
        Evaluate the ion at e:p-ratio N.

        Args:
            N: e:p-ratio in (0, 1]
            order: Truncation order of the N-series; defaults to M-1
            method: "improved" or "taylor"

        Returns:
            IonState
        """
        return eval_state(self.n_series, N, order, method)

    def describe(self) -> Dict[str, object]:
        """
        Returns the run parameters as a dictionary, for output metadata.

        Returns:
            Dict with order, grid and N-series order
        """
        return {"order": self.order, "grid": self.n_grid, "n_order": self.order - 1}
