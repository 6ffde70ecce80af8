"""
Builders for the coefficient and partial-sum tables.

Every builder takes a Pipeline and returns a DataFrame whose first column
"row" holds the row labels.
"""
import logging
from typing import Callable, Dict

import numpy as np
import pandas as pd

from expansion.k_elimination import FUNDAMENTAL, N_TABLE_COLUMNS, SLOPE
from expansion.tf_expansion import TABLE_COLUMNS
from ion.improved_series import neutral_slope_terms, taylor_slope_terms
from output.document import labelled_frame
from pipeline.pipeline import Pipeline

logger = logging.getLogger(__name__)

# K of the neutral atom; default of the neutral_K setting
NEUTRAL_K = 0.99936725


def k_coefficients(pipeline: Pipeline, **_) -> pd.DataFrame:
    """K-series coefficients f_0..f_M of aX, (aX)^-1, (b/a)^2, b/a, B/a, N."""
    series = pipeline.k_series
    values = np.column_stack([series[name].coeffs for name in TABLE_COLUMNS])
    labels = [f"f_{m}" for m in range(series.order + 1)]
    return labelled_frame(labels, list(TABLE_COLUMNS), values)


def k_partial_sums(pipeline: Pipeline, K: float = NEUTRAL_K, **_) -> pd.DataFrame:
    """Partial sums S_0..S_M of the K-series at K."""
    series = pipeline.k_series
    values = [[series[name].partial_sum(K, m) for name in TABLE_COLUMNS]
              for m in range(series.order + 1)]
    labels = [f"S_{m}" for m in range(series.order + 1)]
    return labelled_frame(labels, list(TABLE_COLUMNS), values)


def n_coefficients(pipeline: Pipeline, **_) -> pd.DataFrame:
    """Leading exponent and coefficients f~_0..f~_(M-1) of c, X^-1, b, B, a."""
    table = pipeline.n_series
    order = min(table[name].order for name in N_TABLE_COLUMNS)
    alphas = [float(table[name].alpha) for name in N_TABLE_COLUMNS]
    coeffs = np.column_stack([table[name].coeffs[:order + 1] for name in N_TABLE_COLUMNS])
    labels = ["alpha"] + [f"f~_{n}" for n in range(order + 1)]
    return labelled_frame(labels, list(N_TABLE_COLUMNS), np.vstack([alphas, coeffs]))


def n_partial_sums(pipeline: Pipeline, N: float = 1.0, **_) -> pd.DataFrame:
    """Partial sums S_0..S_(M-1) of the N-series at N."""
    table = pipeline.n_series
    order = min(table[name].order for name in N_TABLE_COLUMNS)
    values = [[table[name].partial_sum(N, n) for name in N_TABLE_COLUMNS]
              for n in range(order + 1)]
    labels = [f"S_{n}" for n in range(order + 1)]
    return labelled_frame(labels, list(N_TABLE_COLUMNS), values)


def t_matrix(pipeline: Pipeline, **_) -> pd.DataFrame:
    """T(-2/3): row m holds the N-coefficients produced by the unit K-vector e_m."""
    matrix = pipeline.t_matrix()
    names = [str(n) for n in range(matrix.size)]
    return labelled_frame(names, names, matrix.entries)


def neutral_slope_comparison(pipeline: Pipeline, **_) -> pd.DataFrame:
    """
    a(N=1) term by term: (i) the Taylor N-series, (ii) the improved series
    (7/3) sum c_n B(n+1/3, 7/3), each followed by its partial sums.
    """
    table = pipeline.n_series
    order = min(table[FUNDAMENTAL].order, table[SLOPE].order)
    taylor = taylor_slope_terms(table[SLOPE], order)
    improved = neutral_slope_terms(table[FUNDAMENTAL], order)
    values = [taylor, improved, np.cumsum(taylor), np.cumsum(improved)]
    labels = ["(i) a_n", "(ii) a_n", "(i) S_n", "(ii) S_n"]
    return labelled_frame(labels, [str(n) for n in range(order + 1)], values)


TABLES: Dict[str, Callable[..., pd.DataFrame]] = {
    "1": k_coefficients,
    "2": k_partial_sums,
    "3": n_coefficients,
    "4": n_partial_sums,
    "t-matrix": t_matrix,
    "sec5": neutral_slope_comparison,
}


def build_table(which: str, pipeline: Pipeline, **options) -> pd.DataFrame:
    """
    Build one of the tables by id.

    Args:
        which: "1", "2", "3", "4", "t-matrix" or "sec5"
        pipeline: Pipeline to read the series from
        **options: K for table 2, N for table 4

    Raises:
        KeyError: If the id is unknown
    """
    builder = TABLES[which]
    logger.info(f"building table {which}")
    return builder(pipeline, **options)
