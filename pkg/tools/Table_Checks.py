import logging
from typing import Dict, List, Tuple

import numpy as np
import pandas as pd

from expansion.k_elimination import check_recursions
from output.document import LABEL
from output.tables import NEUTRAL_K, k_coefficients, k_partial_sums, n_coefficients, n_partial_sums, \
    neutral_slope_comparison, t_matrix
from reference import reference_tables
from toolbox.Toolbox import CheckResult

logger = logging.getLogger(__name__)

RECURSION_TOL = 1e-9


def compare_rows(frame: pd.DataFrame, rows: Dict[str, List[float]],
                 columns: List[str]) -> Tuple[float, Dict[str, float]]:
    """
    Largest absolute deviation between a computed table and reference rows.

    Args:
        frame: Computed table with a "row" label column
        rows: Reference label -> values in `columns` order
        columns: Column names to compare

    Returns:
        (max deviation, per-row max deviation)
    """
    indexed = frame.set_index(LABEL)
    details = {}
    for label, expected in rows.items():
        if label not in indexed.index or not set(columns) <= set(indexed.columns):
            logger.warning(f"row {label} not computed at this order")
            details[label] = float("inf")
            continue
        computed = indexed.loc[label, columns].to_numpy(dtype=float)
        details[label] = float(np.max(np.abs(computed - np.asarray(expected))))
    return max(details.values()), details


def entry_tolerances(reference: Dict, label: str, columns: List[str]) -> np.ndarray:
    """
    Tolerance of every entry in one reference row.

    reference["row_tolerance"] may hold, per row label, one tolerance or one per
    column; other rows use reference["tolerance"].
    """
    tolerance = reference.get("row_tolerance", {}).get(label, reference["tolerance"])
    return np.broadcast_to(np.asarray(tolerance, dtype=float), (len(columns),))


def row_excess(frame: pd.DataFrame, rows: Dict[str, List[float]], columns: List[str],
               reference: Dict) -> float:
    """Largest |computed - reference| / tolerance over all entries; inf for missing rows."""
    indexed = frame.set_index(LABEL)
    excess = 0.0
    for label, expected in rows.items():
        if label not in indexed.index or not set(columns) <= set(indexed.columns):
            return float("inf")
        computed = indexed.loc[label, columns].to_numpy(dtype=float)
        ratio = np.abs(computed - np.asarray(expected)) / entry_tolerances(reference, label, columns)
        excess = max(excess, float(np.max(ratio)))
    return excess


def _rows_result(name: str, frame: pd.DataFrame, rows: Dict[str, List[float]],
                 columns: List[str], reference: Dict) -> CheckResult:
    _, details = compare_rows(frame, rows, columns)
    excess = row_excess(frame, rows, columns, reference)
    # deviation in units of the entry tolerance
    return CheckResult(name, excess <= 1.0, excess, 1.0, details)


def _table_result(name: str, frame: pd.DataFrame, reference: Dict) -> CheckResult:
    return _rows_result(name, frame, reference["rows"], reference["columns"], reference)


def k_coefficient_table(pipeline, settings: Dict) -> CheckResult:
    """
    K-series coefficients f_0..f_6 of aX, (aX)^-1, (b/a)^2, b/a, B/a, N against the published table.
    """
    return _table_result("k_coefficient_table", k_coefficients(pipeline),
                         reference_tables.TABLE_K_COEFFICIENTS)


def k_partial_sum_table(pipeline, settings: Dict) -> CheckResult:
    """
    Partial sums S_0..S_6 of the K-series at the neutral atom against the published table.
    """
    frame = k_partial_sums(pipeline, K=settings.get("neutral_K", NEUTRAL_K))
    return _table_result("k_partial_sum_table", frame, reference_tables.TABLE_K_PARTIAL_SUMS)


def transform_matrix_entries(pipeline, settings: Dict) -> CheckResult:
    """
    Entries of the transformation matrix T(-2/3) against the published matrix.
    """
    reference = reference_tables.TRANSFORM_MATRIX
    frame = t_matrix(pipeline)
    columns = [str(n) for n in range(len(reference["entries"]))]
    rows = {str(m): row for m, row in enumerate(reference["entries"])}
    return _rows_result("transform_matrix_entries", frame, rows, columns, reference)


def n_coefficient_table(pipeline, settings: Dict) -> CheckResult:
    """
    N-series coefficients of c, X^-1, b, B, a against the published table.
    """
    return _table_result("n_coefficient_table", n_coefficients(pipeline),
                         reference_tables.TABLE_N_COEFFICIENTS)


def n_series_recursions(pipeline, settings: Dict) -> CheckResult:
    """
    Coefficient recursions among the computed N-series of X^-1, b, B and a.
    """
    report = check_recursions(pipeline.n_series)
    tol = settings.get("recursion_tol", RECURSION_TOL)
    return CheckResult("n_series_recursions", report.passed(tol), report.max_deviation, tol,
                       dict(report.deviations))


def n_partial_sum_table(pipeline, settings: Dict) -> CheckResult:
    """
    Partial sums of the N-series at N = 1 against the published table.
    """
    return _table_result("n_partial_sum_table", n_partial_sums(pipeline, N=1.0),
                         reference_tables.TABLE_N_PARTIAL_SUMS)


def neutral_slope_terms_table(pipeline, settings: Dict) -> CheckResult:
    """
    Terms and partial sums of a(N=1), Taylor and improved series, against the published comparison.
    """
    reference = reference_tables.NEUTRAL_SLOPE_COMPARISON
    rows = {
        "(i) a_n": reference["terms"]["taylor"],
        "(ii) a_n": reference["terms"]["improved"],
        "(i) S_n": reference["partial_sums"]["taylor"],
        "(ii) S_n": reference["partial_sums"]["improved"],
    }
    return _rows_result("neutral_slope_terms_table", neutral_slope_comparison(pipeline), rows,
                        reference["columns"], reference)


TABLE_CHECKS = [
    k_coefficient_table,
    k_partial_sum_table,
    transform_matrix_entries,
    n_coefficient_table,
    n_series_recursions,
    n_partial_sum_table,
    neutral_slope_terms_table,
]
