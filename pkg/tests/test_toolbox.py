import math

import numpy as np
import pytest

from exceptions import ConvergenceError
from output.document import labelled_frame
from output.tables import NEUTRAL_K, k_partial_sums
from toolbox.Toolbox import CheckResult, Toolbox
from tools.Series_Checks import SERIES_CHECKS, neutral_binding_termwise
from tools.Table_Checks import TABLE_CHECKS, compare_rows, entry_tolerances, k_partial_sum_table, \
    n_series_recursions, row_excess


def always_passes(pipeline, settings):
    """A check that passes.

    More text that is not part of the description.
    """
    return CheckResult("always_passes", True, 0.0, 1.0)


def never_converges(pipeline, settings):
    """A check whose iteration stalls."""
    raise ConvergenceError("stalled", residual=0.5)


def test_registry():
    toolbox = Toolbox([always_passes])
    assert len(toolbox) == 1
    toolbox.add_tools([never_converges])
    assert toolbox.get_tool_list() == "always_passes\nnever_converges"
    assert toolbox.check_tool_exists("never_converges")
    toolbox.remove_tool(never_converges)
    assert not toolbox.check_tool_exists("never_converges")
    assert len(Toolbox()) == 0


def test_descriptions_use_first_docstring_line():
    descriptions = Toolbox([always_passes, never_converges]).prepare_tool_descriptions()
    assert descriptions.splitlines() == ["always_passes: A check that passes.",
                                         "never_converges: A check whose iteration stalls."]


def test_numerical_error_becomes_failed_result():
    result = Toolbox([never_converges]).execute_tool("never_converges", None, {})
    assert not result.passed
    assert math.isinf(result.deviation)
    assert isinstance(result.error, ConvergenceError)
    assert result.summary().startswith("FAIL never_converges: ConvergenceError")


def test_unknown_check():
    with pytest.raises(KeyError):
        Toolbox([always_passes]).execute_tool("missing", None, {})


def test_run_all_keeps_order():
    results = Toolbox([always_passes, never_converges]).run_all(None, {})
    assert [r.name for r in results] == ["always_passes", "never_converges"]
    assert [r.passed for r in results] == [True, False]


def test_summary_format():
    assert CheckResult("x", True, 1.5e-7, 1e-6).summary() == "PASS x: deviation 1.500e-07 (tolerance 1.0e-06)"


def test_compare_rows_flags_missing_rows():
    frame = labelled_frame(["f_0"], ["p"], [[1.0]])
    deviation, details = compare_rows(frame, {"f_0": [1.25], "f_9": [0.0]}, ["p"])
    assert details["f_0"] == pytest.approx(0.25)
    assert math.isinf(details["f_9"])
    assert math.isinf(deviation)


def test_series_checks_pass(pipeline):
    for check in SERIES_CHECKS:
        result = check(pipeline, {})
        assert result.passed, result.details
    assert neutral_binding_termwise(pipeline, {}).deviation <= 1e-12


def test_recursion_tolerance_from_settings(pipeline):
    assert n_series_recursions(pipeline, {}).passed
    assert n_series_recursions(pipeline, {"recursion_tol": 1e-3}).tolerance == 1e-3


def test_entry_tolerances_take_row_overrides():
    reference = {"tolerance": 1e-5, "row_tolerance": {"S_5": 1e-4, "(i) a_n": [1e-5, 1e-4]}}
    np.testing.assert_array_equal(entry_tolerances(reference, "S_0", ["p", "q"]), [1e-5, 1e-5])
    np.testing.assert_array_equal(entry_tolerances(reference, "S_5", ["p", "q"]), [1e-4, 1e-4])
    np.testing.assert_array_equal(entry_tolerances(reference, "(i) a_n", ["p", "q"]), [1e-5, 1e-4])


def test_row_excess_is_in_units_of_the_entry_tolerance():
    frame = labelled_frame(["f_0", "f_5"], ["p", "q"], [[1.0, 2.0], [0.5, 0.25]])
    reference = {"tolerance": 1e-5, "row_tolerance": {"f_5": [1e-5, 1e-4]}}
    rows = {"f_0": [1.0, 2.0], "f_5": [0.5, 0.25005]}
    assert row_excess(frame, rows, ["p", "q"], reference) == pytest.approx(0.5)
    assert math.isinf(row_excess(frame, {"f_9": [0.0, 0.0]}, ["p", "q"], reference))


def test_table_checks_pass(pipeline):
    for check in TABLE_CHECKS:
        result = check(pipeline, {})
        assert result.passed, (result.name, result.deviation, result.details)


def test_neutral_k_has_one_source(pipeline):
    default = k_partial_sum_table(pipeline, {})
    explicit = k_partial_sum_table(pipeline, {"neutral_K": NEUTRAL_K})
    assert default.details == explicit.details
    assert k_partial_sums(pipeline).equals(k_partial_sums(pipeline, K=NEUTRAL_K))
