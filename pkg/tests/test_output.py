import io
import json
import math

import numpy as np
import pandas as pd
import pytest

from output.document import CSV, JSON, LABEL, OutputDocument, git_describe, labelled_frame
from output.plot_data import FIGURES, plot_data
from output.tables import TABLES, build_table
from reference import reference_tables


@pytest.fixture
def frame():
    return labelled_frame(["x", "y"], ["p", "q"], [[1.0 / 3.0, math.inf], [2.5e-7, -4.0]])


def test_csv_rendering(frame):
    text = OutputDocument(frame, fmt=CSV).render()
    lines = text.split("\n")
    assert lines[0] == "row,p,q"
    assert lines[1] == "x,0.333333333333,"
    assert lines[2] == "y,2.5e-07,-4"
    assert text.endswith("\n")
    assert "\r" not in text


def test_json_rendering(frame):
    document = json.loads(OutputDocument(frame, {"command": "test"}, JSON).render())
    assert document["meta"] == {"command": "test"}
    assert document["rows"][0] == {"row": "x", "p": 0.333333333333, "q": None}
    assert document["rows"][1]["p"] == 2.5e-7


def test_csv_and_json_carry_same_digits(pipeline):
    frame = build_table("1", pipeline)
    csv_rows = pd.read_csv(io.StringIO(OutputDocument(frame).to_csv()), float_precision="round_trip")
    json_rows = json.loads(OutputDocument(frame, fmt=JSON).to_json())["rows"]
    for index, row in enumerate(json_rows):
        for column in frame.columns[1:]:
            assert csv_rows.loc[index, column] == row[column]


def test_unknown_format(frame):
    with pytest.raises(ValueError):
        OutputDocument(frame, fmt="xml")


def test_git_describe_never_fails():
    assert isinstance(git_describe(), str)
    assert git_describe()


def test_k_coefficient_table(pipeline):
    frame = build_table("1", pipeline)
    assert list(frame[LABEL]) == [f"f_{m}" for m in range(7)]
    reference = reference_tables.TABLE_K_COEFFICIENTS
    computed = frame.set_index(LABEL).loc["f_1", reference["columns"]].to_numpy(dtype=float)
    np.testing.assert_allclose(computed, reference["rows"]["f_1"], atol=5e-6)


def test_n_coefficient_table_leads_with_exponents(pipeline):
    frame = build_table("3", pipeline).set_index(LABEL)
    np.testing.assert_allclose(frame.loc["alpha"].to_numpy(dtype=float), [-2 / 3, -2 / 3, -2 / 3, 1 / 3, -2 / 3])
    assert "f~_5" in frame.index


def test_partial_sum_tables_take_their_abscissa(pipeline):
    neutral = build_table("4", pipeline, N=1.0).set_index(LABEL)
    half = build_table("4", pipeline, N=0.5).set_index(LABEL)
    assert neutral.loc["S_5", "c"] == pytest.approx(0.168028, abs=1e-4)
    assert half.loc["S_0", "c"] == pytest.approx(0.337821 * 0.5 ** (-2 / 3), abs=1e-5)
    small = build_table("2", pipeline, K=0.0).set_index(LABEL)
    assert small.loc["S_6", "aX"] == pytest.approx(1.0)


def test_t_matrix_table(pipeline):
    frame = build_table("t-matrix", pipeline).set_index(LABEL)
    entries = frame.to_numpy(dtype=float)
    np.testing.assert_allclose(np.diag(entries), 1.0, atol=1e-12)
    np.testing.assert_allclose(entries, reference_tables.TRANSFORM_MATRIX["entries"],
                               atol=reference_tables.TRANSFORM_MATRIX["tolerance"])


def test_neutral_slope_comparison_table(pipeline):
    frame = build_table("sec5", pipeline).set_index(LABEL)
    assert list(frame.index) == ["(i) a_n", "(ii) a_n", "(i) S_n", "(ii) S_n"]
    assert frame.loc["(ii) S_n", "5"] == pytest.approx(1.588434, abs=1e-5)


def test_unknown_table(pipeline):
    assert set(TABLES) == {"1", "2", "3", "4", "t-matrix", "sec5"}
    with pytest.raises(KeyError):
        build_table("7", pipeline)


def test_eta_curves(pipeline):
    frame = plot_data("1", pipeline, samples=10)
    assert list(frame.columns) == ["t"] + [f"order_{m}" for m in range(1, 7)]
    assert len(frame) == 11
    assert frame["order_1"].iloc[-1] == pytest.approx(-3.0 * math.pi / 8.0, abs=1e-6)
    assert frame["order_1"].iloc[0] == pytest.approx(0.0, abs=1e-12)


def test_fundamental_function_curves(pipeline):
    frame = plot_data("5", pipeline, samples=20)
    assert list(frame.columns) == ["N"] + [f"order_{k}" for k in range(6)]
    assert frame["N"].iloc[0] == pytest.approx(0.05)
    assert frame["N"].iloc[-1] == 1.0
    assert frame["order_5"].iloc[-1] == pytest.approx(0.168028, abs=1e-4)


def test_ionization_vanishes_at_neutral_atom(pipeline):
    frame = plot_data("9", pipeline, samples=4)
    np.testing.assert_array_equal(frame.iloc[-1, 1:].to_numpy(dtype=float), 0.0)
    radius = plot_data("8", pipeline, samples=4)
    assert radius.iloc[-1, 1:].isna().all()
    assert (radius.iloc[:-1, 1:] > 0.0).all().all()


@pytest.mark.parametrize("figure", FIGURES)
def test_every_figure(pipeline, figure):
    frame = plot_data(figure, pipeline, samples=3)
    assert frame.shape[1] == 7
    assert len(frame) == (4 if frame.columns[0] == "t" else 3)
    assert frame.columns[0] == ("t" if figure in ("1", "2") else "N")


def test_plot_data_errors(pipeline):
    with pytest.raises(KeyError):
        plot_data("3", pipeline)
    with pytest.raises(ValueError):
        plot_data("5", pipeline, samples=0)
