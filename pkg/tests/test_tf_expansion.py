import math

import numpy as np
import pytest

from exceptions import SeriesError
from expansion.tf_expansion import A_X, A_X_INV, B_OVER_A, B_OVER_A_SQ, BIND_OVER_A, C_OVER_A, ELECTRONS, \
    TABLE_COLUMNS, assemble_K_series, compute_expansion, partial_sum
from reference import reference_tables
from series.grid_quadrature import GridFunction, cumulative_integral, eval_at
from series.power_series import series_mul


def test_closed_form_anchor_of_first_order():
    g = GridFunction.from_function(lambda t: 2.0 * (1.0 - t**2) ** 1.5, 20001)
    assert eval_at(cumulative_integral(g), 1.0) == pytest.approx(3.0 * math.pi / 8.0, abs=1e-8)


def test_zeroth_order_is_one(pipeline):
    expansion = pipeline.expansion
    np.testing.assert_array_equal(expansion.eta[0].values, 1.0)
    np.testing.assert_array_equal(expansion.xi[0].values, 1.0)


def test_higher_orders_vanish_at_origin(pipeline):
    for m in range(1, pipeline.order + 1):
        assert pipeline.expansion.eta[m].values[0] == 0.0
        assert pipeline.expansion.xi[m].values[0] == pytest.approx(0.0, abs=1e-12)


def test_sign_pattern(pipeline):
    assert np.all(pipeline.expansion.eta[1].values[1:] < 0.0)
    for m in range(1, pipeline.order + 1):
        assert np.all(pipeline.expansion.xi[m].values >= -1e-12)


def test_first_order_endpoints(pipeline):
    eta1, xi1 = pipeline.expansion.endpoint_values()
    assert eta1[1] == pytest.approx(-3.0 * math.pi / 8.0, abs=1e-8)
    assert xi1[1] == pytest.approx(5.0 * math.pi / 32.0, abs=1e-8)


def test_k_coefficient_table(pipeline):
    reference = reference_tables.TABLE_K_COEFFICIENTS
    series = pipeline.k_series
    for row, values in reference["rows"].items():
        m = int(row.split("_")[1])
        for name, expected in zip(reference["columns"], values):
            assert series[name].coeffs[m] == pytest.approx(expected, abs=5e-6), (row, name)


def test_constant_terms(pipeline):
    assert pipeline.k_series.constant_terms() == pytest.approx((1.0, 1.0, 1.0, 1.0, 0.0, 0.0))


def test_named_series_cover_the_table(pipeline):
    series = pipeline.k_series
    assert all(name in series for name in TABLE_COLUMNS)
    assert C_OVER_A in series
    assert series.order == 6


def test_inverse_radius_series_inverts(pipeline):
    product = series_mul(pipeline.k_series[A_X], pipeline.k_series[A_X_INV])
    np.testing.assert_allclose(product.coeffs, [1.0] + [0.0] * 6, atol=1e-10)


def test_square_root_consistency(pipeline):
    b_over_a = pipeline.k_series[B_OVER_A]
    np.testing.assert_allclose(series_mul(b_over_a, b_over_a).coeffs,
                               pipeline.k_series[B_OVER_A_SQ].coeffs, atol=1e-12)


def test_electron_series_from_other_columns(pipeline):
    series = pipeline.k_series
    b_over_a = series[B_OVER_A].coeffs
    xi1 = series[A_X].coeffs
    for m in range(1, 7):
        mixed = sum(b_over_a[i] * xi1[m - i] for i in range(1, m))
        expected = -b_over_a[m] - mixed - xi1[m]
        assert series[ELECTRONS].coeffs[m] == pytest.approx(expected, abs=1e-12)


def test_binding_first_coefficient(pipeline):
    eta1, xi1 = pipeline.expansion.endpoint_values()
    assert pipeline.k_series[BIND_OVER_A].coeffs[1] == pytest.approx(-3.0 / 7.0 * (eta1[1] + xi1[1]))


@pytest.mark.parametrize("name, expected", [(ELECTRONS, 0.293002), (BIND_OVER_A, 0.392473), (A_X, 2.656499)])
def test_partial_sums_at_neutral_atom(pipeline, name, expected):
    assert partial_sum(pipeline.k_series[name], 0.999367, 6) == pytest.approx(expected, abs=1e-5)


def test_partial_sum_zeroth_order(pipeline):
    assert partial_sum(pipeline.k_series[A_X], 0.37, 0) == 1.0


def test_partial_sum_rejects_order_beyond_series(pipeline):
    with pytest.raises(SeriesError):
        partial_sum(pipeline.k_series[ELECTRONS], 0.5, 7)


def test_order_must_be_positive():
    with pytest.raises(SeriesError):
        compute_expansion(0, 21)


def test_coarse_grid_misses_the_table():
    coarse = assemble_K_series(compute_expansion(6, 21))
    reference = reference_tables.TABLE_K_COEFFICIENTS
    deviations = [abs(coarse[name].coeffs[1] - value)
                  for name, value in zip(reference["columns"], reference["rows"]["f_1"])]
    assert max(deviations) > 5e-6
