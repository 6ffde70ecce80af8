"""
Numeric data behind the figures: one abscissa column and one column per order.

Figures 1 and 2 are eta_m(t) and xi_m(t) for m = 1..M on [0, 1]. Figures 5 to
11 are successive approximations in N on (0, 1], orders 0..M-1:
c(N) (5), X^-1 by Taylor (6) and improved series (7), then X (8), b (9),
B (10) and K = 2/a^(3/2) (11) by the improved series.
"""
import logging
import math
from typing import Callable, Dict, List

import numpy as np
import pandas as pd

from expansion.k_elimination import FUNDAMENTAL, INVERSE_RADIUS
from ion.improved_series import IMPROVED, IonState, eval_c
from pipeline.pipeline import Pipeline
from series.grid_quadrature import eval_at

logger = logging.getLogger(__name__)

FIGURES = ("1", "2", "5", "6", "7", "8", "9", "10", "11")
DEFAULT_SAMPLES = 100


def _order_columns(orders) -> List[str]:
    return [f"order_{k}" for k in orders]


def _t_curves(pipeline: Pipeline, samples: int, which: str) -> pd.DataFrame:
    functions = pipeline.expansion.eta if which == "eta" else pipeline.expansion.xi
    t = np.linspace(0.0, 1.0, samples + 1)
    orders = range(1, pipeline.order + 1)
    data = {"t": t}
    for name, m in zip(_order_columns(orders), orders):
        data[name] = [eval_at(functions[m], float(v)) for v in t]
    return pd.DataFrame(data)


def _n_abscissa(samples: int) -> np.ndarray:
    return np.arange(1, samples + 1) / samples


def _n_curves(pipeline: Pipeline, samples: int, value: Callable[[float, int], float]) -> pd.DataFrame:
    n_values = _n_abscissa(samples)
    orders = range(pipeline.order)
    data = {"N": n_values}
    for name, k in zip(_order_columns(orders), orders):
        data[name] = [value(float(N), k) for N in n_values]
    return pd.DataFrame(data)


def _state_curves(pipeline: Pipeline, samples: int, pick: Callable[[IonState], float]) -> pd.DataFrame:
    return _n_curves(pipeline, samples, lambda N, k: pick(pipeline.state(N, k, IMPROVED)))


def _radius(state: IonState) -> float:
    return state.X if math.isfinite(state.X) else math.nan


def plot_data(figure: str, pipeline: Pipeline, samples: int = DEFAULT_SAMPLES) -> pd.DataFrame:
    """
    Sampled curves of one figure.

    Args:
        figure: One of FIGURES
        pipeline: Pipeline to read the series from
        samples: Number of intervals on [0, 1] (t) or points on (0, 1] (N)

    Returns:
        DataFrame with the abscissa and one column per order

    Raises:
        KeyError: If the figure id is unknown
        ValueError: If samples < 1
    """
    if figure not in FIGURES:
        raise KeyError(f"unknown figure {figure!r}, expected one of {FIGURES}")
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples}")
    logger.info(f"plot data for figure {figure} with {samples} samples")

    table = pipeline.n_series
    builders: Dict[str, Callable[[], pd.DataFrame]] = {
        "1": lambda: _t_curves(pipeline, samples, "eta"),
        "2": lambda: _t_curves(pipeline, samples, "xi"),
        "5": lambda: _n_curves(pipeline, samples, lambda N, k: eval_c(table[FUNDAMENTAL], N, k)),
        "6": lambda: _n_curves(pipeline, samples, lambda N, k: table[INVERSE_RADIUS].partial_sum(N, k)),
        "7": lambda: _state_curves(pipeline, samples, lambda s: s.inverse_radius),
        "8": lambda: _state_curves(pipeline, samples, _radius),
        "9": lambda: _state_curves(pipeline, samples, lambda s: s.b),
        "10": lambda: _state_curves(pipeline, samples, lambda s: s.B),
        "11": lambda: _state_curves(pipeline, samples, lambda s: s.K),
    }
    return builders[figure]()
