import logging
from typing import Dict

import numpy as np

from expansion.k_elimination import FUNDAMENTAL
from ion.improved_series import IMPROVED, improved_binding, improved_binding_terms, improved_slope_terms
from toolbox.Toolbox import CheckResult

logger = logging.getLogger(__name__)

DERIVATIVE_POINTS = (0.2, 0.5, 0.8)
DERIVATIVE_STEP = 1e-4
DERIVATIVE_TOL = 1e-6
TERMWISE_TOL = 1e-12


def binding_derivative(pipeline, settings: Dict) -> CheckResult:
    """
    dB/dN = b for the improved series, by central differences at N = 0.2, 0.5, 0.8.
    """
    c_series = pipeline.n_series[FUNDAMENTAL]
    h = DERIVATIVE_STEP
    details = {}
    for N in DERIVATIVE_POINTS:
        slope = (improved_binding(c_series, N + h) - improved_binding(c_series, N - h)) / (2.0 * h)
        details[f"N={N}"] = abs(slope - pipeline.state(N, method=IMPROVED).b)
    deviation = max(details.values())
    return CheckResult("binding_derivative", deviation <= DERIVATIVE_TOL, deviation, DERIVATIVE_TOL, details)


def neutral_binding_termwise(pipeline, settings: Dict) -> CheckResult:
    """
    B(1) = (3/7) a(1) term by term in the improved series.
    """
    c_series = pipeline.n_series[FUNDAMENTAL]
    binding = improved_binding_terms(c_series, 1.0)
    slope = improved_slope_terms(c_series, 1.0)
    differences = np.abs(binding - 3.0 / 7.0 * slope)
    details = {f"n={n}": float(d) for n, d in enumerate(differences)}
    deviation = float(np.max(differences))
    return CheckResult("neutral_binding_termwise", deviation <= TERMWISE_TOL, deviation, TERMWISE_TOL, details)


SERIES_CHECKS = [binding_derivative, neutral_binding_termwise]
