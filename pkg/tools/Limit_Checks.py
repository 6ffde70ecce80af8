import logging
from typing import Dict

from ion.limit_solver import solve_limit
from reference import reference_tables
from toolbox.Toolbox import CheckResult

logger = logging.getLogger(__name__)


def neutral_limit_constants(pipeline, settings: Dict) -> CheckResult:
    """
    C = X^(4/5) b^(1/5) and c = C^(-5/3) of the neutral-atom limit against the published values.
    """
    reference = reference_tables.NEUTRAL_LIMIT
    state = solve_limit(tol=settings.get("limit_tol", 1e-7),
                        t_max=settings.get("limit_t_max", 1e4),
                        max_iter=settings.get("limit_max_iter", 200))
    details = {"C": abs(state.C - reference["C"]), "c": abs(state.c - reference["c"])}
    passed = details["C"] <= reference["C_tolerance"] and details["c"] <= reference["c_tolerance"]
    logger.info(f"limit C={state.C:.6f} c={state.c:.6f} after {state.iterations} iterations")
    return CheckResult("neutral_limit_constants", passed, details["C"], reference["C_tolerance"], details)


LIMIT_CHECKS = [neutral_limit_constants]
