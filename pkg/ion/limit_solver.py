"""
Neutral-atom limit of c = b^(-1/3) X^(-4/3).

Normalizing at the ion edge (xi = x/X, eta = (psi/b)^2, t = chi / (X^(1/5) b^(4/5)))
and letting N -> 1 leaves the system

    xi(t)  = 1 - (1/C) int_0^t dt' / eta^(1/2)
    eta(t) = 1 + 2 int_0^t t'^(3/2) / xi^(1/2) dt'
    C      = int_0^inf dt / eta^(1/2)

with C = X^(4/5) b^(1/5) and c = C^(-5/3). It is solved by fixed-point
iteration from C = inf (xi = 1) on a grid that is uniform on [0, 1] and
logarithmic up to t_max; the part of the C integral beyond t_max comes from
a power law eta ~ A t^p fitted on the last decade.
"""
import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid

from exceptions import ConvergenceError, DomainError

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-7
DEFAULT_T_MAX = 1e4
DEFAULT_MAX_ITER = 200
DAMPING = 0.5


@dataclass(frozen=True, eq=False)
class LimitState:
    """
    Result of the limit iteration.

    Attributes:
        C: Converged X^(4/5) b^(1/5)
        c: C^(-5/3)
        t: Grid on [0, t_max]
        xi: xi(t) on the grid
        eta: eta(t) on the grid
        iterations: Number of iterations done
        residual: Last |C_k - C_(k-1)|
        damped: True when damping was switched on
        history: C after every iteration
    """

    C: float
    c: float
    t: np.ndarray
    xi: np.ndarray
    eta: np.ndarray
    iterations: int
    residual: float
    damped: bool
    history: Tuple[float, ...] = ()


def limit_grid(t_max: float = DEFAULT_T_MAX, n_inner: int = 2001,
               per_decade: int = 5000) -> np.ndarray:
    """Uniform nodes on [0, 1] followed by log-spaced nodes up to t_max."""
    if t_max <= 10.0:
        raise DomainError(f"t_max must exceed 10, got {t_max}")
    inner = np.linspace(0.0, 1.0, n_inner)
    decades = math.log10(t_max)
    outer = np.logspace(0.0, decades, int(math.ceil(decades * per_decade)) + 1)[1:]
    return np.concatenate((inner, outer))


def power_law_tail(t: np.ndarray, eta: np.ndarray) -> float:
    """
    int_T^inf dt / eta^(1/2) for eta ~ A t^p fitted on [T/10, T].

    Raises:
        ConvergenceError: If the fitted exponent does not exceed 2 (divergent tail)
    """
    last_decade = t >= t[-1] / 10.0
    p, log_a = np.polyfit(np.log(t[last_decade]), np.log(eta[last_decade]), 1)
    if p <= 2.0:
        raise ConvergenceError(f"tail exponent {p:.4f} <= 2, C integral diverges", residual=math.inf)
    t_end = t[-1]
    return float(math.exp(-0.5 * log_a) * t_end ** (1.0 - 0.5 * p) / (0.5 * p - 1.0))


def _eta_from(t: np.ndarray, xi: np.ndarray) -> np.ndarray:
    return 1.0 + 2.0 * cumulative_trapezoid(t**1.5 / np.sqrt(xi), t, initial=0.0)


def solve_limit(tol: float = DEFAULT_TOL, t_max: float = DEFAULT_T_MAX,
                max_iter: int = DEFAULT_MAX_ITER) -> LimitState:
    """
    Iterate xi -> eta -> C -> xi until C settles.

    Damping (xi and C mixed half and half with the previous iterate) is
    switched on once successive changes of C alternate in sign.

    Args:
        tol: Stop when |C_k - C_(k-1)| < tol
        t_max: End of the grid
        max_iter: Iteration cap

    Returns:
        LimitState with C and c = C^(-5/3)

    Raises:
        DomainError: If tol is not positive
        ConvergenceError: If the cap is reached; carries the last state
    """
    if tol <= 0.0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    if max_iter < 1:
        raise DomainError(f"iteration cap must be at least 1, got {max_iter}")
    t = limit_grid(t_max)
    xi = np.ones_like(t)
    big_c = math.inf
    last_step = math.nan
    damped = False
    residual = math.inf
    history = []

    for iteration in range(1, max_iter + 1):
        eta = _eta_from(t, xi)
        running = cumulative_trapezoid(eta**-0.5, t, initial=0.0)
        c_new = running[-1] + power_law_tail(t, eta)
        xi_new = 1.0 - running / c_new

        if np.any(xi_new <= 0.0):
            logger.warning(f"iteration {iteration}: xi reached zero on the grid, damping")
            damped = True
            xi_new = np.maximum(xi_new, 1e-12)

        step = c_new - big_c
        if not damped and math.isfinite(step) and math.isfinite(last_step) and step * last_step < 0.0:
            logger.warning(f"iteration {iteration}: C oscillates, switching on damping {DAMPING}")
            damped = True
        if damped and math.isfinite(big_c):
            xi_new = (1.0 - DAMPING) * xi + DAMPING * xi_new
            c_new = (1.0 - DAMPING) * big_c + DAMPING * c_new
            step = c_new - big_c

        residual = abs(step)
        logger.debug(f"iteration {iteration}: C={c_new:.9f} step={step:.3e}")
        big_c, xi, last_step = c_new, xi_new, step
        history.append(big_c)
        if residual < tol:
            logger.info(f"limit iteration converged after {iteration} steps: C={big_c:.6f}")
            return LimitState(big_c, big_c ** (-5.0 / 3.0), t, xi, eta, iteration, residual, damped,
                              tuple(history))

    state = LimitState(big_c, big_c ** (-5.0 / 3.0), t, xi, eta, max_iter, residual, damped, tuple(history))
    raise ConvergenceError(f"limit iteration did not converge in {max_iter} steps "
                           f"(last change {residual:.3e})", residual=residual, state=state)
