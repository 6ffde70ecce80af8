"""
Direct solution of the Thomas-Fermi equation chi'' = chi^(3/2) / x^(1/2) by shooting
in the initial slope a.

Each shot starts at x = eps from the small-x expansion

    chi = 1 - a x + (4/3) x^(3/2) - (2a/5) x^(5/2)
    psi = a - 2 x^(1/2) + a x^(3/2)

and integrates (chi, psi) together with the four moments
int x^(beta-1/2) chi^(3/2) and int x^(beta-1/2) chi^(5/2) (beta = 0, 1) until chi
crosses zero. A slope that never gives a crossing before x_max (or whose psi
turns non-positive first) is not an ion.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from exceptions import BracketError, DomainError, NotAnIonError

logger = logging.getLogger(__name__)

DEFAULT_RTOL = 1e-10
DEFAULT_ATOL = 1e-12
DEFAULT_X_MAX = 200.0
DEFAULT_EPS = 1e-6
METHOD = "RK45"

NUCLEUS = "I_0(0)"       # int x^-1/2 chi^3/2
ELECTRONS = "I_0(1)"     # int x^1/2 chi^3/2
KINETIC = "I_1(0)"       # int x^-1/2 chi^5/2
FOURTH = "I_1(1)"        # int x^1/2 chi^5/2
INTEGRALS = (NUCLEUS, ELECTRONS, KINETIC, FOURTH)


@dataclass(frozen=True, eq=False)
class OracleSolution:
    """
    One ion solution of the Thomas-Fermi equation.

    Attributes:
        a: Initial slope
        x: Sample abscissae on [eps, X]
        chi: Screening function at the samples
        psi: -dchi/dx at the samples
        X: Ion radius (first zero of chi)
        b: Final slope psi(X), the ionization potential
        N: 1 - b X
        B: (3/7)(a - b(1 - N))
        integrals: The four integrals over [0, X]
    """

    a: float
    x: np.ndarray
    chi: np.ndarray
    psi: np.ndarray
    X: float
    b: float
    N: float
    B: float
    integrals: Dict[str, float] = field(default_factory=dict)

    @property
    def K(self) -> float:
        return 2.0 / self.a**1.5

    @property
    def density(self) -> np.ndarray:
        """rho = (chi/x)^(3/2) at the samples."""
        return (np.maximum(self.chi, 0.0) / self.x) ** 1.5

    @property
    def enclosed_fraction(self) -> np.ndarray:
        """n(x) = 1 - chi - x psi at the samples."""
        return 1.0 - self.chi - self.x * self.psi


@dataclass(frozen=True)
class IdentityReport:
    """
    Integral identities on one solution.

    Attributes:
        values: identity name -> (integral, closed form)
    """

    values: Dict[str, Tuple[float, float]]

    @property
    def deviations(self) -> Dict[str, float]:
        return {name: abs(lhs - rhs) for name, (lhs, rhs) in self.values.items()}

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values())

    def passed(self, tol: float) -> bool:
        return self.max_deviation <= tol


def seed_state(a: float, eps: float) -> np.ndarray:
    """(chi, psi, I_0(0), I_0(1), I_1(0), I_1(1)) at x = eps from the small-x expansion."""
    root = math.sqrt(eps)
    chi = 1.0 - a * eps + 4.0 / 3.0 * eps * root - 0.4 * a * eps**2 * root
    psi = a - 2.0 * root + a * eps * root
    return np.array([
        chi,
        psi,
        2.0 * root - a * eps * root,
        2.0 / 3.0 * eps * root,
        2.0 * root - 5.0 / 3.0 * a * eps * root,
        2.0 / 3.0 * eps * root,
    ])


def _rhs(x: float, y: np.ndarray) -> np.ndarray:
    chi = max(y[0], 0.0)
    root = math.sqrt(x)
    chi32 = chi * math.sqrt(chi)
    chi52 = chi32 * chi
    return np.array([-y[1], -chi32 / root, chi32 / root, chi32 * root, chi52 / root, chi52 * root])


def _edge(x: float, y: np.ndarray) -> float:
    return y[0]


_edge.terminal = True
_edge.direction = -1


def _turn(x: float, y: np.ndarray) -> float:
    return y[1]


_turn.terminal = True
_turn.direction = -1


def shoot(a: float, rtol: float = DEFAULT_RTOL, atol: float = DEFAULT_ATOL,
          x_max: float = DEFAULT_X_MAX, eps: float = DEFAULT_EPS,
          n_samples: int = 2001) -> OracleSolution:
    """
    Integrate one initial-value problem and extract the ion quantities.

    Args:
        a: Initial slope
        rtol: Relative tolerance of the Runge-Kutta integrator
        atol: Absolute tolerance of the Runge-Kutta integrator
        x_max: Horizon for the zero crossing
        eps: Start offset from the origin
        n_samples: Number of log-spaced trajectory samples

    Returns:
        OracleSolution

    Raises:
        DomainError: If a is not positive
        NotAnIonError: If chi does not reach zero before x_max
    """
    if a <= 0.0:
        raise DomainError(f"initial slope must be positive, got {a}")
    sol = solve_ivp(_rhs, (eps, x_max), seed_state(a, eps), method=METHOD,
                    rtol=rtol, atol=atol, events=(_edge, _turn), dense_output=True)
    if sol.t_events[0].size == 0:
        reason = "turned" if sol.t_events[1].size else "horizon"
        logger.debug(f"shot a={a!r}: no crossing ({reason})")
        raise NotAnIonError(a, reason)

    radius = float(sol.t_events[0][0])
    edge = sol.y_events[0][0]
    b = float(edge[1])
    n_ratio = 1.0 - b * radius
    binding = 3.0 / 7.0 * (a - b * (1.0 - n_ratio))

    x = np.geomspace(eps, radius, n_samples)
    chi, psi = sol.sol(x)[:2]
    chi[-1] = 0.0
    psi[-1] = b
    logger.debug(f"shot a={a!r}: X={radius:.9f} b={b:.9f} N={n_ratio:.9f}")
    return OracleSolution(a=a, x=x, chi=chi, psi=psi, X=radius, b=b, N=n_ratio, B=binding,
                          integrals=dict(zip(INTEGRALS, (float(v) for v in edge[2:]))))


def _is_ion(a: float, **options) -> bool:
    try:
        shoot(a, n_samples=3, **options)
    except NotAnIonError:
        return False
    return True


def critical_slope(tol: float = 1e-4, bracket: Tuple[float, float] = (1.5, 2.0), **options) -> float:
    """
    Bisect for the neutral-atom slope a*, the boundary of the ion branch.

    Args:
        tol: Width of the final bracket
        bracket: (lower, upper) slopes; lower must not give an ion, upper must
        **options: Passed on to shoot()

    Returns:
        Midpoint of the final bracket

    Raises:
        DomainError: If tol is not positive
        BracketError: If the bracket does not straddle a*
    """
    if tol <= 0.0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    low, high = bracket
    if _is_ion(low, **options) or not _is_ion(high, **options):
        raise BracketError(f"slopes {bracket} do not straddle the neutral atom")
    while high - low > tol:
        middle = 0.5 * (low + high)
        if _is_ion(middle, **options):
            high = middle
        else:
            low = middle
        logger.debug(f"critical slope bracket [{low:.9f}, {high:.9f}]")
    return 0.5 * (low + high)


def _electron_ratio(a: float, **options) -> float:
    return shoot(a, n_samples=3, **options).N


def solve_for_N(N_target: float, tol: float = 1e-8, floor: float = 1.5,
                max_steps: int = 60, **options) -> OracleSolution:
    """
    Find the slope whose ion has e:p-ratio N_target.

    The upper slope is doubled until N drops below the target; the lower one
    walks towards the non-ion floor while N stays below it. Brent's method
    then closes the bracket.

    Args:
        N_target: Target e:p-ratio in (0, 1)
        tol: Allowed |N - N_target| of the returned solution
        floor: A slope known not to give an ion
        max_steps: Cap on the bracketing steps
        **options: Passed on to shoot()

    Returns:
        OracleSolution with N within tol of N_target

    Raises:
        DomainError: If N_target is outside (0, 1)
        BracketError: If no bracket is found or the root misses tol
    """
    if not 0.0 < N_target < 1.0:
        raise DomainError(f"target e:p-ratio must lie in (0, 1), got {N_target}")

    high = 2.0
    for _ in range(max_steps):
        if _electron_ratio(high, **options) < N_target:
            break
        high *= 2.0
    else:
        raise BracketError(f"no slope found with N below {N_target}")

    low: Optional[float] = None
    candidate = 0.5 * (floor + high)
    for _ in range(max_steps):
        try:
            n_ratio = _electron_ratio(candidate, **options)
        except NotAnIonError:
            floor = candidate
        else:
            if n_ratio > N_target:
                low = candidate
                break
            high = candidate
        candidate = 0.5 * (floor + high)
    if low is None:
        raise BracketError(f"no slope found with N above {N_target}")

    root = brentq(lambda a: _electron_ratio(a, **options) - N_target, low, high,
                  xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=200)
    solution = shoot(root, **options)
    if abs(solution.N - N_target) > tol:
        raise BracketError(f"root a={root!r} gives N={solution.N!r}, not within {tol} of {N_target}")
    logger.info(f"N={N_target}: slope a={root:.9f}")
    return solution


def verify_integrals(sol: OracleSolution) -> IdentityReport:
    """
    Compare the integrals over [0, X] with their closed forms.

        I_0(0) = a - b                 I_0(1) = 1 - bX = N
        I_1(0) = (5/7)(a - b^2 X)      I_1(1) = (5/16)(1 - b^2 X^2) = (5/16) N (2 - N)
        (3/5) I_1(0) = B               (virial theorem)
    """
    a, b, radius, n_ratio = sol.a, sol.b, sol.X, sol.N
    i = sol.integrals
    return IdentityReport({
        "I_0(0) = a - b": (i[NUCLEUS], a - b),
        "I_0(1) = N": (i[ELECTRONS], n_ratio),
        "I_1(0) = (5/7)(a - b^2 X)": (i[KINETIC], 5.0 / 7.0 * (a - b * b * radius)),
        "I_1(1) = (5/16)(1 - b^2 X^2)": (i[FOURTH], 5.0 / 16.0 * (1.0 - (b * radius) ** 2)),
        "I_1(1) = (5/16) N (2 - N)": (i[FOURTH], 5.0 / 16.0 * n_ratio * (2.0 - n_ratio)),
        "(3/5) I_1(0) = B": (0.6 * i[KINETIC], sol.B),
    })


def slope_relation_residual(a: float, h: float = 1e-3, **options) -> float:
    """
    b X db/da + 4 b^2 dX/da + 3 by central differences at slope a.

    Zero along the family of ion solutions.
    """
    centre = shoot(a, n_samples=3, **options)
    up = shoot(a + h, n_samples=3, **options)
    down = shoot(a - h, n_samples=3, **options)
    db = (up.b - down.b) / (2.0 * h)
    dx = (up.X - down.X) / (2.0 * h)
    return centre.b * centre.X * db + 4.0 * centre.b**2 * dx + 3.0


def fundamental_relation_residual(a: float, h: float = 1e-3, **options) -> float:
    """
    (b X)^(7/3) dc/da - 1 with c = b^(-1/3) X^(-4/3), by central differences at slope a.

    Zero along the family of ion solutions.
    """
    def fundamental(sol: OracleSolution) -> float:
        return sol.b ** (-1.0 / 3.0) * sol.X ** (-4.0 / 3.0)

    centre = shoot(a, n_samples=3, **options)
    up = shoot(a + h, n_samples=3, **options)
    down = shoot(a - h, n_samples=3, **options)
    dc = (fundamental(up) - fundamental(down)) / (2.0 * h)
    return (centre.b * centre.X) ** (7.0 / 3.0) * dc - 1.0
