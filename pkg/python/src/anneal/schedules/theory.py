"""
Deterministic constructions on an explicit partition function: the piecewise-linear
approximation of the convex curve f = ln Z, the e²-Chebyshev existence schedule, the
length-optimal greedy schedule and the numeric check of the lower-bound inequality.
"""
from __future__ import annotations

# IMPORTs
import math
import logging

# IMPORTs alias
import numpy as np

# IMPORTs sub
from dataclasses import dataclass

# IMPORTs local
from .adaptive.search import bisect_last_true, bracket_by_doubling
from ..errors import AssumptionViolation, ContractViolation
from ..models.schedule import CoolingSchedule
from ..partfn.partition_function import PartitionFunction
from ..partfn.verification import verify_schedule
from ..utils import INF, BaseCheck, Beta

# TYPE ANNOTATIONs
from typing import Callable
import numpy.typing as npt

# API public
__all__ = [
    "ConvexCurve", "PLApprox", "pl_approx", "existence_schedule", "greedy_schedule",
    "LBInequality", "check_lb_inequality", "existence_length_bound", "adaptive_length_bound",
    "unit_level",
]

# BISECTION tolerance (absolute, in β)
BISECTION_TOLERANCE = 1e-10
# LOG SLACK of the monotonicity checks
_SLACK = 1e-9

logger = logging.getLogger(__name__)



@dataclass(frozen=True)
class ConvexCurve:
    """
    A decreasing convex function f with its (increasing, negative) derivative.
    """

    f: Callable[[float], float]
    f_prime: Callable[[float], float]

    @classmethod
    def from_partition_function(cls, z: PartitionFunction) -> ConvexCurve:
        """
        f = ln Z, f′ = −E_β(H).
        """
        return cls(z.log_z, z.f_prime)

    @classmethod
    def log_binomial(cls, n: int) -> ConvexCurve:
        """
        f(x) = n ln(1 + e^{-x}), the curve of Z(x) = (1 + e^{-x})^n.
        """

        return cls(
            lambda x: n * float(np.logaddexp(0., -x)),
            lambda x: -n / (1. + math.exp(x)) if x < 700 else 0.,
        )


class PLApprox:
    """
    Greedy piecewise-linear approximation of a convex curve on [0, γ]: from γ_i, γ_{i+1} is the
    largest y <= γ with f((γ_i + y)/2) >= (f(γ_i) + f(y))/2 − 1. Each γ_{i+1} is found by
    bisection on r(y) = f((γ_i+y)/2) − (f(γ_i)+f(y))/2 + 1, decreasing in y for convex f.
    Use the 'breakpoints', 'values', 'pieces' and 'bound' properties to access the results.
    """

    def __init__(self, curve: ConvexCurve, gamma: float, tol: float = BISECTION_TOLERANCE) -> None:
        """
        Builds the approximation.

        Args:
            curve (ConvexCurve): the decreasing convex curve.
            gamma (float): the right end γ > 0 of the domain.
            tol (float, optional): the bisection tolerance. Defaults to 1e-10.

        Raises:
            ContractViolation: if the residual is found non-monotone (f is not convex).
        """

        if not gamma > 0: raise ValueError(f"γ must be positive, got {gamma}.")
        self._curve = curve
        self._gamma = float(gamma)
        self._tol = tol

        # RUN
        self._breakpoints = self._build()
        self._values = np.array([curve.f(x) for x in self._breakpoints])

    def _residual(self, start: float, f_start: float, y: float) -> float:
        return self._curve.f(.5 * (start + y)) - .5 * (f_start + self._curve.f(y)) + 1.

    def _next_breakpoint(self, start: float) -> float:
        """
        The largest y in [start, γ] with r(y) >= 0, checking that r decreases along the way.
        """

        f_start = self._curve.f(start)
        if self._residual(start, f_start, self._gamma) >= 0: return self._gamma

        lo, hi = start, self._gamma
        r_lo, r_hi = 1., self._residual(start, f_start, hi)
        while hi - lo > self._tol:
            middle = .5 * (lo + hi)
            if middle <= lo or middle >= hi: break
            r_middle = self._residual(start, f_start, middle)
            if r_middle > r_lo + _SLACK or r_middle < r_hi - _SLACK:
                raise ContractViolation(
                    f"midpoint residual is not decreasing near y = {middle:.6g}: the curve is not "
                    "convex."
                )
            if r_middle >= 0:
                lo, r_lo = middle, r_middle
            else:
                hi, r_hi = middle, r_middle
        return lo

    def _build(self) -> npt.NDArray[np.float64]:
        points = [0.]
        while points[-1] < self._gamma:
            following = self._next_breakpoint(points[-1])
            if not following > points[-1]:
                raise ContractViolation(f"no progress from breakpoint {points[-1]:.6g}.")
            points.append(following)
        return np.asarray(points)

    @property
    def breakpoints(self) -> npt.NDArray[np.float64]:
        """
        γ_0 = 0 < γ_1 < ... < γ_j = γ.
        """
        return self._breakpoints

    @property
    def values(self) -> npt.NDArray[np.float64]:
        """
        f(γ_i) at every breakpoint.
        """
        return self._values

    @property
    def pieces(self) -> int:
        """
        The number of segments j.
        """
        return self._breakpoints.size - 1

    @property
    def bound(self) -> float:
        """
        1 + √((f(0) − f(γ)) ln(f′(0)/f′(γ))).
        """

        drop = self._curve.f(0.) - self._curve.f(self._gamma)
        slope_0, slope_gamma = self._curve.f_prime(0.), self._curve.f_prime(self._gamma)
        if slope_gamma == 0. or slope_0 == 0.: return math.inf
        return 1. + math.sqrt(max(drop, 0.) * max(math.log(slope_0 / slope_gamma), 0.))

    def midpoint_slacks(self) -> npt.NDArray[np.float64]:
        """
        f(midpoint) − (f(γ_i) + f(γ_{i+1}))/2 per segment: >= −1, and ≈ −1 on every segment but
        the last.
        """

        middles = .5 * (self._breakpoints[:-1] + self._breakpoints[1:])
        return np.array([self._curve.f(m) for m in middles]) - .5 * (
            self._values[:-1] + self._values[1:]
        )

    def g(self, x: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """
        The piecewise-linear approximation at x.
        """
        return np.interp(x, self._breakpoints, self._values)

    def rows(self, points: int = 201) -> list[tuple[float, float, float]]:
        """
        (x, f(x), g(x)) on a regular grid of [0, γ].
        """

        grid = np.linspace(0., self._gamma, points)
        approximation = self.g(grid)
        return [(float(x), self._curve.f(float(x)), float(y)) for x, y in zip(grid, approximation)]


def pl_approx(curve: ConvexCurve, gamma: float, tol: float = BISECTION_TOLERANCE) -> PLApprox:
    """
    The greedy piecewise-linear approximation of the curve on [0, γ].
    """
    return PLApprox(curve, gamma, tol)


def existence_length_bound(n: int, ln_a: float) -> float:
    """
    4 (ln ln A) √((ln A) ln n).
    """
    return 4. * math.log(ln_a) * math.sqrt(ln_a * math.log(n))


def adaptive_length_bound(n: int, bound_b: float) -> float:
    """
    √(n / (20 ln B)), the minimum length of any B-Chebyshev schedule of (1 + e^{-β})^n.
    """
    return math.sqrt(n / (20. * math.log(bound_b)))


def unit_level(z: PartitionFunction) -> float:
    """
    γ with ln Z(γ) = 1 for a normalised Z with ln Z(0) > 1.
    """

    above = lambda x: z.log_z(x) > 1.
    hi = bracket_by_doubling(0., 1., above)
    return bisect_last_true(0., hi, above, BISECTION_TOLERANCE)


def existence_schedule(z: PartitionFunction, strict: bool = True) -> CoolingSchedule:
    """
    The e²-Chebyshev schedule of the existence construction. Z is normalised to Z(∞) = 1, γ
    solves ln Z(γ) = 1, [0, γ] is cut by 'pl_approx' and every segment [γ_i, γ_{i+1}] with width
    Δ receives γ_i + (1 − 2^{-r})Δ for r = 1..t, t = ⌈ln ln A⌉, before γ_{i+1}. t is raised
    while the jump to γ_{i+1} is above e², up to ⌈log₂ ln A⌉ where the jump is at most e² by
    convexity. The schedule ends with ∞ and is verified with the exact oracle.

    Args:
        z (PartitionFunction): the partition function, Z(∞) >= 1.
        strict (bool, optional): whether to refuse instances breaking ln n >= 1, ln ln A >= 1 and
            A >= ln n. When False they are only logged. Defaults to True.

    Raises:
        AssumptionViolation: if strict and an assumption fails.
        ContractViolation: if the constructed schedule fails the e² verification.

    Returns:
        CoolingSchedule: the schedule.
    """

    normalized = z.normalized()
    if normalized.is_constant or normalized.ln_a <= 1.:
        return CoolingSchedule([0., INF])

    n, ln_a = z.degree, z.ln_a
    violated = BaseCheck._check_assumptions(n, ln_a, strict=strict)
    if violated: logger.warning("existence schedule built despite: %s", ", ".join(violated))

    gamma = unit_level(normalized)
    approximation = pl_approx(ConvexCurve.from_partition_function(normalized), gamma)
    base_t = max(1, math.ceil(math.log(ln_a))) if ln_a > 1. else 1
    log2_t = max(base_t, math.ceil(math.log2(ln_a))) if ln_a > 1. else base_t

    betas: list[Beta] = [0.]
    for start, end in zip(approximation.breakpoints[:-1], approximation.breakpoints[1:]):
        width = end - start
        t = base_t
        while True:
            last = start + (1. - 2. ** -t) * width
            if normalized.log_chebyshev_ratio(last, end) <= 2. + 1e-12: break
            if t >= log2_t:
                raise ContractViolation(f"segment [{start:.6g}, {end:.6g}] cannot be refined.")
            t += 1
        if t > base_t:
            logger.debug("segment [%.6g, %.6g] refined to t = %d (base %d)", start, end, t, base_t)
        for r in range(1, t + 1):
            point = float(start + (1. - 2. ** -r) * width)
            if point > betas[-1]: betas.append(point)
        if float(end) > betas[-1]: betas.append(float(end))
    schedule = CoolingSchedule(betas + [INF])

    verification = verify_schedule(normalized, schedule, math.e ** 2)
    if not verification.passed:
        raise ContractViolation(
            f"existence schedule fails e² at steps {verification.failures} "
            f"(worst log ratio {verification.worst_log_ratio:.6g})."
        )
    logger.info(
        "existence schedule: %d pieces, %d steps (bound %.4g)",
        approximation.pieces, schedule.length, existence_length_bound(max(n, 2), max(ln_a, 1.)),
    )
    return schedule


def greedy_schedule(z: PartitionFunction, bound_b: float) -> CoolingSchedule:
    """
    The length-optimal B-Chebyshev schedule: from β_i, β_{i+1} is the largest β′ with
    Z(2β′−β_i) Z(β_i) / Z(β′)² <= B (found by doubling then bisection to 1e-10), and the schedule
    jumps to ∞ as soon as Z(β_i)/Z(∞) <= B.

    Args:
        z (PartitionFunction): the partition function, Z(∞) >= 1.
        bound_b (float): B > 1.

    Raises:
        AssumptionViolation: if B <= 1.

    Returns:
        CoolingSchedule: the schedule.
    """

    if not bound_b > 1: raise AssumptionViolation("B > 1", f"B = {bound_b}.")
    ln_b = math.log(bound_b)
    step = 1. / max(z.degree, 1)

    betas: list[Beta] = [0.]
    beta = 0.
    while z.log_z(beta) - z.log_z_infinity > ln_b:
        within = lambda x, start=beta: z.log_chebyshev_ratio(start, x) <= ln_b
        hi = bracket_by_doubling(beta, step, within)
        following = bisect_last_true(beta, hi, within, BISECTION_TOLERANCE)
        if not following > beta:
            raise ContractViolation(f"greedy schedule stalled at β = {beta:.6g}.")
        betas.append(following)
        beta = following
    schedule = CoolingSchedule(betas + [INF])
    logger.info("greedy schedule for B = %.4g: %d steps", bound_b, schedule.length)
    return schedule



class LBInequality:
    """
    Numeric check of f(β) + f(β + 2x) − 2f(β + x) >= (n/20)x² for f(β) = n ln(1 + e^{-β}) on a
    grid of (β, x) ∈ [0, 1]². Use 'min_slack' and 'argmin' to access the results.
    """

    def __init__(self, n: int, grid: int = 101) -> None:
        self._n = BaseCheck._check_degree(n)
        axis = np.linspace(0., 1., grid)
        betas, steps = np.meshgrid(axis, axis, indexing='ij')
        f = lambda x: self._n * np.logaddexp(0., -x)

        # RUN
        self._slacks = (
            f(betas) + f(betas + 2. * steps) - 2. * f(betas + steps) - self._n / 20. * steps ** 2
        )
        self._axis = axis

    @property
    def slacks(self) -> npt.NDArray[np.float64]:
        """
        Slack on the grid, indexed [β, x].
        """
        return self._slacks

    @property
    def min_slack(self) -> float:
        return float(self._slacks.min())

    @property
    def argmin(self) -> tuple[float, float]:
        """
        (β, x) of the minimum slack.
        """

        i, j = np.unravel_index(np.argmin(self._slacks), self._slacks.shape)
        return float(self._axis[i]), float(self._axis[j])

    def holds(self, tolerance: float = 1e-9) -> bool:
        return self.min_slack >= -tolerance


def check_lb_inequality(n: int, grid: int = 101) -> LBInequality:
    """
    The lower-bound inequality report for f(β) = n ln(1 + e^{-β}).
    """
    return LBInequality(n, grid)


