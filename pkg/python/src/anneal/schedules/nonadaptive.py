"""
Schedules that only depend on the degree n and ln A: the uniform schedule, the schedule with a
geometric tail, the greedy witness of the non-adaptive lower bound and the reversible
augmentation of any schedule.
"""
from __future__ import annotations

# IMPORTs
import math
import logging

# IMPORTs local
from ..errors import AssumptionViolation, ContractViolation
from ..models.schedule import CoolingSchedule, Move
from ..partfn.log_weight import log_expm1
from ..utils import INF, BaseCheck

# API public
__all__ = [
    "uniform_schedule", "bezakova_schedule", "LowerBoundGreedy", "lower_bound_greedy",
    "augment_reversible",
]

logger = logging.getLogger(__name__)



def uniform_schedule(n: int, ln_a: float) -> CoolingSchedule:
    """
    The schedule 0, 1/n, 2/n, ..., ⌈n ln A⌉/n, ∞. Each interior step has a Chebyshev ratio of at
    most e and the last one at most 2. When A − 1 <= 1 the single step (0, ∞) already has ratio
    at most 2 and is returned.

    Args:
        n (int): the degree, n >= 1.
        ln_a (float): ln A > 0.

    Raises:
        AssumptionViolation: if n < 1 or ln A <= 0.

    Returns:
        CoolingSchedule: the uniform schedule.
    """

    n = BaseCheck._check_degree(n)
    ln_a = BaseCheck._check_ln_a(ln_a)
    if ln_a <= math.log(2.): return CoolingSchedule([0., INF])

    last = math.ceil(n * ln_a)
    return CoolingSchedule([i / n for i in range(last + 1)] + [INF])


def bezakova_schedule(n: int, ln_a: float) -> CoolingSchedule:
    """
    The schedule 0, 1/n, ..., k/n, kγ/n, kγ²/n, ..., kγ^t/n, ∞ with k = ⌈ln A⌉, γ = 1 + 1/ln A
    and t = ⌈(1 + ln A) ln n⌉, i.e. k + t + 2 temperatures.

    Args:
        n (int): the degree, n >= 2.
        ln_a (float): ln A >= 1.

    Raises:
        AssumptionViolation: if n < 2 or ln A < 1.

    Returns:
        CoolingSchedule: the schedule.
    """

    n = BaseCheck._check_degree(n, minimum=2)
    ln_a = BaseCheck._check_ln_a(ln_a, minimum=1., strict=False)

    k = math.ceil(ln_a)
    gamma = 1. + 1. / ln_a
    t = math.ceil((1. + ln_a) * math.log(n))
    points = [i / n for i in range(k + 1)] + [k * gamma ** j / n for j in range(1, t + 1)]
    return CoolingSchedule.from_points(points)



class LowerBoundGreedy(BaseCheck):
    """
    The greedy witness of the lower bound on non-adaptive schedules: from β_i, with k the
    largest integer of {1..n} such that (A−1)e^{-β_i k} > 4B, take β_{i+1} = β_i + ln(4B)/k, and
    jump to ∞ once (A−1)e^{-β_i} <= 4B. Its length is compared with
    ln(n/e)(ln(A−1)/ln(4B) − 1).
    Use the 'schedule', 'length', 'bound' and 'satisfied' properties to access the results.
    """

    def __init__(self, n: int, ln_a: float, bound_b: float) -> None:
        """
        Builds the greedy schedule.

        Args:
            n (int): the degree, n >= 1.
            ln_a (float): ln A.
            bound_b (float): the Chebyshev bound B > 0.

        Raises:
            AssumptionViolation: if A − 1 <= 4B.
            ContractViolation: if the greedy length is below the analytic bound.
        """

        self._n = self._check_degree(n)
        self._ln_a = self._check_ln_a(ln_a)
        if not bound_b > 0: raise ValueError(f"B must be positive, got {bound_b}.")
        self._ln_4b = math.log(4. * bound_b)
        self._ln_a_minus_1 = log_expm1(self._ln_a)
        if not self._ln_a_minus_1 > self._ln_4b:
            raise AssumptionViolation(
                "A - 1 > 4B", f"ln(A−1) = {self._ln_a_minus_1:.6g} <= ln(4B) = {self._ln_4b:.6g}.",
            )

        # RUN
        self._schedule = self._greedy()
        self._bound = (math.log(self._n) - 1.) * (self._ln_a_minus_1 / self._ln_4b - 1.)
        if self.length < self._bound:
            raise ContractViolation(
                f"greedy length {self.length} is below the analytic bound {self._bound:.6g}."
            )

    def _largest_k(self, beta: float) -> int:
        """
        The largest k in {1..n} with ln(A−1) − βk > ln(4B).
        """

        if beta == 0.: return self._n
        k = min(self._n, math.ceil((self._ln_a_minus_1 - self._ln_4b) / beta))
        while k > 1 and not self._ln_a_minus_1 - beta * k > self._ln_4b: k -= 1
        return k

    def _greedy(self) -> CoolingSchedule:
        betas = [0.]
        beta = 0.
        while self._ln_a_minus_1 - beta > self._ln_4b:
            beta += self._ln_4b / self._largest_k(beta)
            betas.append(beta)
        return CoolingSchedule(betas + [INF])

    @property
    def schedule(self) -> CoolingSchedule:
        return self._schedule

    @property
    def length(self) -> int:
        """
        The number of steps ℓ′ of the greedy schedule.
        """
        return self._schedule.length

    @property
    def bound(self) -> float:
        """
        ln(n/e)(ln(A−1)/ln(4B) − 1).
        """
        return self._bound

    @property
    def satisfied(self) -> bool:
        return self.length >= self._bound


def lower_bound_greedy(n: int, ln_a: float, bound_b: float) -> LowerBoundGreedy:
    """
    The greedy shortest non-adaptive schedule and its length bound report.
    """
    return LowerBoundGreedy(n, ln_a, bound_b)


def augment_reversible(schedule: CoolingSchedule, n: int) -> CoolingSchedule:
    """
    To make a Chebyshev schedule reversible: every finite interval [β_i, β_{i+1}] gets the
    points β_i + 2^j/n for j = 0..t, t the largest integer with 2^t/n <= β_{i+1} − β_i. The last
    interval [β_{ℓ−1}, ∞) is left as is. Every original temperature and move survives, the new
    ones are tagged AUGMENTED.

    Args:
        schedule (CoolingSchedule): the schedule to augment.
        n (int): the degree, n >= 1.

    Returns:
        CoolingSchedule: the augmented schedule.
    """

    n = BaseCheck._check_degree(n)
    betas: list = [schedule[0]]
    moves: list[Move] = []
    for (start, end), move in zip(schedule.pairs(), schedule.moves):
        if end is not INF:
            gap = end - start
            j = 0
            while 2. ** j / n <= gap:
                point = start + 2. ** j / n
                if betas[-1] < point < end:
                    betas.append(point)
                    moves.append(Move.AUGMENTED)
                j += 1
        betas.append(end)
        moves.append(move)
    logger.debug("augmented %d temperatures into %d", len(schedule), len(betas))
    return CoolingSchedule(betas, moves)
