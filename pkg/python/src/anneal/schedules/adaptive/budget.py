"""
Closed-form budgets of the adaptive schedule and of the annealing product: sample ceilings, the
sampler accuracy they require, and the length and move-count bounds.
"""
from __future__ import annotations

# IMPORTs
import math

# IMPORTs local
from ...utils import BaseCheck

# API public
__all__ = [
    "q_budget", "required_accuracy", "total_sample_budget", "total_sample_accuracy",
    "schedule_length_bound", "reversible_length_bound", "long_move_bound",
    "interval_emission_bound", "optimal_move_bound", "warm_chain_budget",
]



def _log_terms(n: int, ln_a: float) -> tuple[float, float]:
    n = BaseCheck._check_degree(n)
    ln_a = BaseCheck._check_ln_a(ln_a, minimum=1.)
    return math.log(n), math.log(ln_a)


def q_budget(n: int, ln_a: float, delta_prime: float) -> int:
    """
    The oracle-call ceiling Q = ⌈10⁷ (ln A)(ln n + ln ln A)⁵ ln(1/δ′)⌉ of the faithful mode.

    Args:
        n (int): the degree.
        ln_a (float): ln A > 1.
        delta_prime (float): the failure probability in (0, 1).

    Raises:
        ValueError: if δ′ is not in (0, 1).

    Returns:
        int: the budget.
    """

    if not 0. < delta_prime < 1.: raise ValueError(f"δ′ must lie in (0, 1), got {delta_prime}.")
    ln_n, ln_ln_a = _log_terms(n, ln_a)
    return math.ceil(1e7 * ln_a * (ln_n + ln_ln_a) ** 5 * math.log(1. / delta_prime))


def required_accuracy(n: int, ln_a: float, delta_prime: float) -> float:
    """
    The sampler variation distance δ′/(2Q) under which the run keeps its guarantee.
    """
    return delta_prime / (2. * q_budget(n, ln_a, delta_prime))


def total_sample_budget(n: int, ln_a: float, epsilon: float) -> float:
    """
    Samples of the whole counting pipeline: 10¹⁰/ε² (ln A)(ln n + ln ln A)⁵.
    """

    if not 0. < epsilon <= 1.: raise ValueError(f"ε must lie in (0, 1], got {epsilon}.")
    ln_n, ln_ln_a = _log_terms(n, ln_a)
    return 1e10 / epsilon ** 2 * ln_a * (ln_n + ln_ln_a) ** 5


def total_sample_accuracy(n: int, ln_a: float, epsilon: float) -> float:
    """
    ε²/(10⁸ (ln A)(ln n + ln ln A)⁵).
    """

    ln_n, ln_ln_a = _log_terms(n, ln_a)
    return epsilon ** 2 / (1e8 * ln_a * (ln_n + ln_ln_a) ** 5)


def warm_chain_budget(n: int, ln_a: float, delta_prime: float, tau2: int) -> int:
    """
    Q·τ₂, the chain steps of a warm-started run.
    """
    return q_budget(n, ln_a, delta_prime) * tau2


def schedule_length_bound(n: int, ln_a: float) -> float:
    """
    38 √(ln A)(ln n) ln ln A.
    """

    ln_n, ln_ln_a = _log_terms(n, ln_a)
    return 38. * math.sqrt(ln_a) * ln_n * ln_ln_a


def reversible_length_bound(n: int, ln_a: float) -> float:
    """
    38 √(ln A)(ln n)(ln ln A)(ln n + ln ln A).
    """

    ln_n, ln_ln_a = _log_terms(n, ln_a)
    return schedule_length_bound(n, ln_a) * (ln_n + ln_ln_a)


def long_move_bound(n: int, ln_a: float) -> float:
    """
    26 √(ln A) ln n.
    """

    ln_n, _ = _log_terms(n, ln_a)
    return 26. * math.sqrt(ln_a) * ln_n


def interval_emission_bound(n: int, ln_a: float) -> float:
    """
    8 √(ln A)(ln n) ln ln A, the temperatures emitted by interval moves.
    """

    ln_n, ln_ln_a = _log_terms(n, ln_a)
    return 8. * math.sqrt(ln_a) * ln_n * ln_ln_a


def optimal_move_bound(n: int, ln_a: float) -> float:
    """
    4 √((ln A) ln n) ln ln A.
    """

    ln_n, ln_ln_a = _log_terms(n, ln_a)
    return 4. * math.sqrt(ln_a * ln_n) * ln_ln_a
