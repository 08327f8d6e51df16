"""
Bisection on monotone predicates: the search used by the adaptive schedule and the bracketing
helpers of the deterministic constructions.
"""
from __future__ import annotations

# IMPORTs
import logging

# IMPORTs local
from ...errors import ContractViolation

# TYPE ANNOTATIONs
from typing import Callable

# API public
__all__ = ["monotone_bsearch", "bracket_by_doubling", "bisect_last_true"]

logger = logging.getLogger(__name__)



def monotone_bsearch(
        lo: float,
        hi: float,
        predicate: Callable[[float], bool],
        precision: float,
        check_lo: bool = True,
    ) -> float:
    """
    Binary search on a predicate that is true on [lo, x*) and false after. Returns hi if the
    predicate holds at hi; otherwise bisects until the bracket [λ, ρ] is at most 'precision' wide
    and returns λ, the last point where it held.

    Args:
        lo (float): a point where the predicate holds.
        hi (float): the right end of the search, hi >= lo.
        predicate (Callable[[float], bool]): the (possibly randomized) predicate.
        precision (float): the final bracket width, > 0.
        check_lo (bool, optional): whether to evaluate the predicate at lo. Callers that already
            know it holds there pass False. Defaults to True.

    Raises:
        ContractViolation: if the predicate is false at lo.
        ValueError: if hi < lo or precision <= 0.

    Returns:
        float: hi, or the last true endpoint λ.
    """

    if hi < lo: raise ValueError(f"Empty search range [{lo}, {hi}].")
    if not precision > 0: raise ValueError(f"precision must be positive, got {precision}.")
    if check_lo and not predicate(lo):
        raise ContractViolation(f"the predicate is false at the left end {lo}.")
    if predicate(hi): return hi

    evaluations = 0
    while hi - lo > precision:
        middle = .5 * (lo + hi)
        if middle <= lo or middle >= hi: break
        if predicate(middle):
            lo = middle
        else:
            hi = middle
        evaluations += 1
    logger.debug("bisection stopped at %.6g after %d evaluations", lo, evaluations)
    return lo


def bracket_by_doubling(
        start: float,
        step: float,
        predicate: Callable[[float], bool],
        max_doublings: int = 1100,
    ) -> float:
    """
    The first point start + step·2^j (j >= 0) where the predicate fails.

    Raises:
        ContractViolation: if no failing point is found.
    """

    distance = step
    for _ in range(max_doublings):
        if not predicate(start + distance): return start + distance
        distance *= 2.
    raise ContractViolation(f"no bracket found from {start} after {max_doublings} doublings.")


def bisect_last_true(
        lo: float,
        hi: float,
        predicate: Callable[[float], bool],
        tolerance: float = 1e-10,
    ) -> float:
    """
    Deterministic bisection: the predicate holds at lo and fails at hi. Returns the last true
    point once the bracket is below 'tolerance'.
    """

    while hi - lo > tolerance:
        middle = .5 * (lo + hi)
        if middle <= lo or middle >= hi: break
        if predicate(middle):
            lo = middle
        else:
            hi = middle
    return lo
