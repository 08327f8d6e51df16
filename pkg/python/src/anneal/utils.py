"""
Shared type aliases, the distinguished infinite inverse temperature and the base class (mixin)
used for the argument checks shared by the schedule builders.
"""
from __future__ import annotations

# IMPORTs
import math

# IMPORTs alias
import numpy as np

# IMPORTs local
from .errors import AssumptionViolation

# TYPE ANNOTATIONs
from typing import Any, TypeAlias
import numpy.typing as npt

# API public
__all__ = [
    "INF", "Beta", "LogWeight", "NEG_INF", "BaseCheck", "as_beta", "is_infinite", "reflect",
    "beta_to_json", "beta_from_json", "LevelArray",
]



class _Infinity:
    """
    The inverse temperature β = ∞. A singleton that compares greater than every float, so that
    sorted schedules and `β < INF` tests read naturally, while arithmetic on it has to go through
    'reflect' (2·∞ − β = ∞ is the only rule the package needs).
    """

    __slots__ = ()
    _instance: _Infinity | None = None

    def __new__(cls) -> _Infinity:
        if cls._instance is None: cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str: return "INF"
    def __str__(self) -> str: return "inf"
    def __float__(self) -> float: return math.inf
    def __hash__(self) -> int: return hash(math.inf)
    def __reduce__(self) -> tuple[Any, ...]: return (_Infinity, ())
    def __eq__(self, other: object) -> bool: return other is self
    def __lt__(self, other: object) -> bool: return False
    def __le__(self, other: object) -> bool: return other is self
    def __gt__(self, other: object) -> bool: return other is not self
    def __ge__(self, other: object) -> bool: return True

INF = _Infinity()

# TYPE ANNOTATIONs
Beta: TypeAlias = float | _Infinity
LogWeight: TypeAlias = float
LevelArray: TypeAlias = npt.NDArray[np.int64]
NEG_INF: LogWeight = -math.inf


def is_infinite(beta: Beta) -> bool:
    """
    Whether the inverse temperature is the distinguished ∞.
    """
    return beta is INF


def as_beta(value: Beta | str | int) -> Beta:
    """
    To convert a float, an int, math.inf or the string 'inf' to a Beta.

    Args:
        value (Beta | str | int): the value to convert.

    Raises:
        ValueError: if the value is NaN, negative or an unknown string.

    Returns:
        Beta: the corresponding inverse temperature.
    """

    if value is INF: return INF
    if isinstance(value, str):
        if value.strip().lower() in ('inf', '+inf', 'infinity'): return INF
        value = float(value)
    value = float(value)
    if math.isnan(value): raise ValueError("An inverse temperature cannot be NaN.")
    if value < 0: raise ValueError(f"Inverse temperatures are nonnegative, got {value}.")
    if math.isinf(value): return INF
    return value


def reflect(beta: Beta, beta_prime: Beta) -> Beta:
    """
    Gives 2β′ − β, the far point used by the Chebyshev ratio. The result can be negative (the
    reversed direction of a reversible schedule evaluates Z there).

    Args:
        beta (Beta): the current inverse temperature.
        beta_prime (Beta): the next inverse temperature (β′ ≥ β).

    Returns:
        Beta: 2β′ − β, which is ∞ whenever β′ = ∞.
    """

    if beta_prime is INF: return INF
    if beta is INF: raise ValueError("2β′ − β is undefined for β = ∞ and a finite β′.")
    return 2. * beta_prime - beta


def beta_to_json(beta: Beta) -> float | str:
    """
    JSON form of an inverse temperature: the string 'inf' for ∞, the float otherwise (Python's
    repr round-trips float64 exactly).
    """
    return "inf" if beta is INF else float(beta)


def beta_from_json(value: float | int | str) -> Beta:
    """
    Inverse of 'beta_to_json'.
    """
    return as_beta(value)



class BaseCheck:
    """
    Base class holding the checks shared by the classes that build or analyse schedules from the
    degree n and ln A alone.
    """

    @staticmethod
    def _check_degree(n: int, minimum: int = 1) -> int:
        """
        To check that the degree is an integer of at least 'minimum'.

        Raises:
            TypeError: if n is not an integer.
            AssumptionViolation: if n < minimum.
        """

        if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
            raise TypeError(f"The degree n must be an integer, got {type(n).__name__}.")
        if n < minimum:
            raise AssumptionViolation(f"n >= {minimum}", f"degree n = {n} is below {minimum}.")
        return int(n)

    @staticmethod
    def _check_ln_a(ln_a: float, minimum: float = 0., strict: bool = True) -> float:
        """
        To check ln A (always passed in log space, A itself is never materialised).

        Raises:
            AssumptionViolation: if ln A is not finite or below the minimum.
        """

        ln_a = float(ln_a)
        if not math.isfinite(ln_a):
            raise AssumptionViolation("ln A finite", f"ln A = {ln_a} is not finite.")
        if (ln_a <= minimum) if strict else (ln_a < minimum):
            sign = '>' if strict else '>='
            raise AssumptionViolation(f"ln A {sign} {minimum}", f"ln A = {ln_a} fails it.")
        return ln_a

    @staticmethod
    def _check_assumptions(n: int, ln_a: float, strict: bool = True) -> list[str]:
        """
        To check the technical assumptions ln n ≥ 1, ln ln A ≥ 1 and A ≥ ln n.

        Args:
            n (int): the degree.
            ln_a (float): ln A.
            strict (bool, optional): whether a violation raises. When False, the violated
                assumptions are only returned. Defaults to True.

        Raises:
            AssumptionViolation: if strict and one of the assumptions fails.

        Returns:
            list[str]: the violated assumptions (empty if none).
        """

        violated = []
        if n < 1 or math.log(n) < 1: violated.append("ln n >= 1")
        if ln_a <= 0 or math.log(ln_a) < 1: violated.append("ln ln A >= 1")
        if n > 1 and ln_a < math.log(math.log(n)): violated.append("A >= ln n")
        if strict and violated:
            raise AssumptionViolation(
                violated[0], f"n = {n}, ln A = {ln_a:.6g} violates {', '.join(violated)}.",
            )
        return violated
