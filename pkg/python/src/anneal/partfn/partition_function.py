"""
Exact, numerically stable arithmetic on an explicitly given partition function
Z(β) = Σ_i a_i e^{-iβ}. Everything happens in natural-log space since A = Z(0) can be k^n.
"""
from __future__ import annotations

# IMPORTs
import math

# IMPORTs alias
import numpy as np

# IMPORTs sub
from scipy.special import gammaln

# IMPORTs local
from .log_weight import check_log_weights, log_sum
from ..errors import AssumptionViolation
from ..utils import INF, NEG_INF, Beta, LogWeight, reflect

# TYPE ANNOTATIONs
from typing import Any
import numpy.typing as npt

# API public
__all__ = ["PartitionFunction", "log_z", "f_prime", "chebyshev_ratio"]

# TOLERANCE on a_0 >= 1 (log space)
_A0_SLACK = 1e-12



class PartitionFunction:
    """
    A partition function of degree n given by its coefficients in log space
    (log_coeffs[i] = ln a_i, NEG_INF for a_i = 0), with a_0 >= 1.
    It is the exact oracle: ln Z(β), f′(β) and the Chebyshev ratio of a pair of inverse
    temperatures. Instances are immutable and safe to share between threads.
    """

    def __init__(self, log_coeffs: npt.ArrayLike, check_a0: bool = True) -> None:
        """
        Builds the partition function from the natural logs of its coefficients.

        Args:
            log_coeffs (npt.ArrayLike): ln a_0, ..., ln a_n. '-inf' (string or float) encodes a
                zero coefficient.
            check_a0 (bool, optional): whether to enforce a_0 >= 1. Defaults to True.

        Raises:
            ValueError: if the sequence is empty or contains NaN/+inf.
            AssumptionViolation: if a_0 < 1 and 'check_a0' is True.
        """

        coeffs = check_log_weights(log_coeffs)
        if coeffs.size == 0: raise ValueError("A partition function needs at least a_0.")
        if check_a0 and coeffs[0] < -_A0_SLACK:
            raise AssumptionViolation(
                "a_0 >= 1",
                f"ln a_0 = {coeffs[0]:.6g}; a partition function needs Z(∞) = a_0 >= 1.",
            )
        coeffs.setflags(write=False)
        self._log_coeffs = coeffs
        self._levels = np.arange(coeffs.size, dtype=np.float64)
        self._support = np.flatnonzero(np.isfinite(coeffs))

    @classmethod
    def from_coefficients(cls, coeffs: npt.ArrayLike) -> PartitionFunction:
        """
        From the linear coefficients a_0, ..., a_n (small instances only).
        """

        with np.errstate(divide='ignore'):
            return cls(np.log(np.asarray(coeffs, dtype=np.float64)))

    @classmethod
    def binomial_power(cls, n: int) -> PartitionFunction:
        """
        Z(β) = (1 + e^{-β})^n, i.e. a_i = C(n, i).
        """

        i = np.arange(n + 1, dtype=np.float64)
        return cls(gammaln(n + 1.) - gammaln(i + 1.) - gammaln(n - i + 1.))

    @classmethod
    def two_atom(cls, ln_a_total: float, a: float, n: int) -> PartitionFunction:
        """
        Z(β) = (A / (1 + a)) (1 + a e^{-βn}), the extremal instance of the first-step bound of
        non-adaptive schedules.

        Args:
            ln_a_total (float): ln A.
            a (float): the weight ratio a > 0 of the top level.
            n (int): the degree.
        """

        coeffs = np.full(n + 1, NEG_INF)
        base = ln_a_total - math.log1p(a)
        coeffs[0] = base
        coeffs[n] = base + math.log(a) if n > 0 else np.logaddexp(base, base + math.log(a))
        return cls(coeffs)

    @classmethod
    def random(
            cls,
            rng: np.random.Generator,
            n: int,
            ln_a: float,
            zero_fraction: float = 0.2,
        ) -> PartitionFunction:
        """
        A random instance with a_0 = 1 and Z(0) = 1 + e^{ln_a}, so that ln A is ln_a up to
        ln(1 + e^{-ln_a}). About 'zero_fraction' of the levels 1..n are empty (never all of them).

        Args:
            rng (np.random.Generator): the random stream.
            n (int): the degree, n >= 1.
            ln_a (float): the target ln A.
            zero_fraction (float, optional): fraction of empty levels. Defaults to 0.2.
        """

        if n < 1: raise ValueError(f"A random instance needs n >= 1, got {n}.")
        raw = rng.uniform(-5., 0., size=n)
        empty = rng.random(n) < zero_fraction
        empty[rng.integers(n)] = False
        raw[empty] = NEG_INF
        coeffs = np.empty(n + 1, dtype=np.float64)
        coeffs[0] = 0.
        coeffs[1:] = raw + (ln_a - log_sum(raw))
        return cls(coeffs)

    @classmethod
    def from_json(cls, document: dict[str, Any]) -> PartitionFunction:
        """
        From {"type": "explicit", "log_coeffs": [...]} (base-e logs, "-inf" for zero).
        """

        if document.get("type", "explicit") != "explicit":
            raise ValueError(f"Not an explicit instance: type = {document.get('type')!r}.")
        return cls(document["log_coeffs"])

    def to_json(self) -> dict[str, Any]:
        """
        The JSON document of the instance ("-inf" for zero coefficients).
        """

        return {
            "type": "explicit",
            "log_coeffs": [float(c) if np.isfinite(c) else "-inf" for c in self._log_coeffs],
        }

    @property
    def degree(self) -> int:
        """
        The degree n.
        """
        return self._log_coeffs.size - 1

    @property
    def log_coeffs(self) -> npt.NDArray[np.float64]:
        """
        ln a_0, ..., ln a_n (read-only view).
        """
        return self._log_coeffs

    @property
    def ln_a(self) -> LogWeight:
        """
        ln A = ln Z(0).
        """
        return self.log_z(0.)

    @property
    def log_z_infinity(self) -> LogWeight:
        """
        ln Z(∞) = ln a_0.
        """
        return float(self._log_coeffs[0])

    @property
    def is_constant(self) -> bool:
        """
        Whether all the mass sits at level 0 (a_1 = ... = a_n = 0).
        """
        return bool(self._support.size == 1 and self._support[0] == 0)

    def normalized(self) -> PartitionFunction:
        """
        The same partition function divided by a_0, so that Z(∞) = 1.
        """
        return PartitionFunction(self._log_coeffs - self._log_coeffs[0])

    def scaled(self, log_factor: float) -> PartitionFunction:
        """
        c·Z for c = exp(log_factor).
        """
        return PartitionFunction(self._log_coeffs + log_factor, check_a0=False)

    def level_log_weights(self, beta: Beta) -> npt.NDArray[np.float64]:
        """
        ln(a_i e^{-iβ}) per level (NEG_INF where a_i = 0; at β = ∞ only level 0 is finite).
        """

        if beta is INF:
            weights = np.full_like(self._log_coeffs, NEG_INF)
            weights[0] = self._log_coeffs[0]
            return weights
        weights = np.full_like(self._log_coeffs, NEG_INF)
        weights[self._support] = (
            self._log_coeffs[self._support] - float(beta) * self._levels[self._support]
        )
        return weights

    def level_log_probabilities(self, beta: Beta) -> npt.NDArray[np.float64]:
        """
        ln μ_β(H = i) for every level i.
        """

        weights = self.level_log_weights(beta)
        return weights - log_sum(weights)

    def log_z(self, beta: Beta) -> LogWeight:
        """
        f(β) = ln Z(β). Finite negative β is accepted (reversed Chebyshev ratios use it).
        """

        if beta is INF: return float(self._log_coeffs[0])
        return log_sum(self.level_log_weights(beta))

    def interval_log_mass(self, start: int, end: int, beta: Beta) -> LogWeight:
        """
        ln μ_β(H ∈ [start, end]).
        """

        weights = self.level_log_weights(beta)
        return log_sum(weights[start:end + 1]) - log_sum(weights)

    def f_prime(self, beta: float) -> float:
        """
        f′(β) = −E_β(H) = −(Σ i a_i e^{-iβ}) / (Σ a_i e^{-iβ}).

        Raises:
            ValueError: if β is ∞.
        """

        if beta is INF: raise ValueError("f′ is only evaluated at finite β.")
        weights = self.level_log_weights(beta)
        with np.errstate(divide='ignore'):
            weighted = weights[1:] + np.log(self._levels[1:])
        numerator = log_sum(weighted)
        if numerator == NEG_INF: return 0.
        return -math.exp(numerator - log_sum(weights))

    def log_chebyshev_ratio(self, beta: Beta, beta_prime: Beta) -> float:
        """
        ln[Z(2β′−β) Z(β) / Z(β′)²] without an ordering precondition (the reversed direction of a
        reversible schedule passes β > β′). β′ = ∞ gives ln[Z(β)/Z(∞)].
        """

        if beta == beta_prime: return 0.
        if beta_prime is INF: return self.log_z(beta) - self.log_z_infinity
        far = reflect(beta, beta_prime)
        return self.log_z(far) + self.log_z(beta) - 2. * self.log_z(beta_prime)

    def chebyshev_ratio(self, beta: Beta, beta_prime: Beta) -> float:
        """
        ln of E(W²)/E(W)² = Z(2β′−β) Z(β) / Z(β′)² for 0 <= β <= β′.

        Raises:
            ValueError: if β > β′ or β < 0.
        """

        if not (0 <= beta <= beta_prime):
            raise ValueError(f"chebyshev_ratio needs 0 <= β <= β′, got β={beta}, β′={beta_prime}.")
        return self.log_chebyshev_ratio(beta, beta_prime)

    def __repr__(self) -> str:
        return f"PartitionFunction(degree={self.degree}, ln_a={self.ln_a:.6g})"


def log_z(z: PartitionFunction, beta: Beta) -> LogWeight:
    """
    ln Z(β) (β = ∞ gives ln a_0).
    """
    return z.log_z(beta)


def f_prime(z: PartitionFunction, beta: float) -> float:
    """
    f′(β) = −E_β(H).
    """
    return z.f_prime(beta)


def chebyshev_ratio(z: PartitionFunction, beta: Beta, beta_prime: Beta) -> float:
    """
    ln[Z(2β′−β) Z(β) / Z(β′)²], exponentiate for the ratio itself.
    """
    return z.chebyshev_ratio(beta, beta_prime)
