"""
Configuration of the adaptive schedule: the failure probability δ′, the Chebyshev bound B, the
estimator threshold and the derived constants h, δ and s.
"""
from __future__ import annotations

# IMPORTs
import math
import logging

# IMPORTs sub
from pydantic import BaseModel, ConfigDict, Field, PositiveInt, model_validator

# IMPORTs local
from .partition import IntervalPartition
from ...samplers.base import DEFAULT_CHUNK

# TYPE ANNOTATIONs
from typing import Literal

# API public
__all__ = ["AdaptiveConfig", "FAITHFUL_BOUND", "FAITHFUL_THRESHOLD", "FAITHFUL_C1"]

# CONSTANTs of the faithful mode
FAITHFUL_BOUND = 3e6
FAITHFUL_THRESHOLD = 2000.
FAITHFUL_C1 = math.e ** 2

logger = logging.getLogger(__name__)



class AdaptiveConfig(BaseModel):
    """
    'faithful' uses s = ⌈(8/h) ln(1/δ)⌉ draws per oracle call and refuses instances breaking the
    technical assumptions. 'desk' draws 'desk_samples' per call, keeps every threshold and only
    logs the assumptions it relaxes (ln n and ln ln A are clamped at 1 in the constants).
    """

    model_config = ConfigDict(frozen=True)

    delta_prime: float = Field(.1, gt=0., lt=1.)
    chebyshev_bound: float = Field(FAITHFUL_BOUND, gt=1.)
    c1: float = Field(FAITHFUL_C1, gt=1.)
    est_threshold: float = Field(FAITHFUL_THRESHOLD, gt=1.)
    mode: Literal['faithful', 'desk'] = 'desk'
    desk_samples: PositiveInt = 2000
    workers: PositiveInt = 1
    chunk_size: PositiveInt = DEFAULT_CHUNK

    @model_validator(mode='after')
    def _faithful_constants(self) -> AdaptiveConfig:
        if self.mode != 'faithful': return self
        if (
            self.chebyshev_bound != FAITHFUL_BOUND
            or self.c1 != FAITHFUL_C1
            or self.est_threshold != FAITHFUL_THRESHOLD
        ):
            raise ValueError("faithful mode keeps B = 3e6, c1 = e² and the threshold 2000.")
        return self

    @property
    def faithful(self) -> bool:
        return self.mode == 'faithful'

    def _log_terms(self, n: int, ln_a: float) -> tuple[float, float]:
        """
        (ln n, ln A), clamped in desk mode so that ln n >= 1 and ln ln A >= 1.
        """

        ln_n = math.log(n) if n >= 1 else 0.
        if self.faithful: return ln_n, ln_a
        return max(ln_n, 1.), max(ln_a, math.e)

    def h(self, partition: IntervalPartition) -> float:
        """
        h = 1/(8|P|).
        """
        return 1. / (8. * len(partition))

    def delta(self, n: int, ln_a: float) -> float:
        """
        δ = δ′/(1600 (ln n)² (ln A)²).
        """

        ln_n, ln_a = self._log_terms(n, ln_a)
        return self.delta_prime / (1600. * ln_n ** 2 * ln_a ** 2)

    def samples(self, partition: IntervalPartition) -> int:
        """
        Draws per oracle call: ⌈(8/h) ln(1/δ)⌉ in faithful mode, 'desk_samples' otherwise.
        """

        if not self.faithful: return self.desk_samples
        delta = self.delta(partition.n, partition.ln_a)
        return math.ceil(8. / self.h(partition) * math.log(1. / delta))

    def refinement(self, ln_a: float) -> int:
        """
        t = ⌈ln ln A⌉, the geometric points of an interval move.
        """

        _, ln_a = self._log_terms(2, ln_a)
        return max(1, math.ceil(math.log(ln_a))) if ln_a > 1. else 1
