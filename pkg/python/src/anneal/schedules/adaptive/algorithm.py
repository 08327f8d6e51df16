"""
The adaptive cooling schedule: from the current β₀, find a heavy interval of the partition,
follow it as far as it stays heavy and move with an optimal, long or interval step until
ln A is reached, then jump to ∞. Only Hamiltonian levels drawn from the sampler are used.
"""
from __future__ import annotations

# IMPORTs
import math
import logging

# IMPORTs alias
import numpy as np

# IMPORTs local
from .budget import q_budget
from .config import AdaptiveConfig
from .heaviness import find_heavy, is_heavy, log_est_ratio
from .partition import IntervalPartition, build_partition
from .search import monotone_bsearch
from .transcript import MoveRecord, RunTranscript
from ...errors import InvalidConfiguration, RunFailure, SampleStarvation
from ...models.schedule import CoolingSchedule, Move
from ...models.systems import GibbsSystem
from ...partfn.partition_function import PartitionFunction
from ...samplers.base import HamiltonianSampler
from ...utils import INF, BaseCheck, Beta

# API public
__all__ = ["PrintCoolingSchedule", "print_cooling_schedule"]

logger = logging.getLogger(__name__)



class PrintCoolingSchedule(BaseCheck):
    """
    Runs the adaptive schedule construction on a system with a level sampler.
    The loop is sequential, each move depending on the last one. With probability at least
    1 − δ′ the output is a B-Chebyshev schedule (B = 3·10⁶) when the sampler is exact.
    Use the 'schedule', 'transcript' and 'bad' properties to access the results.
    """

    def __init__(
            self,
            system: GibbsSystem,
            sampler: HamiltonianSampler,
            config: AdaptiveConfig | None = None,
            rng: np.random.Generator | None = None,
            *,
            seed: int | None = None,
            transcript: RunTranscript | None = None,
        ) -> None:
        """
        Builds the schedule.

        Args:
            system (GibbsSystem): the system, giving n and ln A.
            sampler (HamiltonianSampler): the level oracle of the system.
            config (AdaptiveConfig | None, optional): the run configuration. Defaults to the
                desk configuration.
            rng (np.random.Generator | None, optional): the random stream. Defaults to a
                generator seeded with 'seed'.
            seed (int | None, optional): the seed recorded in the transcript. Defaults to None.
            transcript (RunTranscript | None, optional): an existing transcript to append to.
                Defaults to a new one.

        Raises:
            AssumptionViolation: in faithful mode, if the technical assumptions fail.
            HeavyNotFound: if no allowed heavy interval is found (the transcript is attached).
        """

        self._config = config if config is not None else AdaptiveConfig()
        self._rng = rng if rng is not None else np.random.default_rng(seed)
        self._sampler = sampler
        self._n = self._check_degree(system.degree, minimum=0)
        self._ln_a = float(system.ln_a)
        if sampler.degree != self._n:
            raise InvalidConfiguration(
                f"the sampler has degree {sampler.degree}, the system {self._n}."
            )
        self._transcript = transcript if transcript is not None else RunTranscript(
            seed, self._config.mode,
        )

        violated = self._check_assumptions(self._n, self._ln_a, strict=self._config.faithful)
        if violated:
            logger.warning("desk run relaxes the assumptions %s", ", ".join(violated))

        self._bad: set[tuple[int, int]] = set()
        self._betas: list[Beta] = [0.]
        self._moves: list[Move] = []

        # RUN
        if self._ln_a > 0.:
            self._partition: IntervalPartition | None = build_partition(self._n, self._ln_a)
            self._h = self._config.h(self._partition)
            self._s = self._config.samples(self._partition)
            self._loop()
        else:
            self._partition, self._h, self._s = None, 0., 0
        self._betas.append(INF)
        self._moves.append(Move.FINAL)
        self._schedule = CoolingSchedule(self._betas, self._moves)
        self._report()

    def _emit(self, points: list[float], move: Move) -> list[float]:
        emitted = []
        for point in points:
            if point > self._betas[-1]:
                self._betas.append(float(point))
                self._moves.append(move)
                emitted.append(float(point))
        return emitted

    def _oracle_options(self) -> dict:
        return {
            "workers": self._config.workers, "chunk_size": self._config.chunk_size,
            "transcript": self._transcript,
        }

    def _ratio_predicate(self, interval: tuple[int, int], beta_0: float):
        """
        EST(I, β, β₀)·EST(I, β, 2β − β₀) <= threshold, the estimate of
        Z(β₀)Z(2β − β₀)/Z(β)². A starved or zero estimate is false.
        """

        ln_threshold = math.log(self._config.est_threshold)

        def predicate(beta: float) -> bool:
            try:
                log_product = log_est_ratio(
                    interval, beta, beta_0, self._sampler, self._s, self._rng,
                    **self._oracle_options(),
                ) + log_est_ratio(
                    interval, beta, 2. * beta - beta_0, self._sampler, self._s, self._rng,
                    **self._oracle_options(),
                )
            except SampleStarvation:
                return False
            return math.isfinite(log_product) and log_product <= ln_threshold
        return predicate

    def _step(self, beta_0: float) -> float:
        """
        One move from β₀. Returns the next β₀.
        """

        interval = find_heavy(
            beta_0, self._bad, self._sampler, self._partition, self._h, self._s, self._rng,
            **self._oracle_options(),
        )
        width = interval[1] - interval[0]
        limit = self._ln_a if width == 0 else min(beta_0 + 1. / width, self._ln_a)
        n = max(self._n, 1)

        heavy = lambda beta: is_heavy(
            interval, beta, self._sampler, self._h, self._s, self._rng, **self._oracle_options(),
        )
        beta_star = monotone_bsearch(beta_0, limit, heavy, 1. / (2. * n), check_lo=False)
        middle = .5 * (beta_0 + beta_star)
        beta = beta_0
        if middle > beta_0:
            beta = monotone_bsearch(
                beta_0, middle, self._ratio_predicate(interval, beta_0), 1. / (4. * n),
                check_lo=False,
            )

        if beta_0 < beta < middle:
            emitted = self._emit([beta], Move.OPTIMAL)
            self._transcript.record_move(Move.OPTIMAL, beta_0, emitted, beta_star, interval)
            return beta
        if beta_star == limit:
            emitted = self._emit([middle, beta_star], Move.LONG)
            self._transcript.record_move(Move.LONG, beta_0, emitted, beta_star, interval)
            return beta_star

        gamma = beta_star - beta_0
        t = self._config.refinement(self._ln_a)
        points = [beta_0 + (1. - 2. ** -r) * gamma for r in range(1, t + 1)] + [beta_star]
        emitted = self._emit(points, Move.INTERVAL) if gamma > 0 else []
        self._bad.add(interval)
        self._transcript.record_move(Move.INTERVAL, beta_0, emitted, beta_star, interval)
        return beta_star

    def _loop(self) -> None:
        beta_0 = 0.
        while beta_0 < self._ln_a:
            beta_0 = self._step(beta_0)

    def _report(self) -> None:
        logger.info(
            "adaptive schedule: %d steps, moves %s, Q = %d",
            self._schedule.length, self._transcript.move_tally, self._transcript.total_samples,
        )
        if self._config.faithful and self._n >= 2 and self._ln_a > 1.:
            budget = q_budget(self._n, self._ln_a, self._config.delta_prime)
            if self._transcript.total_samples > budget:
                logger.warning(
                    "the run drew Q = %d samples, above the budget %d",
                    self._transcript.total_samples, budget,
                )

    @property
    def schedule(self) -> CoolingSchedule:
        return self._schedule

    @property
    def transcript(self) -> RunTranscript:
        return self._transcript

    @property
    def partition(self) -> IntervalPartition | None:
        """
        The interval partition (None when ln A <= 0 and no oracle call was made).
        """
        return self._partition

    @property
    def bad(self) -> frozenset[tuple[int, int]]:
        """
        The banned intervals at the end of the run.
        """
        return frozenset(self._bad)

    @property
    def h(self) -> float:
        return self._h

    @property
    def samples_per_call(self) -> int:
        return self._s

    def shallow_optimal_moves(self, z: PartitionFunction) -> list[MoveRecord]:
        """
        Re-evaluates the optimal moves with the exact partition function. An optimal move from β₀
        to β should satisfy Z(β₀)Z(2β − β₀)/Z(β)² >= c1; the moves falling short are returned.

        Args:
            z (PartitionFunction): the exact partition function of the system.

        Raises:
            InvalidConfiguration: if z does not have the degree of the run.

        Returns:
            list[MoveRecord]: the optimal moves with an exact ratio below c1.
        """

        if z.degree != self._n:
            raise InvalidConfiguration(f"z has degree {z.degree}, the run {self._n}.")
        ln_c1 = math.log(self._config.c1)
        shallow = [
            record for record in self._transcript.moves()
            if record.move is Move.OPTIMAL and record.emitted
            and z.log_chebyshev_ratio(record.beta_start, float(record.emitted[0])) < ln_c1
        ]
        if shallow: logger.warning("%d optimal moves fall short of c1", len(shallow))
        return shallow


def print_cooling_schedule(
        system: GibbsSystem,
        sampler: HamiltonianSampler,
        config: AdaptiveConfig | None = None,
        rng: np.random.Generator | None = None,
        *,
        seed: int | None = None,
    ) -> tuple[CoolingSchedule, RunTranscript]:
    """
    The adaptive cooling schedule of the system and the transcript of the run.

    Raises:
        AssumptionViolation: in faithful mode, if the technical assumptions fail.
        RunFailure: if the run aborts; the error carries the transcript.
    """

    transcript = RunTranscript(seed, (config or AdaptiveConfig()).mode)
    try:
        run = PrintCoolingSchedule(system, sampler, config, rng, seed=seed, transcript=transcript)
    except RunFailure as error:
        if error.transcript is None: error.transcript = transcript
        raise
    return run.schedule, run.transcript
