"""
Markov chain level samplers of the graph systems, cold-started from a fixed state for every draw
or warm-started from the primed state of the closest temperature.
"""
from __future__ import annotations

# IMPORTs
import logging

# IMPORTs alias
import numpy as np

# IMPORTs local
from .base import ChainConfig
from .chains import advance, check_ergodicity
from .warm_start import WarmStartDriver
from ..errors import InvalidConfiguration
from ..models.schedule import CoolingSchedule
from ..models.systems import Explicit, GibbsSystem, Matchings
from ..schedules.nonadaptive import bezakova_schedule, uniform_schedule
from ..utils import INF, Beta, LevelArray

# API public
__all__ = ["MCMCSampler", "mcmc_sampler", "priming_schedule"]

logger = logging.getLogger(__name__)



def priming_schedule(system: GibbsSystem) -> CoolingSchedule:
    """
    The non-adaptive schedule the warm starts are primed on: the geometric-tail schedule when
    n >= 2 and ln A >= 1, the uniform one when only ln A > 0, and (0, ∞) otherwise.
    """

    n, ln_a = system.degree, system.ln_a
    if n >= 2 and ln_a >= 1.: return bezakova_schedule(n, ln_a)
    if n >= 1 and ln_a > 0.: return uniform_schedule(n, ln_a)
    return CoolingSchedule([0., INF])


class MCMCSampler:
    """
    Draws H(X) by running the chain of the system 'steps_per_sample' transitions per draw.
    In 'cold_start' mode every draw restarts from the system's initial state, so the sampler is
    stateless and thread-safe. In 'warm_start' mode one persistent state per primed temperature
    is advanced instead, and calls must be sequential.
    """

    def __init__(
            self,
            system: GibbsSystem,
            config: ChainConfig | None = None,
            schedule: CoolingSchedule | None = None,
        ) -> None:
        """
        Builds the sampler, priming the warm starts if needed.

        Args:
            system (GibbsSystem): a colouring, Ising, independent-set or matching system.
            config (ChainConfig | None, optional): the chain configuration. Defaults to
                ChainConfig().
            schedule (CoolingSchedule | None, optional): the priming schedule of the warm starts.
                Defaults to 'priming_schedule(system)'.

        Raises:
            InvalidConfiguration: for an explicit system (use the exact sampler).
        """

        if isinstance(system, Explicit):
            raise InvalidConfiguration(
                "An explicit partition function has no chain; use the exact sampler."
            )
        self._system = system
        self._config = config if config is not None else ChainConfig()
        self._tau2 = self._config.steps_per_sample or system.default_tau2()
        self._initial = system.initial_state()
        self._initial_level = system.hamiltonian(self._initial)
        self._chain_steps = 0
        check_ergodicity(system)

        self._driver: WarmStartDriver | None = None
        if self._config.mode == 'warm_start':
            rng = np.random.default_rng(np.random.SeedSequence(self._config.seed))
            self._driver = WarmStartDriver(
                system, schedule if schedule is not None else priming_schedule(system),
                self._tau2, rng,
            )
        logger.debug("%s sampler for %r with τ₂ = %d", self._config.mode, system, self._tau2)

    @property
    def degree(self) -> int:
        return self._system.degree

    @property
    def stateful(self) -> bool:
        return self._driver is not None

    @property
    def tau2(self) -> int:
        return self._tau2

    @property
    def system(self) -> GibbsSystem:
        return self._system

    @property
    def driver(self) -> WarmStartDriver | None:
        return self._driver

    @property
    def chain_steps(self) -> int:
        """
        Transitions run by the draws so far (the priming pass excluded).
        """
        return self._chain_steps

    @property
    def priming_steps(self) -> int:
        return 0 if self._driver is None else self._driver.chain_steps

    def sample(self, beta: Beta, size: int, rng: np.random.Generator) -> LevelArray:
        levels = np.empty(size, dtype=np.int64)
        if size == 0: return levels
        if beta is INF and isinstance(self._system, Matchings):
            levels[:] = 0
            return levels

        if self._driver is None:
            for i in range(size):
                state = self._initial.copy()
                levels[i] = advance(
                    self._system, state, self._initial_level, beta, self._tau2, rng,
                )
        else:
            index = self._driver.closest(beta)
            state = self._driver.states[index]
            level = self._driver.levels[index]
            for i in range(size):
                level = advance(self._system, state, level, beta, self._tau2, rng)
                levels[i] = level
            self._driver.levels[index] = level
        self._chain_steps += size * self._tau2
        return levels

    def __repr__(self) -> str:
        return f"MCMCSampler({self._system!r}, mode={self._config.mode}, tau2={self._tau2})"


def mcmc_sampler(system: GibbsSystem, config: ChainConfig | None = None) -> MCMCSampler:
    """
    The Markov chain level sampler of the system.
    """
    return MCMCSampler(system, config)
