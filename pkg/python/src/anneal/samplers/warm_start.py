"""
The warm-start priming pass: one chain is run τ₂ steps at every finite temperature of a
non-adaptive schedule in turn, and the state reached at each temperature is kept as the warm
start of the later draws near it.
"""
from __future__ import annotations

# IMPORTs
import logging

# IMPORTs alias
import numpy as np

# IMPORTs local
from .chains import advance
from ..models.schedule import CoolingSchedule
from ..models.systems import GibbsSystem
from ..utils import INF, Beta

# TYPE ANNOTATIONs
import numpy.typing as npt

# API public
__all__ = ["WarmStartDriver", "warm_start_driver"]

logger = logging.getLogger(__name__)



class WarmStartDriver:
    """
    Runs the chain at β′₁ for τ₂ steps from the initial state, then at β′₂ for τ₂ steps and so
    on. A system of degree 0 keeps the single initial state and costs no step.
    Use the 'states', 'levels', 'betas' and 'chain_steps' properties to access the results.
    """

    def __init__(
            self,
            system: GibbsSystem,
            schedule: CoolingSchedule,
            tau2: int,
            rng: np.random.Generator,
        ) -> None:
        """
        Runs the priming pass.

        Args:
            system (GibbsSystem): a system with a Markov chain.
            schedule (CoolingSchedule): the non-adaptive schedule giving the temperatures.
            tau2 (int): steps per temperature, >= 1.
            rng (np.random.Generator): the random stream of the pass.

        Raises:
            ValueError: if τ₂ < 1.
        """

        if tau2 < 1: raise ValueError(f"τ₂ must be >= 1, got {tau2}.")
        self._system = system
        self._tau2 = int(tau2)

        # RUN
        state = system.initial_state()
        level = system.hamiltonian(state)
        if system.degree == 0:
            self._betas: list[float] = [0.]
            self._states = [state.copy()]
            self._levels = [level]
            self._chain_steps = 0
        else:
            self._betas, self._states, self._levels = [], [], []
            for beta in schedule.finite_betas:
                level = advance(system, state, level, beta, self._tau2, rng)
                self._betas.append(float(beta))
                self._states.append(state.copy())
                self._levels.append(level)
            self._chain_steps = self._tau2 * len(self._betas)
        logger.info(
            "warm-start priming: %d temperatures, %d chain steps",
            len(self._betas), self._chain_steps,
        )

    @property
    def tau2(self) -> int:
        return self._tau2

    @property
    def betas(self) -> list[float]:
        return list(self._betas)

    @property
    def states(self) -> list[npt.NDArray[np.int64]]:
        """
        The warm state reached at every temperature, in schedule order.
        """
        return self._states

    @property
    def levels(self) -> list[int]:
        return self._levels

    @property
    def chain_steps(self) -> int:
        """
        Steps spent by the priming pass, τ₂ per finite temperature.
        """
        return self._chain_steps

    def closest(self, beta: Beta) -> int:
        """
        The index of the primed temperature closest to β (the last one for β = ∞).
        """

        if beta is INF: return len(self._betas) - 1
        return int(np.argmin(np.abs(np.asarray(self._betas) - float(beta))))

    def __len__(self) -> int:
        return len(self._betas)


def warm_start_driver(
        system: GibbsSystem,
        schedule: CoolingSchedule,
        tau2: int,
        rng: np.random.Generator,
    ) -> WarmStartDriver:
    """
    The family of warm states primed along the schedule.
    """
    return WarmStartDriver(system, schedule, tau2, rng)
