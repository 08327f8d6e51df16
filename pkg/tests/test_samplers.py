"""
Tests the level samplers: the exact inverse-CDF sampler, the Markov chains (detailed balance on
enumerated state spaces) and the warm-start driver.
"""
from __future__ import annotations

# IMPORTs
import math
import pytest

# IMPORTs alias
import numpy as np

# IMPORTs sub
from scipy.stats import chisquare

# IMPORTs local
from anneal import (
    INF, ChainConfig, Colorings, CoolingSchedule, ExactSampler, Explicit, Graph, IndependentSets,
    InvalidConfiguration, IsingGrid, MCMCSampler, Matchings, PartitionFunction,
    enumerate_coefficients,
)
from anneal.samplers import (
    check_ergodicity, draw_levels, glauber_step, glauber_transition_matrix, matching_chain_step,
    matching_transition_matrix, priming_schedule, warm_start_driver,
)



def total_variation(levels: np.ndarray, z: PartitionFunction, beta: float) -> float:
    """
    Distance between the empirical level distribution and μ_β(H = i).
    """

    expected = np.exp(z.level_log_probabilities(beta))
    observed = np.bincount(levels, minlength=expected.size) / levels.size
    return .5 * float(np.abs(observed - expected).sum())


class TestExactSampler:
    """
    To test the exact sampler against the level distribution.
    """

    def test_two_levels_chi_square(self) -> None:
        sampler = ExactSampler(PartitionFunction.from_coefficients([1., 1.]))
        levels = sampler.sample(0., 100_000, np.random.default_rng(11))
        observed = np.bincount(levels, minlength=2)
        assert chisquare(observed).pvalue > 1e-3

    def test_infinite_beta_is_level_zero(self) -> None:
        sampler = ExactSampler(PartitionFunction.binomial_power(10))
        assert not sampler.sample(INF, 100, np.random.default_rng(0)).any()

    def test_triangle_colorings_frequencies(self) -> None:
        sampler = ExactSampler(PartitionFunction.from_coefficients([6., 18., 0., 3.]))
        levels = sampler.sample(0., 200_000, np.random.default_rng(5))
        frequencies = np.bincount(levels, minlength=4) / levels.size
        assert frequencies == pytest.approx(np.array([6., 18., 0., 3.]) / 27., abs=5e-3)
        assert frequencies[2] == 0.

    def test_top_level_is_never_exceeded(self) -> None:
        sampler = ExactSampler(PartitionFunction.from_coefficients([1., 2., 0., 0.]))
        assert sampler.sample(0., 10_000, np.random.default_rng(2)).max() <= 1

    def test_draws_do_not_depend_on_workers(self) -> None:
        sampler = ExactSampler(PartitionFunction.binomial_power(30))
        sequential = draw_levels(sampler, .4, 10_000, np.random.default_rng(9), 1, 1000)
        threaded = draw_levels(sampler, .4, 10_000, np.random.default_rng(9), 4, 1000)
        assert np.array_equal(sequential, threaded)


class TestChains:
    """
    To test the chains on state spaces small enough for their transition matrices.
    """

    @pytest.mark.parametrize("system, beta", [
        (Colorings(Graph.path(3), 2), .7),
        (Colorings(Graph.complete(3), 3), 1.5),
        (IsingGrid(2), .3),
        (IndependentSets(Graph.path(4), fugacity=1.5), 2.),
    ])
    def test_glauber_detailed_balance(self, system, beta: float) -> None:
        transition = glauber_transition_matrix(system, beta)
        assert transition.matrix.sum(axis=1) == pytest.approx(np.ones(len(transition.states)))
        assert transition.detailed_balance_gap() <= 1e-12

    @pytest.mark.parametrize("beta", [0., .5, 3.])
    def test_matching_detailed_balance(self, beta: float) -> None:
        transition = matching_transition_matrix(Graph.cycle(5), beta)
        assert transition.detailed_balance_gap() <= 1e-12
        assert transition.stationary() == pytest.approx(transition.gibbs, abs=1e-9)

    def test_matching_add_probability(self) -> None:
        transition = matching_transition_matrix(Graph.path(2), 0.)
        assert transition.states == [(), (0,)]
        assert transition.matrix[0, 1] == pytest.approx(.5)

    def test_path_matchings_are_uniform_at_one(self) -> None:
        system = Matchings(Graph.path(3))
        sampler = MCMCSampler(system, ChainConfig(steps_per_sample=40, seed=1))
        levels = sampler.sample(0., 20_000, np.random.default_rng(3))
        assert np.mean(levels == 0) == pytest.approx(1. / 3., abs=.02)
        assert sampler.chain_steps == 40 * 20_000

    def test_matchings_at_infinity(self) -> None:
        sampler = MCMCSampler(Matchings(Graph.cycle(6)))
        assert not sampler.sample(INF, 50, np.random.default_rng(0)).any()

    def test_single_steps_leave_the_input(self) -> None:
        rng = np.random.default_rng(4)
        state = np.array([0, 1, 0], dtype=np.int64)
        glauber_step(Colorings(Graph.path(3), 2), state, 1., rng)
        assert state.tolist() == [0, 1, 0]
        graph = Graph.path(2)
        mate = np.array([-1, -1], dtype=np.int64)
        moved = matching_chain_step(graph, mate, INF, rng)
        assert moved.tolist() == [-1, -1]

    def test_edgeless_graph_is_uniform(self) -> None:
        system = Colorings(Graph(2, []), 3)
        transition = glauber_transition_matrix(system, 1.)
        assert transition.stationary() == pytest.approx(np.full(9, 1. / 9.), abs=1e-9)

    def test_ergodicity_warning(self) -> None:
        assert not check_ergodicity(Colorings(Graph.complete(4), 3))
        assert check_ergodicity(Colorings(Graph.path(3), 4))


@pytest.fixture(scope='module')
def system() -> Colorings:
    """
    3-labellings of the 4-cycle.

    Returns:
        Colorings: the system.
    """
    return Colorings(Graph.cycle(4), 3)


class TestMCMCSampler:
    """
    To test the cold and warm modes of the chain sampler.
    """

    def test_explicit_is_refused(self) -> None:
        with pytest.raises(InvalidConfiguration):
            MCMCSampler(Explicit(PartitionFunction.from_coefficients([1., 1.])))

    def test_seed_determinism(self, system: Colorings) -> None:
        first = MCMCSampler(system, ChainConfig(steps_per_sample=5))
        second = MCMCSampler(system, ChainConfig(steps_per_sample=5))
        draws = [
            sampler.sample(.5, 300, np.random.default_rng(21)) for sampler in (first, second)
        ]
        assert np.array_equal(*draws)
        assert not first.stateful

    def test_warm_start(self, system: Colorings) -> None:
        config = ChainConfig(steps_per_sample=10, seed=3, mode='warm_start')
        sampler = MCMCSampler(system, config)
        assert sampler.stateful
        assert sampler.priming_steps == 10 * len(sampler.driver)
        assert sampler.driver.betas == priming_schedule(system).finite_betas.tolist()
        levels = sampler.sample(1., 100, np.random.default_rng(0))
        assert levels.min() >= 0 and levels.max() <= system.degree

    def test_warm_levels_match_the_states(self, system: Colorings) -> None:
        config = ChainConfig(steps_per_sample=7, seed=8, mode='warm_start')
        sampler = MCMCSampler(system, config)
        sampler.sample(2., 50, np.random.default_rng(1))
        driver = sampler.driver
        for state, level in zip(driver.states, driver.levels):
            assert system.hamiltonian(state) == level


class TestWarmStartDriver:
    """
    To test the priming pass.
    """

    def test_degree_zero(self) -> None:
        system = Colorings(Graph(3, []), 2)
        driver = warm_start_driver(
            system, CoolingSchedule([0., INF]), 5, np.random.default_rng(0),
        )
        assert len(driver) == 1
        assert driver.chain_steps == 0
        assert driver.closest(INF) == 0

    def test_closest(self) -> None:
        system = Colorings(Graph.path(4), 2)
        schedule = CoolingSchedule([0., 1., 2., INF])
        driver = warm_start_driver(system, schedule, 3, np.random.default_rng(1))
        assert driver.chain_steps == 9
        assert driver.closest(1.4) == 1
        assert driver.closest(INF) == 2

    def test_invalid_tau2(self) -> None:
        with pytest.raises(ValueError):
            warm_start_driver(
                Colorings(Graph.path(2), 2), CoolingSchedule([0., INF]), 0,
                np.random.default_rng(0),
            )

    def test_priming_schedule_fallbacks(self) -> None:
        assert priming_schedule(Colorings(Graph(2, []), 2)).betas == (0., INF)
        assert priming_schedule(Matchings(Graph.path(2))).length >= 1
        assert math.isfinite(priming_schedule(IsingGrid(2)).finite_betas[-1])


@pytest.fixture(scope='module')
def cycle_colourings() -> tuple[Colorings, PartitionFunction]:
    """
    4-labellings of the 4-cycle and their enumerated level counts.

    Returns:
        tuple[Colorings, PartitionFunction]: the system and its exact partition function.
    """

    system = Colorings(Graph.cycle(4), 4)
    return system, enumerate_coefficients(system)


class TestSamplerAgreement:
    """
    To test the chain samplers against the exact level distribution.
    """

    @pytest.mark.parametrize("beta", [0., 1., 3.])
    def test_cold_start(
            self,
            cycle_colourings: tuple[Colorings, PartitionFunction],
            beta: float,
        ) -> None:
        system, z = cycle_colourings
        sampler = MCMCSampler(system)
        levels = sampler.sample(beta, 20_000, np.random.default_rng(41))
        assert total_variation(levels, z, beta) <= .05

    @pytest.mark.parametrize("beta", [0., 1., 3.])
    def test_warm_start(
            self,
            cycle_colourings: tuple[Colorings, PartitionFunction],
            beta: float,
        ) -> None:
        system, z = cycle_colourings
        sampler = MCMCSampler(system, ChainConfig(seed=5, mode='warm_start'))
        levels = sampler.sample(beta, 20_000, np.random.default_rng(42))
        assert total_variation(levels, z, beta) <= .05

    def test_primed_states(self, cycle_colourings: tuple[Colorings, PartitionFunction]) -> None:
        system, z = cycle_colourings
        schedule = CoolingSchedule([0., 1., 3., INF])
        primed = [
            warm_start_driver(system, schedule, system.default_tau2(), rng).levels
            for rng in np.random.default_rng(43).spawn(3000)
        ]
        levels = np.asarray(primed, dtype=np.int64)
        for index, beta in enumerate(schedule.finite_betas):
            assert total_variation(levels[:, index], z, float(beta)) <= .05
