"""
Tests the adaptive schedule: the interval partition, the bisection, the heaviness tests, the
rough ratio estimator, the configuration, the budgets, the run transcript and full runs on
explicit partition functions.
"""
from __future__ import annotations

# IMPORTs
import math
import pytest

# IMPORTs alias
import numpy as np

# IMPORTs sub
from pydantic_core import from_json

# IMPORTs local
from anneal import (
    INF, AdaptiveConfig, AssumptionViolation, ContractViolation, ExactSampler, Explicit,
    HeavyNotFound, InvalidConfiguration, Move, PartitionFunction, RunFailure, SampleStarvation,
    print_cooling_schedule, verify_schedule,
)
from anneal.schedules.adaptive import (
    IntervalPartition, PrintCoolingSchedule, RunTranscript, bisect_last_true,
    bracket_by_doubling, build_partition, est_ratio, find_heavy, interval_emission_bound,
    interval_fraction, is_heavy, log_est_ratio, long_move_bound, monotone_bsearch,
    optimal_move_bound, q_budget, reversible_length_bound, schedule_length_bound,
    total_sample_accuracy, warm_chain_budget,
)



def spike(level: int, n: int, weight: float = 1e6) -> PartitionFunction:
    """
    a_0 = 1, a_level = 'weight' and nothing else up to n.
    """

    coefficients = np.zeros(n + 1)
    coefficients[0] = 1.
    coefficients[level] = weight
    return PartitionFunction.from_coefficients(coefficients)


class TestIntervalPartition:
    """
    To test the inductive partition of the levels.
    """

    def test_known_partition(self) -> None:
        partition = IntervalPartition(10, 1.)
        assert partition.intervals == [(0, 0), (1, 2), (3, 6), (7, 10)]
        assert partition.width(3) == 3
        assert partition[1] == (1, 2)

    def test_degree_zero(self) -> None:
        assert IntervalPartition(0, 2.).intervals == [(0, 0)]

    def test_cover_without_overlap(self) -> None:
        partition = IntervalPartition(57, 3.3)
        assert partition.starts[0] == 0 and partition.ends[-1] == 57
        assert np.array_equal(partition.starts[1:], partition.ends[:-1] + 1)

    def test_histogram(self) -> None:
        partition = IntervalPartition(10, 1.)
        assert partition.index_of([0, 2, 5, 10]).tolist() == [0, 1, 2, 3]
        assert partition.histogram(np.array([0, 0, 4, 9])).tolist() == [2, 0, 1, 1]
        with pytest.raises(ValueError): partition.index_of([11])

    def test_size_bound(self) -> None:
        rng = np.random.default_rng(6)
        for _ in range(50):
            n = int(rng.integers(20, 5000))
            ln_a = float(rng.uniform(math.e ** 1.01, 200.))
            if ln_a < math.log(math.log(n)): continue
            partition = IntervalPartition(n, ln_a)
            assert len(partition) <= partition.size_bound()

    @pytest.mark.slow
    def test_size_bound_up_to_a_million_levels(self) -> None:
        rng = np.random.default_rng(16)
        for _ in range(1000):
            n = int(np.exp(rng.uniform(math.log(20.), math.log(1e6))))
            ln_a = float(np.exp(rng.uniform(1.01, math.log(1e4))))
            partition = IntervalPartition(n, ln_a)
            assert len(partition) <= partition.size_bound()

    def test_invalid_arguments(self) -> None:
        with pytest.raises(AssumptionViolation): IntervalPartition(-1, 1.)
        with pytest.raises(AssumptionViolation): IntervalPartition(5, 0.)


class TestSearch:
    """
    To test the bisection helpers.
    """

    def test_true_at_hi(self) -> None:
        assert monotone_bsearch(0., 2., lambda x: True, 1e-6) == 2.

    def test_threshold(self) -> None:
        result = monotone_bsearch(0., 1., lambda x: x <= .37, 1e-6)
        assert .37 - 1e-6 <= result <= .37

    def test_false_at_lo(self) -> None:
        with pytest.raises(ContractViolation): monotone_bsearch(0., 1., lambda x: x > .5, 1e-3)
        assert monotone_bsearch(0., 1., lambda x: 0. < x < .5, 1e-3, check_lo=False) < .5

    def test_invalid_range(self) -> None:
        with pytest.raises(ValueError): monotone_bsearch(1., 0., lambda x: True, 1e-3)
        with pytest.raises(ValueError): monotone_bsearch(0., 1., lambda x: True, 0.)

    def test_bracket_then_bisect(self) -> None:
        within = lambda x: x < 5.
        hi = bracket_by_doubling(0., 1., within)
        assert hi == 8.
        assert bisect_last_true(0., hi, within) == pytest.approx(5., abs=1e-9)

    def test_bracket_failure(self) -> None:
        with pytest.raises(ContractViolation):
            bracket_by_doubling(0., 1., lambda x: True, max_doublings=10)


class TestHeaviness:
    """
    To test the heaviness tests on exact samplers.
    """

    def test_interval_fraction(self) -> None:
        levels = np.array([0, 1, 1, 4])
        assert interval_fraction(levels, (1, 3)) == .5
        assert interval_fraction(np.empty(0, dtype=np.int64), (0, 0)) == 0.

    def test_whole_range_is_heavy(self) -> None:
        z = PartitionFunction.binomial_power(12)
        transcript = RunTranscript()
        rng = np.random.default_rng(0)
        assert is_heavy((0, 12), .8, ExactSampler(z), .4, 100, rng, transcript=transcript)
        assert transcript.total_samples == 100
        assert transcript.calls()[0].value == 1.

    def test_empty_interval_is_light(self) -> None:
        sampler = ExactSampler(spike(3, 3))
        assert not is_heavy((1, 2), 0., sampler, 1e-3, 1000, np.random.default_rng(1))

    def test_find_heavy(self) -> None:
        sampler = ExactSampler(spike(8, 10))
        partition = IntervalPartition(10, 1.)
        found = find_heavy(0., set(), sampler, partition, .05, 500, np.random.default_rng(2))
        assert found == (7, 10)

    def test_find_heavy_skips_bad(self) -> None:
        sampler = ExactSampler(spike(8, 10, weight=1.))
        partition = IntervalPartition(10, 1.)
        found = find_heavy(
            0., {(7, 10)}, sampler, partition, .05, 2000, np.random.default_rng(3),
        )
        assert found == (0, 0)

    def test_all_banned(self) -> None:
        sampler = ExactSampler(spike(8, 10))
        partition = IntervalPartition(10, 1.)
        transcript = RunTranscript()
        with pytest.raises(HeavyNotFound) as info:
            find_heavy(
                0., set(partition.intervals), sampler, partition, .05, 100,
                np.random.default_rng(4), transcript=transcript,
            )
        assert info.value.transcript is transcript
        assert len(transcript.failures()) == 1

    def test_heavy_temperatures_are_contiguous(self) -> None:
        rng = np.random.default_rng(14)
        for _ in range(100):
            z = PartitionFunction.random(rng, int(rng.integers(5, 60)), float(rng.uniform(2, 30)))
            partition = build_partition(z.degree, z.ln_a)
            betas = np.linspace(0., 1.5 * z.ln_a, 300)
            probabilities = np.exp([z.level_log_probabilities(beta) for beta in betas])
            masses = np.add.reduceat(probabilities, partition.starts, axis=1)
            heaviest = int(np.argmax(masses[150]))
            assert math.log(masses[150, heaviest]) == pytest.approx(
                z.interval_log_mass(*partition[heaviest], float(betas[150])), abs=1e-9,
            )
            h = 1. / (8. * len(partition))
            for threshold in (h, 2. * h, 4. * h, 8. * h):
                for column in (masses >= threshold).T:
                    heavy = np.flatnonzero(column)
                    assert heavy.size == 0 or heavy[-1] - heavy[0] + 1 == heavy.size


class TestRatioEstimator:
    """
    To test EST(I, β₁, β₂).
    """

    def test_equal_temperatures(self) -> None:
        sampler = ExactSampler(PartitionFunction.binomial_power(10))
        rng = np.random.default_rng(5)
        assert log_est_ratio((0, 10), .3, .3, sampler, 200, rng) == 0.

    def test_ratio_of_partition_functions(self) -> None:
        z = PartitionFunction.binomial_power(4)
        sampler = ExactSampler(z)
        estimate = log_est_ratio((0, 0), 1., .5, sampler, 200_000, np.random.default_rng(6))
        assert estimate == pytest.approx(z.log_z(.5) - z.log_z(1.), abs=.05)
        value = est_ratio((0, 0), 1., .5, sampler, 200_000, np.random.default_rng(6))
        assert value == pytest.approx(math.exp(estimate))

    def test_width_precondition(self) -> None:
        sampler = ExactSampler(PartitionFunction.binomial_power(10))
        with pytest.raises(ContractViolation):
            log_est_ratio((0, 10), 0., .2, sampler, 10, np.random.default_rng(0))

    def test_starvation(self) -> None:
        sampler = ExactSampler(spike(3, 3))
        transcript = RunTranscript()
        with pytest.raises(SampleStarvation):
            log_est_ratio(
                (1, 2), .5, 0., sampler, 100, np.random.default_rng(0), transcript=transcript,
            )
        assert transcript.failures()[0].error == "SampleStarvation"


class TestAdaptiveConfig:
    """
    To test the derived constants of the two modes.
    """

    def test_faithful_constants_are_fixed(self) -> None:
        AdaptiveConfig(mode='faithful')
        with pytest.raises(ValueError): AdaptiveConfig(mode='faithful', chebyshev_bound=10.)
        with pytest.raises(ValueError): AdaptiveConfig(mode='faithful', est_threshold=50.)
        assert AdaptiveConfig(chebyshev_bound=10.).chebyshev_bound == 10.

    def test_invalid_values(self) -> None:
        with pytest.raises(ValueError): AdaptiveConfig(delta_prime=1.)
        with pytest.raises(ValueError): AdaptiveConfig(desk_samples=0)

    def test_samples(self) -> None:
        partition = IntervalPartition(100, 10.)
        assert AdaptiveConfig(desk_samples=321).samples(partition) == 321
        faithful = AdaptiveConfig(mode='faithful')
        delta = .1 / (1600. * math.log(100.) ** 2 * 100.)
        expected = math.ceil(64. * len(partition) * math.log(1. / delta))
        assert faithful.delta(100, 10.) == pytest.approx(delta)
        assert faithful.samples(partition) == expected
        assert faithful.h(partition) == pytest.approx(1. / (8. * len(partition)))

    def test_desk_clamps(self) -> None:
        desk = AdaptiveConfig()
        assert desk.delta(2, 1.) == pytest.approx(.1 / (1600. * math.e ** 2))

    def test_refinement(self) -> None:
        assert AdaptiveConfig(mode='faithful').refinement(10.) == 3
        assert AdaptiveConfig().refinement(100.) == 5


class TestBudgets:
    """
    To test the closed-form budgets.
    """

    def test_q_budget(self) -> None:
        expected = 1e7 * 10. * (math.log(100.) + math.log(10.)) ** 5 * math.log(10.)
        assert q_budget(100, 10., .1) == math.ceil(expected)
        assert warm_chain_budget(100, 10., .1, 7) == 7 * q_budget(100, 10., .1)
        with pytest.raises(ValueError): q_budget(100, 10., 1.)

    def test_length_bounds(self) -> None:
        n, ln_a = 1000, 50.
        bound = schedule_length_bound(n, ln_a)
        assert bound == pytest.approx(38. * math.sqrt(ln_a) * math.log(n) * math.log(ln_a))
        assert reversible_length_bound(n, ln_a) == pytest.approx(
            bound * (math.log(n) + math.log(ln_a))
        )

    def test_accuracy(self) -> None:
        accuracy = total_sample_accuracy(100, 10., .5)
        assert accuracy == pytest.approx(
            .25 / (1e8 * 10. * (math.log(100.) + math.log(10.)) ** 5)
        )


@pytest.fixture(scope='module')
def transcript() -> RunTranscript:
    """
    A transcript with two calls, a move and a failure.

    Returns:
        RunTranscript: the filled transcript.
    """

    transcript = RunTranscript(seed=9, mode='desk')
    transcript.record_call('is_heavy', .5, 100, interval=(1, 2), value=.25)
    transcript.record_call('find_heavy', INF, 40)
    transcript.record_move(Move.LONG, 0., [.25, .5], beta_star=.5, interval=(1, 2))
    transcript.record_failure(HeavyNotFound("nothing heavy"), .5)
    return transcript


class TestRunTranscript:
    """
    To test the records and their JSON Lines form.
    """

    def test_totals(self, transcript: RunTranscript) -> None:
        assert transcript.total_samples == 140
        assert transcript.move_tally == {"optimal": 0, "long": 1, "interval": 0}
        assert transcript.coupling_bound(1e-3) == pytest.approx(.14)
        assert len(transcript) == 4

    def test_jsonl(self, transcript: RunTranscript) -> None:
        lines = transcript.to_jsonl().splitlines()
        documents = [from_json(line) for line in lines]
        assert documents[0]["kind"] == "run" and documents[0]["total_samples"] == 140
        assert documents[2]["beta"] == "inf"
        assert documents[3]["move"] == "long"
        assert documents[4]["error"] == "HeavyNotFound"
        assert list(transcript.iter_records()) == documents

    def test_write(self, transcript: RunTranscript, tmp_path) -> None:
        path = tmp_path / "run.jsonl"
        transcript.write_jsonl(path)
        assert path.read_text(encoding='utf-8') == transcript.to_jsonl()


@pytest.fixture(scope='module')
def binomial_run() -> tuple[PartitionFunction, PrintCoolingSchedule]:
    """
    A desk run on Z(β) = (1 + e^{-β})^20.

    Returns:
        tuple[PartitionFunction, PrintCoolingSchedule]: the instance and the run.
    """

    z = PartitionFunction.binomial_power(20)
    return z, PrintCoolingSchedule(Explicit(z), ExactSampler(z), seed=0)


class TestPrintCoolingSchedule:
    """
    To test full adaptive runs with the exact sampler.
    """

    def test_schedule_is_valid(
            self,
            binomial_run: tuple[PartitionFunction, PrintCoolingSchedule],
        ) -> None:
        z, run = binomial_run
        schedule = run.schedule
        assert schedule.betas[0] == 0. and schedule.betas[-1] is INF
        assert schedule.finite_betas[-1] >= z.ln_a or schedule.length == 1
        assert verify_schedule(z, schedule, 3e6).passed

    def test_transcript_totals(
            self,
            binomial_run: tuple[PartitionFunction, PrintCoolingSchedule],
        ) -> None:
        _, run = binomial_run
        transcript = run.transcript
        assert transcript.total_samples == run.samples_per_call * len(transcript.calls())
        assert sum(transcript.move_tally.values()) == len(transcript.moves())
        assert run.schedule.moves[-1] is Move.FINAL

    def test_seed_determinism(self) -> None:
        z = PartitionFunction.binomial_power(15)
        first, _ = print_cooling_schedule(Explicit(z), ExactSampler(z), seed=3)
        second, _ = print_cooling_schedule(Explicit(z), ExactSampler(z), seed=3)
        assert first == second

    def test_constant_instance(self) -> None:
        z = PartitionFunction.from_coefficients([1., 0., 0.])
        schedule, transcript = print_cooling_schedule(Explicit(z), ExactSampler(z), seed=0)
        assert schedule.betas == (0., INF)
        assert transcript.total_samples == 0

    def test_degree_mismatch(self) -> None:
        system = Explicit(PartitionFunction.binomial_power(20))
        sampler = ExactSampler(PartitionFunction.binomial_power(10))
        with pytest.raises(InvalidConfiguration):
            print_cooling_schedule(system, sampler, seed=0)

    def test_faithful_assumptions(self) -> None:
        z = PartitionFunction.binomial_power(2)
        config = AdaptiveConfig(mode='faithful')
        with pytest.raises(AssumptionViolation):
            print_cooling_schedule(Explicit(z), ExactSampler(z), config, seed=0)

    @pytest.mark.slow
    def test_random_instances(self) -> None:
        rng = np.random.default_rng(12)
        passed = 0
        for seed in range(100):
            z = PartitionFunction.random(rng, int(rng.integers(20, 60)), float(rng.uniform(5, 20)))
            try:
                schedule, _ = print_cooling_schedule(Explicit(z), ExactSampler(z), seed=seed)
            except RunFailure:
                continue
            passed += verify_schedule(z, schedule, 3e6).passed
        assert passed >= 95


class TestRunBounds:
    """
    To test the move budgets on completed runs.
    """

    def test_budgets_hold(self) -> None:
        rng = np.random.default_rng(25)
        completed = 0
        shallow = optimal = 0
        for seed in range(25):
            z = PartitionFunction.random(rng, int(rng.integers(20, 51)), float(rng.uniform(5, 30)))
            try:
                run = PrintCoolingSchedule(Explicit(z), ExactSampler(z), seed=seed)
            except RunFailure:
                continue
            completed += 1
            n, ln_a = z.degree, z.ln_a
            tally = run.transcript.move_tally
            emitted = sum(
                len(record.emitted) for record in run.transcript.moves()
                if record.move is Move.INTERVAL
            )
            assert run.schedule.length <= schedule_length_bound(n, ln_a)
            assert tally["long"] <= long_move_bound(n, ln_a)
            assert tally["optimal"] <= optimal_move_bound(n, ln_a)
            assert emitted <= interval_emission_bound(n, ln_a)
            optimal += tally["optimal"]
            shallow += len(run.shallow_optimal_moves(z))
        assert completed >= 20
        assert shallow <= max(1, optimal // 20)

    def test_shallow_optimal_moves(self) -> None:
        z = PartitionFunction.binomial_power(20)
        transcript = RunTranscript(seed=0)
        transcript.record_move(Move.OPTIMAL, 0., [1e-6], beta_star=1., interval=(0, 0))
        run = PrintCoolingSchedule(Explicit(z), ExactSampler(z), seed=0, transcript=transcript)
        assert run.shallow_optimal_moves(z)[0].emitted == [1e-6]
        with pytest.raises(InvalidConfiguration):
            run.shallow_optimal_moves(PartitionFunction.binomial_power(10))


@pytest.fixture(scope='module')
def three_levels() -> PartitionFunction:
    """
    Z(β) = 1 + e^{5-β} + e^{30-2β}: every level is its own interval.

    Returns:
        PartitionFunction: the instance.
    """
    return PartitionFunction([0., 5., 30.])


class TestIntervalMoves:
    """
    To test the interval move on an instance where the top level stops being heavy first.
    """

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_moves(self, three_levels: PartitionFunction, seed: int) -> None:
        z = three_levels
        run = PrintCoolingSchedule(Explicit(z), ExactSampler(z), seed=seed)
        assert run.partition.intervals == [(0, 0), (1, 1), (2, 2)]
        assert run.transcript.move_tally == {"optimal": 0, "long": 1, "interval": 1}
        assert run.bad == frozenset({(2, 2)})
        assert verify_schedule(z, run.schedule, 3e6).passed

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_interval_emission(self, three_levels: PartitionFunction, seed: int) -> None:
        z = three_levels
        run = PrintCoolingSchedule(Explicit(z), ExactSampler(z), seed=seed)
        record = run.transcript.moves()[0]
        assert record.move is Move.INTERVAL and record.interval == (2, 2)
        assert record.beta_start == 0.

        # ⌈ln ln A⌉ geometric points, then β*
        emitted = [float(point) for point in record.emitted]
        assert len(emitted) == math.ceil(math.log(z.ln_a)) + 1
        assert np.all(np.diff(emitted) > 0.)
        assert emitted[0] == pytest.approx(.5 * record.beta_star)
        assert emitted[-1] == record.beta_star

        # β* sits where the top level has fallen between h and 8h
        h = run.h
        log_mass = z.interval_log_mass(2, 2, record.beta_star)
        assert math.log(h) <= log_mass < math.log(8. * h)

    def test_long_move_reaches_ln_a(self, three_levels: PartitionFunction) -> None:
        z = three_levels
        run = PrintCoolingSchedule(Explicit(z), ExactSampler(z), seed=0)
        record = run.transcript.moves()[1]
        assert record.move is Move.LONG and record.interval == (0, 0)
        assert record.beta_star == pytest.approx(z.ln_a)
        assert record.emitted == [
            pytest.approx(.5 * (record.beta_start + z.ln_a)), pytest.approx(z.ln_a),
        ]
