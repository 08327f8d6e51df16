"""
Tests the deterministic schedules: uniform, geometric tail, the greedy non-adaptive witness,
the reversible augmentation, the piecewise-linear approximation, the existence construction and
the length-optimal greedy schedule.
"""
from __future__ import annotations

# IMPORTs
import math
import pytest

# IMPORTs alias
import numpy as np

# IMPORTs local
from anneal import (
    INF, AssumptionViolation, ContractViolation, CoolingSchedule, ExactSampler, Explicit, Move,
    PartitionFunction, RunFailure, augment_reversible, bezakova_schedule, existence_schedule,
    greedy_schedule, pl_approx, print_cooling_schedule, uniform_schedule, verify_reversible,
    verify_schedule,
)
from anneal.schedules import (
    ConvexCurve, adaptive_length_bound, check_lb_inequality, existence_length_bound,
    lower_bound_greedy, unit_level,
)

# TYPE ANNOTATIONs
from typing import Iterator



def random_instances(
        count: int,
        seed: int,
        n_range: tuple[int, int],
        ln_a_range: tuple[float, float],
    ) -> Iterator[PartitionFunction]:
    """
    Random explicit partition functions with a_0 = 1.
    """

    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(*n_range, endpoint=True))
        ln_a = float(rng.uniform(*ln_a_range))
        yield PartitionFunction.random(rng, n, ln_a)


class TestUniformSchedule:
    """
    To test the schedule 0, 1/n, ..., ⌈n ln A⌉/n, ∞.
    """

    def test_known_schedule(self) -> None:
        assert uniform_schedule(2, 2.).betas == (0., .5, 1., 1.5, 2., INF)

    def test_small_a_is_a_single_step(self) -> None:
        assert uniform_schedule(1, 1e-6).betas == (0., INF)

    @pytest.mark.parametrize("n, ln_a", [(3, 1.7), (10, 4.2), (25, 9.)])
    def test_length(self, n: int, ln_a: float) -> None:
        assert len(uniform_schedule(n, ln_a)) == math.ceil(n * ln_a) + 2

    def test_invalid_arguments(self) -> None:
        with pytest.raises(AssumptionViolation): uniform_schedule(0, 1.)
        with pytest.raises(AssumptionViolation): uniform_schedule(3, 0.)
        with pytest.raises(TypeError): uniform_schedule(2.5, 1.)

    def test_ratios_on_random_instances(self) -> None:
        for z in random_instances(30, 1, (1, 40), (.5, 12.)):
            schedule = uniform_schedule(z.degree, z.ln_a)
            verification = verify_schedule(z, schedule, math.e)
            assert verification.passed
            assert verification.log_ratios[-1] <= math.log(2.) + 1e-9


class TestBezakovaSchedule:
    """
    To test the schedule with a geometric tail.
    """

    def test_known_schedule(self) -> None:
        assert bezakova_schedule(2, 1.).betas == (0., .5, 1., 2., INF)

    @pytest.mark.parametrize("n, ln_a", [(5, 3.), (40, 11.5), (100, 30.)])
    def test_length(self, n: int, ln_a: float) -> None:
        expected = math.ceil(ln_a) + math.ceil((1. + ln_a) * math.log(n)) + 2
        assert len(bezakova_schedule(n, ln_a)) == expected

    def test_preconditions(self) -> None:
        with pytest.raises(AssumptionViolation): bezakova_schedule(1, 3.)
        with pytest.raises(AssumptionViolation): bezakova_schedule(5, .5)

    def test_steps_on_random_instances(self) -> None:
        for z in random_instances(30, 2, (2, 40), (1., 12.)):
            schedule = bezakova_schedule(z.degree, z.ln_a)
            drops = [z.log_z(b) - z.log_z(bp) for b, bp in schedule.pairs()]
            assert max(drops) <= 1. + math.log(2.) + 1e-9
            assert verify_schedule(z, schedule, 2. * math.e).passed


class TestLowerBoundGreedy:
    """
    To test the greedy witness of the non-adaptive lower bound.
    """

    def test_reference_point(self) -> None:
        report = lower_bound_greedy(100, 20., math.e ** 2)
        expected = math.log(100. / math.e) * (
            math.log(math.expm1(20.)) / math.log(4. * math.e ** 2) - 1.
        )
        assert report.bound == pytest.approx(expected)
        assert report.length >= report.bound
        assert report.satisfied

    @pytest.mark.parametrize("n, ln_a, bound_b", [
        (10, 10., 2.), (50, 15., math.e), (200, 40., 10.), (1000, 60., 3.), (30, 8., 1.5),
        (5, 30., 100.), (2, 12., 5.), (400, 100., math.e ** 2), (64, 25., 20.), (3, 6., 1.1),
        (80, 9., 1.2), (700, 35., 50.), (12, 18., 7.), (150, 45., 2.5), (25, 22., 30.),
        (9, 14., 4.), (333, 70., 8.), (45, 11., 1.8), (7, 40., 500.), (1200, 90., 12.),
    ])
    def test_bound_holds(self, n: int, ln_a: float, bound_b: float) -> None:
        report = lower_bound_greedy(n, ln_a, bound_b)
        assert report.length >= report.bound
        assert report.schedule.betas[-1] is INF

    def test_single_level(self) -> None:
        bound_b = 2.
        report = lower_bound_greedy(1, 20., bound_b)
        ln_4b = math.log(4. * bound_b)
        assert report.length == math.ceil((math.log(math.expm1(20.)) - ln_4b) / ln_4b) + 1

    def test_precondition(self) -> None:
        with pytest.raises(AssumptionViolation): lower_bound_greedy(10, 1., math.e ** 2)


class TestAugmentReversible:
    """
    To test the reversible augmentation.
    """

    def test_known_augmentation(self) -> None:
        schedule = augment_reversible(CoolingSchedule([0., 1., INF]), 4)
        assert schedule.betas == (0., .25, .5, 1., INF)
        assert schedule.moves[:2] == (Move.AUGMENTED, Move.AUGMENTED)
        assert schedule.moves[-1] is Move.FINAL

    def test_short_steps_are_kept(self) -> None:
        schedule = CoolingSchedule([0., .1, .15, INF])
        assert augment_reversible(schedule, 4) == schedule

    def test_every_temperature_survives(self) -> None:
        base = bezakova_schedule(20, 6.)
        augmented = augment_reversible(base, 20)
        assert set(base.betas) <= set(augmented.betas)

    def test_reversible_on_random_instances(self) -> None:
        for z in random_instances(20, 3, (2, 40), (1., 12.)):
            schedule = augment_reversible(greedy_schedule(z, math.e ** 2), z.degree)
            assert verify_schedule(z, schedule, math.e ** 2).passed
            assert verify_reversible(z, schedule, 3e6).passed

    def test_reversible_adaptive_output(self) -> None:
        completed = 0
        for seed, z in enumerate(random_instances(12, 8, (20, 50), (3., 20.))):
            try:
                schedule, _ = print_cooling_schedule(Explicit(z), ExactSampler(z), seed=seed)
            except RunFailure:
                continue
            augmented = augment_reversible(schedule, z.degree)
            assert set(schedule.betas) <= set(augmented.betas)
            assert verify_reversible(z, augmented, 3e6).passed
            completed += 1
        assert completed >= 10


@pytest.fixture(scope='module')
def binomial_twenty() -> tuple[float, ConvexCurve]:
    """
    f(x) = 20 ln(1 + e^{-x}) and the γ solving f(γ) = 1.

    Returns:
        tuple[float, ConvexCurve]: γ and the curve.
    """

    gamma = unit_level(PartitionFunction.binomial_power(20))
    return gamma, ConvexCurve.log_binomial(20)


class TestPLApprox:
    """
    To test the greedy piecewise-linear approximation.
    """

    def test_unit_level(self, binomial_twenty: tuple[float, ConvexCurve]) -> None:
        gamma, curve = binomial_twenty
        assert curve.f(gamma) == pytest.approx(1., abs=1e-8)

    def test_linear_curve_is_one_piece(self) -> None:
        approximation = pl_approx(ConvexCurve(lambda x: 5. - x, lambda x: -1.), 3.)
        assert approximation.pieces == 1
        assert approximation.midpoint_slacks() == pytest.approx([0.])

    def test_binomial_pieces(self, binomial_twenty: tuple[float, ConvexCurve]) -> None:
        gamma, curve = binomial_twenty
        approximation = pl_approx(curve, gamma)
        assert 1 <= approximation.pieces <= approximation.bound
        assert approximation.breakpoints[0] == 0. and approximation.breakpoints[-1] == gamma
        slacks = approximation.midpoint_slacks()
        assert (slacks >= -1. - 1e-7).all()
        assert slacks[:-1] == pytest.approx(np.full(slacks.size - 1, -1.), abs=1e-6)

    def test_rows(self, binomial_twenty: tuple[float, ConvexCurve]) -> None:
        gamma, curve = binomial_twenty
        rows = pl_approx(curve, gamma).rows(11)
        assert len(rows) == 11
        assert rows[0][1] == pytest.approx(rows[0][2])
        assert all(g >= f - 1e-12 for _, f, g in rows)

    def test_non_convex_curve_is_detected(self) -> None:
        curve = ConvexCurve(lambda x: 3. * math.cos(x), lambda x: -3. * math.sin(x))
        with pytest.raises(ContractViolation): pl_approx(curve, 1.8 * math.pi)


class TestExistenceSchedule:
    """
    To test the deterministic e²-Chebyshev construction.
    """

    def test_constant_instance(self) -> None:
        z = PartitionFunction.from_coefficients([3., 0., 0.])
        assert existence_schedule(z).betas == (0., INF)

    def test_assumptions(self) -> None:
        z = PartitionFunction.binomial_power(2)
        with pytest.raises(AssumptionViolation): existence_schedule(z)
        assert verify_schedule(z, existence_schedule(z, strict=False), math.e ** 2).passed

    @pytest.mark.slow
    def test_random_instances(self) -> None:
        for z in random_instances(100, 4, (20, 50), (5., 15.)):
            schedule = existence_schedule(z)
            assert verify_schedule(z, schedule, math.e ** 2).passed
            assert schedule.length <= existence_length_bound(z.degree, z.ln_a)

    def test_binomial(self) -> None:
        z = PartitionFunction.binomial_power(40)
        schedule = existence_schedule(z)
        assert verify_schedule(z, schedule, math.e ** 2).passed

    def test_refinement_stops_at_log2_ln_a(self) -> None:
        for z in random_instances(10, 17, (20, 50), (5., 30.)):
            normalized = z.normalized()
            pieces = pl_approx(
                ConvexCurve.from_partition_function(normalized), unit_level(normalized),
            ).pieces
            per_piece = math.ceil(math.log2(z.ln_a)) + 1
            assert existence_schedule(z).length <= pieces * per_piece + 1


class TestGreedySchedule:
    """
    To test the length-optimal schedule and the adaptive lower bound.
    """

    def test_single_step(self) -> None:
        assert greedy_schedule(PartitionFunction.from_coefficients([1., 1.]), 3.).betas == (
            0., INF,
        )
        assert greedy_schedule(PartitionFunction.from_coefficients([1., 0.]), 1.5).length == 1

    def test_invalid_bound(self) -> None:
        with pytest.raises(AssumptionViolation):
            greedy_schedule(PartitionFunction.binomial_power(4), 1.)

    @pytest.mark.parametrize("n", [100, 400, 900])
    def test_adaptive_lower_bound(self, n: int) -> None:
        bound_b = math.e ** 2
        schedule = greedy_schedule(PartitionFunction.binomial_power(n), bound_b)
        assert schedule.length >= adaptive_length_bound(n, bound_b)
        assert adaptive_length_bound(n, bound_b) == pytest.approx(math.sqrt(n / 40.))

    def test_steps_are_maximal(self) -> None:
        z = PartitionFunction.binomial_power(30)
        schedule = greedy_schedule(z, math.e)
        verification = verify_schedule(z, schedule, math.e)
        assert verification.passed
        assert all(r == pytest.approx(1., abs=1e-6) for r in verification.log_ratios[:-1])

    @pytest.mark.parametrize("n", [1, 10, 400])
    def test_inequality_grid(self, n: int) -> None:
        report = check_lb_inequality(n)
        assert report.holds()
        assert report.min_slack >= -1e-9
        assert report.slacks[:, 0] == pytest.approx(np.zeros(101), abs=1e-12)
