"""
Tests the exact log-space oracle: ln Z, f′, the Chebyshev ratio and schedule verification.
"""
from __future__ import annotations

# IMPORTs
import math
import pytest

# IMPORTs alias
import numpy as np

# IMPORTs sub
from hypothesis import given, settings, strategies as st

# IMPORTs local
from anneal import (
    INF, AssumptionViolation, CoolingSchedule, MalformedSchedule, PartitionFunction,
)
from anneal.partfn import (
    chebyshev_ratio, f_prime, log_add, log_expm1, log_mean, log_sum, log_z, verify_reversible,
    verify_schedule,
)



class TestLogWeights:
    """
    To test the log-space helpers.
    """

    def test_log_sum_skips_zero_weights(self) -> None:
        values = np.array([0., -np.inf, math.log(3.)])
        assert log_sum(values) == pytest.approx(math.log(4.))

    def test_log_sum_of_nothing(self) -> None:
        assert log_sum(np.array([-np.inf, -np.inf])) == -math.inf
        assert log_sum(np.array([])) == -math.inf

    def test_log_sum_large_values(self) -> None:
        values = np.full(1000, 800.)
        assert log_sum(values) == pytest.approx(800. + math.log(1000.))

    def test_helpers(self) -> None:
        assert log_add(0., 0.) == pytest.approx(math.log(2.))
        assert log_expm1(math.log(3.)) == pytest.approx(math.log(2.))
        assert log_expm1(0.) == -math.inf
        assert log_mean(np.log(np.array([1., 2., 3.]))) == pytest.approx(math.log(2.))
        with pytest.raises(ValueError): log_mean(np.array([]))


@pytest.fixture(scope='module')
def z_one_one() -> PartitionFunction:
    """
    Z(β) = 1 + e^{-β}.

    Returns:
        PartitionFunction: the instance a = (1, 1).
    """
    return PartitionFunction.from_coefficients([1., 1.])


class TestPartitionFunction:
    """
    To test ln Z, f′ and the constructors on small instances with known values.
    """

    def test_log_z_values(self, z_one_one: PartitionFunction) -> None:
        assert log_z(z_one_one, 0.) == pytest.approx(math.log(2.))
        assert log_z(z_one_one, INF) == 0.
        assert log_z(z_one_one, math.log(2.)) == pytest.approx(math.log(1.5))
        assert z_one_one.ln_a == pytest.approx(math.log(2.))
        assert z_one_one.degree == 1

    def test_f_prime_values(self, z_one_one: PartitionFunction) -> None:
        assert f_prime(z_one_one, 0.) == pytest.approx(-.5)
        assert f_prime(PartitionFunction.from_coefficients([2., 0., 0., 0.]), 0.) == 0.
        with pytest.raises(ValueError): z_one_one.f_prime(INF)

    @given(st.integers(min_value=1, max_value=40), st.integers(min_value=0, max_value=2 ** 32))
    @settings(max_examples=30, deadline=None)
    def test_f_prime_at_zero_is_bounded(self, n: int, seed: int) -> None:
        z = PartitionFunction.random(np.random.default_rng(seed), n, 5.)
        assert -n - 1e-9 <= z.f_prime(0.) <= 0.

    def test_constant_instance(self) -> None:
        z = PartitionFunction.from_coefficients([2., 0., 0.])
        assert z.is_constant
        assert z.log_z(3.) == pytest.approx(math.log(2.))
        assert z.normalized().log_z(0.) == pytest.approx(0.)

    def test_a0_below_one_is_refused(self) -> None:
        with pytest.raises(AssumptionViolation): PartitionFunction.from_coefficients([.5, 1.])
        with pytest.raises(AssumptionViolation): PartitionFunction.from_coefficients([0., 1.])

    def test_invalid_log_coefficients(self) -> None:
        with pytest.raises(ValueError): PartitionFunction([])
        with pytest.raises(ValueError): PartitionFunction([0., float('nan')])
        with pytest.raises(ValueError): PartitionFunction([0., math.inf])

    def test_json_round_trip(self) -> None:
        z = PartitionFunction([0., '-inf', 1.5])
        document = z.to_json()
        assert document["log_coeffs"] == [0., "-inf", 1.5]
        assert np.array_equal(PartitionFunction.from_json(document).log_coeffs, z.log_coeffs)

    def test_binomial_power(self) -> None:
        z = PartitionFunction.binomial_power(20)
        assert z.log_z(0.) == pytest.approx(20. * math.log(2.))
        assert z.log_z(1.) == pytest.approx(20. * math.log1p(math.exp(-1.)))

    def test_huge_instance_stays_finite(self) -> None:
        z = PartitionFunction.binomial_power(5000)
        assert math.isfinite(z.ln_a)
        assert z.ln_a == pytest.approx(5000. * math.log(2.))

    def test_level_probabilities_sum_to_one(self) -> None:
        z = PartitionFunction.from_coefficients([6., 18., 0., 3.])
        probabilities = np.exp(z.level_log_probabilities(0.))
        assert probabilities.sum() == pytest.approx(1.)
        assert probabilities == pytest.approx(np.array([6., 18., 0., 3.]) / 27.)
        assert np.exp(z.interval_log_mass(1, 3, 0.)) == pytest.approx(21. / 27.)


class TestChebyshevRatio:
    """
    To test the Chebyshev ratio Z(2β′−β)Z(β)/Z(β′)².
    """

    def test_identity_step(self) -> None:
        z = PartitionFunction.binomial_power(5)
        assert chebyshev_ratio(z, 1.3, 1.3) == 0.

    @pytest.mark.parametrize("a, z_value", [(1., .5), (3., .25), (.5, .9)])
    def test_two_atom_closed_form(self, a: float, z_value: float) -> None:
        n = 4
        z = PartitionFunction.two_atom(10., a, n)
        beta = -math.log(z_value) / n
        expected = 1. + a * ((1. - z_value) / (1. + a * z_value)) ** 2
        assert math.exp(z.chebyshev_ratio(0., beta)) == pytest.approx(expected)

    def test_two_atom_known_value(self) -> None:
        z = PartitionFunction.two_atom(5., 1., 3)
        beta = math.log(2.) / 3
        assert math.exp(z.chebyshev_ratio(0., beta)) == pytest.approx(10. / 9.)

    def test_infinite_end(self) -> None:
        z = PartitionFunction.from_coefficients([1., 1.])
        assert z.chebyshev_ratio(0., INF) == pytest.approx(math.log(2.))

    def test_ordering_precondition(self) -> None:
        z = PartitionFunction.from_coefficients([1., 1.])
        with pytest.raises(ValueError): z.chebyshev_ratio(2., 1.)


class TestVerification:
    """
    To test the forward and reversible schedule verification.
    """

    def test_single_step_passes(self, z_one_one: PartitionFunction) -> None:
        verification = verify_schedule(z_one_one, [0., INF], 3.)
        assert verification.passed
        assert verification.worst_ratio == pytest.approx(2.)
        assert verification.rows()[0]["beta_next"] == "inf"

    def test_single_step_fails(self, z_one_one: PartitionFunction) -> None:
        verification = verify_reversible(z_one_one, [0., INF], 1.5)
        assert not verification.passed
        assert verification.failures == [0]

    def test_constant_instance_passes_with_one(self) -> None:
        z = PartitionFunction.from_coefficients([1., 0., 0.])
        assert verify_schedule(z, CoolingSchedule([0., INF]), 1.).passed
        assert verify_reversible(z, CoolingSchedule([0., INF]), 1.).passed

    def test_reversed_ratios_are_checked(self) -> None:
        z = PartitionFunction.binomial_power(30)
        schedule = CoolingSchedule([0., 1., 2., INF])
        verification = verify_reversible(z, schedule, 1e6)
        assert len(verification.reverse_log_ratios) == 2
        assert all(row["reverse_log_ratio"] >= 0. for row in verification.rows()[:2])

    def test_malformed_schedule_is_refused(self, z_one_one: PartitionFunction) -> None:
        with pytest.raises(MalformedSchedule): verify_schedule(z_one_one, [0., 2., 1., INF], 3.)
