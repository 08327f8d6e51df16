"""
Hamiltonian level samplers: exact sampling from explicit coefficients, the Markov chains of the
graph systems and their warm-start driver.
"""

# IMPORTs local
from .base import HamiltonianSampler, ChainConfig, DEFAULT_CHUNK, draw_levels
from .exact import ExactSampler, exact_sampler
from .chains import (
    advance, glauber_step, matching_chain_step, check_ergodicity, TransitionMatrix,
    glauber_transition_matrix, matching_transition_matrix,
)
from .warm_start import WarmStartDriver, warm_start_driver
from .mcmc import MCMCSampler, mcmc_sampler, priming_schedule

# API public
__all__ = [
    "HamiltonianSampler",
    "ChainConfig",
    "DEFAULT_CHUNK",
    "draw_levels",
    "ExactSampler",
    "exact_sampler",
    "advance",
    "glauber_step",
    "matching_chain_step",
    "check_ergodicity",
    "TransitionMatrix",
    "glauber_transition_matrix",
    "matching_transition_matrix",
    "WarmStartDriver",
    "warm_start_driver",
    "MCMCSampler",
    "mcmc_sampler",
    "priming_schedule",
]
