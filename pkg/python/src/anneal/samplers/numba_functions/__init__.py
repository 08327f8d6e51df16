"""
Directory contains the numba optimized Markov chain transitions.
"""

from .chains import heat_bath_steps, matching_steps
