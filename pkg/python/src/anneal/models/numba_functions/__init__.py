"""
Directory contains the numba optimized enumeration kernels of the graph systems.
"""

from .enumeration import (
    labelling_histogram, matching_histogram, is_related, RELATION_EQUAL, RELATION_DIFFER,
    RELATION_BOTH_ONE,
)
