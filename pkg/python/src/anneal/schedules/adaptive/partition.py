"""
The partition of the levels {0, ..., n} into intervals [b, c] whose width grows like
b/√(ln A), used by the heaviness tests of the adaptive schedule.
"""
from __future__ import annotations

# IMPORTs
import math

# IMPORTs alias
import numpy as np

# IMPORTs local
from ...utils import BaseCheck, LevelArray

# TYPE ANNOTATIONs
import numpy.typing as npt

# API public
__all__ = ["IntervalPartition", "build_partition"]



class IntervalPartition(BaseCheck):
    """
    Builds the partition inductively from [0, 0]: an interval starting at b has the width
    w = ⌊b/√(ln A)⌋ and is [b, min(b + w, n)].
    Use the 'intervals', 'starts' and 'ends' properties or 'index_of' / 'histogram' to use it.
    """

    def __init__(self, n: int, ln_a: float) -> None:
        """
        Builds the partition.

        Args:
            n (int): the degree, n >= 0.
            ln_a (float): ln A > 0.

        Raises:
            AssumptionViolation: if n < 0 or ln A <= 0.
        """

        self._n = self._check_degree(n, minimum=0)
        self._ln_a = self._check_ln_a(ln_a)
        self._sqrt_ln_a = math.sqrt(self._ln_a)

        # RUN
        starts, ends = [0], [0]
        while ends[-1] < self._n:
            b = ends[-1] + 1
            ends.append(min(b + self.rule_width(b), self._n))
            starts.append(b)
        self._starts = np.asarray(starts, dtype=np.int64)
        self._ends = np.asarray(ends, dtype=np.int64)

    def rule_width(self, b: int) -> int:
        """
        w = ⌊b/√(ln A)⌋.
        """
        return math.floor(b / self._sqrt_ln_a)

    @property
    def n(self) -> int:
        return self._n

    @property
    def ln_a(self) -> float:
        return self._ln_a

    @property
    def starts(self) -> npt.NDArray[np.int64]:
        return self._starts

    @property
    def ends(self) -> npt.NDArray[np.int64]:
        return self._ends

    @property
    def intervals(self) -> list[tuple[int, int]]:
        """
        The intervals [b, c] in increasing order.
        """
        return [(int(b), int(c)) for b, c in zip(self._starts, self._ends)]

    def width(self, index: int) -> int:
        """
        c − b of the interval at 'index'.
        """
        return int(self._ends[index] - self._starts[index])

    def size_bound(self) -> float:
        """
        4 √(ln A) ln n, the size bound that holds under the technical assumptions.
        """
        return 4. * self._sqrt_ln_a * math.log(max(self._n, 1))

    def index_of(self, levels: npt.ArrayLike) -> npt.NDArray[np.int64]:
        """
        The index of the interval containing every level.
        """

        levels = np.asarray(levels, dtype=np.int64)
        if levels.size and (levels.min() < 0 or levels.max() > self._n):
            raise ValueError(f"Levels must lie in 0..{self._n}.")
        return np.searchsorted(self._ends, levels, side='left').astype(np.int64)

    def histogram(self, levels: LevelArray) -> npt.NDArray[np.int64]:
        """
        The number of levels falling in every interval.
        """
        return np.bincount(self.index_of(levels), minlength=len(self)).astype(np.int64)

    def __len__(self) -> int:
        return int(self._starts.size)

    def __getitem__(self, index: int) -> tuple[int, int]:
        return int(self._starts[index]), int(self._ends[index])

    def __iter__(self):
        return iter(self.intervals)

    def __repr__(self) -> str:
        return f"IntervalPartition(n={self._n}, ln_a={self._ln_a:.6g}, size={len(self)})"


def build_partition(n: int, ln_a: float) -> IntervalPartition:
    """
    The interval partition of {0, ..., n} for the given ln A.
    """
    return IntervalPartition(n, ln_a)
