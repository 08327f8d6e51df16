"""
Cooling schedules: strictly increasing inverse temperatures from 0 to ∞, each point tagged with
the move that emitted it.
"""
from __future__ import annotations

# IMPORTs
import io
import csv
import json

# IMPORTs alias
import numpy as np

# IMPORTs sub
from enum import Enum

# IMPORTs local
from ..errors import MalformedSchedule
from ..utils import INF, Beta, as_beta, beta_to_json

# TYPE ANNOTATIONs
from typing import Any, Iterator, Sequence
import numpy.typing as npt

# API public
__all__ = ["Move", "CoolingSchedule"]



class Move(str, Enum):
    """
    How a temperature of a schedule was produced.
    """

    OPTIMAL = 'optimal'
    LONG = 'long'
    INTERVAL = 'interval'
    NON_ADAPTIVE = 'non_adaptive'
    AUGMENTED = 'augmented'
    FINAL = 'final'


class CoolingSchedule:
    """
    A cooling schedule β_0 = 0 < β_1 < ... < β_ℓ = ∞.
    'moves[i]' is the move that emitted betas[i + 1], so there is one move per step. len() gives
    the number of temperatures, 'length' the number of steps ℓ.
    """

    def __init__(
            self,
            betas: Sequence[Beta | float | str],
            moves: Sequence[Move | str] | None = None,
            default_move: Move = Move.NON_ADAPTIVE,
        ) -> None:
        """
        Builds and validates a cooling schedule.

        Args:
            betas (Sequence[Beta | float | str]): the inverse temperatures, 'inf' accepted for the
                last one.
            moves (Sequence[Move | str] | None, optional): one move per step. If None, every step
                is tagged 'default_move' except the last one, tagged FINAL. Defaults to None.
            default_move (Move, optional): see 'moves'. Defaults to Move.NON_ADAPTIVE.

        Raises:
            MalformedSchedule: if the schedule does not start at 0, does not end at ∞, is not
                strictly increasing or if the number of moves is wrong.
        """

        try:
            points = tuple(as_beta(b) for b in betas)
        except ValueError as error:
            raise MalformedSchedule(f"invalid inverse temperature: {error}") from error
        self._betas = self._check_betas(points)

        if moves is None:
            moves = [default_move] * (len(points) - 2) + [Move.FINAL]
        try:
            self._moves = tuple(Move(m) for m in moves)
        except ValueError as error:
            raise MalformedSchedule(f"unknown move tag: {error}") from error
        if len(self._moves) != len(points) - 1:
            raise MalformedSchedule(
                f"{len(self._moves)} moves given for a schedule of {len(points) - 1} steps."
            )

    @staticmethod
    def _check_betas(points: tuple[Beta, ...]) -> tuple[Beta, ...]:
        """
        To check the endpoints and the strict monotonicity.
        """

        if len(points) < 2: raise MalformedSchedule("A schedule needs at least 0 and ∞.")
        if points[0] != 0.: raise MalformedSchedule(f"A schedule starts at 0, not {points[0]}.")
        if points[-1] is not INF:
            raise MalformedSchedule(f"A schedule ends at ∞, not {points[-1]}.")
        if any(p is INF for p in points[:-1]):
            raise MalformedSchedule("Only the last inverse temperature can be ∞.")
        for index, (left, right) in enumerate(zip(points[:-1], points[1:])):
            if not left < right:
                raise MalformedSchedule(
                    f"not strictly increasing at index {index}: {left} >= {right}."
                )
        return points

    @classmethod
    def from_points(
            cls,
            points: Sequence[float],
            move: Move = Move.NON_ADAPTIVE,
        ) -> CoolingSchedule:
        """
        From finite points in any order, possibly with duplicates. 0 and ∞ are added.
        """

        finite = sorted(set(float(p) for p in points) | {0.})
        return cls([*finite, INF], default_move=move)

    @property
    def betas(self) -> tuple[Beta, ...]:
        """
        The inverse temperatures, ∞ included.
        """
        return self._betas

    @property
    def moves(self) -> tuple[Move, ...]:
        """
        The move of each step.
        """
        return self._moves

    @property
    def finite_betas(self) -> npt.NDArray[np.float64]:
        """
        The finite inverse temperatures as an array.
        """
        return np.asarray(self._betas[:-1], dtype=np.float64)

    @property
    def length(self) -> int:
        """
        The number of steps ℓ.
        """
        return len(self._betas) - 1

    def pairs(self) -> Iterator[tuple[Beta, Beta]]:
        """
        Consecutive pairs (β_i, β_{i+1}).
        """
        return zip(self._betas[:-1], self._betas[1:])

    def move_counts(self) -> dict[Move, int]:
        """
        Number of steps per move tag.
        """

        counts = {move: 0 for move in Move}
        for move in self._moves: counts[move] += 1
        return counts

    def truncated(self, target: Beta) -> list[Beta]:
        """
        The temperatures up to 'target': every β_i < target, then target itself.
        The result is not a schedule when target is finite.
        """

        target = as_beta(target)
        return [b for b in self._betas if b < target] + [target]

    def to_json(self) -> dict[str, Any]:
        return {
            "betas": [beta_to_json(b) for b in self._betas],
            "moves": [m.value for m in self._moves],
        }

    @classmethod
    def from_json(cls, document: dict[str, Any]) -> CoolingSchedule:
        if "betas" not in document: raise MalformedSchedule("A schedule document needs 'betas'.")
        return cls(document["betas"], document.get("moves"))

    def dumps(self) -> str:
        """
        JSON text of the schedule.
        """
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def loads(cls, text: str) -> CoolingSchedule:
        return cls.from_json(json.loads(text))

    def to_csv(self) -> str:
        """
        CSV text with one temperature per row (index, beta, move). The first row has no move.
        """

        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\r\n')
        writer.writerow(["index", "beta", "move"])
        writer.writerow([0, repr(0.), ""])
        for index, (beta, move) in enumerate(zip(self._betas[1:], self._moves), start=1):
            writer.writerow([index, beta_to_json(beta) if beta is INF else repr(beta), move.value])
        return buffer.getvalue()

    def __len__(self) -> int:
        return len(self._betas)

    def __iter__(self) -> Iterator[Beta]:
        return iter(self._betas)

    def __getitem__(self, index: int) -> Beta:
        return self._betas[index]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoolingSchedule): return NotImplemented
        return self._betas == other._betas and self._moves == other._moves

    def __hash__(self) -> int:
        return hash((self._betas, self._moves))

    def __repr__(self) -> str:
        shown = ", ".join(f"{b:.4g}" if b is not INF else "inf" for b in self._betas[:6])
        more = ", ..." if len(self._betas) > 6 else ""
        return f"CoolingSchedule([{shown}{more}], length={self.length})"
