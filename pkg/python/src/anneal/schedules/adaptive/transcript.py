"""
The record of a randomized run: every oracle batch with its sample count, every move of the
adaptive schedule and every failure event. Written as JSON Lines.
"""
from __future__ import annotations

# IMPORTs
import logging

# IMPORTs sub
from collections import Counter
from pathlib import Path
from pydantic import BaseModel, ConfigDict, Field
from pydantic_core import to_json

# IMPORTs local
from ...models.schedule import Move
from ...utils import Beta, beta_to_json

# TYPE ANNOTATIONs
from typing import Any, Iterator, Literal

# API public
__all__ = ["CallRecord", "MoveRecord", "FailureRecord", "RunTranscript"]

logger = logging.getLogger(__name__)



class CallRecord(BaseModel):
    """
    One oracle batch: 'samples' draws at 'beta' for the operation 'op'.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal['call'] = 'call'
    op: str
    beta: float | str
    samples: int = Field(ge=0)
    interval: tuple[int, int] | None = None
    value: float | None = None


class MoveRecord(BaseModel):
    """
    One move of the adaptive schedule and the temperatures it emitted.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal['move'] = 'move'
    move: Move
    beta_start: float
    beta_star: float | None = None
    interval: tuple[int, int] | None = None
    emitted: list[float | str] = Field(default_factory=list)


class FailureRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal['failure'] = 'failure'
    error: str
    message: str
    beta: float | str | None = None


class RunTranscript:
    """
    Accumulates the records of a run. Q, the total number of draws, is the sum of the sample
    counts of the call records.
    """

    def __init__(self, seed: int | None = None, mode: str | None = None) -> None:
        self._seed = seed
        self._mode = mode
        self._records: list[CallRecord | MoveRecord | FailureRecord] = []

    @property
    def seed(self) -> int | None:
        return self._seed

    @property
    def mode(self) -> str | None:
        return self._mode

    @property
    def records(self) -> list[CallRecord | MoveRecord | FailureRecord]:
        return list(self._records)

    def record_call(
            self,
            op: str,
            beta: Beta,
            samples: int,
            interval: tuple[int, int] | None = None,
            value: float | None = None,
        ) -> CallRecord:
        record = CallRecord(
            op=op, beta=beta_to_json(beta), samples=samples, interval=interval, value=value,
        )
        self._records.append(record)
        logger.debug("%s at β = %s: %d samples", op, record.beta, samples)
        return record

    def record_move(
            self,
            move: Move,
            beta_start: float,
            emitted: list[Beta],
            beta_star: float | None = None,
            interval: tuple[int, int] | None = None,
        ) -> MoveRecord:
        record = MoveRecord(
            move=move, beta_start=beta_start, beta_star=beta_star, interval=interval,
            emitted=[beta_to_json(beta) for beta in emitted],
        )
        self._records.append(record)
        logger.info(
            "%s move from β = %.6g emitted %s", move.value, beta_start, record.emitted,
        )
        return record

    def record_failure(self, error: Exception, beta: Beta | None = None) -> FailureRecord:
        record = FailureRecord(
            error=type(error).__name__, message=str(error),
            beta=None if beta is None else beta_to_json(beta),
        )
        self._records.append(record)
        logger.warning("failure event %s: %s", record.error, record.message)
        return record

    def calls(self) -> list[CallRecord]:
        return [record for record in self._records if isinstance(record, CallRecord)]

    def moves(self) -> list[MoveRecord]:
        return [record for record in self._records if isinstance(record, MoveRecord)]

    def failures(self) -> list[FailureRecord]:
        return [record for record in self._records if isinstance(record, FailureRecord)]

    @property
    def total_samples(self) -> int:
        """
        Q, the total number of draws.
        """
        return sum(record.samples for record in self.calls())

    @property
    def move_tally(self) -> dict[str, int]:
        """
        Number of optimal, long and interval moves.
        """

        tally = Counter(record.move.value for record in self.moves())
        return {move.value: tally.get(move.value, 0) for move in (
            Move.OPTIMAL, Move.LONG, Move.INTERVAL,
        )}

    def coupling_bound(self, variation_distance: float) -> float:
        """
        δ_tv·Q: with at least 1 minus this probability, a sampler at variation distance δ_tv
        gives the same output as an exact one.
        """
        return variation_distance * self.total_samples

    def summary(self) -> dict[str, Any]:
        return {
            "kind": "run", "seed": self._seed, "mode": self._mode,
            "total_samples": self.total_samples, "moves": self.move_tally,
            "failures": len(self.failures()),
        }

    def iter_records(self) -> Iterator[dict[str, Any]]:
        """
        The JSON documents of the run: the summary first, then every record in order.
        """

        yield self.summary()
        for record in self._records: yield record.model_dump(mode='json')

    def to_jsonl(self) -> str:
        lines = [to_json(self.summary()).decode()]
        lines.extend(record.model_dump_json() for record in self._records)
        return "\n".join(lines) + "\n"

    def write_jsonl(self, path: str | Path) -> None:
        Path(path).write_text(self.to_jsonl(), encoding='utf-8')

    def __len__(self) -> int:
        return len(self._records)

    def __repr__(self) -> str:
        return (
            f"RunTranscript(seed={self._seed}, records={len(self._records)}, "
            f"Q={self.total_samples})"
        )
