"""
The Hamiltonian sampler contract, the chain configuration and the chunked fan-out of draws
over worker threads.
"""
from __future__ import annotations

# IMPORTs alias
import numpy as np

# IMPORTs sub
from concurrent.futures import ThreadPoolExecutor
from pydantic import BaseModel, ConfigDict, Field, PositiveInt
from threadpoolctl import threadpool_limits

# IMPORTs local
from ..utils import Beta, LevelArray

# TYPE ANNOTATIONs
from typing import Literal, Protocol, runtime_checkable

# API public
__all__ = ["HamiltonianSampler", "ChainConfig", "DEFAULT_CHUNK", "draw_levels"]

# CHUNK size of the fan-out
DEFAULT_CHUNK = 4096



@runtime_checkable
class HamiltonianSampler(Protocol):
    """
    Draws H(X) for X ~ μ_β (or a stated approximation of it). Returned levels lie in [0, n].
    A stateful sampler (warm starts) must be called sequentially.
    """

    @property
    def degree(self) -> int: ...

    @property
    def stateful(self) -> bool: ...

    def sample(self, beta: Beta, size: int, rng: np.random.Generator) -> LevelArray: ...


class ChainConfig(BaseModel):
    """
    Configuration of the Markov chain samplers. 'steps_per_sample' is τ₂ (or a mixing time
    surrogate); None takes the system default.
    """

    model_config = ConfigDict(frozen=True)

    steps_per_sample: PositiveInt | None = None
    seed: int = Field(0, ge=0, lt=2 ** 64)
    mode: Literal['cold_start', 'warm_start'] = 'cold_start'


def draw_levels(
        sampler: HamiltonianSampler,
        beta: Beta,
        size: int,
        rng: np.random.Generator,
        workers: int = 1,
        chunk_size: int = DEFAULT_CHUNK,
    ) -> LevelArray:
    """
    To draw 'size' levels at β, split into fixed-size chunks that each get a child stream of
    'rng'. The output only depends on 'rng', 'size' and 'chunk_size', never on 'workers'.

    Args:
        sampler (HamiltonianSampler): the sampler.
        beta (Beta): the inverse temperature.
        size (int): the number of draws.
        rng (np.random.Generator): the parent stream (advanced by the spawn).
        workers (int, optional): threads used for the chunks. Stateful samplers always run
            sequentially. Defaults to 1.
        chunk_size (int, optional): draws per chunk. Defaults to DEFAULT_CHUNK.

    Returns:
        LevelArray: the int64 levels.
    """

    if size <= 0: return np.empty(0, dtype=np.int64)
    sizes = [chunk_size] * (size // chunk_size)
    if size % chunk_size: sizes.append(size % chunk_size)
    streams = rng.spawn(len(sizes))

    if workers <= 1 or sampler.stateful or len(sizes) == 1:
        parts = [sampler.sample(beta, n, stream) for n, stream in zip(sizes, streams)]
    else:
        with threadpool_limits(limits=1), ThreadPoolExecutor(max_workers=workers) as executor:
            parts = list(executor.map(lambda job: sampler.sample(beta, *job), zip(sizes, streams)))
    return np.concatenate(parts).astype(np.int64, copy=False)
