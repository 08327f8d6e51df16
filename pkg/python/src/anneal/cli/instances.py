"""
Instance documents read by the command line: a discriminated union on "type" validated with
pydantic, each document building its Gibbs system.
"""
from __future__ import annotations

# IMPORTs sub
from pathlib import Path
from pydantic import (
    BaseModel, ConfigDict, Field, NonNegativeFloat, NonNegativeInt, PositiveFloat, PositiveInt,
    TypeAdapter, ValidationError, model_validator,
)

# IMPORTs local
from ..errors import AnnealError, InvalidConfiguration
from ..models.graph import Graph
from ..models.systems import (
    Colorings, Explicit, GibbsSystem, IndependentSets, IsingGrid, Matchings,
)
from ..partfn.partition_function import PartitionFunction

# TYPE ANNOTATIONs
from typing import Annotated, Any, Literal, Union

# API public
__all__ = [
    "GraphDocument", "ExplicitInstance", "ColoringsInstance", "IsingGridInstance",
    "IndependentSetsInstance", "MatchingsInstance", "InstanceDocument", "parse_instance",
    "load_instance",
]



class GraphDocument(BaseModel):
    model_config = ConfigDict(extra='forbid')

    n: NonNegativeInt
    edges: list[tuple[NonNegativeInt, NonNegativeInt]] = Field(default_factory=list)

    def build(self) -> Graph:
        return Graph(self.n, self.edges)


class ExplicitInstance(BaseModel):
    """
    Either "log_coeffs" (base-e logs, "-inf" for zero) or plain "coeffs".
    """

    model_config = ConfigDict(extra='forbid')

    type: Literal['explicit']
    log_coeffs: list[float | Literal['-inf']] | None = None
    coeffs: list[NonNegativeFloat] | None = None

    @model_validator(mode='after')
    def _one_form(self) -> ExplicitInstance:
        if (self.log_coeffs is None) == (self.coeffs is None):
            raise ValueError("give exactly one of 'log_coeffs' and 'coeffs'.")
        return self

    def build(self) -> Explicit:
        if self.coeffs is not None:
            return Explicit(PartitionFunction.from_coefficients(self.coeffs))
        return Explicit(PartitionFunction([float(c) for c in self.log_coeffs]))


class ColoringsInstance(BaseModel):
    model_config = ConfigDict(extra='forbid')

    type: Literal['colorings']
    k: PositiveInt
    graph: GraphDocument

    def build(self) -> Colorings:
        return Colorings(self.graph.build(), self.k)


class IsingGridInstance(BaseModel):
    model_config = ConfigDict(extra='forbid')

    type: Literal['ising_grid']
    side: PositiveInt

    def build(self) -> IsingGrid:
        return IsingGrid(self.side)


class IndependentSetsInstance(BaseModel):
    model_config = ConfigDict(extra='forbid')

    type: Literal['independent_sets']
    graph: GraphDocument
    fugacity: PositiveFloat = 1.

    def build(self) -> IndependentSets:
        return IndependentSets(self.graph.build(), self.fugacity)


class MatchingsInstance(BaseModel):
    model_config = ConfigDict(extra='forbid')

    type: Literal['matchings']
    graph: GraphDocument

    def build(self) -> Matchings:
        return Matchings(self.graph.build())


InstanceDocument = Annotated[
    Union[
        ExplicitInstance, ColoringsInstance, IsingGridInstance, IndependentSetsInstance,
        MatchingsInstance,
    ],
    Field(discriminator='type'),
]
_ADAPTER: TypeAdapter[InstanceDocument] = TypeAdapter(InstanceDocument)


def parse_instance(document: dict[str, Any] | str | bytes) -> GibbsSystem:
    """
    The Gibbs system of an instance document (a dict or its JSON text).

    Raises:
        InvalidConfiguration: if the document is not a valid instance.
    """

    try:
        if isinstance(document, (str, bytes)):
            instance = _ADAPTER.validate_json(document)
        else:
            instance = _ADAPTER.validate_python(document)
        return instance.build()
    except ValidationError as error:
        raise InvalidConfiguration(f"invalid instance document: {error}") from error
    except ValueError as error:
        if isinstance(error, AnnealError): raise
        raise InvalidConfiguration(f"invalid instance: {error}") from error


def load_instance(path: str | Path) -> GibbsSystem:
    """
    The Gibbs system of the instance JSON file.
    """
    return parse_instance(Path(path).read_text(encoding='utf-8'))
