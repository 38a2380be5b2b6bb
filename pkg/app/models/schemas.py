from pydantic import BaseModel, ConfigDict, Field, NonNegativeFloat, PositiveFloat
from typing import List, Optional, Dict


class GeneratorConfig(BaseModel):
    """Synthetic vehicle dataset parameters."""
    model_config = ConfigDict(frozen=True)

    seed: int = Field(ge=0, le=2**64 - 1)
    entity_count: int = Field(ge=1)


class BoostConfig(BaseModel):
    model_config = ConfigDict(extra="allow", allow_inf_nan=False)

    factor: PositiveFloat
    predicates: List[str] = []


class ProfileConfig(BaseModel):
    """JSON weight profile document."""
    model_config = ConfigDict(extra="allow", allow_inf_nan=False)

    name: str = Field(min_length=1)
    default: NonNegativeFloat = 1.0
    weights: Dict[str, NonNegativeFloat] = {}
    boost: Optional[BoostConfig] = None


class SimilarityRequest(BaseModel):
    left: str
    right: str
    approach: str = "P0"
    explain: bool = False


class SlotScoreOut(BaseModel):
    predicate: str
    similarity: float
    weight: float
    kind: str


class SimilarityResponse(BaseModel):
    left: str
    right: str
    approach: str
    score: float
    slots: Optional[List[SlotScoreOut]] = None


class Neighbour(BaseModel):
    entity_id: str
    score: float


class NeighboursResponse(BaseModel):
    entity_id: str
    approach: str
    neighbours: List[Neighbour]
