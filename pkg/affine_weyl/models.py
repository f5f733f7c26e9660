"""
Pydantic models for affine-weyl.
Defines the run configuration of the command line and the request and
response schemas of the HTTP endpoints.
"""

from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from .core import FamilyTag, GroupFamily

SEED_LIMIT = 2**64


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    DOT = "dot"
    TEXT = "text"


class RunConfig(BaseModel):
    """Everything one command-line run depends on."""

    group: FamilyTag = Field(FamilyTag.C, description="Affine family")
    n: Optional[int] = Field(None, description="Rank; taken from the input when omitted")
    window: int = Field(2, ge=0, description="Label bound L")
    seed: int = Field(7, ge=0, lt=SEED_LIMIT, description="64-bit sampling seed")
    format: OutputFormat = Field(OutputFormat.JSON, description="Report format")
    max_nodes: int = Field(200_000, gt=0, description="Vertex cap for searches")
    max_seconds: float = Field(300.0, gt=0, description="Wall-clock cap per search")
    out: Optional[str] = Field(None, description="Output path; stdout when omitted")
    jobs: int = Field(1, ge=1, description="Worker processes for verify")

    @field_validator("group", mode="before")
    @classmethod
    def parse_group(cls, v):
        if isinstance(v, str):
            return FamilyTag.parse(v)
        return v

    def family(self, n: Optional[int] = None) -> GroupFamily:
        rank = self.n if self.n is not None else n
        if rank is None:
            raise ValueError("the rank is unknown; pass --n")
        return GroupFamily.of(self.group, rank)


# 1. Classify
class ClassifyRequest(BaseModel):
    """Request model for classifying an involution."""

    element: str = Field(
        ...,
        examples=["(+1 2)^1 (-3 4)^3 (-5)^2 (-6)^4 (+7)^0"],
        description="Element in cycle notation or as JSON",
        min_length=1,
        max_length=10000,
    )
    group: str = Field("C", examples=["B"], description="Family tag")
    n: Optional[int] = Field(None, ge=1, description="Rank; inferred when omitted")


class InvariantsModel(BaseModel):
    sum: int
    sum_plus: int
    minus: int
    f: Optional[int]


class ClassifyResponse(BaseModel):
    """Response model for a classified involution."""

    descriptor: str = Field(..., examples=["C:n=7:(2,2,0,1)"])
    cycle_form: str
    cycle_type: List[int]
    split: Dict[str, int]
    invariants: InvariantsModel
    representative: str = Field(..., description="Canonical representative of the class")


# 2. Commutes
class CommutesRequest(BaseModel):
    """Request model for a commuting test."""

    x: str = Field(..., examples=["(+1 2)^1 (-3)^0 (-4)^2"], min_length=1)
    y: str = Field(..., examples=["(-1)^2 (-2)^0 (-3)^0 (-4)^2"], min_length=1)
    n: Optional[int] = Field(None, ge=1)


class CommutesResponse(BaseModel):
    commutes: bool = Field(..., description="Structural answer")
    oracle: bool = Field(..., description="Answer by multiplication")


# 3. Neighbours
class NeighborsRequest(BaseModel):
    """Request model for commuting neighbours inside the class."""

    element: str = Field(..., min_length=1)
    group: str = Field("C")
    n: Optional[int] = Field(None, ge=1)
    window: int = Field(1, ge=0, le=6, description="Label bound L")


class NeighborsResponse(BaseModel):
    descriptor: str
    window: int
    count: int
    neighbors: List[str]


# 4. Verdict
class VerdictRequest(BaseModel):
    """Request model for a connectivity verdict."""

    descriptor: str = Field(
        ..., examples=["B:n=6:(2,2,0,0):f=0"], description="Compact text or JSON"
    )


class VerdictResponse(BaseModel):
    descriptor: str
    status: str
    clause: str
    certificate: Optional[str]
    bound: Optional[int]
    exact: bool
    justification: str


# 5. Distance
class DistanceRequest(BaseModel):
    """Request model for a distance search."""

    x: str = Field(..., min_length=1)
    y: str = Field(..., min_length=1)
    group: str = Field("C")
    n: Optional[int] = Field(None, ge=1)
    max_window: Optional[int] = Field(None, ge=0, le=8)
    max_nodes: Optional[int] = Field(None, gt=0, le=1_000_000)


class DistanceResponse(BaseModel):
    descriptor: str
    found: bool
    length: Optional[int] = None
    lower_bound: Optional[int] = None
    window: Optional[int] = None
    certified_exact: bool = False
    witness: List[str] = Field(default_factory=list)


# 6. Constructive path
class PathRequest(BaseModel):
    """Request model for an explicit path to the class representative."""

    element: str = Field(..., min_length=1)
    group: str = Field("B")
    n: Optional[int] = Field(None, ge=1)


class PathResponse(BaseModel):
    descriptor: str
    bound: int
    length: int
    witness: List[str]
