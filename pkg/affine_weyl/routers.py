"""
API routers for affine-weyl.
Exposes classification, commuting tests, neighbours, verdicts, distances
and explicit paths as JSON endpoints.
"""

import logging

from fastapi import APIRouter

from . import models
from .commuting import commutes_fast, commutes_oracle, neighbors_in_class
from .config import settings
from .conjugacy import canonical_representative, class_of
from .constructive import constructive_path
from .core import AffineElement, GroupFamily
from .graph import distance, predict_connectivity
from .involutions import invariants
from .notation import format_descriptor, format_element, parse_descriptor, read_element

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/v1", tags=["Involutions"])


def _family(group: str, x: AffineElement) -> GroupFamily:
    return GroupFamily.of(group, x.n)


@router.post("/classify", response_model=models.ClassifyResponse, summary="Classify an involution")
def classify(request: models.ClassifyRequest):
    """
    Name the conjugacy class of an involution in the requested family.

    Returns:
        ClassifyResponse: descriptor, invariants and the class representative
    """
    x = read_element(request.element, request.n)
    d = class_of(x, _family(request.group, x))
    inv = invariants(x)
    logger.info("classified an involution of rank %d as %s", x.n, format_descriptor(d))
    return {
        "descriptor": format_descriptor(d),
        "cycle_form": format_element(x),
        "cycle_type": list(d.cycle_type),
        "split": d.split,
        "invariants": inv._asdict(),
        "representative": format_element(canonical_representative(d)),
    }


@router.post("/commutes", response_model=models.CommutesResponse, summary="Test commuting")
async def commutes(request: models.CommutesRequest):
    x = read_element(request.x, request.n)
    y = read_element(request.y, request.n)
    return {"commutes": commutes_fast(x, y), "oracle": commutes_oracle(x, y)}


@router.post(
    "/neighbors", response_model=models.NeighborsResponse, summary="Commuting neighbours"
)
def neighbors(request: models.NeighborsRequest):
    """List the class members in the window that commute with the element."""
    x = read_element(request.element, request.n)
    d = class_of(x, _family(request.group, x))
    found = [format_element(y) for y in neighbors_in_class(x, d, request.window)]
    return {
        "descriptor": format_descriptor(d),
        "window": request.window,
        "count": len(found),
        "neighbors": found,
    }


@router.post("/verdict", response_model=models.VerdictResponse, summary="Predict connectivity")
async def verdict(request: models.VerdictRequest):
    d = parse_descriptor(request.descriptor)
    v = predict_connectivity(d)
    return {"descriptor": format_descriptor(d), **v.model_dump(mode="json")}


@router.post("/distance", response_model=models.DistanceResponse, summary="Search a distance")
def search_distance(request: models.DistanceRequest):
    """
    Shortest path between two members of one class, widening the label window.

    Raises:
        BudgetExceededError: Reported as 413 when the node cap is reached
    """
    x = read_element(request.x, request.n)
    y = read_element(request.y, request.n)
    family = _family(request.group, x)
    d = class_of(x, family)
    result = distance(
        x,
        y,
        family,
        max_window=request.max_window,
        max_nodes=request.max_nodes or settings.max_nodes,
        max_seconds=settings.max_seconds,
    )
    if result is None:
        return {"descriptor": format_descriptor(d), "found": False}
    return {
        "descriptor": format_descriptor(d),
        "found": True,
        "length": result.length,
        "lower_bound": result.lower_bound,
        "window": result.window,
        "certified_exact": result.certified_exact,
        "witness": [format_element(v) for v in result.witness.vertices],
    }


@router.post("/path", response_model=models.PathResponse, summary="Explicit path")
def path(request: models.PathRequest):
    """Walk from the element to its class representative within the proved bound."""
    x = read_element(request.element, request.n)
    d = class_of(x, _family(request.group, x))
    witness = constructive_path(x, d)
    return {
        "descriptor": format_descriptor(d),
        "bound": predict_connectivity(d).bound,
        "length": witness.length,
        "witness": [format_element(v) for v in witness.vertices],
    }
